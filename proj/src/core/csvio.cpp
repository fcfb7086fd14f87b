#include "core/csvio.hpp"

#include <algorithm>

#include "core/errors.hpp"
#include "core/util.hpp"

namespace ctsim {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep = ',') {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

// Lines of `text` minus the expected header; tolerates one trailing newline.
std::vector<std::string_view> body_lines(std::string_view text, std::string_view header,
                                         const char* what) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t pos = text.find('\n', start);
        if (pos == std::string_view::npos) pos = text.size();
        std::string_view line = text.substr(start, pos - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = pos + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty() || lines.front() != header)
        throw IoError(std::string(what) + ": missing header \"" + std::string(header) + "\"");
    lines.erase(lines.begin());
    return lines;
}

[[noreturn]] void bad_field(const char* what, std::size_t line_no, const char* field) {
    throw IoError(std::string(what) + ": line " + std::to_string(line_no + 2) + ": bad " + field);
}

AnonymousId field_id(std::string_view text, const char* what, std::size_t i, const char* field) {
    auto id = AnonymousId::from_hex(text);
    if (!id) bad_field(what, i, field);
    return *id;
}

std::int64_t field_int(std::string_view text, const char* what, std::size_t i,
                       const char* field) {
    auto v = parse_int64(text);
    if (!v) bad_field(what, i, field);
    return *v;
}

double field_double(std::string_view text, const char* what, std::size_t i, const char* field) {
    auto v = parse_double(text);
    if (!v) bad_field(what, i, field);
    return *v;
}

HealthStatus field_status(std::string_view text, const char* what, std::size_t i,
                          const char* field) {
    auto v = health_status_from_string(text);
    if (!v) bad_field(what, i, field);
    return *v;
}

} // namespace

void ContactMatrix::record(std::size_t i, std::size_t j, std::int64_t step) {
    if (i == j) throw InvariantError("contact matrix diagonal must stay empty");
    auto& a = cells_[i * n_ + j];
    auto& b = cells_[j * n_ + i];
    if (!a || step < *a) {
        a = step;
        b = step;
    }
}

ContactMatrix contact_matrix_from_events(std::span<const ContactEvent> events, std::size_t n) {
    ContactMatrix matrix(n);
    for (const ContactEvent& event : events)
        if (event.recorded) matrix.record(event.a, event.b, event.step);
    return matrix;
}

std::string events_csv(std::span<const ContactEvent> events, std::span<const AnonymousId> ids) {
    std::string out{kEventsHeader};
    out.push_back('\n');
    for (const ContactEvent& e : events) {
        out += std::to_string(e.step);
        out.push_back(',');
        out += ids[e.a].hex();
        out.push_back(',');
        out += ids[e.b].hex();
        out.push_back(',');
        out += format_double(e.true_distance_m);
        out.push_back(',');
        out += std::to_string(e.walls);
        out.push_back(',');
        out += format_double(e.rssi_dbm);
        out.push_back(',');
        out += format_double(e.estimated_distance_m);
        out.push_back(',');
        out += e.recorded ? "true" : "false";
        out.push_back('\n');
    }
    return out;
}

std::vector<EventRow> parse_events_csv(std::string_view text) {
    const char* what = "event log";
    std::vector<EventRow> rows;
    auto lines = body_lines(text, kEventsHeader, what);
    rows.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto fields = split(lines[i]);
        if (fields.size() != 8) bad_field(what, i, "field count");
        EventRow row;
        row.step = field_int(fields[0], what, i, "step");
        row.id_a = field_id(fields[1], what, i, "id_a");
        row.id_b = field_id(fields[2], what, i, "id_b");
        row.true_distance_m = field_double(fields[3], what, i, "true_distance_m");
        row.walls = static_cast<int>(field_int(fields[4], what, i, "walls"));
        row.rssi_dbm = field_double(fields[5], what, i, "rssi_dbm");
        row.estimated_distance_m = field_double(fields[6], what, i, "estimated_distance_m");
        if (fields[7] == "true")
            row.recorded = true;
        else if (fields[7] == "false")
            row.recorded = false;
        else
            bad_field(what, i, "recorded");
        rows.push_back(row);
    }
    return rows;
}

std::string device_dump_csv(std::span<const DeviceState> devices) {
    std::vector<const DeviceState*> ordered;
    ordered.reserve(devices.size());
    for (const DeviceState& d : devices) ordered.push_back(&d);
    std::sort(ordered.begin(), ordered.end(),
              [](const DeviceState* a, const DeviceState* b) { return a->own_id() < b->own_id(); });

    std::string out{kDeviceDumpHeader};
    out.push_back('\n');
    for (const DeviceState* device : ordered) {
        const std::string own = device->own_id().hex();
        for (const ContactRecord& record : device->export_contacts()) {
            out += own;
            out.push_back(',');
            out += record.peer.hex();
            out.push_back(',');
            out += std::to_string(record.first_contact);
            out.push_back(',');
            out += std::to_string(record.encounter_count);
            out.push_back('\n');
        }
    }
    return out;
}

std::vector<DumpRow> parse_device_dump_csv(std::string_view text) {
    const char* what = "device dump";
    std::vector<DumpRow> rows;
    auto lines = body_lines(text, kDeviceDumpHeader, what);
    rows.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto fields = split(lines[i]);
        if (fields.size() != 4) bad_field(what, i, "field count");
        DumpRow row;
        row.own_id = field_id(fields[0], what, i, "own_id");
        row.peer_id = field_id(fields[1], what, i, "peer_id");
        row.first_contact_min = field_int(fields[2], what, i, "first_contact_min");
        row.encounter_count =
            static_cast<std::uint32_t>(field_int(fields[3], what, i, "encounter_count"));
        rows.push_back(row);
    }
    return rows;
}

std::string labeling_csv(std::span<const RiskLabel> labels, std::span<const AnonymousId> ids) {
    // Rows ordered by id so equal runs emit byte-identical files.
    std::vector<std::size_t> order(labels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });

    std::string out{kLabelingHeader};
    out.push_back('\n');
    for (std::size_t i : order) {
        out += ids[i].hex();
        out.push_back(',');
        out += to_string(labels[i].status);
        out.push_back(',');
        if (labels[i].acquisition_step) out += std::to_string(*labels[i].acquisition_step);
        out.push_back('\n');
    }
    return out;
}

std::vector<LabelRow> parse_labeling_csv(std::string_view text) {
    const char* what = "labeling";
    std::vector<LabelRow> rows;
    auto lines = body_lines(text, kLabelingHeader, what);
    rows.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto fields = split(lines[i]);
        if (fields.size() != 3) bad_field(what, i, "field count");
        LabelRow row;
        row.id = field_id(fields[0], what, i, "id");
        row.status = field_status(fields[1], what, i, "status");
        if (!fields[2].empty()) row.acquisition_step = field_int(fields[2], what, i, "step");
        rows.push_back(row);
    }
    return rows;
}

std::vector<RegistryRow> parse_registry_csv(std::string_view text) {
    const char* what = "registry snapshot";
    std::vector<RegistryRow> rows;
    auto lines = body_lines(text, "id,status,flagged_at_min,flagged_by_hash", what);
    rows.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto fields = split(lines[i]);
        if (fields.size() != 4) bad_field(what, i, "field count");
        RegistryRow row;
        row.id = field_id(fields[0], what, i, "id");
        row.status = field_status(fields[1], what, i, "status");
        if (!fields[2].empty()) row.flagged_at_min = field_int(fields[2], what, i, "minutes");
        if (!fields[3].empty()) row.flagged_by_hash = std::string(fields[3]);
        rows.push_back(row);
    }
    return rows;
}

std::string contact_matrix_csv(const ContactMatrix& matrix, std::span<const AnonymousId> ids) {
    if (matrix.size() != ids.size()) throw InvariantError("matrix size mismatch");
    std::vector<std::size_t> order(ids.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });

    std::string out = "id";
    for (std::size_t i : order) {
        out.push_back(',');
        out += ids[i].hex();
    }
    out.push_back('\n');
    for (std::size_t i : order) {
        out += ids[i].hex();
        for (std::size_t j : order) {
            out.push_back(',');
            if (i != j && matrix.at(i, j)) out += std::to_string(*matrix.at(i, j));
        }
        out.push_back('\n');
    }
    return out;
}

std::pair<std::vector<AnonymousId>, ContactMatrix> parse_contact_matrix_csv(
    std::string_view text) {
    const char* what = "contact matrix";
    std::vector<std::string_view> lines;
    {
        std::size_t start = 0;
        while (start < text.size()) {
            std::size_t pos = text.find('\n', start);
            if (pos == std::string_view::npos) pos = text.size();
            std::string_view line = text.substr(start, pos - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            lines.push_back(line);
            start = pos + 1;
        }
        while (!lines.empty() && lines.back().empty()) lines.pop_back();
    }
    if (lines.empty()) throw IoError(std::string(what) + ": empty file");
    auto header = split(lines.front());
    if (header.empty() || header.front() != "id")
        throw IoError(std::string(what) + ": missing header");

    const std::size_t n = header.size() - 1;
    std::vector<AnonymousId> ids;
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ids.push_back(field_id(header[i + 1], what, 0, "id"));
    if (lines.size() != n + 1) throw IoError(std::string(what) + ": wrong row count");

    ContactMatrix matrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto fields = split(lines[i + 1]);
        if (fields.size() != n + 1) bad_field(what, i, "field count");
        if (field_id(fields[0], what, i, "row id") != ids[i])
            bad_field(what, i, "row order");
        for (std::size_t j = 0; j < n; ++j) {
            if (fields[j + 1].empty()) continue;
            if (i == j) bad_field(what, i, "diagonal cell");
            if (j > i) matrix.record(i, j, field_int(fields[j + 1], what, i, "cell"));
        }
    }
    return {std::move(ids), std::move(matrix)};
}

} // namespace ctsim
