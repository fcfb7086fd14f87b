#include "core/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/mobility.hpp"
#include "core/schedule.hpp"
#include "core/util.hpp"

namespace ctsim {
namespace {

void append_attr(std::string& out, const char* name, const std::string& value) {
    out += " ";
    out += name;
    out += "=\"";
    out += value;
    out += "\"";
}

void append_attr(std::string& out, const char* name, double value) {
    append_attr(out, name, format_double(value));
}

std::string rgb(int r, int g, int b) {
    return "rgb(" + std::to_string(r) + "," + std::to_string(g) + "," + std::to_string(b) + ")";
}

const char* status_color(HealthStatus status) {
    switch (status) {
    case HealthStatus::Infected: return "#d62728";
    case HealthStatus::AtRisk: return "#ff9f1c";
    case HealthStatus::NotAtRisk: return "#2a9d3a";
    }
    return "#2a9d3a";
}

const char* zone_fill(ZoneKind kind) {
    switch (kind) {
    case ZoneKind::Work: return "#dbe7f5";
    case ZoneKind::Community: return "#e8f3dc";
    case ZoneKind::Residential: return "#f5e9d9";
    case ZoneKind::Other: break;
    }
    return "#eeeeee";
}

void append_text(std::string& out, double x, double y, const std::string& text, int size,
                 const char* anchor = "start") {
    out += "<text";
    append_attr(out, "x", x);
    append_attr(out, "y", y);
    append_attr(out, "font-size", std::to_string(size));
    append_attr(out, "font-family", std::string("monospace"));
    append_attr(out, "text-anchor", std::string(anchor));
    out += ">";
    out += text;
    out += "</text>\n";
}

} // namespace

std::string contact_matrix_svg(const ContactMatrix& matrix, std::span<const AnonymousId> ids) {
    const std::size_t n = matrix.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });

    std::int64_t max_step = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (matrix.at(i, j)) max_step = std::max(max_step, *matrix.at(i, j) + 1);

    // Large populations get block-aggregated cells (earliest contact in the
    // block) to keep the file a drawing rather than a million rects.
    constexpr std::size_t kMaxCells = 128;
    const std::size_t block = n > kMaxCells ? (n + kMaxCells - 1) / kMaxCells : 1;
    const std::size_t grid_n = n == 0 ? 0 : (n + block - 1) / block;
    const bool labeled = block == 1 && n <= 40;

    const double cell =
        grid_n > 0 ? std::min(28.0, 560.0 / static_cast<double>(grid_n)) : 28.0;
    const double margin = labeled ? 90.0 : 40.0;
    const double grid = cell * static_cast<double>(grid_n);
    const double width = margin + grid + 20.0;
    const double height = margin + grid + 40.0;

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\"";
    append_attr(out, "width", width);
    append_attr(out, "height", height);
    append_attr(out, "viewBox",
                "0 0 " + format_double(width) + " " + format_double(height));
    out += ">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::string title = "first recorded contact (step)";
    if (block > 1) title += ", " + std::to_string(block) + "-wide id blocks";
    append_text(out, 10.0, 20.0, title, 13);

    if (labeled) {
        for (std::size_t r = 0; r < n; ++r) {
            const std::string label = ids[order[r]].hex().substr(0, 8);
            append_text(out, margin - 6.0, margin + cell * (static_cast<double>(r) + 0.7),
                        label, 9, "end");
            append_text(out, margin + cell * (static_cast<double>(r) + 0.5),
                        margin + grid + 12.0, label.substr(0, 4), 8, "middle");
        }
    }

    for (std::size_t r = 0; r < grid_n; ++r) {
        for (std::size_t c = 0; c < grid_n; ++c) {
            std::optional<std::int64_t> earliest;
            for (std::size_t i = r * block; i < std::min(n, (r + 1) * block); ++i)
                for (std::size_t j = c * block; j < std::min(n, (c + 1) * block); ++j) {
                    if (i == j) continue;
                    const auto& v = matrix.at(order[i], order[j]);
                    if (v && (!earliest || *v < *earliest)) earliest = *v;
                }
            std::string fill = r == c && block == 1 ? "#ffffff" : "#f4f4f4";
            if (earliest) {
                // Early contacts dark blue, late ones pale.
                const double t =
                    static_cast<double>(*earliest) / static_cast<double>(max_step);
                const int shade = static_cast<int>(40.0 + 180.0 * t);
                fill = rgb(shade, shade, 200);
            }
            out += "<rect";
            append_attr(out, "x", margin + cell * static_cast<double>(c));
            append_attr(out, "y", margin + cell * static_cast<double>(r));
            append_attr(out, "width", cell);
            append_attr(out, "height", cell);
            append_attr(out, "fill", fill);
            append_attr(out, "stroke", std::string("#cccccc"));
            append_attr(out, "stroke-width", 0.5);
            out += "/>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

std::string snapshots_svg(const Scenario& scenario, const std::vector<std::size_t>& quarantined,
                          std::span<const std::int64_t> steps,
                          std::span<const RiskLabel> labels) {
    // World bounding box across all zones.
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
    if (!scenario.zones.empty()) {
        x0 = y0 = std::numeric_limits<double>::infinity();
        x1 = y1 = -std::numeric_limits<double>::infinity();
        for (const Zone& zone : scenario.zones) {
            x0 = std::min(x0, zone.bounds.x0);
            y0 = std::min(y0, zone.bounds.y0);
            x1 = std::max(x1, zone.bounds.x1);
            y1 = std::max(y1, zone.bounds.y1);
        }
    }
    const double world_w = std::max(x1 - x0, 1e-9);
    const double world_h = std::max(y1 - y0, 1e-9);

    const double panel_w = 300.0;
    const double panel_h = panel_w * world_h / world_w;
    const double pad = 24.0;
    const std::size_t columns = std::min<std::size_t>(std::max<std::size_t>(steps.size(), 1), 3);
    const std::size_t rows = steps.empty() ? 1 : (steps.size() + columns - 1) / columns;
    const double width = pad + static_cast<double>(columns) * (panel_w + pad);
    const double height = pad + static_cast<double>(rows) * (panel_h + pad + 18.0);

    auto sx = [&](double wx, double ox) { return ox + (wx - x0) / world_w * panel_w; };
    auto sy = [&](double wy, double oy) { return oy + (wy - y0) / world_h * panel_h; };

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\"";
    append_attr(out, "width", width);
    append_attr(out, "height", height);
    append_attr(out, "viewBox",
                "0 0 " + format_double(width) + " " + format_double(height));
    out += ">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const int spd = scenario.schedule.steps_per_day();
    for (std::size_t k = 0; k < steps.size(); ++k) {
        const std::int64_t step = steps[k];
        const double ox = pad + static_cast<double>(k % columns) * (panel_w + pad);
        const double oy = pad + static_cast<double>(k / columns) * (panel_h + pad + 18.0);

        const Minutes minute_of_day = (step % spd) * scenario.schedule.step_minutes;
        append_text(out, ox, oy - 6.0,
                    "day " + std::to_string(step / spd + 1) + "  " +
                        minutes_to_hhmm(minute_of_day) + "  (step " + std::to_string(step) + ")",
                    12);

        for (const Zone& zone : scenario.zones) {
            out += "<rect";
            append_attr(out, "x", sx(zone.bounds.x0, ox));
            append_attr(out, "y", sy(zone.bounds.y0, oy));
            append_attr(out, "width", (zone.bounds.x1 - zone.bounds.x0) / world_w * panel_w);
            append_attr(out, "height", (zone.bounds.y1 - zone.bounds.y0) / world_h * panel_h);
            append_attr(out, "fill", std::string(zone_fill(zone.kind)));
            append_attr(out, "stroke", std::string("#555555"));
            append_attr(out, "stroke-width", 1.0);
            out += "/>\n";
        }

        const std::vector<Vec2> positions = positions_at(scenario, quarantined, step);
        for (std::size_t p = 0; p < positions.size(); ++p) {
            const HealthStatus status =
                p < labels.size() ? labels[p].status : HealthStatus::NotAtRisk;
            out += "<circle";
            append_attr(out, "cx", sx(positions[p].x, ox));
            append_attr(out, "cy", sy(positions[p].y, oy));
            append_attr(out, "r", 3.0);
            append_attr(out, "fill", std::string(status_color(status)));
            out += "/>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

} // namespace ctsim
