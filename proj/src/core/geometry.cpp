#include "core/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace ctsim {

std::string to_string(ZoneKind kind) {
    switch (kind) {
    case ZoneKind::Work: return "work";
    case ZoneKind::Community: return "community";
    case ZoneKind::Residential: return "residential";
    case ZoneKind::Other: return "other";
    }
    return "other";
}

std::optional<ZoneKind> zone_kind_from_string(std::string_view text) {
    if (text == "work") return ZoneKind::Work;
    if (text == "community") return ZoneKind::Community;
    if (text == "residential") return ZoneKind::Residential;
    if (text == "other") return ZoneKind::Other;
    return std::nullopt;
}

namespace {

int orientation(Vec2 a, Vec2 b, Vec2 c) {
    const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    if (cross > 0.0) return 1;
    if (cross < 0.0) return -1;
    return 0;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

} // namespace

bool segments_touch(const Segment& s, const Segment& t) {
    const int o1 = orientation(s.a, s.b, t.a);
    const int o2 = orientation(s.a, s.b, t.b);
    const int o3 = orientation(t.a, t.b, s.a);
    const int o4 = orientation(t.a, t.b, s.b);

    if (o1 != o2 && o3 != o4) return true;

    if (o1 == 0 && on_segment(s.a, s.b, t.a)) return true;
    if (o2 == 0 && on_segment(s.a, s.b, t.b)) return true;
    if (o3 == 0 && on_segment(t.a, t.b, s.a)) return true;
    if (o4 == 0 && on_segment(t.a, t.b, s.b)) return true;
    return false;
}

WallSet::WallSet(std::span<const Zone> zones) {
    using Key = std::tuple<double, double, double, double>;
    std::set<Key> seen;
    auto add = [&](Vec2 a, Vec2 b) {
        // Canonical endpoint order so coincident edges dedupe.
        if (std::tie(b.x, b.y) < std::tie(a.x, a.y)) std::swap(a, b);
        if (seen.insert({a.x, a.y, b.x, b.y}).second) walls_.push_back({a, b});
    };
    for (const Zone& z : zones) {
        const Rect& r = z.bounds;
        add({r.x0, r.y0}, {r.x1, r.y0});
        add({r.x1, r.y0}, {r.x1, r.y1});
        add({r.x0, r.y1}, {r.x1, r.y1});
        add({r.x0, r.y0}, {r.x0, r.y1});
    }
}

int WallSet::crossings(Vec2 p, Vec2 q) const {
    const double lox = std::min(p.x, q.x), hix = std::max(p.x, q.x);
    const double loy = std::min(p.y, q.y), hiy = std::max(p.y, q.y);
    const Segment path{p, q};
    int count = 0;
    for (const Segment& w : walls_) {
        // Bounding-box reject; walls are axis-aligned.
        if (std::max(w.a.x, w.b.x) < lox || std::min(w.a.x, w.b.x) > hix ||
            std::max(w.a.y, w.b.y) < loy || std::min(w.a.y, w.b.y) > hiy) {
            continue;
        }
        if (segments_touch(path, w)) ++count;
    }
    return count;
}

int walls_between(Vec2 p, Vec2 q, std::span<const Zone> zones) {
    return WallSet(zones).crossings(p, q);
}

} // namespace ctsim
