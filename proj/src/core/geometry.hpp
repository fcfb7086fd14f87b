#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ctsim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Vec2&) const = default;
};

/// Axis-aligned rectangle, x0 < x1 and y0 < y1 once validated.
struct Rect {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;

    bool operator==(const Rect&) const = default;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    bool contains(Vec2 p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
    bool strictly_contains(Vec2 p) const {
        return p.x > x0 && p.x < x1 && p.y > y0 && p.y < y1;
    }
    bool overlaps_interior(const Rect& o) const {
        return x0 < o.x1 && o.x0 < x1 && y0 < o.y1 && o.y0 < y1;
    }
};

enum class ZoneKind { Work, Community, Residential, Other };

std::string to_string(ZoneKind kind);
std::optional<ZoneKind> zone_kind_from_string(std::string_view text);

/// A building footprint. Its four boundary edges are the walls.
struct Zone {
    ZoneKind kind = ZoneKind::Other;
    Rect bounds;
    bool operator==(const Zone&) const = default;
};

struct Segment {
    Vec2 a;
    Vec2 b;
};

/// Inclusive segment intersection: shared endpoints, endpoint-on-segment
/// touches, and collinear overlaps all count. The tie-break is deliberate;
/// a signal path grazing a wall is treated as obstructed.
bool segments_touch(const Segment& s, const Segment& t);

/// Precomputed wall list for a zone map. Edges shared by two adjacent zones
/// coincide exactly and are merged, so one physical wall attenuates once.
class WallSet {
  public:
    WallSet() = default;
    explicit WallSet(std::span<const Zone> zones);

    /// Number of walls the open segment p-q crosses or touches.
    int crossings(Vec2 p, Vec2 q) const;

    const std::vector<Segment>& walls() const { return walls_; }

  private:
    std::vector<Segment> walls_;
};

/// One-shot convenience over WallSet.
int walls_between(Vec2 p, Vec2 q, std::span<const Zone> zones);

} // namespace ctsim
