#pragma once

#include "params.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

namespace besov {

/// points are (1/p, t)
using Point2 = std::array<double, 2>;

struct Region {
    Status label;
    std::vector<Point2> polygon;  // counter-clockwise, clipped to the window
    bool unbounded = false;
};

struct Segment {
    Point2 from, to;
    bool emphasis = false;
};

struct RegionDiagram {
    Direction figure = Direction::MixedIntoIso;
    int d = 2;
    double extent = 2.0;
    std::vector<Region> regions;
    std::vector<Segment> critical_segments;
};

namespace detail {
inline bool point_in_polygon(const std::vector<Point2>& poly, Point2 x) {
    bool in = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const auto& a = poly[i];
        const auto& b = poly[j];
        if ((a[1] > x[1]) != (b[1] > x[1]) && x[0] < (b[0] - a[0]) * (x[1] - a[1]) / (b[1] - a[1]) + a[0])
            in = !in;
    }
    return in;
}
}  // namespace detail

/**
 * @brief Verdict regions in the (1/p, t) window [0,E] x [-E,E].
 *
 * figure is MixedIntoIso (S^t -> B^t) or IsoIntoMixed (B^{td} -> S^t); the
 * q-dependent verdicts live on the critical segments only.
 */
inline RegionDiagram region_diagram(Direction figure, int d, double extent) {
    if (d < 2) throw domain_error("region diagrams need d >= 2");
    if (!(extent > 0.0)) throw domain_error("extent must be positive");
    if (figure == Direction::IsoIntoMixed_Target) figure = Direction::IsoIntoMixed_Source;
    const double E = extent;
    RegionDiagram rd;
    rd.figure = figure;
    rd.d = d;
    rd.extent = E;
    if (figure == Direction::MixedIntoIso) {
        rd.regions.push_back({Status::Embeds, {{0, 0}, {E, 0}, {E, E}, {0, E}}, true});
        double x1 = std::min(1.0, E);
        rd.regions.push_back({Status::ReverseEmbeds, {{0, -E}, {x1, -E}, {x1, 0}, {0, 0}}, true});
        if (E > 1.0) rd.regions.push_back({Status::NotComparable, {{1, -E}, {E, -E}, {E, 0}, {1, 0}}, true});
        rd.critical_segments.push_back({{0, 0}, {E, 0}, true});
        if (E > 1.0) rd.critical_segments.push_back({{1, -E}, {1, 0}, false});
    } else {
        // Embeds above max(0, 1/p - 1)
        std::vector<Point2> up{{0, 0}};
        if (E > 1.0) {
            up.push_back({1, 0});
            up.push_back({E, E - 1.0});
        } else {
            up.push_back({E, 0});
        }
        up.push_back({E, E});
        up.push_back({0, E});
        rd.regions.push_back({Status::Embeds, up, true});
        rd.regions.push_back({Status::ReverseEmbeds, {{0, -E}, {E, -E}, {E, 0}, {0, 0}}, true});
        if (E > 1.0) rd.regions.push_back({Status::NotComparable, {{1, 0}, {E, 0}, {E, E - 1.0}}, true});
        rd.critical_segments.push_back({{0, 0}, {std::min(1.0, E), 0}, true});
        if (E > 1.0) {
            rd.critical_segments.push_back({{1, 0}, {E, E - 1.0}, true});
            rd.critical_segments.push_back({{1, 0}, {E, 0}, false});
        }
    }
    return rd;
}

/// label of the region whose interior holds x; empty on boundaries and outside
inline std::optional<Status> region_at(const RegionDiagram& rd, Point2 x) {
    for (const auto& r : rd.regions)
        if (detail::point_in_polygon(r.polygon, x)) return r.label;
    return std::nullopt;
}

inline nlohmann::ordered_json to_json(const RegionDiagram& rd) {
    nlohmann::ordered_json j;
    j["figure"] = rd.figure == Direction::MixedIntoIso ? 1 : 2;
    j["d"] = rd.d;
    j["extent"] = rd.extent;
    j["axes"] = {"1/p", "t"};
    auto& regs = j["regions"] = nlohmann::ordered_json::array();
    for (const auto& r : rd.regions) {
        nlohmann::ordered_json e;
        e["label"] = to_string(r.label);
        e["polygon"] = r.polygon;
        e["unbounded"] = r.unbounded;
        regs.push_back(e);
    }
    auto& segs = j["critical_segments"] = nlohmann::ordered_json::array();
    for (const auto& s : rd.critical_segments) {
        nlohmann::ordered_json e;
        e["from"] = s.from;
        e["to"] = s.to;
        e["emphasis"] = s.emphasis;
        segs.push_back(e);
    }
    return j;
}

}  // namespace besov
