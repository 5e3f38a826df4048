#pragma once

// ASCII Hildebrand diagram: one row per leg, '#' stance, '.' swing, ' ' outside
// the simulated window.  Each cell covers `quantum` time units and takes the
// phase at its midpoint.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tropgait/simulation.hpp"

namespace tropgait {

inline constexpr double default_quantum = 0.25;

struct DiagramRows {
    double origin = 0.0;
    double quantum = default_quantum;
    std::vector<std::string> rows;  ///< cells only, one string per leg
};

inline Interval schedule_extent(const LegSchedule& s) {
    Interval extent{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& leg : s.legs) {
        for (const auto& p : leg) {
            extent.begin = std::min(extent.begin, p.span.begin);
            extent.end = std::max(extent.end, p.span.end);
        }
    }
    return extent;
}

inline DiagramRows rasterize(const LegSchedule& s, double quantum, std::optional<Interval> window = std::nullopt) {
    if (!(quantum > 0.0)) throw error(errc::bad_quantum, "quantum must be positive");
    const Interval extent = window.value_or(schedule_extent(s));
    DiagramRows out{extent.begin, quantum, {}};
    if (!(extent.end > extent.begin)) {
        out.rows.assign(s.legs.size(), std::string());
        return out;
    }
    const auto cells = static_cast<std::size_t>(std::ceil((extent.end - extent.begin) / quantum - 1e-12));
    for (const auto& leg : s.legs) {
        std::string row(cells, ' ');
        for (std::size_t c = 0; c < cells; ++c) {
            const double mid = extent.begin + (static_cast<double>(c) + 0.5) * quantum;
            for (const auto& p : leg) {
                if (p.span.begin <= mid && mid < p.span.end) {
                    row[c] = p.phase == Phase::stance ? '#' : '.';
                    break;
                }
            }
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

/// Rows labelled "leg i |...|" followed by a timestamp footer every 10 cells.
inline std::string render_diagram(const LegSchedule& s, double quantum = default_quantum,
                                  std::optional<Interval> window = std::nullopt) {
    const DiagramRows d = rasterize(s, quantum, window);
    std::ostringstream os;
    const std::size_t width = d.rows.empty() ? 0 : d.rows.front().size();
    const std::string label_pad(std::to_string(d.rows.size()).size(), ' ');
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
        std::string label = std::to_string(i + 1);
        label.insert(0, label_pad.size() - label.size(), ' ');
        os << "leg " << label << " |" << d.rows[i] << "|\n";
    }
    std::string ticks(width + 1, ' ');
    std::string stamps(width + 16, ' ');
    for (std::size_t c = 0; c <= width; c += 10) {
        ticks[c] = '^';
        std::ostringstream t;
        t << d.origin + static_cast<double>(c) * d.quantum;
        stamps.replace(c, t.str().size(), t.str());
    }
    const std::string indent = "    " + label_pad + "  ";
    os << indent << ticks << '\n';
    stamps.erase(stamps.find_last_not_of(' ') + 1);
    os << indent << stamps << '\n';
    return os.str();
}

}  // namespace tropgait
