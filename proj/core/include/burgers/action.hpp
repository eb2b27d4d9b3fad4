#pragma once

#include <optional>
#include <vector>

#include "burgers/point_field.hpp"
#include "burgers/potential.hpp"

namespace burgers {

// A candidate or minimizing trajectory: space-time vertices, strictly
// increasing in time. When interior_are_points is set, every interior
// vertex must coincide with a forcing point of the associated field.
struct PiecewisePath {
    std::vector<SpaceTimePoint> vertices;
    bool interior_are_points = true;
};

// Kinetic action of one straight segment: (x1-x0)^2 / (2 (t1-t0)).
double segment_action(const SpaceTimePoint& p0, const SpaceTimePoint& p1);

// Kinetic action along the path minus the number of distinct forcing
// points among its vertices (endpoints included).
double path_action(const PointField& field, const PiecewisePath& path);

// DP output: optimal cost-to-reach and predecessor for every forcing point.
// pred[j] == -1 means the chain starts at (t0, start_y[j]).
struct MinimizerTable {
    std::vector<double> cost;
    std::vector<int> pred;
    std::vector<double> start_y;
    double t0 = 0.0;
};

MinimizerTable build_table(const PointField& field, const Potential& potential,
                           double t0);
// Start pinned at (t0, y0) instead of a free minimization over a potential.
MinimizerTable build_table_pinned(const PointField& field, double y0, double t0);

struct Branch {
    bool from_start = false;
    int point_index = -1;   // valid when !from_start
    double start_y = 0.0;   // valid when from_start
    double value = 0.0;
    double velocity = 0.0;  // slope of the final segment into (t, x)
};

struct TerminalValue {
    double value = 0.0;
    Branch best;                  // canonical tie-break applied
    std::vector<Branch> ties;     // all branches within tolerance of value
    bool tie() const { return ties.size() > 1; }
};

// Value comparisons tie when they differ by < 1e-9 * max(1, |value|).
inline constexpr double kValueTol = 1e-9;

TerminalValue terminal_value(const MinimizerTable& table, const PointField& field,
                             const Potential& potential, double t, double x);
TerminalValue terminal_value_pinned(const MinimizerTable& table,
                                    const PointField& field, double y0,
                                    double t, double x);

PiecewisePath extract_path(const MinimizerTable& table, const PointField& field,
                           const Potential& potential, double t, double x);
PiecewisePath extract_path_pinned(const MinimizerTable& table,
                                  const PointField& field, double y0,
                                  double t, double x);

// Independent oracle: exact minimum over all time-increasing chains of
// forcing points (2^n enumeration, n <= 18).
double brute_force_value(const PointField& field, const Potential& potential,
                         double t0, double t, double x);

}  // namespace burgers
