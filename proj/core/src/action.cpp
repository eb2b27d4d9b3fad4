#include "burgers/action.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "burgers/errors.hpp"

namespace burgers {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_field_point(const PointField& field, const SpaceTimePoint& p) {
    for (const auto& q : field.points)
        if (q.t == p.t && q.x == p.x) return true;
    return false;
}

// start_cost(x, tau) -> {value, y*}
using StartCostFn = std::function<StartMin(double, double)>;

MinimizerTable build_table_impl(const PointField& field, const StartCostFn& start,
                                double t0) {
    const auto& pts = field.points;
    MinimizerTable table;
    table.t0 = t0;
    const std::size_t n = pts.size();
    table.cost.resize(n);
    table.pred.resize(n);
    table.start_y.resize(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (pts[j].t <= t0) throw NonCausalField("field point at or before t0");
        const StartMin sm = start(pts[j].x, pts[j].t - t0);
        double best = sm.value;
        int pred = -1;
        table.start_y[j] = sm.y;
        for (std::size_t i = 0; i < j; ++i) {
            if (pts[i].t >= pts[j].t) continue;
            const double c = table.cost[i] + segment_action(pts[i], pts[j]);
            if (c < best) {
                best = c;
                pred = static_cast<int>(i);
            }
        }
        table.cost[j] = best - 1.0;  // the point's own reward
        table.pred[j] = pred;
    }
    return table;
}

TerminalValue terminal_value_impl(const MinimizerTable& table,
                                  const PointField& field,
                                  const StartCostFn& start, double t, double x) {
    if (t <= table.t0) throw NonCausalQuery("query time at or before t0");
    std::vector<Branch> branches;
    {
        const StartMin sm = start(x, t - table.t0);
        Branch b;
        b.from_start = true;
        b.start_y = sm.y;
        b.value = sm.value;
        b.velocity = (x - sm.y) / (t - table.t0);
        branches.push_back(b);
    }
    const auto& pts = field.points;
    for (std::size_t j = 0; j < pts.size(); ++j) {
        if (pts[j].t >= t) continue;
        Branch b;
        b.from_start = false;
        b.point_index = static_cast<int>(j);
        b.value = table.cost[j] + segment_action(pts[j], {t, x});
        b.velocity = (x - pts[j].x) / (t - pts[j].t);
        branches.push_back(b);
    }
    double vmin = kInf;
    for (const auto& b : branches) vmin = std::min(vmin, b.value);
    const double tol = kValueTol * std::max(1.0, std::abs(vmin));

    TerminalValue tv;
    tv.value = vmin;
    for (const auto& b : branches)
        if (b.value <= vmin + tol) tv.ties.push_back(b);
    // canonical pick: smallest |terminal velocity|, then leftmost source
    auto source_x = [&](const Branch& b) {
        return b.from_start ? b.start_y : pts[b.point_index].x;
    };
    tv.best = tv.ties.front();
    for (const auto& b : tv.ties) {
        const double va = std::abs(b.velocity), vb = std::abs(tv.best.velocity);
        if (va < vb - 1e-15 ||
            (std::abs(va - vb) <= 1e-15 && source_x(b) < source_x(tv.best)))
            tv.best = b;
    }
    // collapse numerically identical branches so tie() means a real shock
    std::vector<Branch> distinct;
    for (const auto& b : tv.ties) {
        bool dup = false;
        for (const auto& d : distinct)
            if (std::abs(d.velocity - b.velocity) < 1e-12) dup = true;
        if (!dup) distinct.push_back(b);
    }
    tv.ties = std::move(distinct);
    return tv;
}

PiecewisePath extract_path_impl(const MinimizerTable& table,
                                const PointField& field, const StartCostFn& start,
                                double t, double x) {
    const TerminalValue tv = terminal_value_impl(table, field, start, t, x);
    std::vector<SpaceTimePoint> rev;
    rev.push_back({t, x});
    Branch b = tv.best;
    if (!b.from_start) {
        int j = b.point_index;
        while (j >= 0) {
            rev.push_back(field.points[j]);
            if (table.pred[j] < 0) {
                rev.push_back({table.t0, table.start_y[j]});
                break;
            }
            j = table.pred[j];
        }
    } else {
        rev.push_back({table.t0, b.start_y});
    }
    PiecewisePath path;
    path.vertices.assign(rev.rbegin(), rev.rend());
    // drop a duplicated terminal vertex if the query sits on a forcing point
    auto& v = path.vertices;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i].t == v[i + 1].t && v[i].x == v[i + 1].x) {
            v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    return path;
}

StartCostFn potential_start(const Potential& V) {
    return [&V](double x, double tau) { return minimize_with_parabola(V, x, tau); };
}

StartCostFn pinned_start(double y0) {
    return [y0](double x, double tau) {
        const double d = x - y0;
        return StartMin{d * d / (2.0 * tau), y0};
    };
}

}  // namespace

double segment_action(const SpaceTimePoint& p0, const SpaceTimePoint& p1) {
    if (!(p1.t > p0.t)) throw NonCausalSegment("segment requires t1 > t0");
    const double dx = p1.x - p0.x;
    return dx * dx / (2.0 * (p1.t - p0.t));
}

double path_action(const PointField& field, const PiecewisePath& path) {
    const auto& v = path.vertices;
    if (v.size() < 2) throw InvalidPath("path needs at least two vertices");
    double a = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (!(v[i + 1].t > v[i].t)) throw InvalidPath("non-increasing vertex times");
        if (v[i + 1].t > v[i].t) a += segment_action(v[i], v[i + 1]);
    }
    if (path.interior_are_points) {
        for (std::size_t i = 1; i + 1 < v.size(); ++i)
            if (!is_field_point(field, v[i]))
                throw InvalidPath("interior vertex is not a forcing point");
    }
    int rewards = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!is_field_point(field, v[i])) continue;
        bool seen = false;  // count distinct forcing points once
        for (std::size_t k = 0; k < i; ++k)
            if (v[k].t == v[i].t && v[k].x == v[i].x) seen = true;
        if (!seen) ++rewards;
    }
    return a - static_cast<double>(rewards);
}

MinimizerTable build_table(const PointField& field, const Potential& potential,
                           double t0) {
    return build_table_impl(field, potential_start(potential), t0);
}

MinimizerTable build_table_pinned(const PointField& field, double y0, double t0) {
    return build_table_impl(field, pinned_start(y0), t0);
}

TerminalValue terminal_value(const MinimizerTable& table, const PointField& field,
                             const Potential& potential, double t, double x) {
    return terminal_value_impl(table, field, potential_start(potential), t, x);
}

TerminalValue terminal_value_pinned(const MinimizerTable& table,
                                    const PointField& field, double y0,
                                    double t, double x) {
    return terminal_value_impl(table, field, pinned_start(y0), t, x);
}

PiecewisePath extract_path(const MinimizerTable& table, const PointField& field,
                           const Potential& potential, double t, double x) {
    return extract_path_impl(table, field, potential_start(potential), t, x);
}

PiecewisePath extract_path_pinned(const MinimizerTable& table,
                                  const PointField& field, double y0,
                                  double t, double x) {
    return extract_path_impl(table, field, pinned_start(y0), t, x);
}

double brute_force_value(const PointField& field, const Potential& potential,
                         double t0, double t, double x) {
    const auto& pts = field.points;
    std::vector<int> usable;
    for (std::size_t j = 0; j < pts.size(); ++j)
        if (pts[j].t > t0 && pts[j].t < t) usable.push_back(static_cast<int>(j));
    if (usable.size() > 18) throw OracleTooLarge("brute force limited to 18 points");

    double best = minimize_with_parabola(potential, x, t - t0).value;
    const SpaceTimePoint end{t, x};

    // DFS over all time-increasing chains
    std::function<void(std::size_t, int, double)> dfs = [&](std::size_t idx,
                                                            int last,
                                                            double acc) {
        if (idx == usable.size()) {
            if (last >= 0) {
                const double v = acc + segment_action(pts[last], end);
                best = std::min(best, v);
            }
            return;
        }
        const int j = usable[idx];
        // skip j
        dfs(idx + 1, last, acc);
        // take j
        double c;
        if (last < 0) {
            c = minimize_with_parabola(potential, pts[j].x, pts[j].t - t0).value;
        } else {
            if (!(pts[j].t > pts[last].t)) return;
            c = acc + segment_action(pts[last], pts[j]);
        }
        dfs(idx + 1, j, c - 1.0);
    };
    dfs(0, -1, 0.0);
    return best;
}

}  // namespace burgers
