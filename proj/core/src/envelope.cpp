#include "burgers/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>

#include "burgers/errors.hpp"

namespace burgers {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One terminal-cost candidate: W(x) = a2 x^2 + a1 x + a0, valid on [lo, hi].
struct Cand {
    double a2 = 0.0, a1 = 0.0, a0 = 0.0;
    double lo = -kInf, hi = kInf;
    ProfileSource src;

    double value(double x) const { return (a2 * x + a1) * x + a0; }
    double deriv(double x) const { return 2.0 * a2 * x + a1; }
    bool valid(double x) const { return x >= lo && x <= hi; }
};

// Moreau-style start candidates for one quadratic piece of V at lead time tau.
void start_candidates(const QuadPiece& q, double tau, std::vector<Cand>& out) {
    const double a = q.c2 + 0.5 / tau;
    const double denom = 1.0 + 2.0 * q.c2 * tau;
    auto clamped = [&](double e, double lo, double hi) {
        Cand c;
        c.a2 = 0.5 / tau;
        c.a1 = -e / tau;
        c.a0 = q.value(e) + e * e / (2.0 * tau);
        c.lo = lo;
        c.hi = hi;
        c.src.from_start = true;
        c.src.x = e;
        out.push_back(c);
    };
    if (a > 0.0) {
        Cand c;
        c.a2 = q.c2 / denom;
        c.a1 = q.c1 / denom;
        c.a0 = q.c0 - tau * q.c1 * q.c1 / (2.0 * denom);
        auto x_at = [&](double y) { return y * denom + q.c1 * tau; };
        c.lo = std::isfinite(q.lo) ? x_at(q.lo) : -kInf;
        c.hi = std::isfinite(q.hi) ? x_at(q.hi) : kInf;
        c.src.from_start = true;
        out.push_back(c);
        if (std::isfinite(q.lo)) clamped(q.lo, -kInf, x_at(q.lo));
        if (std::isfinite(q.hi)) clamped(q.hi, x_at(q.hi), kInf);
    } else {
        if (!std::isfinite(q.lo) || !std::isfinite(q.hi))
            throw UnboundedPotential("concave unbounded potential piece");
        clamped(q.lo, -kInf, kInf);
        clamped(q.hi, -kInf, kInf);
    }
}

// Roots of c1 - c2 inside [lo, hi] (the overlap of validity and domain).
void intersection_roots(const Cand& c1, const Cand& c2, double lo, double hi,
                        std::vector<double>& xs) {
    const double d2 = c1.a2 - c2.a2;
    const double d1 = c1.a1 - c2.a1;
    const double d0 = c1.a0 - c2.a0;
    auto push = [&](double r) {
        if (std::isfinite(r) && r > lo && r < hi) xs.push_back(r);
    };
    if (std::abs(d2) < 1e-300) {
        if (d1 != 0.0) push(-d0 / d1);
        return;
    }
    const double disc = d1 * d1 - 4.0 * d2 * d0;
    if (disc < 0.0) return;
    const double sq = std::sqrt(disc);
    // numerically stable pair
    const double qq = -0.5 * (d1 + (d1 >= 0.0 ? sq : -sq));
    push(qq / d2);
    if (qq != 0.0) push(d0 / qq);
}

std::size_t pick_winner(const std::vector<Cand>& cands, double x) {
    double vmin = kInf;
    for (const auto& c : cands)
        if (c.valid(x)) vmin = std::min(vmin, c.value(x));
    const double tol = 1e-12 * std::max(1.0, std::abs(vmin));
    std::size_t best = cands.size();
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const auto& c = cands[i];
        if (!c.valid(x) || c.value(x) > vmin + tol) continue;
        if (best == cands.size()) {
            best = i;
            continue;
        }
        const auto& b = cands[best];
        const double ua = std::abs(c.deriv(x)), ub = std::abs(b.deriv(x));
        const double sa = c.src.x, sb = b.src.x;
        if (ua < ub - 1e-13 || (std::abs(ua - ub) <= 1e-13 && sa < sb)) best = i;
    }
    return best;
}

VelocityProfile envelope_sweep(const std::vector<Cand>& cands, double x_lo,
                               double x_hi, double time_stamp) {
    std::vector<double> xs{x_lo, x_hi};
    for (const auto& c : cands) {
        if (c.lo > x_lo && c.lo < x_hi) xs.push_back(c.lo);
        if (c.hi > x_lo && c.hi < x_hi) xs.push_back(c.hi);
    }
    for (std::size_t i = 0; i < cands.size(); ++i)
        for (std::size_t j = i + 1; j < cands.size(); ++j) {
            const double lo = std::max({x_lo, cands[i].lo, cands[j].lo});
            const double hi = std::min({x_hi, cands[i].hi, cands[j].hi});
            if (hi > lo) intersection_roots(cands[i], cands[j], lo, hi, xs);
        }
    std::sort(xs.begin(), xs.end());
    const double scale = std::max(1.0, std::max(std::abs(x_lo), std::abs(x_hi)));
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [&](double a, double b) {
                             return std::abs(a - b) < 1e-13 * scale;
                         }),
             xs.end());

    VelocityProfile out;
    out.x_lo = x_lo;
    out.x_hi = x_hi;
    out.time_stamp = time_stamp;
    std::size_t prev_winner = cands.size();
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double mid = 0.5 * (xs[i] + xs[i + 1]);
        const std::size_t w = pick_winner(cands, mid);
        if (w == cands.size()) throw InvalidDomain("no valid candidate on interval");
        if (w == prev_winner) {
            out.pieces.back().x_right = xs[i + 1];
            continue;
        }
        const auto& c = cands[w];
        ProfilePiece p;
        p.x_left = xs[i];
        p.x_right = xs[i + 1];
        p.slope = 2.0 * c.a2;
        p.intercept = c.a1;
        p.source = c.src;
        // merge if the velocity function is the same as the previous piece
        if (!out.pieces.empty() && std::abs(out.pieces.back().slope - p.slope) < 1e-12 &&
            std::abs(out.pieces.back().intercept - p.intercept) < 1e-12 *
                std::max(1.0, std::abs(p.intercept))) {
            out.pieces.back().x_right = xs[i + 1];
            prev_winner = w;
            continue;
        }
        out.pieces.push_back(p);
        prev_winner = w;
    }
    for (std::size_t i = 0; i + 1 < out.pieces.size(); ++i) {
        const double x = out.pieces[i].x_right;
        const double ul = out.pieces[i].velocity(x);
        const double ur = out.pieces[i + 1].velocity(x);
        if (ul > ur + 1e-9) out.shocks.push_back({x, ul, ur});
    }
    return out;
}

}  // namespace

PointField restrict_window(const PointField& field, double a, double b) {
    PointField out = field;
    out.t_lo = a;
    out.t_hi = b;
    out.points.clear();
    for (const auto& p : field.points)
        if (p.t > a && p.t <= b) out.points.push_back(p);
    return out;
}

VelocityProfile evolve(const PointField& field, const Potential& v0, double t0,
                       double t1, double x_lo, double x_hi) {
    if (!(x_hi > x_lo)) throw InvalidDomain("empty spatial domain");
    if (t1 < t0) throw NonCausalQuery("t1 < t0");
    if (t1 == t0) return profile_from_potential(v0, x_lo, x_hi, t1);

    PointField sub = restrict_window(field, t0, t1);
    // points exactly at t1 influence a single x only; drop them
    std::erase_if(sub.points, [&](const SpaceTimePoint& p) { return p.t >= t1; });
    const MinimizerTable table = build_table(sub, v0, t0);

    std::vector<Cand> cands;
    for (std::size_t j = 0; j < sub.points.size(); ++j) {
        const double tau = t1 - sub.points[j].t;
        const double xj = sub.points[j].x;
        Cand c;
        c.a2 = 0.5 / tau;
        c.a1 = -xj / tau;
        c.a0 = table.cost[j] + xj * xj / (2.0 * tau);
        c.src.from_start = false;
        c.src.s = sub.points[j].t;
        c.src.x = xj;
        c.src.point_index = static_cast<int>(j);
        cands.push_back(c);
    }
    for (const auto& q : v0.pieces) start_candidates(q, t1 - t0, cands);
    return envelope_sweep(cands, x_lo, x_hi, t1);
}

CocycleReport cocycle_check(const PointField& field, const Potential& v0,
                            double t0, double t_mid, double t1, double x_lo,
                            double x_hi, int probes) {
    if (!(t0 <= t_mid && t_mid <= t1)) throw NonCausalQuery("bad split time");
    const double pad =
        field.measure.support_radius() + 4.0 + 2.0 * (t1 - t0 > 16.0 ? 16.0 : t1 - t0);
    const double wlo = x_lo - pad, whi = x_hi + pad;

    const VelocityProfile direct = evolve(field, v0, t0, t1, wlo, whi);
    const VelocityProfile mid = evolve(field, v0, t0, t_mid, wlo, whi);
    const Potential vmid = potential_from_profile(mid);
    const VelocityProfile composed = evolve(field, vmid, t_mid, t1, wlo, whi);

    CocycleReport rep;
    for (int i = 0; i < probes; ++i) {
        const double x =
            x_lo + (x_hi - x_lo) * (static_cast<double>(i) + 0.5) / probes;
        if (direct.shock_distance(x) < 1e-6 || composed.shock_distance(x) < 1e-6)
            continue;
        rep.max_velocity_discrepancy =
            std::max(rep.max_velocity_discrepancy,
                     std::abs(direct.velocity(x) - composed.velocity(x)));
    }
    auto directed = [&](const VelocityProfile& a, const VelocityProfile& b) {
        double h = 0.0;
        for (const auto& s : a.shocks) {
            if (s.x < x_lo || s.x > x_hi) continue;
            double d = kInf;
            for (const auto& o : b.shocks) d = std::min(d, std::abs(o.x - s.x));
            h = std::max(h, d);
        }
        return h;
    };
    rep.shock_hausdorff = std::max(directed(direct, composed),
                                   directed(composed, direct));
    if (!std::isfinite(rep.shock_hausdorff)) rep.shock_hausdorff = kInf;
    return rep;
}

SinglePointResult single_point_oracle(double a, double b, double t, double x) {
    if (!(b > 0.0)) throw OutOfModelRange("model case requires b > 0");
    if (!(t > 0.0)) throw OutOfModelRange("model case requires t > 0");
    SinglePointResult r;
    r.A1 = x * x / (2.0 * t) - 1.0;
    r.A2 = (b * x * x + 2.0 * a * x - a * a * t) / (2.0 * (1.0 + b * t));
    constexpr double tol = 1e-12;
    if (std::abs(r.A1 - r.A2) <= tol * std::max(1.0, std::abs(r.A1)))
        r.side = OracleSide::shock;
    else
        r.side = r.A1 < r.A2 ? OracleSide::origin : OracleSide::beam;
    return r;
}

Tesselation tesselate(const PointField& field, double t0, const Potential& v0,
                      const std::vector<double>& times, double x_lo,
                      double x_hi) {
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        if (!(times[i] < times[i + 1])) throw NonCausalQuery("times not increasing");
    if (!times.empty() && !(times.front() > t0))
        throw NonCausalQuery("query times must exceed t0");

    Tesselation tes;
    tes.times = times;
    tes.x_lo = x_lo;
    tes.x_hi = x_hi;
    std::map<std::pair<double, double>, std::size_t> by_point;
    std::size_t start_cell = SIZE_MAX;
    for (double t : times) {
        VelocityProfile prof = evolve(field, v0, t0, t, x_lo, x_hi);
        for (const auto& piece : prof.pieces) {
            std::size_t idx;
            if (piece.source.from_start) {
                if (start_cell == SIZE_MAX) {
                    start_cell = tes.cells.size();
                    tes.cells.push_back({piece.source, {}});
                    tes.cells.back().source.from_start = true;
                }
                idx = start_cell;
            } else {
                const auto key = std::make_pair(piece.source.s, piece.source.x);
                auto it = by_point.find(key);
                if (it == by_point.end()) {
                    it = by_point.emplace(key, tes.cells.size()).first;
                    tes.cells.push_back({piece.source, {}});
                }
                idx = it->second;
            }
            tes.cells[idx].strips.push_back({t, piece.x_left, piece.x_right});
        }
        tes.profiles.push_back(std::move(prof));
    }
    return tes;
}

nlohmann::json Tesselation::to_json() const {
    nlohmann::json j;
    j["times"] = times;
    j["domain"] = {x_lo, x_hi};
    j["cells"] = nlohmann::json::array();
    for (const auto& c : cells) {
        nlohmann::json cell;
        if (c.source.from_start)
            cell["source"] = "start";
        else
            cell["source"] = {c.source.s, c.source.x};
        cell["strips"] = nlohmann::json::array();
        for (const auto& s : c.strips) cell["strips"].push_back({s[0], s[1], s[2]});
        j["cells"].push_back(cell);
    }
    return j;
}

}  // namespace burgers
