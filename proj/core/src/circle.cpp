#include "burgers/circle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>

#include "burgers/errors.hpp"

namespace burgers {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<Anchor> find_anchors(const PointField& field) {
    if (field.topology != Topology::cylinder)
        throw ConfigError("anchors are defined on the cylinder");
    std::vector<Anchor> anchors;
    const auto& pts = field.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool isolated = true;
        // points are time-sorted; scan the +-1 neighborhood
        for (std::size_t j = i; j-- > 0;) {
            if (pts[i].t - pts[j].t > 1.0) break;
            isolated = false;
        }
        for (std::size_t j = i + 1; isolated && j < pts.size(); ++j) {
            if (pts[j].t - pts[i].t > 1.0) break;
            isolated = false;
        }
        if (isolated)
            anchors.push_back({pts[i].t, pts[i].x, static_cast<int>(i)});
    }
    return anchors;
}

CircleSegment circle_segment(double x_from, double x_to, double dt, int W_max) {
    if (!(dt > 0.0)) throw NonCausalSegment("circle segment requires dt > 0");
    if (W_max < 1) throw ConfigError("W_max must be >= 1");
    const double dx = x_to - x_from;
    CircleSegment best;
    best.cost = kInf;
    for (int w = -W_max; w <= W_max; ++w) {
        const double d = dx + static_cast<double>(w);
        const double c = d * d / (2.0 * dt);
        if (c < best.cost) {
            best.cost = c;
            best.displacement = d;
            best.winding = w;
        }
    }
    best.truncated = std::abs(best.winding) == W_max;
    return best;
}

namespace {

InterAnchorMinimizer pinned_dp(const std::vector<SpaceTimePoint>& interior,
                               const Anchor& a, const Anchor& b, int W_max,
                               double lift_start, bool strict) {
    std::vector<double> cost(interior.size());
    std::vector<int> pred(interior.size());
    std::vector<bool> trunc(interior.size(), false);
    for (std::size_t j = 0; j < interior.size(); ++j) {
        const auto seg0 = circle_segment(a.x, interior[j].x, interior[j].t - a.t,
                                         W_max);
        double best = seg0.cost;
        int p = -1;
        bool tr = seg0.truncated;
        for (std::size_t i = 0; i < j; ++i) {
            if (interior[i].t >= interior[j].t) continue;
            const auto seg = circle_segment(interior[i].x, interior[j].x,
                                            interior[j].t - interior[i].t, W_max);
            if (cost[i] + seg.cost < best) {
                best = cost[i] + seg.cost;
                p = static_cast<int>(i);
                tr = seg.truncated;
            }
        }
        cost[j] = best - 1.0;
        pred[j] = p;
        trunc[j] = tr;
    }
    const auto direct = circle_segment(a.x, b.x, b.t - a.t, W_max);
    double best = direct.cost;
    int last = -1;
    bool tr_last = direct.truncated;
    for (std::size_t j = 0; j < interior.size(); ++j) {
        const auto seg = circle_segment(interior[j].x, b.x, b.t - interior[j].t,
                                        W_max);
        if (cost[j] + seg.cost < best) {
            best = cost[j] + seg.cost;
            last = static_cast<int>(j);
            tr_last = seg.truncated;
        }
    }

    InterAnchorMinimizer out;
    out.action = best;
    std::vector<int> chain;  // interior indices along the path
    for (int j = last; j >= 0; j = pred[j]) chain.push_back(j);
    std::reverse(chain.begin(), chain.end());

    out.truncated = tr_last;
    for (int j : chain) out.truncated = out.truncated || trunc[j];
    if (strict && out.truncated)
        throw WindingTruncation("inter-anchor optimum hit the winding bound");

    out.vertices.push_back({a.t, a.x, lift_start});
    double lift = lift_start;
    double prev_x = a.x;
    double prev_t = a.t;
    for (int j : chain) {
        const auto seg = circle_segment(prev_x, interior[j].x,
                                        interior[j].t - prev_t, W_max);
        lift += seg.displacement;
        out.vertices.push_back({interior[j].t, interior[j].x, lift});
        prev_x = interior[j].x;
        prev_t = interior[j].t;
    }
    const auto seg = circle_segment(prev_x, b.x, b.t - prev_t, W_max);
    lift += seg.displacement;
    out.vertices.push_back({b.t, b.x, lift});
    out.winding = static_cast<int>(std::llround((lift - lift_start) - (b.x - a.x)));
    return out;
}

}  // namespace

InterAnchorMinimizer inter_anchor_minimizer(const PointField& field,
                                            const Anchor& a, const Anchor& b,
                                            int W_max, double lift_start,
                                            bool strict) {
    if (!(b.t > a.t)) throw NonCausalSegment("anchors out of order");
    std::vector<SpaceTimePoint> interior;
    for (const auto& p : field.points)
        if (p.t > a.t && p.t < b.t) interior.push_back(p);
    return pinned_dp(interior, a, b, W_max, lift_start, strict);
}

InterAnchorMinimizer full_pinned_minimizer(const PointField& field,
                                           const Anchor& a, const Anchor& b,
                                           int W_max) {
    return inter_anchor_minimizer(field, a, b, W_max, a.x, false);
}

AnchorChain build_chain(const PointField& field, int W_max, bool strict) {
    AnchorChain chain;
    chain.anchors = find_anchors(field);
    if (chain.anchors.size() < 2)
        throw TooFewAnchors("need at least two isolated anchors");
    chain.lifts.push_back(chain.anchors.front().x);
    for (std::size_t k = 1; k < chain.anchors.size(); ++k) {
        const auto m = inter_anchor_minimizer(field, chain.anchors[k - 1],
                                              chain.anchors[k], W_max,
                                              chain.lifts.back(), strict);
        if (m.truncated) ++chain.truncated_segments;
        chain.lifts.push_back(m.vertices.back().lift);
        chain.dt.push_back(chain.anchors[k].t - chain.anchors[k - 1].t);
        chain.dgamma.push_back(chain.lifts[k] - chain.lifts[k - 1]);
        chain.windings.push_back(m.winding);
        const std::size_t skip = chain.path.empty() ? 0 : 1;
        chain.path.insert(chain.path.end(), m.vertices.begin() + skip,
                          m.vertices.end());
    }
    return chain;
}

std::string AnchorChain::increments_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "k,t_k,x_k,lift,dt,dgamma,winding\n";
    for (std::size_t k = 0; k < anchors.size(); ++k) {
        os << k << ',' << anchors[k].t << ',' << anchors[k].x << ','
           << lifts[k] << ',';
        if (k == 0)
            os << "0,0,0\n";
        else
            os << dt[k - 1] << ',' << dgamma[k - 1] << ',' << windings[k - 1]
               << '\n';
    }
    return os.str();
}

DiffusionEstimate estimate_diffusion(const IntensityMeasure& measure,
                                     double horizon,
                                     const std::vector<std::uint64_t>& seeds,
                                     int W_max,
                                     const std::vector<int>& block_lengths,
                                     int workers) {
    const double mass = measure.total_mass();
    const double expected_anchors = horizon * mass * std::exp(-2.0 * mass);
    if (expected_anchors < 20.0)
        throw TooFewAnchors("expected anchor count too small for estimation");

    std::vector<AnchorChain> chains(seeds.size());
    std::vector<bool> usable(seeds.size(), false);
    auto run_seed = [&](std::size_t s) {
        const PointField field =
            sample(measure, 0.0, horizon, seeds[s], Topology::cylinder);
        try {
            chains[s] = build_chain(field, W_max);
            usable[s] = true;
        } catch (const TooFewAnchors&) {
        }
    };
    if (workers <= 1) {
        for (std::size_t s = 0; s < seeds.size(); ++s) run_seed(s);
    } else {
        std::vector<std::future<void>> futs;
        std::atomic<std::size_t> next{0};
        for (int w = 0; w < workers; ++w)
            futs.push_back(std::async(std::launch::async, [&] {
                for (std::size_t s = next++; s < seeds.size(); s = next++)
                    run_seed(s);
            }));
        for (auto& f : futs) f.get();
    }

    DiffusionEstimate est;
    est.n_anchors_min = SIZE_MAX;
    std::vector<double> all_dt, all_dg;
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        if (!usable[s]) continue;
        all_dt.insert(all_dt.end(), chains[s].dt.begin(), chains[s].dt.end());
        all_dg.insert(all_dg.end(), chains[s].dgamma.begin(),
                      chains[s].dgamma.end());
        est.n_anchors_min = std::min(est.n_anchors_min, chains[s].anchors.size());
    }
    if (all_dg.empty()) throw TooFewAnchors("no usable seeds");
    est.n_increments = all_dg.size();
    est.h_est = mean(all_dt);
    double s2 = 0.0;
    for (double d : all_dg) s2 += d * d;  // raw second moment, no centering
    est.sigma2_est = s2 / static_cast<double>(all_dg.size());
    est.D_est = est.sigma2_est / est.h_est;
    est.mean_increment = normal_mean_ci(all_dg);

    // lag-2 correlation over within-seed pairs
    {
        std::vector<double> a, b;
        for (std::size_t s = 0; s < seeds.size(); ++s) {
            if (!usable[s]) continue;
            const auto& v = chains[s].dgamma;
            for (std::size_t i = 0; i + 2 < v.size(); ++i) {
                a.push_back(v[i]);
                b.push_back(v[i + 2]);
            }
        }
        ConfidenceInterval ci;
        if (a.size() > 3) {
            const double ma = mean(a), mb = mean(b);
            double num = 0.0, da = 0.0, db = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                num += (a[i] - ma) * (b[i] - mb);
                da += (a[i] - ma) * (a[i] - ma);
                db += (b[i] - mb) * (b[i] - mb);
            }
            const double r = (da > 0.0 && db > 0.0) ? num / std::sqrt(da * db) : 0.0;
            const double se = 1.0 / std::sqrt(static_cast<double>(a.size()));
            ci.mean = r;
            ci.lo = r - 1.959963984540054 * se;
            ci.hi = r + 1.959963984540054 * se;
        }
        est.lag2_correlation = ci;
    }

    // pooled standardized non-overlapping block sums per block length
    for (int k : block_lengths) {
        std::vector<double> z;
        for (std::size_t s = 0; s < seeds.size(); ++s) {
            if (!usable[s]) continue;
            const auto& v = chains[s].dgamma;
            for (std::size_t i = 0; i + static_cast<std::size_t>(k) <= v.size();
                 i += static_cast<std::size_t>(k)) {
                double sum = 0.0;
                for (int j = 0; j < k; ++j) sum += v[i + static_cast<std::size_t>(j)];
                z.push_back(sum / std::sqrt(est.sigma2_est * k));
            }
        }
        est.normality_p[k] = z.size() >= 8
                                 ? anderson_darling_normal_p(z)
                                 : std::numeric_limits<double>::quiet_NaN();
    }
    return est;
}

nlohmann::json DiffusionEstimate::to_json() const {
    nlohmann::json j;
    j["h_est"] = h_est;
    j["sigma2_est"] = sigma2_est;
    j["D_est"] = D_est;
    j["mean_increment"] = {{"mean", mean_increment.mean},
                           {"ci", {mean_increment.lo, mean_increment.hi}}};
    j["lag2_correlation"] = {{"mean", lag2_correlation.mean},
                             {"ci", {lag2_correlation.lo, lag2_correlation.hi}}};
    j["normality_p"] = nlohmann::json::object();
    for (const auto& [k, p] : normality_p)
        j["normality_p"][std::to_string(k)] = p;
    j["n_increments"] = n_increments;
    j["n_anchors_min"] = n_anchors_min;
    return j;
}

}  // namespace burgers
