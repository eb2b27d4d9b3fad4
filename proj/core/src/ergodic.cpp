#include "burgers/ergodic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <nlohmann/json.hpp>
#include <sstream>

#include "burgers/action.hpp"
#include "burgers/errors.hpp"

namespace burgers {

double constrained_optimum(const PointField& field, double R, double t0,
                           double t1) {
    if (!(t1 > t0)) throw NonCausalQuery("constrained optimum needs t1 > t0");
    if (!(R > 0.0)) throw ConfigError("radius must be positive");
    std::vector<SpaceTimePoint> pts;
    for (const auto& p : field.points)
        if (p.t > t0 && p.t <= t1 && std::abs(p.x) <= R) pts.push_back(p);
    if (pts.empty()) return 0.0;

    // free start anywhere in B_R: waiting at the first point costs nothing
    std::vector<double> cost(pts.size());
    double best = 0.0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
        double c = 0.0;
        for (std::size_t i = 0; i < j; ++i) {
            if (pts[i].t >= pts[j].t) continue;
            c = std::min(c, cost[i] + segment_action(pts[i], pts[j]));
        }
        cost[j] = c - 1.0;
        best = std::min(best, cost[j]);
    }
    return best;
}

double q_from_S(double S_est) {
    if (!(S_est < 0.0)) throw NonNegativeS("q requires S < 0");
    return std::sqrt(-2.0 * S_est);
}

ErgodicEstimate estimate_S(const IntensityMeasure& measure,
                           const std::vector<double>& R_list,
                           const std::vector<double>& t_list,
                           const std::vector<std::uint64_t>& seeds,
                           int bootstrap_resamples, int workers) {
    if (R_list.empty() || t_list.empty() || seeds.empty())
        throw ConfigError("estimate_S needs nonempty R, t and seed lists");
    for (std::size_t i = 0; i + 1 < R_list.size(); ++i)
        if (!(R_list[i] < R_list[i + 1])) throw ConfigError("R_list not increasing");
    for (std::size_t i = 0; i + 1 < t_list.size(); ++i)
        if (!(t_list[i] < t_list[i + 1])) throw ConfigError("t_list not increasing");

    ErgodicEstimate est;
    est.R_list = R_list;
    est.t_list = t_list;
    est.seeds = seeds;

    const double t_max = t_list.back();
    // per seed, per (R, t): S^{0,t}_{B_R} / t under the coherent realization
    std::vector<std::vector<std::vector<double>>> vals(seeds.size());
    auto run_seed = [&](std::size_t s) {
        const PointField field = sample(measure, 0.0, t_max, seeds[s]);
        std::vector<std::vector<double>> m(R_list.size());
        for (std::size_t i = 0; i < R_list.size(); ++i)
            for (double t : t_list)
                m[i].push_back(constrained_optimum(field, R_list[i], 0.0, t) / t);
        vals[s] = std::move(m);
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

    est.s_values.assign(R_list.size(),
                        std::vector<double>(t_list.size(), 0.0));
    for (std::size_t i = 0; i < R_list.size(); ++i)
        for (std::size_t j = 0; j < t_list.size(); ++j) {
            std::vector<double> col;
            for (const auto& v : vals) col.push_back(v[i][j]);
            est.s_values[i][j] = mean(col);
        }

    const std::size_t iR = R_list.size() - 1;
    const std::size_t jt = t_list.size() - 1;
    for (const auto& v : vals) est.per_seed_optima.push_back(v[iR][jt]);
    est.ci = bootstrap_mean_ci(est.per_seed_optima, bootstrap_resamples, 0.05,
                               seeds.front() ^ 0xb00757a9);
    est.S_est = est.ci.mean;
    if (t_list.size() > 1) {
        std::vector<double> prev;
        for (const auto& v : vals) prev.push_back(v[iR][jt - 1]);
        est.ci_prev_t = bootstrap_mean_ci(prev, bootstrap_resamples, 0.05,
                                          seeds.front() ^ 0xb00757aa);
    } else {
        est.ci_prev_t = est.ci;
    }
    est.q_est = est.S_est < 0.0 ? q_from_S(est.S_est) : 0.0;
    return est;
}

nlohmann::json ErgodicEstimate::to_json() const {
    nlohmann::json j;
    j["R_list"] = R_list;
    j["t_list"] = t_list;
    j["s_values"] = s_values;
    j["S_est"] = S_est;
    j["q_est"] = q_est;
    j["ci"] = {ci.lo, ci.hi};
    j["ci_prev_t"] = {ci_prev_t.lo, ci_prev_t.hi};
    j["seeds"] = seeds;
    return j;
}

std::string ErgodicEstimate::per_seed_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "seed,s_over_t\n";
    for (std::size_t i = 0; i < seeds.size(); ++i)
        os << seeds[i] << ',' << per_seed_optima[i] << '\n';
    return os.str();
}

FarfieldSlopes farfield_slope(const PullbackRun& run, double x1, double x2) {
    if (!run.stabilized()) throw NotStabilized("farfield needs a stabilized run");
    const VelocityProfile& prof = run.profiles.back();
    if (x2 > prof.x_hi || -x2 < prof.x_lo)
        throw OutOfWindow("band outside stabilized window");
    FarfieldSlopes out;
    bool forcing_free = true;
    for (const auto& p : prof.pieces)
        if (!p.source.from_start) forcing_free = false;
    if (forcing_free) {
        out.skipped = true;
        return out;
    }
    auto band_stats = [&](double lo, double hi, double& m, double& disp) {
        // exact integrals of the piecewise-linear profile over [lo, hi]
        double i1 = 0.0, i2 = 0.0;
        for (const auto& p : prof.pieces) {
            const double a = std::max(lo, p.x_left);
            const double b = std::min(hi, p.x_right);
            if (!(b > a)) continue;
            const double ua = p.velocity(a), ub = p.velocity(b);
            i1 += 0.5 * (ua + ub) * (b - a);
            i2 += (ua * ua + ua * ub + ub * ub) * (b - a) / 3.0;
        }
        const double w = hi - lo;
        m = i1 / w;
        disp = std::sqrt(std::max(0.0, i2 / w - m * m));
    };
    band_stats(x1, x2, out.plus_mean, out.plus_dispersion);
    band_stats(-x2, -x1, out.minus_mean, out.minus_dispersion);
    return out;
}

}  // namespace burgers
