#include "burgers/pullback.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "burgers/errors.hpp"

namespace burgers {

namespace {

std::vector<double> probe_grid(double R, int n) {
    std::vector<double> xs;
    if (n == 1) {
        xs.push_back(0.0);
        return xs;
    }
    for (int i = 0; i < n; ++i)
        xs.push_back(-R + 2.0 * R * static_cast<double>(i) / (n - 1));
    return xs;
}

PiecewisePath backward_trace(const PointField& field, double T, double x) {
    const PointField sub = restrict_window(field, -T, 0.0);
    const Potential zero = Potential::zero();
    const MinimizerTable table = build_table(sub, zero, -T);
    return extract_path(table, sub, zero, 0.0, x);
}

// Latest vertex common to all traces (excluding each trace's terminal vertex).
std::optional<SpaceTimePoint> common_vertex(
    const std::vector<PiecewisePath>& traces) {
    if (traces.empty()) return std::nullopt;
    const auto& first = traces.front().vertices;
    for (auto it = first.rbegin() + 1; it != first.rend(); ++it) {
        bool in_all = true;
        for (std::size_t k = 1; k < traces.size() && in_all; ++k) {
            const auto& v = traces[k].vertices;
            in_all = std::find(v.begin(), v.end() - 1, *it) != v.end() - 1;
        }
        if (in_all) return *it;
    }
    return std::nullopt;
}

}  // namespace

const VelocityProfile& PullbackRun::stabilized_profile() const {
    if (!stabilized_at) throw NotStabilized("pullback run did not stabilize");
    return profiles[*stabilized_at];
}

double PullbackRun::stabilized_horizon() const {
    if (!stabilized_at) throw NotStabilized("pullback run did not stabilize");
    return schedule[*stabilized_at];
}

nlohmann::json PullbackRun::manifest() const {
    nlohmann::json j;
    j["seed"] = master_seed;
    j["schedule"] = schedule;
    j["window_R"] = window_R;
    j["measure"] = measure.to_json();
    j["stabilized"] = stabilized();
    if (stabilized_at) {
        j["stabilized_at_index"] = *stabilized_at;
        j["stabilized_horizon"] = schedule[*stabilized_at];
    }
    if (coalescence_time) j["coalescence_time"] = *coalescence_time;
    return j;
}

PullbackRun pullback_solution(std::uint64_t master_seed,
                              const IntensityMeasure& measure, double R,
                              const std::vector<double>& schedule,
                              int certificate_probes) {
    for (std::size_t i = 0; i + 1 < schedule.size(); ++i)
        if (!(schedule[i] < schedule[i + 1]))
            throw ConfigError("schedule must be strictly increasing");
    if (!(R > 0.0)) throw ConfigError("window radius must be positive");

    PullbackRun run;
    run.master_seed = master_seed;
    run.measure = measure;
    run.schedule = schedule;
    run.window_R = R;
    run.domain_half_width = R + measure.support_radius() + 4.0;

    const double T_max = schedule.back();
    const PointField field = sample(measure, -T_max, 0.0, master_seed);
    const Potential zero = Potential::zero();
    const double D = run.domain_half_width;

    for (std::size_t k = 0; k < schedule.size(); ++k) {
        const double T = schedule[k];
        const PointField sub = restrict_window(field, -T, 0.0);
        run.profiles.push_back(evolve(sub, zero, -T, 0.0, -D, D));
        if (run.stabilized_at || k == 0) continue;

        if (!structurally_equal(run.profiles[k - 1], run.profiles[k], -R, R))
            continue;
        if (sub.points.empty()) {
            run.stabilized_at = k;  // forcing-free: zero solution everywhere
            continue;
        }
        std::vector<PiecewisePath> traces;
        for (double x : probe_grid(R, certificate_probes))
            traces.push_back(backward_trace(field, T, x));
        const auto cv = common_vertex(traces);
        if (cv && cv->t >= -schedule[k - 1]) {
            run.stabilized_at = k;
            run.coalescence_time = cv->t;
        }
    }
    return run;
}

MinimizerTrace backward_minimizer(const PullbackRun& run, double x) {
    if (!run.stabilized()) throw NotStabilized("pullback run did not stabilize");
    const double T = run.schedule.back();
    const PointField field = sample(run.measure, -T, 0.0, run.master_seed);
    if (field.points.empty()) throw NotStabilized("no forcing points to anchor");
    MinimizerTrace trace;
    trace.path = backward_trace(field, T, x);
    trace.kind = MinimizerTrace::Kind::one_sided_backward;
    trace.stabilization_horizon = run.stabilized_horizon();
    trace.stabilized = true;
    return trace;
}

std::string MinimizerTrace::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "t,x\n";
    for (const auto& v : path.vertices) os << v.t << ',' << v.x << '\n';
    return os.str();
}

SkewInvarianceReport skew_invariance_check(const PullbackRun& run, double t,
                                           double R_probe) {
    if (!run.stabilized()) throw NotStabilized("pullback run did not stabilize");
    if (t < 0.0) throw NonCausalQuery("skew check requires t >= 0");
    const double T_max = run.schedule.back();
    const double D = run.domain_half_width;
    const PointField field = sample(run.measure, -T_max, t, run.master_seed);
    const Potential zero = Potential::zero();

    // evolve the pullback solution forward by t under the same realization
    const Potential u0 = potential_from_profile(run.profiles.back());
    const PointField fwd = restrict_window(field, 0.0, t);
    const VelocityProfile evolved =
        t == 0.0 ? run.profiles.back() : evolve(fwd, u0, 0.0, t, -D, D);

    // independent pullback targeting time t
    const PointField full = restrict_window(field, -T_max, t);
    const VelocityProfile target = evolve(full, zero, -T_max, t, -D, D);

    SkewInvarianceReport rep;
    rep.structurally_equal =
        structurally_equal(evolved, target, -R_probe, R_probe);
    rep.distance = profile_distance(evolved, target).value;
    return rep;
}

AttractionSeries attraction_experiment(const PullbackRun& run,
                                       const Potential& v0, AttractionMode mode,
                                       const std::vector<double>& horizons,
                                       double q_est, double R_probe) {
    AttractionSeries series;
    const double margin = 1e-9;
    if (!(run.measure.total_mass() > 0.0)) throw ConfigError("zero mass");
    if (v0.right_tail_slope() <= -q_est + margin ||
        v0.left_tail_slope() >= q_est - margin)
        series.outside_basin = true;  // executed and labeled, not rejected

    const double T_max = run.schedule.back();
    const double h_max = horizons.empty() ? 0.0 : horizons.back();
    const double D = run.domain_half_width;
    const PointField field = sample(run.measure, -T_max, h_max, run.master_seed);
    const Potential zero = Potential::zero();

    for (double h : horizons) {
        AttractionPoint pt;
        pt.horizon = h;
        VelocityProfile a, b;
        if (mode == AttractionMode::forward) {
            a = evolve(restrict_window(field, 0.0, h), v0, 0.0, h, -D, D);
            b = evolve(restrict_window(field, -T_max, h), zero, -T_max, h, -D, D);
        } else {
            a = evolve(restrict_window(field, -h, 0.0), v0, -h, 0.0, -D, D);
            b = run.profiles.back();
        }
        pt.distance = profile_distance(a, b).value;
        pt.saturated = structurally_equal(a, b, -R_probe, R_probe);
        series.points.push_back(pt);
    }
    return series;
}

CoalescenceReport hyperhyperbolicity_check(const PullbackRun& run,
                                           const std::vector<double>& probes) {
    if (!run.stabilized()) throw NotStabilized("pullback run did not stabilize");
    const double T = run.schedule.back();
    const PointField field = sample(run.measure, -T, 0.0, run.master_seed);

    std::vector<PiecewisePath> traces;
    traces.reserve(probes.size());
    for (double x : probes) traces.push_back(backward_trace(field, T, x));

    CoalescenceReport rep;
    rep.success = true;
    for (std::size_t i = 0; i < traces.size(); ++i)
        for (std::size_t j = i + 1; j < traces.size(); ++j) {
            CoalescencePair pair;
            pair.x1 = probes[i];
            pair.x2 = probes[j];
            const auto& a = traces[i].vertices;
            const auto& b = traces[j].vertices;
            std::size_t L = 0;
            while (L < a.size() && L < b.size() && a[L] == b[L]) ++L;
            if (L > 0) {
                pair.coalesced = true;
                pair.tau = a[L - 1].t;
                rep.max_tau = std::max(rep.max_tau, pair.tau);
            } else {
                rep.success = false;
            }
            rep.pairs.push_back(pair);
        }
    return rep;
}

MinimizerTrace two_sided_minimizer(std::uint64_t master_seed,
                                   const IntensityMeasure& measure,
                                   const std::vector<double>& horizons) {
    for (std::size_t i = 0; i + 1 < horizons.size(); ++i)
        if (!(horizons[i] < horizons[i + 1]))
            throw ConfigError("horizons must be strictly increasing");
    const double T1 = horizons.front();
    const double T_max = horizons.back();
    const PointField field = sample(measure, -T_max, T_max, master_seed);

    auto pinned_path = [&](double T) {
        const PointField sub = restrict_window(field, -T, T);
        const MinimizerTable table = build_table_pinned(sub, 0.0, -T);
        return extract_path_pinned(table, sub, 0.0, T, 0.0);
    };
    // interior (forcing-point) vertices inside [-T1, T1]
    auto middle = [&](const PiecewisePath& p) {
        std::vector<SpaceTimePoint> m;
        for (std::size_t i = 1; i + 1 < p.vertices.size(); ++i) {
            const auto& v = p.vertices[i];
            if (v.t >= -T1 && v.t <= T1) m.push_back(v);
        }
        return m;
    };

    MinimizerTrace trace;
    trace.kind = MinimizerTrace::Kind::two_sided_recurrent;
    PiecewisePath prev = pinned_path(horizons.front());
    for (std::size_t k = 1; k < horizons.size(); ++k) {
        PiecewisePath cur = pinned_path(horizons[k]);
        if (middle(prev) == middle(cur)) {
            trace.stabilized = true;
            trace.stabilization_horizon = horizons[k];
            trace.path = cur;
            for (const auto& v : middle(cur))
                trace.recurrence_radius =
                    std::max(trace.recurrence_radius, std::abs(v.x));
            return trace;
        }
        prev = std::move(cur);
    }
    trace.path = prev;
    trace.stabilized = false;
    return trace;
}

}  // namespace burgers
