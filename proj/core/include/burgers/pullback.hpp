#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "burgers/envelope.hpp"

namespace burgers {

// Pullback construction: Phi^{-T_k, 0} 0 on a window, for a schedule of
// growing horizons sharing one block-seeded realization.
struct PullbackRun {
    std::uint64_t master_seed = 0;
    IntensityMeasure measure;
    std::vector<double> schedule;
    double window_R = 0.0;
    double domain_half_width = 0.0;
    std::vector<VelocityProfile> profiles;  // one per horizon, on the padded domain
    std::optional<std::size_t> stabilized_at;
    std::optional<double> coalescence_time;

    bool stabilized() const { return stabilized_at.has_value(); }
    const VelocityProfile& stabilized_profile() const;
    double stabilized_horizon() const;

    nlohmann::json manifest() const;
};

PullbackRun pullback_solution(std::uint64_t master_seed,
                              const IntensityMeasure& measure, double R,
                              const std::vector<double>& schedule,
                              int certificate_probes = 9);

struct MinimizerTrace {
    enum class Kind { one_sided_backward, two_sided_recurrent };
    PiecewisePath path;
    Kind kind = Kind::one_sided_backward;
    double stabilization_horizon = 0.0;
    double recurrence_radius = 0.0;  // two-sided only
    bool stabilized = false;

    std::string to_csv() const;
};

// The stabilized backward minimizer from (0, x).
MinimizerTrace backward_minimizer(const PullbackRun& run, double x);

struct SkewInvarianceReport {
    bool structurally_equal = false;
    double distance = 1.0;
};

// Compares Phi^{0,t} u_omega against an independent pullback targeting
// time t under the same realization.
SkewInvarianceReport skew_invariance_check(const PullbackRun& run, double t,
                                           double R_probe);

enum class AttractionMode { forward, pullback };

struct AttractionPoint {
    double horizon = 0.0;
    double distance = 1.0;
    bool saturated = false;
};

struct AttractionSeries {
    bool outside_basin = false;  // Eq.(9)-type slope condition violated
    std::vector<AttractionPoint> points;
    bool final_saturated() const {
        return !points.empty() && points.back().saturated;
    }
};

AttractionSeries attraction_experiment(const PullbackRun& run,
                                       const Potential& v0, AttractionMode mode,
                                       const std::vector<double>& horizons,
                                       double q_est, double R_probe = 1.0);

struct CoalescencePair {
    double x1 = 0.0, x2 = 0.0;
    bool coalesced = false;
    double tau = 0.0;  // traces coincide on (-inf, tau]
};

struct CoalescenceReport {
    bool success = false;
    double max_tau = 0.0;
    std::vector<CoalescencePair> pairs;
};

CoalescenceReport hyperhyperbolicity_check(const PullbackRun& run,
                                           const std::vector<double>& probes);

// Recurrent global minimizer via M_{-T,0}^{T,0} for growing T; declares
// stabilization when the restriction to [-T_1, T_1] is vertex-identical
// across two consecutive horizons.
MinimizerTrace two_sided_minimizer(std::uint64_t master_seed,
                                   const IntensityMeasure& measure,
                                   const std::vector<double>& horizons);

}  // namespace burgers
