#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "burgers/point_field.hpp"
#include "burgers/pullback.hpp"
#include "burgers/stats.hpp"

namespace burgers {

// S_{B_R}^{t0,t1}: optimal action over paths confined to |x| <= R with free
// endpoints and zero-velocity start admissible. Always <= 0.
double constrained_optimum(const PointField& field, double R, double t0,
                           double t1);

struct ErgodicEstimate {
    std::vector<double> R_list;
    std::vector<double> t_list;
    // s_values[i][j] = mean over seeds of S_{B_{R_i}}^{0,t_j} / t_j
    std::vector<std::vector<double>> s_values;
    double S_est = 0.0;
    double q_est = 0.0;
    ConfidenceInterval ci;          // bootstrap CI at the largest (R, t)
    ConfidenceInterval ci_prev_t;   // same R, second-largest horizon
    std::vector<std::uint64_t> seeds;
    std::vector<double> per_seed_optima;  // at the largest (R, t), /t

    nlohmann::json to_json() const;
    std::string per_seed_csv() const;
};

ErgodicEstimate estimate_S(const IntensityMeasure& measure,
                           const std::vector<double>& R_list,
                           const std::vector<double>& t_list,
                           const std::vector<std::uint64_t>& seeds,
                           int bootstrap_resamples = 1000, int workers = 1);

// q = sqrt(-2 S)
double q_from_S(double S_est);

struct FarfieldSlopes {
    double plus_mean = 0.0;
    double minus_mean = 0.0;
    double plus_dispersion = 0.0;
    double minus_dispersion = 0.0;
    bool skipped = false;  // forcing-free profile
};

// Band means of the stabilized profile over [x1, x2] and [-x2, -x1].
FarfieldSlopes farfield_slope(const PullbackRun& run, double x1, double x2);

}  // namespace burgers
