#pragma once

#include <map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "burgers/point_field.hpp"
#include "burgers/stats.hpp"

namespace burgers {

struct Anchor {
    double t = 0.0;
    double x = 0.0;  // circle coordinate in [0,1)
    int point_index = -1;
    friend bool operator==(const Anchor&, const Anchor&) = default;
};

// Isolated forcing points on the cylinder: no other point within +-1 in
// time over the whole circle.
std::vector<Anchor> find_anchors(const PointField& field);

// Minimal-winding segment cost on the cylinder, resolved on the cover:
// min over integer w in [-W,W] of (dx + w)^2 / (2 dt).
struct CircleSegment {
    double cost = 0.0;
    double displacement = 0.0;  // dx + w on the cover
    int winding = 0;
    bool truncated = false;     // the optimum hit |w| == W
};
CircleSegment circle_segment(double x_from, double x_to, double dt, int W_max);

struct LiftedVertex {
    double t = 0.0;
    double x = 0.0;     // circle coordinate
    double lift = 0.0;  // cover coordinate
};

struct InterAnchorMinimizer {
    std::vector<LiftedVertex> vertices;  // from anchor a to anchor b inclusive
    int winding = 0;                     // net winding of the segment
    double action = 0.0;                 // kinetic cost minus interior rewards
    bool truncated = false;
};

// Pinned DP between consecutive anchors over the interior forcing points.
InterAnchorMinimizer inter_anchor_minimizer(const PointField& field,
                                            const Anchor& a, const Anchor& b,
                                            int W_max, double lift_start = 0.0,
                                            bool strict = false);

struct AnchorChain {
    std::vector<Anchor> anchors;
    std::vector<double> lifts;       // cover position at each anchor
    std::vector<double> dt;          // anchor gaps
    std::vector<double> dgamma;      // lifted increments
    std::vector<int> windings;       // net winding per inter-anchor segment
    std::vector<LiftedVertex> path;  // full chained minimizer on the cover
    int truncated_segments = 0;

    std::string increments_csv() const;
};

AnchorChain build_chain(const PointField& field, int W_max = 3,
                        bool strict = false);

// Full pinned DP on the cylinder between two anchors spanning several
// anchor gaps; differential check target for the decomposition.
InterAnchorMinimizer full_pinned_minimizer(const PointField& field,
                                           const Anchor& a, const Anchor& b,
                                           int W_max);

struct DiffusionEstimate {
    double h_est = 0.0;       // mean anchor gap
    double sigma2_est = 0.0;  // mean squared lifted increment (raw, uncentered)
    double D_est = 0.0;       // sigma2 / h
    ConfidenceInterval mean_increment;
    ConfidenceInterval lag2_correlation;
    std::map<int, double> normality_p;  // block length -> AD p-value
    std::size_t n_increments = 0;
    std::size_t n_anchors_min = 0;  // fewest anchors over the seeds

    nlohmann::json to_json() const;
};

DiffusionEstimate estimate_diffusion(const IntensityMeasure& measure,
                                     double horizon,
                                     const std::vector<std::uint64_t>& seeds,
                                     int W_max = 3,
                                     const std::vector<int>& block_lengths =
                                         {50, 100, 200},
                                     int workers = 1);

}  // namespace burgers
