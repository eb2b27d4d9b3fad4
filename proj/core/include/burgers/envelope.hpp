#pragma once

#include <array>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "burgers/action.hpp"
#include "burgers/profile.hpp"

namespace burgers {

// Restriction of a field to points with a < t <= b (window metadata follows).
PointField restrict_window(const PointField& field, double a, double b);

// Solution map Phi^{t0,t1}: exact lower envelope over x of the terminal
// parabolas (one per forcing point before t1, plus the inf-convolution of
// the initial potential).
VelocityProfile evolve(const PointField& field, const Potential& v0,
                       double t0, double t1, double x_lo, double x_hi);

struct CocycleReport {
    double max_velocity_discrepancy = 0.0;
    double shock_hausdorff = 0.0;
};

// Compares evolve(t0->t1) against evolve(t_mid->t1) o evolve(t0->t_mid)
// at probe points away from shocks, on [x_lo, x_hi]. The composition is
// computed on a padded domain to avoid boundary clipping.
CocycleReport cocycle_check(const PointField& field, const Potential& v0,
                            double t0, double t_mid, double t1, double x_lo,
                            double x_hi, int probes = 1000);

enum class OracleSide { origin, beam, shock };

struct SinglePointResult {
    double A1 = 0.0;  // through the forcing point at the origin
    double A2 = 0.0;  // straight from the incoming beam
    OracleSide side = OracleSide::origin;
};

// Closed forms for one forcing point at the origin meeting the beam
// u0(y) = a + b y: A1 = x^2/(2t) - 1, A2 = (b x^2 + 2 a x - a^2 t)/(2(1+bt)),
// shock curve (x - a t)^2 = 2 t (1 + b t).
SinglePointResult single_point_oracle(double a, double b, double t, double x);

struct TesselationCell {
    ProfileSource source;
    // sampled (t, x_left, x_right) strips belonging to this source
    std::vector<std::array<double, 3>> strips;
};

struct Tesselation {
    std::vector<double> times;
    double x_lo = 0.0;
    double x_hi = 0.0;
    std::vector<TesselationCell> cells;
    std::vector<VelocityProfile> profiles;  // one per query time

    nlohmann::json to_json() const;
};

Tesselation tesselate(const PointField& field, double t0, const Potential& v0,
                      const std::vector<double>& times, double x_lo,
                      double x_hi);

}  // namespace burgers
