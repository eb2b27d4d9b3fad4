#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "burgers/point_field.hpp"
#include "burgers/potential.hpp"

namespace burgers {

struct ProfileSource {
    bool from_start = false;
    double s = 0.0;          // forcing point time (when !from_start)
    double x = 0.0;          // forcing point location, or start y anchor
    int point_index = -1;

    friend bool operator==(const ProfileSource&, const ProfileSource&) = default;
};

// u(x) = slope * x + intercept on [x_left, x_right]
struct ProfilePiece {
    double x_left = 0.0;
    double x_right = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    ProfileSource source;

    double velocity(double x) const { return slope * x + intercept; }
};

struct Shock {
    double x = 0.0;
    double u_left = 0.0;
    double u_right = 0.0;
};

// Piecewise-linear velocity profile with downward jumps at shocks.
struct VelocityProfile {
    double x_lo = 0.0;
    double x_hi = 0.0;
    double time_stamp = 0.0;
    std::vector<ProfilePiece> pieces;  // tile [x_lo, x_hi] left to right
    std::vector<Shock> shocks;

    double velocity(double x) const;
    // smallest distance from x to a shock position (inf when shock-free)
    double shock_distance(double x) const;

    nlohmann::json to_json() const;
    std::string to_csv() const;
};

// Antiderivative of the profile, anchored to V(x_lo) = 0, extended with
// constant-velocity affine tails beyond the profile domain.
Potential potential_from_profile(const VelocityProfile& p);

// Derivative of a potential restricted to [x_lo, x_hi] (identity evolve).
VelocityProfile profile_from_potential(const Potential& V, double x_lo,
                                       double x_hi, double time_stamp);

// Structural equality: same breakpoints, slopes, intercepts and shocks on
// [lo, hi] within tol.
bool structurally_equal(const VelocityProfile& a, const VelocityProfile& b,
                        double lo, double hi, double tol = 1e-9);

struct ProfileDistance {
    double value = 1.0;
    bool saturated = false;  // identical over the whole common domain
};

// d = exp(-sup{r : pieces and shocks agree exactly on [-r,r]}), computed
// structurally; 1 when no agreement neighborhood of the origin exists.
ProfileDistance profile_distance(const VelocityProfile& a,
                                 const VelocityProfile& b);

}  // namespace burgers
