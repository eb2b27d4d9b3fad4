#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace burgers {

// V(y) = c2 y^2 + c1 y + c0 on [lo, hi]
struct QuadPiece {
    double lo = 0.0;
    double hi = 0.0;
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;

    double value(double y) const { return (c2 * y + c1) * y + c0; }
    double slope(double y) const { return 2.0 * c2 * y + c1; }
};

// Piecewise-quadratic potential with unbounded first and last pieces.
// Continuous across breakpoints; v = V' is the velocity profile.
struct Potential {
    std::vector<QuadPiece> pieces;  // contiguous, pieces.front().lo = -inf

    double value(double y) const;
    double slope(double y) const;
    double left_tail_slope() const;   // lim V'(y), y -> -inf (for affine tails)
    double right_tail_slope() const;
    void validate() const;

    static Potential zero();
    static Potential quadratic(double c2, double c1, double c0);
    // V(y) = a|y|  (a < 0 gives the inbound-flow initial condition)
    static Potential vee(double a);

    nlohmann::json to_json() const;
    static Potential from_json(const nlohmann::json& j);
};

struct StartMin {
    double value = 0.0;
    double y = 0.0;
};

// min over y of V(y) + (x - y)^2 / (2 tau), solved exactly per piece.
// Throws UnboundedPotential when a concave unbounded piece makes the
// objective unbounded below.
StartMin minimize_with_parabola(const Potential& V, double x, double tau);

}  // namespace burgers
