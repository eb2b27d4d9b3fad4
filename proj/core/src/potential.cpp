#include "burgers/potential.hpp"

#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>

#include "burgers/errors.hpp"

namespace burgers {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double Potential::value(double y) const {
    for (const auto& p : pieces)
        if (y <= p.hi) return p.value(y);
    return pieces.back().value(y);
}

double Potential::slope(double y) const {
    for (const auto& p : pieces)
        if (y <= p.hi) return p.slope(y);
    return pieces.back().slope(y);
}

double Potential::left_tail_slope() const {
    const auto& p = pieces.front();
    return p.c2 == 0.0 ? p.c1 : (p.c2 > 0.0 ? -kInf : kInf);
}

double Potential::right_tail_slope() const {
    const auto& p = pieces.back();
    return p.c2 == 0.0 ? p.c1 : (p.c2 > 0.0 ? kInf : -kInf);
}

void Potential::validate() const {
    if (pieces.empty()) throw ConfigError("potential has no pieces");
    if (pieces.front().lo != -kInf || pieces.back().hi != kInf)
        throw ConfigError("potential pieces must cover the line");
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        const double b = pieces[i].hi;
        if (b != pieces[i + 1].lo) throw ConfigError("non-contiguous potential pieces");
        const double jump = std::abs(pieces[i].value(b) - pieces[i + 1].value(b));
        const double scale = std::max({1.0, std::abs(pieces[i].value(b))});
        if (jump > 1e-12 * scale) throw ConfigError("discontinuous potential");
    }
}

Potential Potential::zero() { return quadratic(0.0, 0.0, 0.0); }

Potential Potential::quadratic(double c2, double c1, double c0) {
    Potential V;
    V.pieces.push_back({-kInf, kInf, c2, c1, c0});
    return V;
}

Potential Potential::vee(double a) {
    Potential V;
    V.pieces.push_back({-kInf, 0.0, 0.0, -a, 0.0});
    V.pieces.push_back({0.0, kInf, 0.0, a, 0.0});
    return V;
}

nlohmann::json Potential::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : pieces)
        arr.push_back({p.lo, p.hi, p.c2, p.c1, p.c0});
    return nlohmann::json{{"pieces", arr}};
}

Potential Potential::from_json(const nlohmann::json& j) {
    Potential V;
    for (const auto& p : j.at("pieces")) {
        auto num = [&](int i) {
            if (p.at(i).is_string()) {
                const std::string s = p.at(i).get<std::string>();
                return s == "-inf" ? -kInf : kInf;
            }
            return p.at(i).get<double>();
        };
        V.pieces.push_back({num(0), num(1), num(2), num(3), num(4)});
    }
    V.validate();
    return V;
}

StartMin minimize_with_parabola(const Potential& V, double x, double tau) {
    StartMin best{kInf, 0.0};
    auto consider = [&](double y) {
        if (!std::isfinite(y)) return;
        const double d = x - y;
        const double v = V.value(y) + d * d / (2.0 * tau);
        if (v < best.value) best = {v, y};
    };
    for (const auto& p : V.pieces) {
        const double a = p.c2 + 0.5 / tau;
        const double b = p.c1 - x / tau;
        const bool unbounded = (p.lo == -kInf) || (p.hi == kInf);
        if (a > 0.0) {
            double y = -b / (2.0 * a);
            y = std::min(std::max(y, p.lo), p.hi);
            consider(y);
        } else if (a == 0.0) {
            if (b == 0.0) {
                consider(std::isfinite(p.lo) ? p.lo : (std::isfinite(p.hi) ? p.hi : x));
            } else if (b > 0.0) {
                if (p.lo == -kInf) throw UnboundedPotential("start cost unbounded below");
                consider(p.lo);
            } else {
                if (p.hi == kInf) throw UnboundedPotential("start cost unbounded below");
                consider(p.hi);
            }
        } else {
            if (unbounded) throw UnboundedPotential("concave unbounded potential piece");
            consider(p.lo);
            consider(p.hi);
        }
    }
    return best;
}

}  // namespace burgers
