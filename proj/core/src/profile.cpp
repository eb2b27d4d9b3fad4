#include "burgers/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>

#include "burgers/errors.hpp"

namespace burgers {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double VelocityProfile::velocity(double x) const {
    for (const auto& p : pieces)
        if (x <= p.x_right) return p.velocity(x);
    return pieces.back().velocity(x);
}

double VelocityProfile::shock_distance(double x) const {
    double d = kInf;
    for (const auto& s : shocks) d = std::min(d, std::abs(x - s.x));
    return d;
}

nlohmann::json VelocityProfile::to_json() const {
    nlohmann::json j;
    j["domain"] = {x_lo, x_hi};
    j["time"] = time_stamp;
    j["pieces"] = nlohmann::json::array();
    for (const auto& p : pieces) {
        nlohmann::json piece{{"x_left", p.x_left},
                             {"x_right", p.x_right},
                             {"slope", p.slope},
                             {"intercept", p.intercept}};
        if (p.source.from_start)
            piece["source"] = "start";
        else
            piece["source"] = {p.source.s, p.source.x};
        j["pieces"].push_back(piece);
    }
    j["shocks"] = nlohmann::json::array();
    for (const auto& s : shocks) j["shocks"].push_back({s.x, s.u_left, s.u_right});
    return j;
}

std::string VelocityProfile::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "x_left,x_right,slope,intercept,source_t,source_x,cell_id\n";
    int cell = 0;
    for (const auto& p : pieces) {
        os << p.x_left << ',' << p.x_right << ',' << p.slope << ','
           << p.intercept << ',';
        if (p.source.from_start)
            os << "start,start";
        else
            os << p.source.s << ',' << p.source.x;
        os << ',' << cell++ << '\n';
    }
    return os.str();
}

Potential potential_from_profile(const VelocityProfile& p) {
    Potential V;
    double acc = 0.0;  // V at the running left edge
    // left tail: constant velocity extension
    {
        const auto& first = p.pieces.front();
        const double u = first.velocity(p.x_lo);
        // affine piece c1*y + c0 with value 0 at x_lo
        V.pieces.push_back({-kInf, p.x_lo, 0.0, u, -u * p.x_lo});
    }
    for (const auto& piece : p.pieces) {
        const double c2 = piece.slope / 2.0;
        const double c1 = piece.intercept;
        const double at_left = c2 * piece.x_left * piece.x_left + c1 * piece.x_left;
        const double c0 = acc - at_left;
        V.pieces.push_back({piece.x_left, piece.x_right, c2, c1, c0});
        acc = c2 * piece.x_right * piece.x_right + c1 * piece.x_right + c0;
    }
    {
        const auto& last = p.pieces.back();
        const double u = last.velocity(p.x_hi);
        V.pieces.push_back({p.x_hi, kInf, 0.0, u, acc - u * p.x_hi});
    }
    return V;
}

VelocityProfile profile_from_potential(const Potential& V, double x_lo,
                                       double x_hi, double time_stamp) {
    VelocityProfile out;
    out.x_lo = x_lo;
    out.x_hi = x_hi;
    out.time_stamp = time_stamp;
    for (const auto& q : V.pieces) {
        const double lo = std::max(q.lo, x_lo);
        const double hi = std::min(q.hi, x_hi);
        if (!(hi > lo)) continue;
        ProfilePiece p;
        p.x_left = lo;
        p.x_right = hi;
        p.slope = 2.0 * q.c2;
        p.intercept = q.c1;
        p.source.from_start = true;
        out.pieces.push_back(p);
    }
    for (std::size_t i = 0; i + 1 < out.pieces.size(); ++i) {
        const double x = out.pieces[i].x_right;
        const double ul = out.pieces[i].velocity(x);
        const double ur = out.pieces[i + 1].velocity(x);
        if (ul > ur + 1e-12) out.shocks.push_back({x, ul, ur});
    }
    return out;
}

namespace {

// Collect breakpoints of both profiles inside [lo, hi].
std::vector<double> merged_breakpoints(const VelocityProfile& a,
                                       const VelocityProfile& b, double lo,
                                       double hi) {
    std::vector<double> xs{lo, hi};
    auto add = [&](double x) {
        if (x > lo && x < hi) xs.push_back(x);
    };
    for (const auto& p : a.pieces) { add(p.x_left); add(p.x_right); }
    for (const auto& p : b.pieces) { add(p.x_left); add(p.x_right); }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [](double u, double v) { return std::abs(u - v) < 1e-12; }),
             xs.end());
    return xs;
}

bool piece_agree_at(const VelocityProfile& a, const VelocityProfile& b,
                    double x, double tol) {
    const ProfilePiece* pa = nullptr;
    const ProfilePiece* pb = nullptr;
    for (const auto& p : a.pieces)
        if (x >= p.x_left && x <= p.x_right) { pa = &p; break; }
    for (const auto& p : b.pieces)
        if (x >= p.x_left && x <= p.x_right) { pb = &p; break; }
    if (!pa || !pb) return false;
    return std::abs(pa->slope - pb->slope) <= tol &&
           std::abs(pa->intercept - pb->intercept) <= tol;
}

bool shock_matched(const Shock& s, const VelocityProfile& other, double tol) {
    for (const auto& o : other.shocks)
        if (std::abs(o.x - s.x) <= tol) return true;
    return false;
}

}  // namespace

bool structurally_equal(const VelocityProfile& a, const VelocityProfile& b,
                        double lo, double hi, double tol) {
    const auto xs = merged_breakpoints(a, b, lo, hi);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double mid = 0.5 * (xs[i] + xs[i + 1]);
        if (!piece_agree_at(a, b, mid, tol)) return false;
    }
    for (const auto& s : a.shocks)
        if (s.x > lo && s.x < hi && !shock_matched(s, b, tol)) return false;
    for (const auto& s : b.shocks)
        if (s.x > lo && s.x < hi && !shock_matched(s, a, tol)) return false;
    return true;
}

ProfileDistance profile_distance(const VelocityProfile& a,
                                 const VelocityProfile& b) {
    const double r_max =
        std::min(std::min(a.x_hi, b.x_hi), std::min(-a.x_lo, -b.x_lo));
    if (!(r_max > 0.0))
        throw IncomparableProfiles("profiles lack a common symmetric domain");

    constexpr double tol = 1e-9;
    double r_dis = kInf;  // smallest |x| at which structures differ
    const auto xs = merged_breakpoints(a, b, -r_max, r_max);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double mid = 0.5 * (xs[i] + xs[i + 1]);
        if (piece_agree_at(a, b, mid, tol)) continue;
        double r;
        if (xs[i] < 0.0 && xs[i + 1] > 0.0)
            r = 0.0;
        else
            r = std::min(std::abs(xs[i]), std::abs(xs[i + 1]));
        r_dis = std::min(r_dis, r);
    }
    auto shock_scan = [&](const VelocityProfile& u, const VelocityProfile& v) {
        for (const auto& s : u.shocks)
            if (std::abs(s.x) < r_max && !shock_matched(s, v, tol))
                r_dis = std::min(r_dis, std::abs(s.x));
    };
    shock_scan(a, b);
    shock_scan(b, a);

    ProfileDistance d;
    if (r_dis == kInf) {
        d.value = std::exp(-r_max);
        d.saturated = true;
    } else if (r_dis <= 0.0) {
        d.value = 1.0;
    } else {
        d.value = std::exp(-r_dis);
    }
    return d;
}

}  // namespace burgers
