#include "burgers/point_field.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "burgers/errors.hpp"

namespace burgers {

double IntensityMeasure::total_mass() const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.weight;
    for (const auto& s : segments) m += (s.hi - s.lo) * s.density;
    return m;
}

double IntensityMeasure::first_moment() const {
    double m = 0.0;
    for (const auto& a : atoms) m += (1.0 + std::abs(a.x)) * a.weight;
    for (const auto& s : segments) {
        // ∫_lo^hi (1+|x|) d dx, split at 0 if needed
        auto part = [&](double lo, double hi) {
            if (hi <= lo) return 0.0;
            double sgn_int;  // ∫ |x| dx on an interval not straddling 0
            if (lo >= 0.0)
                sgn_int = 0.5 * (hi * hi - lo * lo);
            else
                sgn_int = 0.5 * (lo * lo - hi * hi);
            return s.density * ((hi - lo) + sgn_int);
        };
        if (s.lo < 0.0 && s.hi > 0.0)
            m += part(s.lo, 0.0) + part(0.0, s.hi);
        else
            m += part(s.lo, s.hi);
    }
    return m;
}

double IntensityMeasure::support_radius() const {
    double r = 0.0;
    for (const auto& a : atoms)
        if (a.weight > 0.0) r = std::max(r, std::abs(a.x));
    for (const auto& s : segments)
        if (s.density > 0.0) r = std::max({r, std::abs(s.lo), std::abs(s.hi)});
    return r;
}

void IntensityMeasure::validate() const {
    for (const auto& a : atoms) {
        if (a.weight < 0.0) throw DegenerateMeasure("negative atom weight");
        if (kind == MeasureKind::circle && (a.x < 0.0 || a.x >= 1.0))
            throw DegenerateMeasure("circle atom outside [0,1)");
    }
    for (const auto& s : segments) {
        if (s.density < 0.0) throw DegenerateMeasure("negative density");
        if (s.hi < s.lo) throw DegenerateMeasure("inverted segment");
        if (kind == MeasureKind::circle && (s.lo < 0.0 || s.hi > 1.0))
            throw DegenerateMeasure("circle segment outside [0,1]");
    }
    if (!(total_mass() > 0.0)) throw DegenerateMeasure("zero total mass");
    if (!std::isfinite(total_mass())) throw DegenerateMeasure("infinite mass");
}

double IntensityMeasure::sample_location(SplitMix64& g) const {
    const double mass = total_mass();
    double u = g.next_double() * mass;
    for (const auto& a : atoms) {
        if (u < a.weight) return a.x;
        u -= a.weight;
    }
    for (const auto& s : segments) {
        const double w = (s.hi - s.lo) * s.density;
        if (u < w) return s.lo + (u / s.density);
        u -= w;
    }
    // numerical tail: land on the last positive-mass component
    for (auto it = segments.rbegin(); it != segments.rend(); ++it)
        if (it->density > 0.0) return it->hi;
    return atoms.empty() ? 0.0 : atoms.back().x;
}

IntensityMeasure IntensityMeasure::uniform_line(double lo, double hi, double mass) {
    IntensityMeasure m;
    m.kind = MeasureKind::line;
    m.segments.push_back({lo, hi, mass / (hi - lo)});
    return m;
}

IntensityMeasure IntensityMeasure::uniform_circle(double mass) {
    IntensityMeasure m;
    m.kind = MeasureKind::circle;
    m.segments.push_back({0.0, 1.0, mass});
    return m;
}

nlohmann::json IntensityMeasure::to_json() const {
    nlohmann::json j;
    j["kind"] = kind == MeasureKind::line ? "line" : "circle";
    j["atoms"] = nlohmann::json::array();
    for (const auto& a : atoms) j["atoms"].push_back({a.x, a.weight});
    j["segments"] = nlohmann::json::array();
    for (const auto& s : segments) j["segments"].push_back({s.lo, s.hi, s.density});
    return j;
}

IntensityMeasure IntensityMeasure::from_json(const nlohmann::json& j) {
    IntensityMeasure m;
    m.kind = j.at("kind") == "circle" ? MeasureKind::circle : MeasureKind::line;
    for (const auto& a : j.value("atoms", nlohmann::json::array()))
        m.atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
    for (const auto& s : j.value("segments", nlohmann::json::array()))
        m.segments.push_back({s.at(0).get<double>(), s.at(1).get<double>(),
                              s.at(2).get<double>()});
    return m;
}

PointField sample(const IntensityMeasure& measure, double t_lo, double t_hi,
                  std::uint64_t seed, Topology topology) {
    if (!(t_hi >= t_lo)) throw InvalidWindow("empty time window");
    measure.validate();

    PointField field;
    field.measure = measure;
    field.t_lo = t_lo;
    field.t_hi = t_hi;
    field.seed = seed;
    field.topology = topology;

    if (t_hi == t_lo) return field;

    const double mass = measure.total_mass();
    const auto k_lo = static_cast<std::int64_t>(std::floor(t_lo));
    const auto k_hi = static_cast<std::int64_t>(std::floor(t_hi));
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        SplitMix64 g(mix_seed(seed, k));
        const int n = poisson_knuth(g, mass);
        for (int i = 0; i < n; ++i) {
            const double t = static_cast<double>(k) + g.next_double();
            const double x = measure.sample_location(g);
            if (t >= t_lo && t <= t_hi) field.points.push_back({t, x});
        }
    }
    std::stable_sort(field.points.begin(), field.points.end(),
                     [](const SpaceTimePoint& a, const SpaceTimePoint& b) {
                         if (a.t != b.t) return a.t < b.t;
                         return a.x < b.x;
                     });
    return field;
}

int count(const PointField& field, double t0, double t1, double x0, double x1) {
    if (t0 < field.t_lo || t1 > field.t_hi)
        throw OutOfWindow("count rectangle time-extent outside field window");
    int n = 0;
    for (const auto& p : field.points)
        if (p.t >= t0 && p.t <= t1 && p.x >= x0 && p.x <= x1) ++n;
    return n;
}

PointField time_shift(const PointField& field, double t) {
    PointField out = field;
    out.t_lo -= t;
    out.t_hi -= t;
    out.time_offset += t;
    for (auto& p : out.points) p.t -= t;
    return out;
}

nlohmann::json PointField::to_json() const {
    nlohmann::json j;
    j["seed"] = seed;
    j["topology"] = topology == Topology::line ? "line" : "cylinder";
    j["window"] = {t_lo, t_hi};
    j["measure"] = measure.to_json();
    if (time_offset != 0.0) j["time_offset"] = time_offset;
    j["points"] = nlohmann::json::array();
    for (const auto& p : points) j["points"].push_back({p.t, p.x});
    return j;
}

PointField PointField::from_json(const nlohmann::json& j) {
    PointField f;
    f.seed = j.at("seed").get<std::uint64_t>();
    f.topology = j.at("topology") == "cylinder" ? Topology::cylinder : Topology::line;
    f.t_lo = j.at("window").at(0).get<double>();
    f.t_hi = j.at("window").at(1).get<double>();
    f.measure = IntensityMeasure::from_json(j.at("measure"));
    f.time_offset = j.value("time_offset", 0.0);
    for (const auto& p : j.at("points"))
        f.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return f;
}

}  // namespace burgers
