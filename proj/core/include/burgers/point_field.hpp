#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "burgers/rng.hpp"

#include <nlohmann/json_fwd.hpp>

namespace burgers {

struct Atom {
    double x = 0.0;
    double weight = 0.0;
};

struct DensitySegment {
    double lo = 0.0;
    double hi = 0.0;
    double density = 0.0;
};

enum class MeasureKind { line, circle };

// Spatial intensity m(dx): a finite mixture of atoms and piecewise-constant
// densities. Exact total mass and exact inverse-CDF sampling.
struct IntensityMeasure {
    MeasureKind kind = MeasureKind::line;
    std::vector<Atom> atoms;
    std::vector<DensitySegment> segments;

    double total_mass() const;
    // ∫ (1+|x|) m(dx)
    double first_moment() const;
    // max |x| over the support
    double support_radius() const;
    void validate() const;
    double sample_location(SplitMix64& g) const;

    static IntensityMeasure uniform_line(double lo, double hi, double mass);
    static IntensityMeasure uniform_circle(double mass);

    nlohmann::json to_json() const;
    static IntensityMeasure from_json(const nlohmann::json& j);
};

enum class Topology { line, cylinder };

struct SpaceTimePoint {
    double t = 0.0;
    double x = 0.0;
    friend bool operator==(const SpaceTimePoint&, const SpaceTimePoint&) = default;
};

// A finite realization of the Poisson forcing field inside a time window.
// Immutable after construction; sampling is a pure function of
// (seed, measure, window).
struct PointField {
    IntensityMeasure measure;
    double t_lo = 0.0;
    double t_hi = 0.0;
    std::vector<SpaceTimePoint> points;  // strictly time-sorted, ties by x
    std::uint64_t seed = 0;
    double time_offset = 0.0;  // accumulated time_shift applied to this field
    Topology topology = Topology::line;

    nlohmann::json to_json() const;
    static PointField from_json(const nlohmann::json& j);
};

// Block-seeded sampling: time is partitioned into unit blocks, block k is
// generated from mix_seed(seed, k), and a window's realization is the union
// of its blocks' points filtered to the window. Nested windows under the
// same seed therefore agree on their overlap.
PointField sample(const IntensityMeasure& measure, double t_lo, double t_hi,
                  std::uint64_t seed, Topology topology = Topology::line);

int count(const PointField& field, double t0, double t1, double x0, double x1);

PointField time_shift(const PointField& field, double t);

}  // namespace burgers
