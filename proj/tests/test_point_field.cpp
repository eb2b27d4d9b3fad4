#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "burgers/errors.hpp"
#include "burgers/point_field.hpp"
#include "burgers/stats.hpp"

using namespace burgers;

namespace {
IntensityMeasure unit_uniform() { return IntensityMeasure::uniform_line(-1.0, 1.0, 1.0); }
}

TEST_CASE("zero-length window yields no points") {
    const auto f = sample(unit_uniform(), 3.0, 3.0, 7);
    CHECK(f.points.empty());
}

TEST_CASE("empirical rate matches the intensity") {
    double total = 0.0;
    const double len = 1000.0;
    const int n_seeds = 100;
    for (int s = 0; s < n_seeds; ++s)
        total += static_cast<double>(sample(unit_uniform(), 0.0, len, 1000 + s).points.size());
    const double rate = total / (len * n_seeds);
    CHECK(rate > 0.9);
    CHECK(rate < 1.1);
}

TEST_CASE("window extension consistency") {
    const auto big = sample(unit_uniform(), 0.0, 10.0, 1);
    const auto small = sample(unit_uniform(), 0.0, 4.0, 1);
    std::vector<SpaceTimePoint> restricted;
    for (const auto& p : big.points)
        if (p.t <= 4.0) restricted.push_back(p);
    CHECK(restricted == small.points);
}

TEST_CASE("negative-time windows are coherent too") {
    const auto big = sample(unit_uniform(), -16.0, 0.0, 5);
    const auto small = sample(unit_uniform(), -8.0, 0.0, 5);
    std::vector<SpaceTimePoint> restricted;
    for (const auto& p : big.points)
        if (p.t >= -8.0) restricted.push_back(p);
    CHECK(restricted == small.points);
}

TEST_CASE("count") {
    PointField f;
    f.measure = unit_uniform();
    f.t_lo = 0.0;
    f.t_hi = 5.0;

    SUBCASE("empty field") { CHECK(count(f, 0.0, 5.0, -10.0, 10.0) == 0); }

    f.points = {{1.0, 0.0}, {2.0, 1.0}};
    SUBCASE("direct count") { CHECK(count(f, 0.0, 3.0, -0.5, 0.5) == 1); }
    SUBCASE("additivity over disjoint rectangles") {
        const int whole = count(f, 0.0, 5.0, -2.0, 2.0);
        const int left = count(f, 0.0, 5.0, -2.0, 0.5);
        const int right = count(f, 0.0, 5.0, 0.6, 2.0);
        CHECK(whole == left + right);
    }
    SUBCASE("time extent outside the window") {
        CHECK_THROWS_AS(count(f, -1.0, 2.0, 0.0, 1.0), OutOfWindow);
    }
}

TEST_CASE("time_shift") {
    const auto f = sample(unit_uniform(), 0.0, 10.0, 42);
    SUBCASE("shift by zero is the identity") {
        const auto g = time_shift(f, 0.0);
        CHECK(g.points == f.points);
        CHECK(g.t_lo == f.t_lo);
    }
    SUBCASE("shift and unshift invert") {
        const auto g = time_shift(time_shift(f, 3.0), -3.0);
        CHECK(g.points == f.points);
        CHECK(g.time_offset == 0.0);
    }
    SUBCASE("point arithmetic") {
        PointField h;
        h.measure = unit_uniform();
        h.t_lo = 0.0;
        h.t_hi = 5.0;
        h.points = {{2.0, 1.0}};
        const auto g = time_shift(h, 3.0);
        CHECK(g.points[0].t == -1.0);
        CHECK(g.points[0].x == 1.0);
    }
}

TEST_CASE("seeded determinism is byte-identical") {
    const auto a = sample(unit_uniform(), 0.0, 50.0, 99).to_json().dump();
    const auto b = sample(unit_uniform(), 0.0, 50.0, 99).to_json().dump();
    CHECK(a == b);
}

TEST_CASE("field JSON round-trips") {
    const auto f = sample(unit_uniform(), -3.0, 7.0, 123);
    const auto g = PointField::from_json(f.to_json());
    CHECK(g.points == f.points);
    CHECK(g.seed == f.seed);
    CHECK(g.to_json().dump() == f.to_json().dump());
}

TEST_CASE("Poisson marginals pass a chi-square goodness of fit") {
    const double lambda = 2.5;
    const auto m = IntensityMeasure::uniform_line(-1.0, 1.0, 2.5);
    std::vector<int> counts;
    for (int s = 0; s < 1000; ++s)
        counts.push_back(static_cast<int>(sample(m, 0.0, 1.0, 5000 + s).points.size()));
    CHECK(poisson_gof_p(counts, lambda) > 0.01);
}

TEST_CASE("atoms and mixed measures sample onto their support") {
    IntensityMeasure m;
    m.atoms = {{0.5, 1.0}};
    m.segments = {{-1.0, 0.0, 1.0}};
    const auto f = sample(m, 0.0, 100.0, 11);
    int on_atom = 0;
    for (const auto& p : f.points) {
        const bool in_seg = p.x >= -1.0 && p.x <= 0.0;
        if (p.x == 0.5) ++on_atom;
        CHECK((p.x == 0.5 || in_seg));
    }
    CHECK(on_atom > 0);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(sample(unit_uniform(), 1.0, 0.0, 1), InvalidWindow);
    IntensityMeasure zero;
    zero.segments = {{0.0, 1.0, 0.0}};
    CHECK_THROWS_AS(sample(zero, 0.0, 1.0, 1), DegenerateMeasure);
}

TEST_CASE("first moment of the uniform measure") {
    // m uniform on [-1,1], mass 1: integral of (1+|x|)/2 over [-1,1] = 1.5
    CHECK(unit_uniform().first_moment() == doctest::Approx(1.5).epsilon(1e-12));
}
