#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "burgers/ergodic.hpp"
#include "burgers/errors.hpp"

using namespace burgers;

namespace {

PointField make_field(std::vector<SpaceTimePoint> pts, double t_lo, double t_hi) {
    PointField f;
    f.measure = IntensityMeasure::uniform_line(-1.0, 1.0, 1.0);
    f.t_lo = t_lo;
    f.t_hi = t_hi;
    f.points = std::move(pts);
    return f;
}

}  // namespace

TEST_CASE("constrained optimum") {
    SUBCASE("no points") {
        const auto f = make_field({}, 0.0, 5.0);
        CHECK(constrained_optimum(f, 2.0, 0.0, 5.0) == 0.0);
    }
    SUBCASE("two-point chain") {
        const auto f = make_field({{1.0, 0.0}, {2.0, 1.0}}, 0.0, 5.0);
        CHECK(constrained_optimum(f, 1.0, 0.0, 5.0) ==
              doctest::Approx(-1.5).epsilon(1e-12));
    }
    SUBCASE("radius excludes every point") {
        const auto f = make_field({{1.0, 0.8}, {2.0, -0.9}}, 0.0, 5.0);
        CHECK(constrained_optimum(f, 0.5, 0.0, 5.0) == 0.0);
    }
    SUBCASE("always nonpositive, bounded by the point count") {
        const auto m = IntensityMeasure::uniform_line(-2.0, 2.0, 2.0);
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const auto f = sample(m, 0.0, 10.0, seed);
            const double v = constrained_optimum(f, 2.0, 0.0, 10.0);
            CHECK(v <= 0.0);
            CHECK(std::abs(v) <= static_cast<double>(count(f, 0.0, 10.0, -2.0, 2.0)));
        }
    }
    SUBCASE("nonincreasing in the horizon") {
        const auto m = IntensityMeasure::uniform_line(-2.0, 2.0, 2.0);
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto f = sample(m, 0.0, 16.0, seed + 30);
            double prev = 0.0;
            for (double t : {2.0, 4.0, 8.0, 16.0}) {
                const double v = constrained_optimum(f, 2.0, 0.0, t);
                CHECK(v <= prev + 1e-12);
                prev = v;
            }
        }
    }
    SUBCASE("superadditivity on every sampled decomposition") {
        const auto m = IntensityMeasure::uniform_line(-2.0, 2.0, 2.0);
        for (std::uint64_t seed = 1; seed <= 15; ++seed) {
            const auto f = sample(m, 0.0, 12.0, seed + 100);
            for (double split : {2.0, 5.0, 6.5, 9.0}) {
                const double whole = constrained_optimum(f, 2.0, 0.0, 12.0);
                const double left = constrained_optimum(f, 2.0, 0.0, split);
                const double right = constrained_optimum(f, 2.0, split, 12.0);
                CHECK(whole >= left + right - 1e-12);
            }
        }
    }
    SUBCASE("errors") {
        const auto f = make_field({}, 0.0, 5.0);
        CHECK_THROWS_AS(constrained_optimum(f, 2.0, 3.0, 3.0), NonCausalQuery);
        CHECK_THROWS_AS(constrained_optimum(f, -1.0, 0.0, 5.0), ConfigError);
    }
}

TEST_CASE("q from S") {
    CHECK(q_from_S(-0.5) == doctest::Approx(1.0));
    CHECK(q_from_S(-2.0) == doctest::Approx(2.0));
    CHECK(q_from_S(-4.0 * 0.5) == doctest::Approx(2.0 * q_from_S(-0.5)));
    CHECK_THROWS_AS(q_from_S(0.0), NonNegativeS);
    CHECK_THROWS_AS(q_from_S(0.3), NonNegativeS);
}

TEST_CASE("estimate_S") {
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 1; s <= 30; ++s) seeds.push_back(s);

    SUBCASE("vanishing mass gives S near zero") {
        const auto m = IntensityMeasure::uniform_line(-1.0, 1.0, 1e-5);
        const auto est = estimate_S(m, {2.0}, {50.0, 100.0}, seeds, 500);
        CHECK(est.ci.lo <= 0.0);
        CHECK(est.ci.hi >= est.S_est);
        CHECK(est.S_est > -1e-3);
    }
    SUBCASE("unit mass gives strictly negative S") {
        const auto m = IntensityMeasure::uniform_line(-1.0, 1.0, 1.0);
        const auto est = estimate_S(m, {1.0, 2.0}, {25.0, 50.0}, seeds, 500, 4);
        CHECK(est.S_est < 0.0);
        CHECK(est.q_est == doctest::Approx(std::sqrt(-2.0 * est.S_est)));
        for (const auto& row : est.s_values)
            for (double v : row) CHECK(v <= 0.0);
        // larger window can only help the optimum (coherent realization)
        for (std::size_t j = 0; j < est.t_list.size(); ++j)
            CHECK(est.s_values[1][j] <= est.s_values[0][j] + 1e-12);
        // stability: CI at the top horizon overlaps the previous one
        CHECK(est.ci.lo <= est.ci_prev_t.hi);
        CHECK(est.ci_prev_t.lo <= est.ci.hi);
    }
    SUBCASE("worker count does not change the result") {
        const auto m = IntensityMeasure::uniform_line(-1.0, 1.0, 1.0);
        const auto a = estimate_S(m, {2.0}, {25.0}, seeds, 200, 1);
        const auto b = estimate_S(m, {2.0}, {25.0}, seeds, 200, 4);
        CHECK(a.S_est == b.S_est);
        CHECK(a.ci.lo == b.ci.lo);
        CHECK(a.ci.hi == b.ci.hi);
    }
    SUBCASE("config errors") {
        const auto m = IntensityMeasure::uniform_line(-1.0, 1.0, 1.0);
        CHECK_THROWS_AS(estimate_S(m, {}, {10.0}, seeds), ConfigError);
        CHECK_THROWS_AS(estimate_S(m, {2.0, 1.0}, {10.0}, seeds), ConfigError);
        CHECK_THROWS_AS(estimate_S(m, {2.0}, {10.0, 5.0}, seeds), ConfigError);
    }
}

TEST_CASE("farfield slopes") {
    const auto unit = IntensityMeasure::uniform_line(-1.0, 1.0, 1.0);
    const std::vector<double> schedule{4.0, 8.0, 16.0, 32.0, 64.0};

    SUBCASE("forcing-free runs are skipped") {
        const auto m = IntensityMeasure::uniform_line(-1.0, 1.0, 1e-8);
        const auto run = pullback_solution(5, m, 2.0, {4.0, 8.0});
        REQUIRE(run.stabilized());
        CHECK(farfield_slope(run, 1.0, 2.0).skipped);
    }
    SUBCASE("signed band means bracket zero from the correct sides") {
        double plus_sum = 0.0, minus_sum = 0.0;
        int n = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const auto run = pullback_solution(seed, unit, 4.0, schedule);
            if (!run.stabilized()) continue;
            const auto ff = farfield_slope(run, 2.0, 4.0);
            REQUIRE_FALSE(ff.skipped);
            plus_sum += ff.plus_mean;
            minus_sum += ff.minus_mean;
            ++n;
        }
        REQUIRE(n >= 15);
        CHECK(plus_sum / n > 0.0);   // outbound mean level on the right
        CHECK(minus_sum / n < 0.0);  // and inbound on the left
    }
    SUBCASE("band outside the window") {
        const auto run = pullback_solution(11, unit, 2.0, schedule);
        REQUIRE(run.stabilized());
        CHECK_THROWS_AS(farfield_slope(run, 50.0, 100.0), OutOfWindow);
    }
    SUBCASE("unstabilized run") {
        const auto run = pullback_solution(11, unit, 2.0, {4.0});
        CHECK_THROWS_AS(farfield_slope(run, 1.0, 2.0), NotStabilized);
    }
}
