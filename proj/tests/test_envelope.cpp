#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "burgers/envelope.hpp"
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

// one forcing point at the origin meeting the beam u0(y) = a + b y with
// a = 1, b = 1/2; realized by starting the beam one unit of time earlier
PointField beam_field() { return make_field({{0.0, 0.0}}, -1.0, 5.0); }
Potential beam_v0() { return Potential::quadratic(0.5, 2.0, 0.0); }

double beam_velocity(double a, double b, double t, double x) {
    return (a + b * x) / (1.0 + b * t);
}

}  // namespace

TEST_CASE("rarefaction of the linear profile") {
    const auto field = make_field({}, 0.0, 10.0);
    const Potential v0 = Potential::quadratic(0.5, 0.0, 0.0);  // u0(y) = y
    for (double t : {0.5, 1.0, 4.0}) {
        const auto prof = evolve(field, v0, 0.0, t, -5.0, 5.0);
        CHECK(prof.shocks.empty());
        REQUIRE(prof.pieces.size() == 1);
        CHECK(prof.pieces[0].slope == doctest::Approx(1.0 / (1.0 + t)).epsilon(1e-12));
        CHECK(prof.pieces[0].intercept == doctest::Approx(0.0));
        for (double x : {-4.0, -0.3, 2.1})
            CHECK(prof.velocity(x) == doctest::Approx(x / (1.0 + t)).epsilon(1e-12));
    }
}

TEST_CASE("single forcing point against the closed forms") {
    const double a = 1.0, b = 0.5;
    for (double t : {0.25, 0.5, 1.0}) {
        const auto prof = evolve(beam_field(), beam_v0(), -1.0, t, -6.0, 8.0);
        const double half = std::sqrt(2.0 * t * (1.0 + b * t));
        const double s_left = a * t - half;
        const double s_right = a * t + half;
        REQUIRE(prof.shocks.size() == 2);
        CHECK(prof.shocks[0].x == doctest::Approx(s_left).epsilon(1e-7));
        CHECK(prof.shocks[1].x == doctest::Approx(s_right).epsilon(1e-7));
        // inside the cell of the origin point the velocity is x/t
        for (double f : {0.25, 0.5, 0.75}) {
            const double x = s_left + f * (s_right - s_left);
            CHECK(prof.velocity(x) == doctest::Approx(x / t).epsilon(1e-9));
        }
        // outside, the beam evolves freely
        for (double x : {s_left - 1.0, s_right + 1.0})
            CHECK(prof.velocity(x) ==
                  doctest::Approx(beam_velocity(a, b, t, x)).epsilon(1e-9));
    }
}

TEST_CASE("identity evolve") {
    const auto field = make_field({{1.0, 0.0}}, 0.0, 5.0);
    const Potential v0 = Potential::vee(0.7);
    const auto prof = evolve(field, v0, 0.0, 0.0, -3.0, 3.0);
    const auto direct = profile_from_potential(v0, -3.0, 3.0, 0.0);
    CHECK(structurally_equal(prof, direct, -3.0, 3.0));
}

TEST_CASE("cocycle property") {
    SUBCASE("no forcing, linear initial condition") {
        const auto field = make_field({}, 0.0, 4.0);
        const auto rep = cocycle_check(field, Potential::quadratic(0.5, 0.0, 0.0),
                                       0.0, 2.0, 4.0, -3.0, 3.0);
        CHECK(rep.max_velocity_discrepancy == doctest::Approx(0.0));
        CHECK(rep.shock_hausdorff == doctest::Approx(0.0));
    }
    SUBCASE("split at the initial time") {
        const auto field = sample(IntensityMeasure::uniform_line(-1, 1, 1), 0, 4, 7);
        const auto rep = cocycle_check(field, Potential::zero(), 0.0, 0.0, 4.0,
                                       -3.0, 3.0);
        CHECK(rep.max_velocity_discrepancy < 1e-12);
        CHECK(rep.shock_hausdorff < 1e-12);
    }
    SUBCASE("seeded twenty-point fields") {
        const auto m = IntensityMeasure::uniform_line(-2.0, 2.0, 1.0);
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto field = sample(m, 0.0, 5.0, seed);
            SplitMix64 g(seed * 31 + 1);
            const double t_mid = 0.5 + 4.0 * g.next_double();
            const auto rep = cocycle_check(field, Potential::zero(), 0.0, t_mid,
                                           5.0, -3.0, 3.0);
            CHECK(rep.max_velocity_discrepancy < 1e-8);
            CHECK(rep.shock_hausdorff < 1e-7);
        }
    }
}

TEST_CASE("single point oracle") {
    SUBCASE("worked example") {
        const auto r = single_point_oracle(1.0, 0.5, 2.0, 2.0);
        CHECK(r.A1 == doctest::Approx(0.0));
        CHECK(r.A2 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.side == OracleSide::origin);
    }
    SUBCASE("a = 0 shock abscissae") {
        for (double b : {0.25, 0.5, 1.0, 2.0}) {
            const double xs = std::sqrt(2.0 * (1.0 + b));
            for (double sgn : {-1.0, 1.0}) {
                const auto r = single_point_oracle(0.0, b, 1.0, sgn * xs);
                CHECK(r.A1 == doctest::Approx(r.A2).epsilon(1e-12));
                CHECK(r.side == OracleSide::shock);
            }
        }
    }
    SUBCASE("the shock curve balances the actions") {
        for (double t : {0.3, 1.0, 2.5}) {
            const double a = 1.0, b = 0.5;
            const double x = a * t + std::sqrt(2.0 * t * (1.0 + b * t));
            const auto r = single_point_oracle(a, b, t, x);
            CHECK(std::abs(r.A1 - r.A2) <= 1e-12 * std::max(1.0, std::abs(r.A1)));
        }
    }
    SUBCASE("model range") {
        CHECK_THROWS_AS(single_point_oracle(1.0, 0.0, 1.0, 0.0), OutOfModelRange);
        CHECK_THROWS_AS(single_point_oracle(1.0, -0.5, 1.0, 0.0), OutOfModelRange);
    }
}

TEST_CASE("tesselation") {
    SUBCASE("no points, zero initial condition") {
        const auto field = make_field({}, 0.0, 5.0);
        const auto tes = tesselate(field, 0.0, Potential::zero(), {1.0, 2.0},
                                   -3.0, 3.0);
        REQUIRE(tes.cells.size() == 1);
        CHECK(tes.cells[0].source.from_start);
    }
    SUBCASE("single point cell matches the oracle side labels") {
        const double a = 1.0, b = 0.5;
        const auto tes = tesselate(beam_field(), -1.0, beam_v0(),
                                   {0.25, 0.5, 1.0}, -6.0, 8.0);
        for (const auto& cell : tes.cells)
            for (const auto& strip : cell.strips) {
                const double t = strip[0];
                const double mid = 0.5 * (strip[1] + strip[2]);
                const auto r = single_point_oracle(a, b, t, mid);
                if (r.side == OracleSide::shock) continue;
                if (cell.source.from_start)
                    CHECK(r.side == OracleSide::beam);
                else
                    CHECK(r.side == OracleSide::origin);
            }
    }
    SUBCASE("cell count bound") {
        const auto m = IntensityMeasure::uniform_line(-2.0, 2.0, 1.0);
        const auto field = sample(m, 0.0, 4.0, 13);
        const auto tes = tesselate(field, 0.0, Potential::zero(), {1.0, 2.0, 4.0},
                                   -4.0, 4.0);
        std::size_t point_cells = 0;
        for (const auto& c : tes.cells)
            if (!c.source.from_start) ++point_cells;
        CHECK(point_cells <= field.points.size());
    }
    SUBCASE("affine velocity within each cell strip") {
        const auto m = IntensityMeasure::uniform_line(-2.0, 2.0, 1.0);
        const auto field = sample(m, 0.0, 4.0, 21);
        const auto tes = tesselate(field, 0.0, Potential::zero(), {2.0, 4.0},
                                   -4.0, 4.0);
        for (std::size_t ti = 0; ti < tes.times.size(); ++ti)
            for (const auto& p : tes.profiles[ti].pieces) {
                const double xa = p.x_left + 0.25 * (p.x_right - p.x_left);
                const double xb = p.x_left + 0.75 * (p.x_right - p.x_left);
                const double interp = 0.5 * (p.velocity(xa) + p.velocity(xb));
                CHECK(p.velocity(0.5 * (xa + xb)) ==
                      doctest::Approx(interp).epsilon(1e-12));
            }
    }
}

TEST_CASE("envelope agrees with the DP at non-shock probes") {
    const auto m = IntensityMeasure::uniform_line(-2.0, 2.0, 1.0);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto field = sample(m, 0.0, 5.0, seed + 100);
        const auto prof = evolve(field, Potential::zero(), 0.0, 5.0, -3.0, 3.0);
        const auto table = build_table(field, Potential::zero(), 0.0);
        int probed = 0;
        for (int i = 0; i < 1000; ++i) {
            const double x = -3.0 + 6.0 * (i + 0.5) / 1000.0;
            if (prof.shock_distance(x) < 1e-6) continue;
            const auto tv = terminal_value(table, field, Potential::zero(), 5.0, x);
            CHECK(prof.velocity(x) == doctest::Approx(tv.best.velocity).epsilon(1e-9));
            ++probed;
        }
        CHECK(probed > 900);
    }
}

TEST_CASE("slope law and downward jumps") {
    const auto m = IntensityMeasure::uniform_line(-2.0, 2.0, 1.5);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto field = sample(m, 0.0, 6.0, seed + 500);
        const double t = 6.0;
        const auto prof = evolve(field, Potential::zero(), 0.0, t, -4.0, 4.0);
        for (const auto& p : prof.pieces) {
            if (p.source.from_start) continue;
            const double want = 1.0 / (t - p.source.s);
            CHECK(std::abs(p.slope - want) <= 1e-12 * std::abs(want));
        }
        for (const auto& s : prof.shocks) CHECK(s.u_left > s.u_right);
    }
}

TEST_CASE("shock speed refines at second order") {
    // forcing-free interval after t = 1: the right shock of the single-point
    // configuration moves at the average of the one-sided velocities
    const double t = 1.0;
    const auto base = evolve(beam_field(), beam_v0(), -1.0, t, -6.0, 10.0);
    REQUIRE(base.shocks.size() == 2);
    const Shock s0 = base.shocks[1];
    const double speed = 0.5 * (s0.u_left + s0.u_right);
    for (double dt : {1e-1, 1e-2, 1e-3}) {
        const auto next = evolve(beam_field(), beam_v0(), -1.0, t + dt, -6.0, 10.0);
        REQUIRE(next.shocks.size() == 2);
        const double err = std::abs(next.shocks[1].x - (s0.x + dt * speed));
        CHECK(err < 0.5 * dt * dt);
        CHECK(err > 0.01 * dt * dt);
    }
}

TEST_CASE("profile distance") {
    VelocityProfile h1;
    h1.x_lo = -5.0;
    h1.x_hi = 5.0;
    h1.pieces = {{-5.0, 5.0, 1.0, 0.0, {}}};

    SUBCASE("identical profiles saturate") {
        const auto d = profile_distance(h1, h1);
        CHECK(d.saturated);
        CHECK(d.value == doctest::Approx(std::exp(-5.0)).epsilon(1e-12));
    }
    SUBCASE("agreement exactly on [-3,3]") {
        VelocityProfile h2 = h1;
        h2.pieces = {{-5.0, -3.0, 2.0, 3.0, {}},
                     {-3.0, 3.0, 1.0, 0.0, {}},
                     {3.0, 5.0, 2.0, -3.0, {}}};
        const auto d = profile_distance(h1, h2);
        CHECK_FALSE(d.saturated);
        CHECK(d.value == doctest::Approx(std::exp(-3.0)).epsilon(1e-12));
        CHECK(profile_distance(h2, h1).value == d.value);  // symmetry
    }
    SUBCASE("disagreement at the origin") {
        VelocityProfile h3 = h1;
        h3.pieces = {{-5.0, 5.0, 2.0, 0.0, {}}};
        CHECK(profile_distance(h1, h3).value == 1.0);
    }
    SUBCASE("ultrametric triangle inequality") {
        const auto m = IntensityMeasure::uniform_line(-2.0, 2.0, 1.0);
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto fa = sample(m, 0.0, 4.0, seed);
            const auto fb = sample(m, 0.0, 4.0, seed + 1000);
            const auto fc = sample(m, 0.0, 4.0, seed + 2000);
            const auto pa = evolve(fa, Potential::zero(), 0.0, 4.0, -4.0, 4.0);
            const auto pb = evolve(fb, Potential::zero(), 0.0, 4.0, -4.0, 4.0);
            const auto pc = evolve(fc, Potential::zero(), 0.0, 4.0, -4.0, 4.0);
            const double dab = profile_distance(pa, pb).value;
            const double dbc = profile_distance(pb, pc).value;
            const double dac = profile_distance(pa, pc).value;
            CHECK(dac <= std::max(dab, dbc) + 1e-15);
            CHECK(dab == profile_distance(pb, pa).value);
        }
    }
    SUBCASE("disjoint domains are incomparable") {
        VelocityProfile right;
        right.x_lo = 1.0;
        right.x_hi = 5.0;
        right.pieces = {{1.0, 5.0, 1.0, 0.0, {}}};
        CHECK_THROWS_AS(profile_distance(h1, right), IncomparableProfiles);
    }
}

TEST_CASE("errors") {
    const auto field = make_field({}, 0.0, 5.0);
    CHECK_THROWS_AS(evolve(field, Potential::zero(), 0.0, 1.0, 2.0, 2.0),
                    InvalidDomain);
    CHECK_THROWS_AS(evolve(field, Potential::quadratic(-1.0, 0.0, 0.0), 0.0, 1.0,
                           -2.0, 2.0),
                    UnboundedPotential);
}
