// Command-line front door for the forced-Burgers laboratory. Every
// experiment is a pure function of its config and master seed; outputs are
// CSV/JSON data files written to --out (or $BURGERS_OUT).

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "burgers/circle.hpp"
#include "burgers/envelope.hpp"
#include "burgers/ergodic.hpp"
#include "burgers/errors.hpp"
#include "burgers/pullback.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace burgers;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBudget = 2;

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    in >> j;
    return j;
}

// flag beats config beats default
template <typename T>
void apply(const CLI::Option* opt, T& value, const json& cfg, const char* key) {
    if (opt->count() > 0) return;  // explicit flag wins
    if (cfg.contains(key)) value = cfg.at(key).get<T>();
}

fs::path out_dir(const CLI::Option* opt, std::string flag_value,
                 const json& cfg) {
    if (opt->count() == 0) {
        if (const char* env = std::getenv("BURGERS_OUT"))
            flag_value = env;
        else if (cfg.contains("out"))
            flag_value = cfg.at("out").get<std::string>();
    }
    fs::path dir(flag_value);
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

void write_json(const fs::path& p, const json& j) {
    std::ofstream out(p);
    out << j.dump(2) << '\n';
}

IntensityMeasure measure_from(const json& cfg, bool circle, double mass) {
    if (cfg.contains("measure"))
        return IntensityMeasure::from_json(cfg.at("measure"));
    return circle ? IntensityMeasure::uniform_circle(mass)
                  : IntensityMeasure::uniform_line(-1.0, 1.0, mass);
}

Potential potential_from(const json& cfg, const Potential& fallback) {
    if (!cfg.contains("potential")) return fallback;
    const json& p = cfg.at("potential");
    if (p.is_string()) {
        if (p == "zero") return Potential::zero();
        throw ConfigError("unknown potential shorthand");
    }
    if (p.contains("pieces")) return Potential::from_json(p);
    const std::string type = p.value("type", "zero");
    if (type == "zero") return Potential::zero();
    if (type == "quadratic")
        return Potential::quadratic(p.value("c2", 0.0), p.value("c1", 0.0),
                                    p.value("c0", 0.0));
    if (type == "vee") return Potential::vee(p.at("a").get<double>());
    throw ConfigError("unknown potential type: " + type);
}

std::vector<std::uint64_t> seed_range(std::uint64_t base, int n) {
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < n; ++i) seeds.push_back(base + static_cast<std::uint64_t>(i));
    return seeds;
}

std::string shocks_csv(const VelocityProfile& prof) {
    std::ostringstream os;
    os.precision(17);
    os << "t,x,u_left,u_right\n";
    for (const auto& s : prof.shocks)
        os << prof.time_stamp << ',' << s.x << ',' << s.u_left << ','
           << s.u_right << '\n';
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Burgers equation with Poisson point forcing"};
    app.require_subcommand(1);

    std::string config_path, out_flag = ".";
    std::uint64_t seed = 1;
    int workers = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--out", out_flag,
                        "output directory (env BURGERS_OUT overrides the default)");
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--workers", workers, "seed-level parallelism");
    };

    // ---- field-sample ----
    auto* cmd_field = app.add_subcommand("field-sample",
                                         "sample a Poisson forcing field");
    double fs_t0 = 0.0, fs_t1 = 10.0, fs_mass = 1.0;
    std::string fs_topology = "line";
    add_common(cmd_field);
    cmd_field->add_option("--t0", fs_t0, "window start");
    cmd_field->add_option("--t1", fs_t1, "window end");
    cmd_field->add_option("--mass", fs_mass, "intensity mass per unit time");
    cmd_field->add_option("--topology", fs_topology, "line or cylinder")
        ->check(CLI::IsMember({"line", "cylinder"}));

    // ---- evolve ----
    auto* cmd_evolve = app.add_subcommand("evolve", "apply the solution map");
    double ev_t0 = 0.0, ev_t1 = 5.0, ev_xlo = 0.0, ev_xhi = 0.0, ev_mass = 1.0;
    add_common(cmd_evolve);
    cmd_evolve->add_option("--t0", ev_t0, "initial time");
    cmd_evolve->add_option("--t1", ev_t1, "target time");
    auto* o_xlo = cmd_evolve->add_option("--x-lo", ev_xlo, "domain left edge");
    auto* o_xhi = cmd_evolve->add_option("--x-hi", ev_xhi, "domain right edge");
    cmd_evolve->add_option("--mass", ev_mass, "intensity mass per unit time");

    // ---- pullback ----
    auto* cmd_pull = app.add_subcommand("pullback",
                                        "pullback global solution construction");
    double pb_R = 2.0, pb_mass = 1.0;
    std::vector<double> pb_schedule{4.0, 8.0, 16.0, 32.0, 64.0};
    add_common(cmd_pull);
    cmd_pull->add_option("--R", pb_R, "observation window radius");
    cmd_pull->add_option("--mass", pb_mass, "intensity mass per unit time");
    cmd_pull->add_option("--schedule", pb_schedule,
                         "increasing pullback horizons")
        ->delimiter(',');

    // ---- attract ----
    auto* cmd_attract = app.add_subcommand("attract",
                                           "basin-of-attraction experiment");
    double at_R = 2.0, at_mass = 1.0, at_q = 1.0;
    std::string at_mode = "forward";
    std::vector<double> at_schedule{4.0, 8.0, 16.0, 32.0, 64.0, 128.0};
    std::vector<double> at_horizons{16.0, 64.0, 128.0};
    add_common(cmd_attract);
    cmd_attract->add_option("--R", at_R, "observation window radius");
    cmd_attract->add_option("--mass", at_mass, "intensity mass per unit time");
    cmd_attract->add_option("--q", at_q, "slope scale for the basin check");
    cmd_attract->add_option("--mode", at_mode, "forward or pullback")
        ->check(CLI::IsMember({"forward", "pullback"}));
    cmd_attract->add_option("--schedule", at_schedule, "pullback schedule")
        ->delimiter(',');
    cmd_attract->add_option("--horizons", at_horizons, "comparison horizons")
        ->delimiter(',');

    // ---- minimizer ----
    auto* cmd_min = app.add_subcommand("minimizer",
                                       "backward or two-sided global minimizer");
    double mn_R = 2.0, mn_mass = 1.0, mn_x = 0.0;
    std::string mn_kind = "backward";
    std::vector<double> mn_schedule{4.0, 8.0, 16.0, 32.0, 64.0};
    std::vector<double> mn_horizons{8.0, 16.0, 32.0, 64.0};
    add_common(cmd_min);
    cmd_min->add_option("--kind", mn_kind, "backward or two-sided")
        ->check(CLI::IsMember({"backward", "two-sided"}));
    cmd_min->add_option("--R", mn_R, "window radius (backward)");
    cmd_min->add_option("--mass", mn_mass, "intensity mass per unit time");
    cmd_min->add_option("--x", mn_x, "probe abscissa (backward)");
    cmd_min->add_option("--schedule", mn_schedule, "pullback schedule (backward)")
        ->delimiter(',');
    cmd_min->add_option("--horizons", mn_horizons, "horizons (two-sided)")
        ->delimiter(',');

    // ---- stats-s ----
    auto* cmd_stats = app.add_subcommand("stats-s",
                                         "estimate the ergodic constant S");
    double ss_mass = 1.0;
    int ss_nseeds = 100, ss_bootstrap = 1000;
    std::vector<double> ss_R{2.0, 4.0, 8.0};
    std::vector<double> ss_t{50.0, 100.0, 200.0};
    add_common(cmd_stats);
    cmd_stats->add_option("--mass", ss_mass, "intensity mass per unit time");
    cmd_stats->add_option("--seeds", ss_nseeds, "number of seeds (from --seed)");
    cmd_stats->add_option("--bootstrap", ss_bootstrap, "bootstrap resamples");
    cmd_stats->add_option("--R-list", ss_R, "window radii")->delimiter(',');
    cmd_stats->add_option("--t-list", ss_t, "horizons")->delimiter(',');

    // ---- circle-clt ----
    auto* cmd_clt = app.add_subcommand("circle-clt",
                                       "diffusion constant on the cylinder");
    double cc_mass = 2.0, cc_horizon = 8000.0;
    int cc_nseeds = 20, cc_wmax = 3;
    std::vector<int> cc_blocks{50, 100, 200};
    add_common(cmd_clt);
    cmd_clt->add_option("--mass", cc_mass, "circle intensity mass");
    cmd_clt->add_option("--horizon", cc_horizon, "time horizon");
    cmd_clt->add_option("--seeds", cc_nseeds, "number of seeds (from --seed)");
    cmd_clt->add_option("--wmax", cc_wmax, "winding bound per segment");
    cmd_clt->add_option("--blocks", cc_blocks, "block lengths for normality")
        ->delimiter(',');

    // ---- oracle-verify ----
    auto* cmd_oracle = app.add_subcommand("oracle-verify",
                                          "DP vs exhaustive-oracle differential");
    int ov_nseeds = 50, ov_points = 12, ov_queries = 20;
    add_common(cmd_oracle);
    cmd_oracle->add_option("--seeds", ov_nseeds, "number of seeded instances");
    cmd_oracle->add_option("--points", ov_points, "forcing points per instance");
    cmd_oracle->add_option("--queries", ov_queries, "query points per instance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        const json cfg = load_config(config_path);
        CLI::App* active = app.get_subcommands().front();
        const fs::path out = out_dir(active->get_option("--out"), out_flag, cfg);
        apply(active->get_option("--seed"), seed, cfg, "seed");
        apply(active->get_option("--workers"), workers, cfg, "workers");

        if (active == cmd_field) {
            apply(cmd_field->get_option("--t0"), fs_t0, cfg, "t0");
            apply(cmd_field->get_option("--t1"), fs_t1, cfg, "t1");
            apply(cmd_field->get_option("--mass"), fs_mass, cfg, "mass");
            apply(cmd_field->get_option("--topology"), fs_topology, cfg,
                  "topology");
            const bool circle = fs_topology == "cylinder";
            const auto m = measure_from(cfg, circle, fs_mass);
            const auto field = sample(m, fs_t0, fs_t1, seed,
                                      circle ? Topology::cylinder
                                             : Topology::line);
            write_json(out / "field.json", field.to_json());
            std::cout << "field-sample: " << field.points.size()
                      << " points in [" << fs_t0 << ", " << fs_t1 << "] -> "
                      << (out / "field.json").string() << '\n';
            return kExitOk;
        }

        if (active == cmd_evolve) {
            apply(cmd_evolve->get_option("--t0"), ev_t0, cfg, "t0");
            apply(cmd_evolve->get_option("--t1"), ev_t1, cfg, "t1");
            apply(cmd_evolve->get_option("--mass"), ev_mass, cfg, "mass");
            const auto m = measure_from(cfg, false, ev_mass);
            if (o_xlo->count() == 0 && !cfg.contains("x_lo")) {
                const double R =
                    2.0 * m.support_radius() + 1.5 * (ev_t1 - ev_t0);
                ev_xlo = -R;
                ev_xhi = R;
            } else {
                apply(o_xlo, ev_xlo, cfg, "x_lo");
                apply(o_xhi, ev_xhi, cfg, "x_hi");
            }
            const auto field = sample(m, ev_t0, ev_t1, seed);
            const Potential v0 = potential_from(cfg, Potential::zero());
            const auto prof = evolve(field, v0, ev_t0, ev_t1, ev_xlo, ev_xhi);
            write_text(out / "profile.csv", prof.to_csv());
            write_json(out / "profile.json", prof.to_json());
            write_text(out / "shocks.csv", shocks_csv(prof));
            std::cout << "evolve: " << prof.pieces.size() << " pieces, "
                      << prof.shocks.size() << " shocks at t = " << ev_t1
                      << " -> " << (out / "profile.csv").string() << '\n';
            return kExitOk;
        }

        if (active == cmd_pull) {
            apply(cmd_pull->get_option("--R"), pb_R, cfg, "R");
            apply(cmd_pull->get_option("--mass"), pb_mass, cfg, "mass");
            apply(cmd_pull->get_option("--schedule"), pb_schedule, cfg,
                  "schedule");
            const auto m = measure_from(cfg, false, pb_mass);
            const auto run = pullback_solution(seed, m, pb_R, pb_schedule);
            write_json(out / "manifest.json", run.manifest());
            write_text(out / "profile.csv", run.profiles.back().to_csv());
            if (!run.stabilized()) {
                std::cout << "pullback: StabilizationBudgetExceeded after T = "
                          << pb_schedule.back() << " -> "
                          << (out / "manifest.json").string() << '\n';
                return kExitBudget;
            }
            std::cout << "pullback: stabilized at T = "
                      << run.stabilized_horizon() << ", coalescence t = "
                      << run.coalescence_time.value_or(0.0) << " -> "
                      << (out / "manifest.json").string() << '\n';
            return kExitOk;
        }

        if (active == cmd_attract) {
            apply(cmd_attract->get_option("--R"), at_R, cfg, "R");
            apply(cmd_attract->get_option("--mass"), at_mass, cfg, "mass");
            apply(cmd_attract->get_option("--q"), at_q, cfg, "q");
            apply(cmd_attract->get_option("--mode"), at_mode, cfg, "mode");
            apply(cmd_attract->get_option("--schedule"), at_schedule, cfg,
                  "schedule");
            apply(cmd_attract->get_option("--horizons"), at_horizons, cfg,
                  "horizons");
            const auto m = measure_from(cfg, false, at_mass);
            const auto run = pullback_solution(seed, m, at_R, at_schedule);
            if (!run.stabilized()) {
                std::cout << "attract: StabilizationBudgetExceeded in the "
                             "pullback stage\n";
                return kExitBudget;
            }
            const Potential v0 =
                potential_from(cfg, Potential::vee(-at_q / 2.0));
            const auto series = attraction_experiment(
                run, v0,
                at_mode == "forward" ? AttractionMode::forward
                                     : AttractionMode::pullback,
                at_horizons, at_q);
            std::ostringstream os;
            os.precision(17);
            os << "horizon,distance,saturated\n";
            for (const auto& p : series.points)
                os << p.horizon << ',' << p.distance << ',' << p.saturated
                   << '\n';
            write_text(out / "series.csv", os.str());
            std::cout << "attract (" << at_mode << "): final distance = "
                      << series.points.back().distance
                      << (series.final_saturated() ? " (saturated)" : "")
                      << (series.outside_basin ? " [outside basin]" : "")
                      << " -> " << (out / "series.csv").string() << '\n';
            return kExitOk;
        }

        if (active == cmd_min) {
            apply(cmd_min->get_option("--kind"), mn_kind, cfg, "kind");
            apply(cmd_min->get_option("--R"), mn_R, cfg, "R");
            apply(cmd_min->get_option("--mass"), mn_mass, cfg, "mass");
            apply(cmd_min->get_option("--x"), mn_x, cfg, "x");
            apply(cmd_min->get_option("--schedule"), mn_schedule, cfg,
                  "schedule");
            apply(cmd_min->get_option("--horizons"), mn_horizons, cfg,
                  "horizons");
            const auto m = measure_from(cfg, false, mn_mass);
            MinimizerTrace trace;
            if (mn_kind == "backward") {
                const auto run = pullback_solution(seed, m, mn_R, mn_schedule);
                if (!run.stabilized()) {
                    std::cout << "minimizer: StabilizationBudgetExceeded\n";
                    return kExitBudget;
                }
                trace = backward_minimizer(run, mn_x);
            } else {
                trace = two_sided_minimizer(seed, m, mn_horizons);
                if (!trace.stabilized) {
                    write_text(out / "trace.csv", trace.to_csv());
                    std::cout << "minimizer: StabilizationBudgetExceeded at T = "
                              << mn_horizons.back() << '\n';
                    return kExitBudget;
                }
            }
            write_text(out / "trace.csv", trace.to_csv());
            std::cout << "minimizer (" << mn_kind << "): "
                      << trace.path.vertices.size() << " vertices, stabilized at T = "
                      << trace.stabilization_horizon << " -> "
                      << (out / "trace.csv").string() << '\n';
            return kExitOk;
        }

        if (active == cmd_stats) {
            apply(cmd_stats->get_option("--mass"), ss_mass, cfg, "mass");
            apply(cmd_stats->get_option("--seeds"), ss_nseeds, cfg, "seeds");
            apply(cmd_stats->get_option("--bootstrap"), ss_bootstrap, cfg,
                  "bootstrap");
            apply(cmd_stats->get_option("--R-list"), ss_R, cfg, "R_list");
            apply(cmd_stats->get_option("--t-list"), ss_t, cfg, "t_list");
            const auto m = measure_from(cfg, false, ss_mass);
            const auto est = estimate_S(m, ss_R, ss_t,
                                        seed_range(seed, ss_nseeds),
                                        ss_bootstrap, workers);
            write_json(out / "estimate.json", est.to_json());
            write_text(out / "per_seed.csv", est.per_seed_csv());
            std::cout << "stats-s: S = " << est.S_est << " (CI [" << est.ci.lo
                      << ", " << est.ci.hi << "]), q = " << est.q_est << " -> "
                      << (out / "estimate.json").string() << '\n';
            return kExitOk;
        }

        if (active == cmd_clt) {
            apply(cmd_clt->get_option("--mass"), cc_mass, cfg, "mass");
            apply(cmd_clt->get_option("--horizon"), cc_horizon, cfg, "horizon");
            apply(cmd_clt->get_option("--seeds"), cc_nseeds, cfg, "seeds");
            apply(cmd_clt->get_option("--wmax"), cc_wmax, cfg, "wmax");
            apply(cmd_clt->get_option("--blocks"), cc_blocks, cfg, "blocks");
            const auto m = measure_from(cfg, true, cc_mass);
            const auto est = estimate_diffusion(m, cc_horizon,
                                                seed_range(seed, cc_nseeds),
                                                cc_wmax, cc_blocks, workers);
            write_json(out / "estimate.json", est.to_json());
            const auto field =
                sample(m, 0.0, cc_horizon, seed, Topology::cylinder);
            write_text(out / "increments.csv",
                       build_chain(field, cc_wmax).increments_csv());
            std::cout << "circle-clt: D = " << est.D_est << " from "
                      << est.n_increments << " increments -> "
                      << (out / "estimate.json").string() << '\n';
            return kExitOk;
        }

        if (active == cmd_oracle) {
            apply(cmd_oracle->get_option("--seeds"), ov_nseeds, cfg, "seeds");
            apply(cmd_oracle->get_option("--points"), ov_points, cfg, "points");
            apply(cmd_oracle->get_option("--queries"), ov_queries, cfg,
                  "queries");
            double worst = 0.0;
            for (int s = 0; s < ov_nseeds; ++s) {
                SplitMix64 g(seed + static_cast<std::uint64_t>(s));
                PointField field;
                field.measure = IntensityMeasure::uniform_line(-2.0, 2.0, 1.0);
                field.t_lo = 0.0;
                field.t_hi = 4.1;
                for (int i = 0; i < ov_points; ++i)
                    field.points.push_back({0.05 + 4.0 * g.next_double(),
                                            (g.next_double() - 0.5) * 4.0});
                std::sort(field.points.begin(), field.points.end(),
                          [](auto& a, auto& b) {
                              return a.t < b.t || (a.t == b.t && a.x < b.x);
                          });
                const auto table = build_table(field, Potential::zero(), 0.0);
                for (int q = 0; q < ov_queries; ++q) {
                    const double t = 4.2 + g.next_double();
                    const double x = (g.next_double() - 0.5) * 6.0;
                    const double dp = terminal_value(table, field,
                                                     Potential::zero(), t, x)
                                          .value;
                    const double bf =
                        brute_force_value(field, Potential::zero(), 0.0, t, x);
                    worst = std::max(worst, std::abs(dp - bf));
                }
            }
            const bool pass = worst < 1e-9;
            std::cout << "oracle-verify: max|DP-oracle| "
                      << (pass ? "< 1e-9" : "check failed") << " (measured "
                      << worst << ")\n";
            return pass ? kExitOk : kExitError;
        }
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
}
