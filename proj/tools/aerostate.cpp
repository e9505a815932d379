// Command-line front end: simulate flights, run estimators, evaluate traces.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>

#include "aerostate/aerostate.hpp"

namespace {

using namespace aerostate;

constexpr int kExitConfig = 2;
constexpr int kExitMalformed = 3;

void write_report(const std::optional<std::string>& path, const harness::EvalReport& report) {
  const std::string text = report.to_json().dump(2);
  if (path) {
    std::ofstream out(*path);
    if (!out) throw ConfigError("cannot open report file " + *path);
    out << text << '\n';
  } else {
    std::cout << text << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadrotor state estimation toolkit"};
  app.require_subcommand(1);

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Generate a flight log over a simulated world");
  std::uint64_t world_seed = 7;
  std::uint64_t seed = 1;
  std::string traj = "square";
  std::string sensors_profile;
  std::string out_path;
  std::optional<std::string> map_out;
  double duration = 60.0;
  sim_cmd->add_option("--world-seed", world_seed, "Seed of the textured world");
  sim_cmd->add_option("--seed", seed, "Seed of the sensor noise");
  sim_cmd->add_option("--traj", traj, "Trajectory")->check(CLI::IsMember(harness::trajectory_names()));
  sim_cmd->add_option("--sensors", sensors_profile, "Sensor profile, named after the mode that uses it")
      ->check(CLI::IsMember({"ukf2", "ukf7", "mcl", "slam-offline", "mcl-over-slam-map"}));
  sim_cmd->add_option("--duration", duration, "Seconds of flight")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--out", out_path, "Output JSON Lines log")->required();
  sim_cmd->add_option("--map-out", map_out, "Also write the ground-truth map");

  // run
  auto* run_cmd = app.add_subcommand("run", "Run an estimator and evaluate it against ground truth");
  harness::RunConfig cfg;
  std::string mode = "mcl";
  std::optional<std::string> report_path;
  run_cmd->add_option("--mode", mode, "Estimator")
      ->required()
      ->check(CLI::IsMember({"ukf2", "ukf7", "mcl", "slam-offline", "mcl-over-slam-map"}));
  run_cmd->add_option("--log", cfg.log_path, "Flight log (simulated when omitted)");
  run_cmd->add_option("--loc-log", cfg.localization_log_path, "Second log for mcl-over-slam-map");
  run_cmd->add_option("--map", cfg.map_path, "Feature map for mcl (generated world when omitted)");
  run_cmd->add_option("--map-out", cfg.map_out_path, "Write the map built by SLAM");
  run_cmd->add_option("--trace", cfg.trace_path, "Write the pose trace as CSV");
  run_cmd->add_option("--particles", cfg.particles, "Particle count")->check(CLI::PositiveNumber);
  run_cmd->add_option("--loc-particles", cfg.localization_particles,
                      "Particle count of the localization stage of mcl-over-slam-map")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", cfg.seed, "Seed");
  run_cmd->add_option("--world-seed", cfg.world_seed, "Seed of the simulated world");
  run_cmd->add_option("--traj", cfg.trajectory, "Trajectory of the simulated log")
      ->check(CLI::IsMember(harness::trajectory_names()));
  run_cmd->add_option("--duration", cfg.duration, "Seconds of simulated flight")->check(CLI::PositiveNumber);
  run_cmd->add_option("--tol", cfg.pair_tolerance, "Timestamp pairing tolerance, seconds");
  run_cmd->add_option("--report", report_path, "Write the JSON report here (stdout otherwise)");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Score a pose trace against a log's ground truth");
  std::string est_path, truth_path;
  double tol = harness::kDefaultPairTolerance;
  std::optional<std::string> eval_report;
  eval_cmd->add_option("--est", est_path, "Trace CSV")->required();
  eval_cmd->add_option("--truth", truth_path, "Flight log with truth records")->required();
  eval_cmd->add_option("--tol", tol, "Timestamp pairing tolerance, seconds")->check(CLI::NonNegativeNumber);
  eval_cmd->add_option("--report", eval_report, "Write the JSON report here (stdout otherwise)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sim_cmd) {
      const harness::Mode profile =
          sensors_profile.empty() ? (traj == "hover" || traj == "hover-step" ? harness::Mode::kUkf2
                                     : traj == "hand-held"                   ? harness::Mode::kSlamOffline
                                                                             : harness::Mode::kMcl)
                                  : harness::parse_mode(sensors_profile);
      const sim::World world = sim::generate_world(harness::kDeskBounds, harness::kDeskDensity, world_seed);
      const FlightLog log = sim::simulate_flight(world, harness::make_trajectory(traj, world.bounds, duration),
                                                 harness::default_sensors(profile), duration, seed);
      harness::write_log(out_path, log);
      if (map_out) harness::write_map(*map_out, world.index);
      std::cout << "wrote " << log.size() << " records to " << out_path << '\n';
    } else if (*run_cmd) {
      cfg.mode = harness::parse_mode(mode);
      const harness::EvalReport report = harness::run_pipeline(cfg);
      std::cerr << report.to_table();
      write_report(report_path, report);
    } else if (*eval_cmd) {
      const auto trace = harness::read_trace(est_path);
      const FlightLog log = harness::read_log(truth_path);
      std::vector<harness::TimedPose> est, truth;
      for (const auto& p : trace) est.push_back({p.t, p.pose});
      for (const auto& t : log.select<TruthRecord>()) truth.push_back({t.t, t.pose});
      const harness::Pairing pairing = harness::pair_by_timestamp(est, truth, tol);
      if (pairing.samples.empty()) throw ConfigError("no estimate pairs with ground truth within the tolerance");
      harness::EvalReport report;
      report.stats = harness::error_stats(pairing.samples);
      report.dropped = pairing.dropped;
      nlohmann::ordered_json j;
      j["error"] = {{"mean", report.stats.mean},
                    {"std", report.stats.std},
                    {"max", report.stats.max},
                    {"min", report.stats.min},
                    {"n", report.stats.n}};
      j["dropped"] = report.dropped;
      std::cerr << "mean " << report.stats.mean << "  std " << report.stats.std << "  max " << report.stats.max
                << "  min " << report.stats.min << "  n " << report.stats.n << "  dropped " << report.dropped
                << '\n';
      if (eval_report) {
        std::ofstream(*eval_report) << j.dump(2) << '\n';
      } else {
        std::cout << j.dump(2) << '\n';
      }
    }
  } catch (const MalformedInput& e) {
    std::cerr << "malformed input: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
