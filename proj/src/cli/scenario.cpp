#include "cdpr/scenario.hpp"

#include "cdpr/errors.hpp"
#include "cdpr/stiffness.hpp"
#include "format.hpp"

#include <json.hpp>

#include <ostream>

namespace cdpr {

ScenarioRun run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  ScenarioRun out;
  out.dt = options.dt.value_or(config.dt);
  if (!(out.dt > 0.0)) throw InvalidArgumentError("dt must be positive");
  if (options.eta) (void)PreloadParam(*options.eta);

  const PickPlaceTrajectory traj = build_pick_place(config.task);
  out.duration = traj.duration();
  out.trajectory = sample(traj, out.dt);
  if (options.eta) {
    for (auto& s : out.trajectory.samples) s.eta = *options.eta;
    out.constant_eta = true;
  }
  out.warm_start = options.warm_start;

  std::vector<SolverSpec> specs;
  if (options.only) {
    SolverSpec spec;
    spec.method = *options.only;
    for (const auto& s : config.solvers) {
      if (s.method == *options.only) spec = s;
    }
    specs.push_back(std::move(spec));
  } else {
    specs = config.solvers;
  }

  for (const auto& spec : specs) {
    SweepOptions sweep;
    sweep.method = spec.method;
    sweep.solver = spec.config;
    sweep.lp_cost = spec.lp_cost;
    sweep.warm_start = options.warm_start;
    out.runs.push_back({spec, run_sweep(config.robot, config.bounds, out.trajectory, sweep)});
  }
  return out;
}

std::string run_csv_name(const SolverRun& run) {
  return std::string(to_string(run.spec.method)) + ".csv";
}

void write_run_csv(std::ostream& out, const SolverRun& run, const SampledTrajectory& traj,
                   const RobotGeometry* geom) {
  const auto& samples = run.result.record.samples;
  const int m = static_cast<int>(run.result.record.lower.size());
  out << "t";
  for (int i = 1; i <= m; ++i) out << ",tau_" << i;
  out << ",eta_c,sum_tau,solve_time_us,status";
  if (geom) out << ",ka_trace,ka_min_eig";
  out << '\n';

  for (std::size_t k = 0; k < samples.size(); ++k) {
    const RunSample& s = samples[k];
    out << detail::fmt(s.time);
    for (int i = 0; i < m; ++i) out << ',' << detail::fmt(s.tension[i]);
    out << ',' << detail::fmt(s.eta) << ',' << detail::fmt(s.tension.sum()) << ','
        << detail::fmt(s.wall_time_us) << ',' << to_string(s.status);
    if (geom) {
      double trace = std::numeric_limits<double>::quiet_NaN();
      double min_eig = trace;
      if (s.status == SolverStatus::Converged) {
        const auto cables = cable_geometry(*geom, sample_pose(traj.samples[k]));
        std::tie(trace, min_eig) = stiffness_summary(active_stiffness(cables, s.tension));
      }
      out << ',' << detail::fmt(trace) << ',' << detail::fmt(min_eig);
    }
    out << '\n';
  }
  if (!run.result.complete) {
    out << "# partial: " << to_string(run.result.failure.value_or(SolverStatus::Infeasible));
    if (!samples.empty()) out << " at t=" << detail::fmt(samples.back().time);
    out << ", " << samples.size() << " of " << traj.samples.size() << " samples\n";
  }
}

std::string summary_json(const ScenarioConfig& config, const ScenarioRun& run) {
  using nlohmann::json;
  json doc;
  doc["robot"] = std::string(to_string(config.robot.robot_class()));
  doc["cables"] = config.robot.cable_count();
  doc["redundancy"] = config.robot.redundancy();
  doc["dt"] = run.dt;
  doc["duration"] = run.duration;
  doc["samples"] = run.trajectory.samples.size();
  doc["warm_start"] = run.warm_start;
  doc["eta"] = run.constant_eta
                   ? json{{"mode", "constant"}, {"value", run.trajectory.samples.front().eta}}
                   : json{{"mode", "schedule"},
                          {"breakpoints", config.task.eta},
                          {"pause_policy", "hold"}};
  doc["timing_scope"] = "solver call only, microseconds";
  doc["limit_band_fraction"] = kDefaultLimitBand;

  json solvers = json::array();
  for (const auto& r : run.runs) {
    const RunRecord& rec = r.result.record;
    json s;
    s["name"] = rec.solver;
    s["csv"] = run_csv_name(r);
    s["complete"] = r.result.complete;
    s["failure"] = r.result.failure ? json(std::string(to_string(*r.result.failure))) : json();
    s["samples"] = rec.samples.size();
    if (rec.samples.empty()) {
      s["metrics"] = json();
    } else {
      const LimitHits hits = limit_hits(rec);
      const Smoothness smooth = smoothness(rec);
      const TimingStats timing = timing_stats(rec);
      int max_iter = 0;
      double iter_sum = 0.0;
      for (const auto& x : rec.samples) {
        max_iter = std::max(max_iter, x.iterations);
        iter_sum += x.iterations;
      }
      s["metrics"] = {
          {"stiffness_index", stiffness_index(rec)},
          {"limit_hits",
           {{"count", hits.count}, {"dwell_time", hits.dwell_time}, {"min_slack", hits.min_slack}}},
          {"smoothness",
           {{"max_step", smooth.max_step}, {"total_variation", smooth.total_variation}}},
          {"timing_us", {{"mean", timing.mean}, {"p95", timing.p95}, {"max", timing.max}}},
          {"iterations",
           {{"mean", iter_sum / static_cast<double>(rec.samples.size())}, {"max", max_iter}}}};
    }
    solvers.push_back(std::move(s));
  }
  doc["solvers"] = std::move(solvers);
  return doc.dump(2) + "\n";
}

}  // namespace cdpr
