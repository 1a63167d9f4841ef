#include "cdpr/metrics.hpp"

#include "cdpr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cdpr {

bool RunRecord::valid() const {
  return !samples.empty() && std::all_of(samples.begin(), samples.end(), [](const auto& s) {
    return s.status == SolverStatus::Converged;
  });
}

double stiffness_index(const RunRecord& record) {
  if (record.samples.empty()) throw InvalidArgumentError("stiffness index of an empty record");
  double total = 0.0;
  for (std::size_t k = 1; k < record.samples.size(); ++k) {
    const auto& a = record.samples[k - 1];
    const auto& b = record.samples[k];
    total += 0.5 * (a.tension.sum() + b.tension.sum()) * (b.time - a.time);
  }
  return total;
}

LimitHits limit_hits(const RunRecord& record, double tol_fraction) {
  LimitHits hits;
  hits.min_slack = std::numeric_limits<double>::infinity();
  const Eigen::VectorXd band = tol_fraction * (record.upper - record.lower);
  bool in_run = false;
  double run_start = 0.0;
  double last_time = 0.0;
  for (const auto& s : record.samples) {
    const Eigen::VectorXd lo = s.tension - record.lower;
    const Eigen::VectorXd hi = record.upper - s.tension;
    hits.min_slack = std::min({hits.min_slack, lo.minCoeff(), hi.minCoeff()});
    const bool at_limit =
        ((lo - band).array() <= 0.0).any() || ((hi - band).array() <= 0.0).any();
    if (at_limit && !in_run) {
      ++hits.count;
      run_start = s.time;
    } else if (!at_limit && in_run) {
      hits.dwell_time += last_time - run_start;
    }
    in_run = at_limit;
    last_time = s.time;
  }
  if (in_run) hits.dwell_time += last_time - run_start;
  if (record.samples.empty()) hits.min_slack = 0.0;
  return hits;
}

Smoothness smoothness(const RunRecord& record) {
  Smoothness out;
  for (std::size_t k = 1; k < record.samples.size(); ++k) {
    const Eigen::VectorXd step = record.samples[k].tension - record.samples[k - 1].tension;
    out.max_step = std::max(out.max_step, step.cwiseAbs().maxCoeff());
    out.total_variation += step.cwiseAbs().sum();
  }
  return out;
}

TimingStats timing_stats(const RunRecord& record) {
  TimingStats out;
  if (record.samples.empty()) return out;
  std::vector<double> times;
  times.reserve(record.samples.size());
  for (const auto& s : record.samples) times.push_back(s.wall_time_us);
  std::sort(times.begin(), times.end());
  double sum = 0.0;
  for (double t : times) sum += t;
  out.mean = sum / static_cast<double>(times.size());
  const std::size_t rank = (95 * times.size() + 99) / 100;  // ceil(0.95·n)
  out.p95 = times[std::max<std::size_t>(rank, 1) - 1];
  out.max = times.back();
  return out;
}

}  // namespace cdpr
