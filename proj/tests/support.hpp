#pragma once

// Shared helpers for the test programs: random problem generators and
// independent reference computations.

#include "cdpr/feasibility.hpp"
#include "cdpr/model.hpp"
#include "cdpr/solvers.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace testing {

inline std::filesystem::path source_dir() { return CDPR_SOURCE_DIR; }
inline std::filesystem::path config_path(const std::string& name) {
  return source_dir() / "configs" / name;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Feasible problem with a known strictly interior point: W is Gaussian,
/// the bounds are random, and w_e is chosen so that a random tension in the
/// middle of the box is an equilibrium.
struct RandomProblem {
  cdpr::EquilibriumProblem problem;
  Eigen::VectorXd interior;
};

inline RandomProblem random_problem(std::mt19937_64& rng, int m, int dor) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> lo_dist(1.0, 20.0);
  std::uniform_real_distribution<double> width_dist(20.0, 300.0);
  std::uniform_real_distribution<double> frac(0.2, 0.8);
  const int n = m - dor;
  Eigen::MatrixXd w(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) w(i, j) = normal(rng);
  Eigen::VectorXd lb(m), ub(m), tau(m);
  for (int j = 0; j < m; ++j) {
    lb[j] = lo_dist(rng);
    ub[j] = lb[j] + width_dist(rng);
    tau[j] = lb[j] + frac(rng) * (ub[j] - lb[j]);
  }
  Eigen::VectorXd we = -(w * tau);
  return {cdpr::EquilibriumProblem(w, we, cdpr::TensionBounds(lb, ub)), tau};
}

/// The two-cable line w1·t1 + w2·t2 + we = 0 (w2 ≠ 0) inside a box.
struct Segment {
  double w1, w2, we, lb, ub;
  double t1_min = 0.0, t1_max = 0.0;

  Segment(double w1_, double w2_, double we_, double lb_, double ub_)
      : w1(w1_), w2(w2_), we(we_), lb(lb_), ub(ub_) {
    // t2(t1) is monotone, so the t2 bounds map to a t1 interval.
    const double a = (-we - w2 * lb) / w1;
    const double b = (-we - w2 * ub) / w1;
    t1_min = std::max(lb, std::min(a, b));
    t1_max = std::min(ub, std::max(a, b));
  }
  Eigen::Vector2d at(double t1) const { return {t1, (-we - w1 * t1) / w2}; }
};

/// Golden-section minimization of f on [a, b], in extended precision: the
/// bracket can only shrink to about sqrt(eps) of the minimizer, so double
/// would cap the oracle near 1e-6.
inline long double golden_section(const std::function<long double(long double)>& f, long double a,
                                  long double b, long double tol = 1e-15L) {
  const long double g = (std::sqrt(5.0L) - 1.0L) / 2.0L;
  long double c = b - g * (b - a);
  long double d = a + g * (b - a);
  long double fc = f(c), fd = f(d);
  while (b - a > tol * std::max(1.0L, std::abs(a) + std::abs(b))) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5L * (a + b);
}

/// Barrier along the two-cable line, written out independently of the
/// library.
inline long double segment_barrier(long double w1, long double w2, long double we, long double t1,
                                   long double lb, long double ub, long double c_lb,
                                   long double c_ub) {
  const long double t2 = (-we - w1 * t1) / w2;
  long double v = 0.0L;
  for (long double t : {t1, t2}) {
    if (!(t > lb && t < ub)) return std::numeric_limits<long double>::infinity();
    v -= c_lb * std::log(t - lb) + c_ub * std::log(ub - t);
  }
  return v;
}

/// Whether p lies in the convex hull of pts (2D), with tolerance.
inline bool in_hull_2d(std::vector<Eigen::Vector2d> pts, const Eigen::Vector2d& p, double tol) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return (a - o).x() * (b - o).y() - (a - o).y() * (b - o).x();
  };
  std::vector<Eigen::Vector2d> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t base = hull.size();
    for (const auto& q : pts) {
      while (hull.size() >= base + 2 && cross(hull[hull.size() - 2], hull.back(), q) <= 0.0) {
        hull.pop_back();
      }
      hull.push_back(q);
    }
    hull.pop_back();
    std::reverse(pts.begin(), pts.end());
  }
  if (hull.size() < 3) {
    // Degenerate hull: distance to the segment through the extreme points.
    const Eigen::Vector2d a = pts.front(), b = pts.back();
    const Eigen::Vector2d ab = b - a;
    const double len2 = ab.squaredNorm();
    const double t = len2 > 0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    return (a + t * ab - p).norm() <= tol;
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Eigen::Vector2d& a = hull[i];
    const Eigen::Vector2d& b = hull[(i + 1) % hull.size()];
    if (cross(a, b, p) < -tol * (b - a).norm()) return false;
  }
  return true;
}

/// Validates `doc` against the subset of JSON Schema used by the shipped
/// summary schema: type, required, properties, additionalProperties (bool),
/// items, enum, minimum. Returns an error path or an empty string.
inline std::string schema_errors(const nlohmann::json& schema, const nlohmann::json& doc,
                                 const std::string& path = "$") {
  using nlohmann::json;
  if (schema.contains("type")) {
    std::vector<std::string> types;
    if (schema["type"].is_array()) {
      for (const auto& t : schema["type"]) types.push_back(t.get<std::string>());
    } else {
      types.push_back(schema["type"].get<std::string>());
    }
    auto matches = [&](const std::string& t) {
      if (t == "object") return doc.is_object();
      if (t == "array") return doc.is_array();
      if (t == "string") return doc.is_string();
      if (t == "boolean") return doc.is_boolean();
      if (t == "null") return doc.is_null();
      if (t == "integer") return doc.is_number_integer();
      if (t == "number") return doc.is_number();
      return false;
    };
    if (std::none_of(types.begin(), types.end(), matches)) return path + ": wrong type";
  }
  if (schema.contains("enum")) {
    const auto& e = schema["enum"];
    if (std::find(e.begin(), e.end(), doc) == e.end()) return path + ": not in enum";
  }
  if (schema.contains("minimum") && doc.is_number() &&
      doc.get<double>() < schema["minimum"].get<double>()) {
    return path + ": below minimum";
  }
  if (doc.is_object()) {
    if (schema.contains("required")) {
      for (const auto& k : schema["required"]) {
        if (!doc.contains(k.get<std::string>())) return path + ": missing " + k.get<std::string>();
      }
    }
    const json props = schema.value("properties", json::object());
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      if (props.contains(it.key())) {
        auto e = schema_errors(props[it.key()], it.value(), path + "." + it.key());
        if (!e.empty()) return e;
      } else if (schema.contains("additionalProperties") &&
                 schema["additionalProperties"] == false) {
        return path + ": unexpected key " + it.key();
      }
    }
  }
  if (doc.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      auto e = schema_errors(schema["items"], doc[i], path + "[" + std::to_string(i) + "]");
      if (!e.empty()) return e;
    }
  }
  return {};
}

}  // namespace testing
