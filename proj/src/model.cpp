#include "cdpr/model.hpp"

#include "cdpr/errors.hpp"

#include <cmath>
#include <string>

namespace cdpr {

namespace {

constexpr double kMinCableLength = 1e-12;

Eigen::Vector3d lift(const Eigen::VectorXd& p, int dim, const char* what) {
  if (p.size() != dim) {
    throw GeometryError(std::string(what) + " has " + std::to_string(p.size()) +
                        " coordinates, expected " + std::to_string(dim));
  }
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  out.head(dim) = p;
  return out;
}

}  // namespace

std::string_view to_string(RobotClass cls) {
  switch (cls) {
    case RobotClass::PlanarPointMass:
      return "planar_point_mass";
    case RobotClass::SpatialPointMass:
      return "spatial_point_mass";
    case RobotClass::SpatialRigidBody:
      return "spatial_rigid_body";
  }
  return "unknown";
}

std::optional<RobotClass> parse_robot_class(std::string_view name) {
  for (auto cls : {RobotClass::PlanarPointMass, RobotClass::SpatialPointMass,
                   RobotClass::SpatialRigidBody}) {
    if (name == to_string(cls)) return cls;
  }
  return std::nullopt;
}

int task_dimension(RobotClass cls) {
  switch (cls) {
    case RobotClass::PlanarPointMass:
      return 2;
    case RobotClass::SpatialPointMass:
      return 3;
    case RobotClass::SpatialRigidBody:
      return 6;
  }
  return 0;
}

int translational_dimension(RobotClass cls) {
  return cls == RobotClass::PlanarPointMass ? 2 : 3;
}

RobotGeometry::RobotGeometry(RobotClass cls, std::vector<Eigen::VectorXd> anchors,
                             std::vector<Eigen::VectorXd> attachments, double mass,
                             const Eigen::VectorXd& gravity)
    : class_(cls), mass_(mass) {
  const int d = translational_dimension(cls);
  const int m = static_cast<int>(anchors.size());
  if (m < task_dimension(cls)) {
    throw GeometryError("robot needs at least " + std::to_string(task_dimension(cls)) +
                        " cables, got " + std::to_string(m));
  }
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw GeometryError("load mass must be positive");
  }
  anchors_.reserve(m);
  for (const auto& a : anchors) anchors_.push_back(lift(a, d, "anchor"));
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if ((anchors_[i] - anchors_[j]).norm() < kMinCableLength) {
        throw GeometryError("anchors " + std::to_string(i + 1) + " and " +
                            std::to_string(j + 1) + " coincide");
      }
    }
  }

  if (attachments.empty()) {
    attachments_.assign(m, Eigen::Vector3d::Zero());
  } else {
    if (static_cast<int>(attachments.size()) != m) {
      throw GeometryError("expected " + std::to_string(m) + " attachment points, got " +
                          std::to_string(attachments.size()));
    }
    for (const auto& b : attachments) attachments_.push_back(lift(b, d, "attachment"));
    if (cls != RobotClass::SpatialRigidBody) {
      for (const auto& b : attachments_) {
        if (b.norm() != 0.0) {
          throw GeometryError("point-mass robots cannot have offset attachment points");
        }
      }
    }
  }
  gravity_ = lift(gravity, d, "gravity");
}

TensionBounds::TensionBounds(double lower, double upper, int cable_count)
    : TensionBounds(Eigen::VectorXd::Constant(cable_count, lower),
                    Eigen::VectorXd::Constant(cable_count, upper)) {}

TensionBounds::TensionBounds(Eigen::VectorXd lower, Eigen::VectorXd upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size() || lower_.size() == 0) {
    throw InvalidArgumentError("tension bounds must be non-empty and of equal size");
  }
  for (Eigen::Index i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] > 0.0) || !(lower_[i] < upper_[i]) || !std::isfinite(upper_[i])) {
      throw InvalidArgumentError("tension bounds require 0 < lower < upper (cable " +
                                 std::to_string(i + 1) + ")");
    }
  }
}

EquilibriumProblem::EquilibriumProblem(Eigen::MatrixXd w, Eigen::VectorXd we, TensionBounds b)
    : wrench_matrix(std::move(w)), external_wrench(std::move(we)), bounds(std::move(b)) {
  if (external_wrench.size() != wrench_matrix.rows()) {
    throw InvalidArgumentError("external wrench size does not match wrench matrix rows");
  }
  if (bounds.size() != wrench_matrix.cols()) {
    throw InvalidArgumentError("bounds size does not match cable count");
  }
  if (wrench_matrix.rows() > wrench_matrix.cols()) {
    throw InvalidArgumentError("fewer cables than task-space dimensions");
  }
}

Eigen::VectorXd EquilibriumProblem::residual(const Eigen::VectorXd& tension) const {
  return wrench_matrix * tension + external_wrench;
}

std::vector<CableState> cable_geometry(const RobotGeometry& geom, const Pose& pose) {
  const int d = geom.translational_dim();
  const Eigen::Vector3d p = lift(pose.position, d, "pose position");
  const bool rigid = geom.robot_class() == RobotClass::SpatialRigidBody;

  std::vector<CableState> cables;
  cables.reserve(geom.cable_count());
  for (int i = 0; i < geom.cable_count(); ++i) {
    Eigen::Vector3d attach = p;
    if (rigid) attach += pose.orientation * geom.attachments()[i];
    const Eigen::Vector3d span = geom.anchors()[i] - attach;
    const double length = span.norm();
    if (!(length > kMinCableLength)) {
      throw GeometryError("cable " + std::to_string(i + 1) + " has zero length at this pose");
    }
    cables.push_back({(span / length).head(d), length});
  }
  return cables;
}

Eigen::MatrixXd wrench_matrix(const RobotGeometry& geom, const Pose& pose) {
  const auto cables = cable_geometry(geom, pose);
  const int n = geom.task_dim();
  const int d = geom.translational_dim();
  Eigen::MatrixXd w(n, geom.cable_count());
  for (int i = 0; i < geom.cable_count(); ++i) {
    w.col(i).head(d) = cables[i].direction;
    if (geom.robot_class() == RobotClass::SpatialRigidBody) {
      const Eigen::Vector3d lever = pose.orientation * geom.attachments()[i];
      const Eigen::Vector3d u = cables[i].direction;
      w.col(i).tail<3>() = lever.cross(u);
    }
  }
  return w;
}

Eigen::VectorXd external_wrench(const RobotGeometry& geom, const Pose& /*pose*/,
                                const Eigen::VectorXd& accel) {
  const int n = geom.task_dim();
  const int d = geom.translational_dim();
  if (accel.size() != d && accel.size() != n) {
    throw InvalidArgumentError("acceleration has " + std::to_string(accel.size()) +
                               " entries, expected " + std::to_string(d) +
                               (n != d ? " or " + std::to_string(n) : std::string()));
  }
  Eigen::VectorXd we = Eigen::VectorXd::Zero(n);
  we.head(d) = geom.mass() * (geom.gravity().head(d) - accel.head(d));
  return we;
}

EquilibriumProblem make_problem(const RobotGeometry& geom, const Pose& pose,
                                const TensionBounds& bounds,
                                const std::optional<Eigen::VectorXd>& accel) {
  const Eigen::VectorXd a =
      accel ? *accel : Eigen::VectorXd::Zero(geom.translational_dim()).eval();
  return EquilibriumProblem(wrench_matrix(geom, pose), external_wrench(geom, pose, a), bounds);
}

}  // namespace cdpr
