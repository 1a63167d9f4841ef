#pragma once

// Robot geometry, cable kinematics and the equilibrium W·tau + w_e = 0.

#include <Eigen/Dense>

#include <optional>
#include <string_view>
#include <vector>

namespace cdpr {

enum class RobotClass { PlanarPointMass, SpatialPointMass, SpatialRigidBody };

std::string_view to_string(RobotClass cls);
std::optional<RobotClass> parse_robot_class(std::string_view name);

/// Rows of the wrench matrix: 2 (planar), 3 (spatial point mass), 6 (rigid body).
int task_dimension(RobotClass cls);
/// Number of translational coordinates: 2 for planar robots, 3 otherwise.
int translational_dimension(RobotClass cls);

/// Immutable description of a cable robot.
///
/// Points are given in the robot's translational dimension (2 or 3) and are
/// stored internally lifted to 3D, with z = 0 for planar robots. Point-mass
/// robots have all attachment points at the platform reference.
class RobotGeometry {
 public:
  RobotGeometry(RobotClass cls, std::vector<Eigen::VectorXd> anchors,
                std::vector<Eigen::VectorXd> attachments, double mass,
                const Eigen::VectorXd& gravity);

  RobotClass robot_class() const { return class_; }
  int cable_count() const { return static_cast<int>(anchors_.size()); }
  int task_dim() const { return task_dimension(class_); }
  int translational_dim() const { return translational_dimension(class_); }
  /// Degree of redundancy, cables minus task-space dimension.
  int redundancy() const { return cable_count() - task_dim(); }

  const std::vector<Eigen::Vector3d>& anchors() const { return anchors_; }
  const std::vector<Eigen::Vector3d>& attachments() const { return attachments_; }
  double mass() const { return mass_; }
  const Eigen::Vector3d& gravity() const { return gravity_; }

 private:
  RobotClass class_;
  std::vector<Eigen::Vector3d> anchors_;
  std::vector<Eigen::Vector3d> attachments_;
  double mass_;
  Eigen::Vector3d gravity_;
};

/// Platform pose. Orientation only matters for the rigid-body class.
struct Pose {
  Eigen::VectorXd position;
  Eigen::Matrix3d orientation = Eigen::Matrix3d::Identity();

  static Pose at(Eigen::VectorXd position) { return Pose{std::move(position)}; }
};

struct CableState {
  Eigen::VectorXd direction;  // unit, from platform attachment toward anchor
  double length = 0.0;        // m
};

/// Tension box. Bounds are stored per cable; 0 < lower < upper componentwise.
class TensionBounds {
 public:
  TensionBounds(double lower, double upper, int cable_count);
  TensionBounds(Eigen::VectorXd lower, Eigen::VectorXd upper);

  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }
  Eigen::VectorXd width() const { return upper_ - lower_; }
  int size() const { return static_cast<int>(lower_.size()); }

 private:
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
};

/// One instance of the tension distribution problem: W·tau + w_e = 0 within
/// the bounds. W may have any number of rows below the cable count,
/// including zero (pure box problem).
struct EquilibriumProblem {
  EquilibriumProblem(Eigen::MatrixXd wrench_matrix, Eigen::VectorXd external_wrench,
                     TensionBounds bounds);

  Eigen::MatrixXd wrench_matrix;
  Eigen::VectorXd external_wrench;
  TensionBounds bounds;

  int cable_count() const { return static_cast<int>(wrench_matrix.cols()); }
  int redundancy() const {
    return static_cast<int>(wrench_matrix.cols() - wrench_matrix.rows());
  }
  /// W·tau + w_e.
  Eigen::VectorXd residual(const Eigen::VectorXd& tension) const;
};

std::vector<CableState> cable_geometry(const RobotGeometry& geom, const Pose& pose);

Eigen::MatrixXd wrench_matrix(const RobotGeometry& geom, const Pose& pose);

/// w_e = m·(g − a), with zero moments for the rigid-body class (the load is a
/// point mass at the platform reference). `accel` may hold just the
/// translational part or the full task-space vector; angular entries are
/// ignored.
Eigen::VectorXd external_wrench(const RobotGeometry& geom, const Pose& pose,
                                const Eigen::VectorXd& accel);

/// Static (accel = 0) or dynamic problem at a pose.
EquilibriumProblem make_problem(const RobotGeometry& geom, const Pose& pose,
                                const TensionBounds& bounds,
                                const std::optional<Eigen::VectorXd>& accel = std::nullopt);

}  // namespace cdpr
