#include "cdpr/errors.hpp"
#include "cdpr/feasibility.hpp"
#include "cdpr/model.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace cdpr;

namespace {

Eigen::VectorXd v(std::initializer_list<double> xs) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

RobotGeometry symmetric_pair(double mass = 10.0) {
  return RobotGeometry(RobotClass::PlanarPointMass, {v({-1, 1}), v({1, 1})}, {}, mass,
                       v({0, -9.81}));
}

RobotGeometry planar_default() {
  return RobotGeometry(RobotClass::PlanarPointMass,
                       {v({0, 0}), v({2, 0}), v({2, 1}), v({0, 1})}, {}, 10.0, v({0, -9.81}));
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("robot class names round-trip") {
    for (auto cls : {RobotClass::PlanarPointMass, RobotClass::SpatialPointMass,
                     RobotClass::SpatialRigidBody}) {
      CHECK(parse_robot_class(to_string(cls)) == cls);
    }
    CHECK_FALSE(parse_robot_class("hexapod"));
    CHECK(task_dimension(RobotClass::PlanarPointMass) == 2);
    CHECK(task_dimension(RobotClass::SpatialPointMass) == 3);
    CHECK(task_dimension(RobotClass::SpatialRigidBody) == 6);
  }

  TEST_CASE("geometry validation") {
    CHECK_THROWS_AS(RobotGeometry(RobotClass::PlanarPointMass, {v({0, 0})}, {}, 1.0, v({0, -9.81})),
                    GeometryError);
    CHECK_THROWS_AS(RobotGeometry(RobotClass::PlanarPointMass, {v({0, 0}), v({0, 0})}, {}, 1.0,
                                  v({0, -9.81})),
                    GeometryError);
    CHECK_THROWS_AS(RobotGeometry(RobotClass::PlanarPointMass, {v({0, 0}), v({1, 0})}, {}, 0.0,
                                  v({0, -9.81})),
                    GeometryError);
    CHECK_THROWS_AS(RobotGeometry(RobotClass::PlanarPointMass, {v({0, 0}), v({1, 0, 0})}, {}, 1.0,
                                  v({0, -9.81})),
                    GeometryError);
    CHECK_THROWS_AS(RobotGeometry(RobotClass::PlanarPointMass, {v({0, 0}), v({1, 0})},
                                  {v({0.1, 0}), v({0, 0})}, 1.0, v({0, -9.81})),
                    GeometryError);
    const auto g = symmetric_pair();
    CHECK(g.redundancy() == 0);
    CHECK(planar_default().redundancy() == 2);
  }

  TEST_CASE("symmetric pair directions and lengths") {
    const auto cables = cable_geometry(symmetric_pair(), Pose::at(v({0, 0})));
    REQUIRE(cables.size() == 2);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(cables[0].direction[0] == doctest::Approx(-r).epsilon(1e-15));
    CHECK(cables[0].direction[1] == doctest::Approx(r).epsilon(1e-15));
    CHECK(cables[1].direction[0] == doctest::Approx(r).epsilon(1e-15));
    CHECK(cables[0].length == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(cables[1].length == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    const Eigen::MatrixXd w = wrench_matrix(symmetric_pair(), Pose::at(v({0, 0})));
    Eigen::Matrix2d expected;
    expected << -r, r, r, r;
    CHECK((w - expected).cwiseAbs().maxCoeff() < 1e-15);
  }

  TEST_CASE("axis-aligned spatial cable") {
    RobotGeometry g(RobotClass::SpatialPointMass,
                    {v({0, 0, 2}), v({2, 0, -1}), v({-2, 1, -1})}, {}, 1.0, v({0, 0, -9.81}));
    const auto cables = cable_geometry(g, Pose::at(v({0, 0, 0})));
    CHECK((cables[0].direction - v({0, 0, 1})).norm() == 0.0);
    CHECK(cables[0].length == 2.0);
  }

  TEST_CASE("default planar lengths at the first waypoint") {
    const auto cables = cable_geometry(planar_default(), Pose::at(v({0.6, 0.3})));
    // Hand arithmetic: offsets to the anchors.
    const double expected[] = {std::sqrt(0.36 + 0.09), std::sqrt(1.96 + 0.09),
                               std::sqrt(1.96 + 0.49), std::sqrt(0.36 + 0.49)};
    for (int i = 0; i < 4; ++i) {
      CHECK(cables[i].length == doctest::Approx(expected[i]).epsilon(1e-14));
      CHECK(std::abs(cables[i].direction.norm() - 1.0) <= 1e-12);
    }
  }

  TEST_CASE("zero-length cable is a geometry error") {
    CHECK_THROWS_AS(cable_geometry(planar_default(), Pose::at(v({2, 1}))), GeometryError);
  }

  TEST_CASE("rigid body wrench matrix") {
    std::vector<Eigen::VectorXd> anchors, zero, attach;
    for (double z : {0.0, 2.0})
      for (double y : {-0.75, 0.75})
        for (double x : {-1.0, 1.0}) {
          anchors.push_back(v({x, y, z}));
          zero.push_back(v({0, 0, 0}));
          attach.push_back(v({-0.1 * x, -0.1 * y / 0.75, z > 0 ? 0.1 : -0.1}));
        }
    const Pose pose = Pose::at(v({0.1, -0.2, 0.9}));

    SUBCASE("zero lever arms give zero moment rows") {
      RobotGeometry g(RobotClass::SpatialRigidBody, anchors, zero, 5.0, v({0, 0, -9.81}));
      const Eigen::MatrixXd w = wrench_matrix(g, pose);
      CHECK(w.rows() == 6);
      CHECK(w.bottomRows(3).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("moment rows are b x u about the platform reference") {
      RobotGeometry g(RobotClass::SpatialRigidBody, anchors, attach, 5.0, v({0, 0, -9.81}));
      const Eigen::MatrixXd w = wrench_matrix(g, pose);
      for (int i = 0; i < 8; ++i) {
        const Eigen::Vector3d b = attach[i];
        const Eigen::Vector3d a = anchors[i];
        const Eigen::Vector3d p = pose.position;
        const Eigen::Vector3d u = (a - p - b).normalized();
        CHECK((w.col(i).head<3>() - u).norm() < 1e-14);
        CHECK((w.col(i).tail<3>() - b.cross(u)).norm() < 1e-14);
        CHECK(std::abs(w.col(i).head<3>().norm() - 1.0) <= 1e-12);
      }
    }
    SUBCASE("rotated platform rotates the lever arms") {
      RobotGeometry g(RobotClass::SpatialRigidBody, anchors, attach, 5.0, v({0, 0, -9.81}));
      Pose rotated = pose;
      rotated.orientation = Eigen::AngleAxisd(0.3, Eigen::Vector3d::UnitZ()).toRotationMatrix();
      const auto cables = cable_geometry(g, rotated);
      const Eigen::Vector3d world_b = rotated.orientation * Eigen::Vector3d(attach[0]);
      const Eigen::Vector3d a0 = anchors[0];
      const Eigen::Vector3d p0 = rotated.position;
      CHECK(cables[0].length == doctest::Approx((a0 - p0 - world_b).norm()).epsilon(1e-14));
    }
  }

  TEST_CASE("external wrench") {
    const auto g = symmetric_pair();
    const Pose pose = Pose::at(v({0, 0}));
    CHECK((external_wrench(g, pose, v({0, 0})) - v({0, -98.1})).norm() < 1e-12);
    CHECK(external_wrench(g, pose, v({0, -9.81})).norm() == 0.0);
    CHECK((external_wrench(g, pose, v({0, 2})) - v({0, -118.1})).norm() < 1e-12);
    CHECK_THROWS_AS(external_wrench(g, pose, v({0, 0, 0, 0})), InvalidArgumentError);
  }

  TEST_CASE("symmetric pair statics by direct linear solve") {
    const auto g = symmetric_pair();
    const auto problem = make_problem(g, Pose::at(v({0, 0})), TensionBounds(1.0, 500.0, 2));
    const Eigen::VectorXd tau =
        problem.wrench_matrix.fullPivLu().solve(-problem.external_wrench);
    const double expected = 10.0 * 9.81 * std::sqrt(2.0) / 2.0;
    CHECK(tau[0] == doctest::Approx(expected).epsilon(1e-14));
    CHECK(tau[1] == doctest::Approx(expected).epsilon(1e-14));
    CHECK(expected == doctest::Approx(69.37).epsilon(1e-4));
  }

  TEST_CASE("tension bounds") {
    CHECK_THROWS_AS(TensionBounds(0.0, 10.0, 2), InvalidArgumentError);
    CHECK_THROWS_AS(TensionBounds(10.0, 10.0, 2), InvalidArgumentError);
    CHECK_THROWS_AS(TensionBounds(v({1, 2}), v({3})), InvalidArgumentError);
    const TensionBounds b(10.0, 100.0, 3);
    CHECK(b.size() == 3);
    CHECK(b.width()[2] == 90.0);
  }

  TEST_CASE("equilibrium problem shape checks") {
    CHECK_THROWS_AS(EquilibriumProblem(Eigen::MatrixXd::Ones(3, 2), v({0, 0, 0}),
                                       TensionBounds(1.0, 2.0, 2)),
                    InvalidArgumentError);
    CHECK_THROWS_AS(EquilibriumProblem(Eigen::MatrixXd::Ones(1, 2), v({0, 0}),
                                       TensionBounds(1.0, 2.0, 2)),
                    InvalidArgumentError);
    const EquilibriumProblem single_row(Eigen::RowVector2d(-7, 20), v({-1790}),
                                        TensionBounds(10.0, 100.0, 2));
    CHECK(single_row.redundancy() == 1);
    CHECK(single_row.residual(v({10, 93})).norm() == 0.0);
  }

  TEST_CASE("equilibrium residual property on solved random poses") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(0.3, 1.7), uy(0.2, 0.8);
    const auto g = planar_default();
    const TensionBounds bounds(10.0, 200.0, 4);
    for (int k = 0; k < 200; ++k) {
      const auto problem = make_problem(g, Pose::at(v({ux(rng), uy(rng)})), bounds);
      for (Method m : {Method::ACS, Method::APC, Method::LP}) {
        const auto r = solve(m, problem, PreloadParam(0.3), {});
        if (!r.converged()) continue;
        CHECK(problem.residual(r.tension).norm() <=
              1e-8 * std::max(1.0, problem.external_wrench.norm()));
      }
    }
  }
}
