#include "cdpr/errors.hpp"
#include "cdpr/feasibility.hpp"
#include "cdpr/solvers.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace cdpr;

namespace {

EquilibriumProblem line(double w1, double w2, double we, double lb = 10.0, double ub = 100.0) {
  return EquilibriumProblem(Eigen::RowVector2d(w1, w2), Eigen::VectorXd::Constant(1, we),
                            TensionBounds(lb, ub, 2));
}

Eigen::VectorXd v2(double a, double b) { return Eigen::Vector2d(a, b); }

}  // namespace

TEST_SUITE("feasibility") {
  TEST_CASE("null-space parametrization of the first two-cable line") {
    const auto p = line(-7, 20, -1790);
    const auto ns = null_space_param(p);
    CHECK(ns.redundancy() == 1);
    CHECK(std::abs(-7 * ns.particular[0] + 20 * ns.particular[1] - 1790) <= 1e-10);
    CHECK((p.wrench_matrix * ns.basis).norm() <= 1e-10);
    for (double lam : {-50.0, 0.0, 13.0}) {
      const Eigen::VectorXd t = ns.tension(Eigen::VectorXd::Constant(1, lam));
      CHECK(std::abs(-7 * t[0] + 20 * t[1] - 1790) <= 1e-9);
    }
  }

  TEST_CASE("null-space invariants on random problems") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
      const int m = std::array{3, 4, 8}[k % 3];
      const auto rp = testing::random_problem(rng, m, 1 + k % 2);
      const auto ns = null_space_param(rp.problem);
      const Eigen::MatrixXd& n = ns.basis;
      CHECK(rp.problem.residual(ns.particular).norm() <= 1e-10 * std::max(1.0, rp.problem.external_wrench.norm()));
      CHECK((rp.problem.wrench_matrix * n).norm() <= 1e-10);
      CHECK((n.transpose() * n - Eigen::MatrixXd::Identity(n.cols(), n.cols())).norm() <= 1e-12);
      // Minimum norm: the particular solution is orthogonal to the null space.
      CHECK((n.transpose() * ns.particular).norm() <= 1e-9 * ns.particular.norm());
    }
  }

  TEST_CASE("square invertible W has an empty basis") {
    Eigen::Matrix2d w;
    w << 1, 2, -1, 1;
    EquilibriumProblem p(w, Eigen::Vector2d(-5, -1), TensionBounds(0.5, 10.0, 2));
    const auto ns = null_space_param(p);
    CHECK(ns.redundancy() == 0);
    CHECK((ns.particular - Eigen::Vector2d(1, 2)).norm() < 1e-12);
  }

  TEST_CASE("rank-deficient W is singular") {
    Eigen::MatrixXd w(2, 3);
    w << 1, 2, 3, 2, 4, 6;
    EquilibriumProblem p(w, Eigen::Vector2d(-1, -2), TensionBounds(0.5, 10.0, 3));
    CHECK_THROWS_AS(null_space_param(p), SingularConfigurationError);
  }

  TEST_CASE("planar default residual at the first waypoint") {
    RobotGeometry g(RobotClass::PlanarPointMass,
                    {Eigen::Vector2d(0, 0), Eigen::Vector2d(2, 0), Eigen::Vector2d(2, 1),
                     Eigen::Vector2d(0, 1)},
                    {}, 10.0, Eigen::Vector2d(0, -9.81));
    const auto p = make_problem(g, Pose::at(Eigen::Vector2d(0.6, 0.3)), TensionBounds(10, 200, 4));
    const auto ns = null_space_param(p);
    CHECK(p.residual(ns.particular).norm() <= 1e-10);
    // Own least-squares oracle: the same minimum-norm solution.
    const Eigen::VectorXd lsq = p.wrench_matrix.completeOrthogonalDecomposition().solve(
        -p.external_wrench);
    CHECK((lsq - ns.particular).norm() <= 1e-10);
  }

  TEST_CASE("is_feasible") {
    const auto p = line(-7, 20, -1790);
    CHECK(is_feasible(v2(10, 93), p));
    CHECK(is_feasible(v2(30, 100), p));
    CHECK_FALSE(is_feasible(v2(100, 124.5), p));
    CHECK_FALSE(is_feasible(v2(-10, 86), p));
    CHECK_FALSE(is_feasible(v2(20, 90), p));  // off the line
  }

  TEST_CASE("normalized slack") {
    const TensionBounds b(10, 110, 2);
    CHECK(normalized_slack(v2(60, 60), b) == doctest::Approx(0.5));
    CHECK(normalized_slack(v2(20, 60), b) == doctest::Approx(0.1));
    CHECK(normalized_slack(v2(115, 60), b) < 0.0);
  }

  TEST_CASE("interior point") {
    SUBCASE("two-cable line, margin 0") {
      const auto t = interior_point(line(-7, 20, -1790));
      REQUIRE(t);
      CHECK((*t)[0] > 10.0);
      CHECK((*t)[0] < 30.0);
      CHECK(is_feasible(*t, line(-7, 20, -1790)));
    }
    SUBCASE("margin honoured or refused") {
      const auto p = line(-7, 20, -1790);
      // Segment tau_1 in [10, 30]: the best normalized slack is reached
      // where both coordinates are equally far from their nearest bound.
      const auto best = max_min_slack(p, null_space_param(p));
      const auto ok = interior_point(p, 0.5 * best.slack);
      REQUIRE(ok);
      CHECK(normalized_slack(*ok, p.bounds) >= 0.5 * best.slack);
      CHECK_FALSE(interior_point(p, 2.0 * best.slack));
    }
    SUBCASE("no redundancy, solution inside") {
      Eigen::Matrix2d w = Eigen::Matrix2d::Identity();
      EquilibriumProblem p(w, Eigen::Vector2d(-20, -30), TensionBounds(10, 100, 2));
      const auto t = interior_point(p);
      REQUIRE(t);
      CHECK((*t - Eigen::Vector2d(20, 30)).norm() < 1e-12);
    }
    SUBCASE("no redundancy, solution outside") {
      Eigen::Matrix2d w = Eigen::Matrix2d::Identity();
      EquilibriumProblem p(w, Eigen::Vector2d(-5, -30), TensionBounds(10, 100, 2));
      CHECK_FALSE(interior_point(p));
    }
    SUBCASE("single feasible point has no interior") {
      // 1·t1 + 1·t2 = 20 with box [10, 100]: only (10, 10).
      CHECK_FALSE(interior_point(line(1, 1, -20)));
    }
    SUBCASE("random problems keep strictly positive slack") {
      std::mt19937_64 rng(3);
      for (int k = 0; k < 300; ++k) {
        const auto rp = testing::random_problem(rng, std::array{3, 4, 8}[k % 3], 1 + k % 2);
        const auto t = interior_point(rp.problem);
        REQUIRE(t);
        CHECK(normalized_slack(*t, rp.problem.bounds) > 1e-9);
        CHECK(is_feasible(*t, rp.problem));
        // Never worse than the known interior point used to build the problem.
        CHECK(normalized_slack(*t, rp.problem.bounds) >=
              normalized_slack(rp.interior, rp.problem.bounds) - 1e-9);
      }
    }
  }

  TEST_CASE("vertex enumeration of the two-cable lines") {
    auto same = [](const std::vector<Eigen::VectorXd>& got,
                   const std::vector<Eigen::Vector2d>& want) {
      if (got.size() != want.size()) return false;
      for (std::size_t i = 0; i < got.size(); ++i) {
        if ((got[i] - want[i]).norm() > 1e-12) return false;
      }
      return true;
    };
    CHECK(same(enumerate_vertices(line(-7, 20, -1790)), {{10, 93}, {30, 100}}));
    CHECK(same(enumerate_vertices(line(-1, 50, -945)), {{10, 19.1}, {100, 20.9}}));
    CHECK(same(enumerate_vertices(line(1, 50, -1055)), {{10, 20.9}, {100, 19.1}}));
    CHECK(enumerate_vertices(line(-7, 20, -5000)).empty());
  }

  TEST_CASE("vertex enumeration on random problems") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 200; ++k) {
      const int dor = 1 + k % 3;
      const int m = dor + std::array{2, 3, 6}[k % 3];
      const auto rp = testing::random_problem(rng, m, dor);
      const auto verts = enumerate_vertices(rp.problem);
      REQUIRE_FALSE(verts.empty());
      for (std::size_t i = 0; i < verts.size(); ++i) {
        CHECK(is_feasible(verts[i], rp.problem, 1e-8));
        // At least r active bounds.
        const Eigen::VectorXd& t = verts[i];
        const auto& b = rp.problem.bounds;
        int active = 0;
        for (Eigen::Index j = 0; j < t.size(); ++j) {
          if (std::abs(t[j] - b.lower()[j]) < 1e-9 || std::abs(t[j] - b.upper()[j]) < 1e-9) {
            ++active;
          }
        }
        CHECK(active >= dor);
        if (i > 0) {
          CHECK(std::lexicographical_compare(verts[i - 1].begin(), verts[i - 1].end(),
                                             verts[i].begin(), verts[i].end()));
        }
      }
    }
  }

  TEST_CASE("vertex enumeration beyond its redundancy limit") {
    std::mt19937_64 rng(1);
    const auto rp = testing::random_problem(rng, 8, 4);
    CHECK_THROWS_AS(enumerate_vertices(rp.problem), UnsupportedError);
  }

  TEST_CASE("solver outputs lie in the hull of the vertices") {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 300; ++k) {
      const int dor = 1 + k % 2;
      const auto rp = testing::random_problem(rng, std::array{3, 4, 8}[k % 3], dor);
      const auto ns = null_space_param(rp.problem);
      const auto verts = enumerate_vertices(rp.problem);
      for (Method m : {Method::ACS, Method::AC, Method::APC, Method::QP, Method::LP}) {
        const auto r = solve(m, rp.problem, PreloadParam(0.35), {});
        REQUIRE(r.converged());
        const Eigen::VectorXd c = ns.coordinates(r.tension);
        if (dor == 1) {
          double lo = 1e300, hi = -1e300;
          for (const auto& vtx : verts) {
            const double x = ns.coordinates(vtx)[0];
            lo = std::min(lo, x);
            hi = std::max(hi, x);
          }
          CHECK(c[0] >= lo - 1e-8);
          CHECK(c[0] <= hi + 1e-8);
        } else {
          std::vector<Eigen::Vector2d> pts;
          for (const auto& vtx : verts) pts.push_back(ns.coordinates(vtx));
          CHECK(testing::in_hull_2d(pts, c, 1e-8));
        }
      }
    }
  }
}
