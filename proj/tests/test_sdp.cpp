#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chansteer/operator.hpp"
#include "chansteer/sdp.hpp"

#include <random>

using namespace chansteer;
using namespace chansteer::sdp;

namespace {

Eigen::MatrixXd random_sym(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g(rng);
  return 0.5 * (m + m.transpose());
}

Eigen::MatrixXd random_spd(int n, std::mt19937_64& rng) {
  Eigen::MatrixXd m = random_sym(n, rng);
  return m * m.transpose() + 0.1 * Eigen::MatrixXd::Identity(n, n);
}

// Strictly feasible problem with known interior primal/dual pair.
SdpProblem random_strict_problem(const std::vector<int>& sizes, int m, std::mt19937_64& rng) {
  SdpProblem p;
  p.block_sizes = sizes;
  BlockMat X0, Z0;
  for (int s : sizes) {
    X0.push_back(random_spd(s, rng));
    Z0.push_back(random_spd(s, rng));
  }
  std::normal_distribution<double> g;
  std::vector<BlockMat> As;
  for (int i = 0; i < m; ++i) {
    BlockMat A;
    for (int s : sizes) A.push_back(random_sym(s, rng));
    As.push_back(A);
  }
  Eigen::VectorXd y0(m);
  for (int i = 0; i < m; ++i) y0(i) = g(rng);
  p.C = Z0;
  for (int i = 0; i < m; ++i)
    for (size_t k = 0; k < sizes.size(); ++k) p.C[k] += y0(i) * As[i][k];
  for (int i = 0; i < m; ++i) {
    Constraint c;
    c.A = As[i];
    c.b = bdot(As[i], X0);
    p.constraints.push_back(c);
  }
  return p;
}

} // namespace

TEST_CASE("analytic 2x2 problem: min <I,X> s.t. X_00 = 1") {
  SdpProblem p;
  p.block_sizes = {2};
  p.C = {Eigen::MatrixXd::Identity(2, 2)};
  Constraint c;
  c.A = {Eigen::MatrixXd::Zero(2, 2)};
  c.A[0](0, 0) = 1.0;
  c.b = 1.0;
  p.constraints.push_back(c);
  auto s = solve(p);
  REQUIRE(s.status == SdpStatus::Optimal);
  CHECK(s.primal_obj == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(std::abs(s.X[0](0, 0) - 1.0) < 1e-6);
  CHECK(std::abs(s.X[0](1, 1)) < 1e-6);
}

TEST_CASE("max eigenvalue as SDP with a free variable: min t s.t. t I - sx >= 0") {
  SdpProblem p;
  p.block_sizes = {2};
  p.C = {Eigen::MatrixXd::Zero(2, 2)};
  p.nfree = 1;
  p.cfree = Eigen::VectorXd::Ones(1);
  // S = t I - sx as matrix equalities: S - t I = -sx entrywise.
  Eigen::MatrixXd sx(2, 2);
  sx << 0, 1, 1, 0;
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j) {
      Constraint c;
      c.A = {Eigen::MatrixXd::Zero(2, 2)};
      c.A[0](i, j) = c.A[0](j, i) = (i == j) ? 1.0 : 0.5;
      c.f = Eigen::VectorXd::Zero(1);
      c.f(0) = (i == j) ? -1.0 : 0.0;
      c.b = -sx(i, j);
      p.constraints.push_back(c);
    }
  auto s = solve(p);
  REQUIRE(s.status == SdpStatus::Optimal);
  CHECK(s.u(0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("random strictly feasible 3-block problems meet KKT residuals") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    auto p = random_strict_problem({3, 2, 4}, 6, rng);
    auto s = solve(p);
    REQUIRE(s.status == SdpStatus::Optimal);
    CHECK(s.gap <= 1e-7);
    CHECK(s.primal_residual <= 1e-7);
    CHECK(s.dual_residual <= 1e-7);
    CHECK(bmineig(s.X) >= -1e-8);
    CHECK(bmineig(s.Z) >= -1e-8);
    // weak duality and complementarity
    CHECK(s.primal_obj >= s.dual_obj - 1e-6 * (1 + std::abs(s.primal_obj)));
    CHECK(s.complementarity <= 1e-6 * (1 + std::abs(s.primal_obj)));
  }
}

TEST_CASE("redundant constraints are reduced, not fatal") {
  SdpProblem p;
  p.block_sizes = {2};
  p.C = {Eigen::MatrixXd::Identity(2, 2)};
  Constraint c1;
  c1.A = {Eigen::MatrixXd::Identity(2, 2)};
  c1.b = 1.0;
  Constraint c2 = c1; // duplicate
  Constraint c3;
  c3.A = {Eigen::MatrixXd::Identity(2, 2) * 2.0};
  c3.b = 2.0; // scalar multiple
  p.constraints = {c1, c2, c3};
  auto s = solve(p);
  REQUIRE(s.status == SdpStatus::Optimal);
  CHECK(s.primal_obj == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("check_feasible: trace one simplex") {
  SdpProblem p;
  p.block_sizes = {3};
  p.C = {Eigen::MatrixXd::Zero(3, 3)};
  Constraint c;
  c.A = {Eigen::MatrixXd::Identity(3, 3)};
  c.b = 1.0;
  p.constraints.push_back(c);
  auto fr = check_feasible(p);
  REQUIRE(fr.feasible);
  CHECK(std::abs(fr.X[0].trace() - 1.0) < 1e-7);
  CHECK(bmineig(fr.X) >= -1e-8);
}

TEST_CASE("check_feasible: trace of PSD cannot be negative") {
  SdpProblem p;
  p.block_sizes = {3};
  p.C = {Eigen::MatrixXd::Zero(3, 3)};
  Constraint c;
  c.A = {Eigen::MatrixXd::Identity(3, 3)};
  c.b = -1.0;
  p.constraints.push_back(c);
  auto fr = check_feasible(p);
  REQUIRE_FALSE(fr.feasible);
  CHECK(fr.farkas_value > 1e-6);
  CHECK(fr.farkas_margin <= 1e-8);
}

TEST_CASE("embed_complex spectra and order isomorphism") {
  Operator sy = pauli_y();
  Eigen::MatrixXd e = embed_complex(sy);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0));
  CHECK(es.eigenvalues()(1) == doctest::Approx(-1.0));
  CHECK(es.eigenvalues()(2) == doctest::Approx(1.0));
  CHECK(es.eigenvalues()(3) == doctest::Approx(1.0));

  CHECK(fdist(Operator(embed_complex(identity(2)).cast<cxd>()), identity(4)) < 1e-14);

  Operator hre(2, 2);
  hre << 2, 1, 1, 3;
  Eigen::MatrixXd er = embed_complex(hre);
  CHECK((er.topRightCorner(2, 2)).norm() < 1e-14);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + trial % 3;
    Operator h(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) h(i, j) = cxd(g(rng), g(rng));
    h = hermitize(h);
    bool a = is_psd(h, 1e-9);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e2(embed_complex(h));
    bool bb = e2.eigenvalues().minCoeff() >= -1e-9;
    CHECK(a == bb);
    // round trip
    CHECK(fdist(unembed_complex(embed_complex(h)), h) < 1e-14);
  }
}

TEST_CASE("inconsistent equality constraints are rejected with a certificate") {
  SdpProblem p;
  p.block_sizes = {2};
  p.C = {Eigen::MatrixXd::Zero(2, 2)};
  Constraint c1;
  c1.A = {Eigen::MatrixXd::Identity(2, 2)};
  c1.b = 1.0;
  Constraint c2;
  c2.A = {Eigen::MatrixXd::Identity(2, 2)};
  c2.b = 2.0; // contradicts c1
  p.constraints = {c1, c2};
  auto fr = check_feasible(p);
  REQUIRE_FALSE(fr.feasible);
  CHECK(fr.farkas_value > 1e-8);
}
