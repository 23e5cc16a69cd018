#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chansteer/operator.hpp"

#include <random>

using namespace chansteer;

namespace {

Operator random_matrix(int r, int c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Operator m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = cxd(g(rng), g(rng));
  return m;
}

Operator random_hermitian(int n, std::mt19937_64& rng) {
  Operator m = random_matrix(n, n, rng);
  return hermitize(m);
}

} // namespace

TEST_CASE("kron basics") {
  Operator i2 = identity(2);
  CHECK(fdist(kron(i2, i2), identity(4)) == doctest::Approx(0.0));

  Operator d10(2, 2), d01(2, 2);
  d10 << 1, 0, 0, 0;
  d01 << 0, 0, 0, 1;
  Operator k = kron(d10, d01);
  Operator expect = Operator::Zero(4, 4);
  expect(1, 1) = 1.0;
  CHECK(fdist(k, expect) == doctest::Approx(0.0));

  // sigma_x (x) sigma_x maps |00> to |11>
  Operator xx = kron(pauli_x(), pauli_x());
  Operator v = xx * kron(ket(2, 0), ket(2, 0));
  CHECK(fdist(v, kron(ket(2, 1), ket(2, 1))) == doctest::Approx(0.0));
}

TEST_CASE("kron mixed-product and associativity laws") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    int da = 2 + trial % 3, db = 2 + (trial / 3) % 3;
    Operator a = random_matrix(da, da, rng), b = random_matrix(db, db, rng);
    Operator c = random_matrix(da, da, rng), d = random_matrix(db, db, rng);
    Operator lhs = kron(a, b) * kron(c, d);
    Operator rhs = kron(Operator(a * c), Operator(b * d));
    CHECK(fdist(lhs, rhs) / rhs.norm() < 1e-12);

    Operator e = random_matrix(2, 2, rng);
    CHECK(fdist(kron(kron(a, b), e), kron(a, kron(b, e))) / kron(a, kron(b, e)).norm() < 1e-12);
  }
}

TEST_CASE("partial_trace product factorization and full trace") {
  std::mt19937_64 rng(11);
  Operator ra = random_hermitian(2, rng), rb = random_hermitian(3, rng);
  Operator prod = kron(ra, rb);
  Operator tb = partial_trace(prod, DimSpec{2, 3}, {1});
  CHECK(fdist(tb, Operator(ra.trace() * rb)) < 1e-12);
  Operator ta = partial_trace(prod, DimSpec{2, 3}, {0});
  CHECK(fdist(ta, Operator(rb.trace() * ra)) < 1e-12);

  Operator full = partial_trace(prod, DimSpec{2, 3}, {});
  CHECK(std::abs(full(0, 0) - prod.trace()) < 1e-12);
  CHECK(full.rows() == 1);
}

TEST_CASE("partial_trace of psi+ marginal") {
  Operator psi = max_entangled(2);
  Operator marg = partial_trace(psi, DimSpec{2, 2}, {1});
  CHECK(fdist(marg, Operator(0.5 * identity(2))) < 1e-12);
}

TEST_CASE("partial_trace linearity and trace preservation") {
  std::mt19937_64 rng(13);
  Operator m1 = random_hermitian(6, rng), m2 = random_hermitian(6, rng);
  DimSpec d{2, 3};
  Operator lhs = partial_trace(Operator(2.0 * m1 + m2), d, {0});
  Operator rhs = 2.0 * partial_trace(m1, d, {0}) + partial_trace(m2, d, {0});
  CHECK(fdist(lhs, rhs) < 1e-12);
  CHECK(std::abs(partial_trace(m1, d, {0}).trace() - m1.trace()) < 1e-12);
}

TEST_CASE("partial_transpose properties") {
  std::mt19937_64 rng(17);
  Operator ra = random_hermitian(2, rng), rb = random_hermitian(2, rng);
  Operator prod = kron(ra, rb);
  CHECK(fdist(partial_transpose(prod, DimSpec{2, 2}, 1), kron(ra, Operator(rb.transpose()))) < 1e-12);

  // psi+ partial transpose eigenvalues {1/2,1/2,1/2,-1/2} (4x4 eigensolve oracle)
  Operator pt = partial_transpose(max_entangled(2), DimSpec{2, 2}, 1);
  auto eig = eig_hermitian(pt);
  CHECK(eig.values(0) == doctest::Approx(-0.5).epsilon(1e-12));
  for (int i = 1; i < 4; ++i) CHECK(eig.values(i) == doctest::Approx(0.5).epsilon(1e-12));

  Operator m = random_hermitian(6, rng);
  Operator twice = partial_transpose(partial_transpose(m, DimSpec{2, 3}, 1), DimSpec{2, 3}, 1);
  CHECK(fdist(twice, m) < 1e-14);
  Operator once = partial_transpose(m, DimSpec{2, 3}, 0);
  CHECK(std::abs(once.trace() - m.trace()) < 1e-12);
  CHECK(hermiticity_defect(once) < 1e-12);
}

TEST_CASE("permute_systems round trip") {
  std::mt19937_64 rng(23);
  Operator m = random_hermitian(12, rng);
  DimSpec d{2, 3, 2};
  Operator p = permute_systems(m, d, {2, 0, 1});
  Operator back = permute_systems(p, DimSpec{2, 2, 3}, {1, 2, 0});
  CHECK(fdist(back, m) < 1e-14);
  CHECK(std::abs(p.trace() - m.trace()) < 1e-12);

  Operator a = random_hermitian(2, rng), b = random_hermitian(3, rng);
  CHECK(fdist(permute_systems(kron(a, b), DimSpec{2, 3}, {1, 0}), kron(b, a)) < 1e-13);
}

TEST_CASE("eig_hermitian basics and reconstruction") {
  Operator d(2, 2);
  d << 3, 0, 0, 1;
  auto e1 = eig_hermitian(d);
  CHECK(e1.values(0) == doctest::Approx(1.0));
  CHECK(e1.values(1) == doctest::Approx(3.0));

  auto e2 = eig_hermitian(pauli_x());
  CHECK(e2.values(0) == doctest::Approx(-1.0));
  CHECK(e2.values(1) == doctest::Approx(1.0));

  std::mt19937_64 rng(29);
  Operator m = random_hermitian(8, rng);
  auto e = eig_hermitian(m);
  Operator rec = e.vectors * e.values.cast<cxd>().asDiagonal() * e.vectors.adjoint();
  CHECK(fdist(rec, m) < 1e-9);
  Operator gram = e.vectors.adjoint() * e.vectors;
  CHECK(fdist(gram, identity(8)) < 1e-9);

  CHECK_THROWS(eig_hermitian(random_matrix(3, 3, rng)));
}

TEST_CASE("is_psd") {
  CHECK(is_psd(identity(2), 1e-9));
  CHECK_FALSE(is_psd(pauli_z(), 1e-9));
  Operator pt = partial_transpose(max_entangled(2), DimSpec{2, 2}, 1);
  CHECK_FALSE(is_psd(pt, 1e-9)); // eigenvalue -1/2
}

TEST_CASE("operator construction validation") {
  CHECK_THROWS(make_operator(2, 2, {1.0, 2.0, 3.0}));
  CHECK_THROWS(make_operator(1, 2, {1.0, std::numeric_limits<double>::quiet_NaN()}));
  Operator ok = make_operator(1, 2, {cxd(1, 2), cxd(3, 4)});
  CHECK(ok(0, 1) == cxd(3, 4));
}
