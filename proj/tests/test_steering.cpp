#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chansteer/channels.hpp"
#include "chansteer/steering.hpp"

#include <cmath>

using namespace chansteer;

namespace {

const double kRoot2 = std::sqrt(2.0);

// The identity channel's trivial extension: J(id) on C' (x) B, with a 1-dim A.
ChannelExtension identity_extension(int d) {
  Operator choi = max_entangled(d);
  return make_extension(permute_systems(choi, DimSpec{d, 1, d}, {0, 1, 2}), d, 1, d);
}

StateAssemblage xz_singlet_assemblage() {
  // measuring X and Z on one half of psi+ steers the other half to
  // (I +- sigma)/4
  Operator id2 = identity(2);
  std::vector<std::vector<Operator>> members{
      {Operator(0.25 * (id2 + pauli_x())), Operator(0.25 * (id2 - pauli_x()))},
      {Operator(0.25 * (id2 + pauli_z())), Operator(0.25 * (id2 - pauli_z()))}};
  return make_state_assemblage(std::move(members));
}

} // namespace

TEST_CASE("deterministic strategies enumerate base-k digit strings") {
  auto st = enumerate_strategies(3, 2);
  CHECK(st.size() == 8);
  CHECK(st.response(5, 0) == 1); // 5 = 101_2
  CHECK(st.response(5, 1) == 0);
  CHECK(st.response(5, 2) == 1);
  auto st2 = enumerate_strategies(2, 3);
  CHECK(st2.size() == 9);
  CHECK(st2.response(7, 0) == 1); // 7 = 21_3
  CHECK(st2.response(7, 1) == 2);
  CHECK_THROWS(enumerate_strategies(7, 4)); // 4^7 > 4096
}

TEST_CASE("steered assemblage from psi+ with X/Z measurements") {
  StateAssemblage sa = steered_assemblage(max_entangled(2), 2, xz_measurements());
  StateAssemblage oracle = xz_singlet_assemblage();
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      // transpose: Tr_A[(M (x) I) psi+] = M^T / d
      CHECK(fdist(sa.members[x][a], Operator(oracle.members[x][a].transpose())) < 1e-12);
    }
  CHECK(fdist(sa.total(), Operator(0.5 * identity(2))) < 1e-12);
}

TEST_CASE("psi+ with X/Z is steerable with robustness sqrt(2) - 1") {
  StateAssemblage sa = xz_singlet_assemblage();
  SteeringVerdict v = steering_robustness(sa);
  CHECK(v.steerable);
  CHECK(std::abs(v.value - (kRoot2 - 1.0)) < 1e-6);

  // independent primal certificate: X_lambda = (r2 I + s1 sx + s2 sz)/8
  // reproduces rho_{a|x} + t p(a|x) I/2 exactly at t = sqrt(2) - 1
  auto st = enumerate_strategies(2, 2);
  std::vector<Operator> X;
  for (int l = 0; l < 4; ++l) {
    double s1 = (st.response(l, 0) == 0) ? 1.0 : -1.0;
    double s2 = (st.response(l, 1) == 0) ? 1.0 : -1.0;
    X.push_back(0.125 * (kRoot2 * identity(2) + s1 * pauli_x() + s2 * pauli_z()));
  }
  double t_star = kRoot2 - 1.0;
  for (const auto& x : X) CHECK(min_eigenvalue(x) > -1e-12);
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      Operator rec = Operator::Zero(2, 2);
      for (int l = 0; l < 4; ++l)
        if (st.response(l, x) == a) rec += X[l];
      Operator target = sa.members[x][a] + Operator(t_star * 0.5 * 0.5 * identity(2));
      CHECK(fdist(rec, target) < 1e-12);
    }

  // returned witness re-verified by direct arithmetic: value 1 + SR against
  // the deterministic-strategy bound of 1, which also proves SR >= value - 1
  REQUIRE(v.witness.size() == 2);
  double wval = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a)
      wval += (v.witness[x][a].adjoint() * sa.members[x][a]).trace().real();
  CHECK(std::abs(wval - kRoot2) < 1e-5);
  for (int l = 0; l < 4; ++l) {
    Operator agg = v.witness[0][st.response(l, 0)] + v.witness[1][st.response(l, 1)];
    auto eig = eig_hermitian(hermitize(agg));
    CHECK(eig.values.maxCoeff() < 1.0 + 1e-7);
  }
}

TEST_CASE("test_unsteerable agrees and yields a certified model for separable input") {
  // maximally mixed conditional states admit a trivial model
  Operator id4 = 0.25 * identity(2);
  std::vector<std::vector<Operator>> members{{id4, id4}, {id4, id4}};
  SteeringVerdict v = test_unsteerable(make_state_assemblage(members));
  CHECK_FALSE(v.steerable);
  CHECK(v.value == 0.0);
  REQUIRE(v.model.size() == 4);

  SteeringVerdict s = test_unsteerable(xz_singlet_assemblage());
  CHECK(s.steerable);
  CHECK(std::abs(s.value - (kRoot2 - 1.0)) < 1e-6);
  CHECK_FALSE(s.witness.empty());
}

TEST_CASE("steerable weight of the psi+ X/Z assemblage") {
  SteeringVerdict v = steerable_weight(xz_singlet_assemblage());
  CHECK(v.steerable);
  CHECK(v.value > 0.0);
  CHECK(v.value <= 1.0);
  // weight dominates: SW >= SR/(1+SR) for this family; sanity bound only
  CHECK(v.value >= kRoot2 - 1.0 - 1e-6);

  Operator id4 = 0.25 * identity(2);
  std::vector<std::vector<Operator>> members{{id4, id4}, {id4, id4}};
  SteeringVerdict u = steerable_weight(make_state_assemblage(members));
  CHECK_FALSE(u.steerable);
  CHECK(u.value == 0.0);
}

TEST_CASE("werner-type noisy assemblage crosses the unsteerable boundary") {
  // rho_{a|x}(p) = p rho_{a|x} + (1-p) I/4; for X/Z the threshold is 1/sqrt(2)
  auto noisy = [&](double p) {
    StateAssemblage pure = xz_singlet_assemblage();
    std::vector<std::vector<Operator>> members;
    for (int x = 0; x < 2; ++x) {
      std::vector<Operator> row;
      for (int a = 0; a < 2; ++a)
        row.push_back(p * pure.members[x][a] + (1.0 - p) * 0.25 * identity(2));
      members.push_back(std::move(row));
    }
    return make_state_assemblage(std::move(members));
  };
  CHECK_FALSE(test_unsteerable(noisy(0.65)).steerable);
  CHECK(test_unsteerable(noisy(0.75)).steerable);
  SteeringVerdict at = steering_robustness(noisy(1.0 / kRoot2));
  CHECK(at.value < 1e-5);
}

TEST_CASE("pointer extensions of an instrument are unsteerable (Prop. 1 forward)") {
  Instrument inst = random_instrument(2, 2, 3, 11);
  ChannelExtension e = pointer_extension(inst);
  MeasurementAssemblage ma = random_measurements(3, 2, 2, 5);
  StateAssemblage sa = choi_state_assemblage(induced_channel_assemblage(e, ma));
  SteeringVerdict v = test_unsteerable(sa);
  CHECK_FALSE(v.steerable);
  REQUIRE_FALSE(v.model.empty());
}

TEST_CASE("kraus pointer extension of the identity is steerable") {
  // the trivial dilation of the identity channel holds psi+ between C' and B
  KrausSet k{{identity(2)}, 2, 2};
  ChannelExtension e = kraus_pointer_extension(k); // d_A = 1: A carries nothing
  // instead take the two-Kraus dephasing dilation of the identity? No: use
  // the isometry V = sum |ii><i| whose A output distinguishes the basis.
  KrausSet dephasing{{Operator(0.5 * (identity(2) + pauli_z())),
                      Operator(0.5 * (identity(2) - pauli_z()))},
                     2, 2};
  ChannelExtension coherent = extension_from_isometry(stinespring_from_kraus(dephasing));
  MeasurementAssemblage ma = xz_measurements();
  StateAssemblage sa = choi_state_assemblage(induced_channel_assemblage(coherent, ma));
  // the dilation of the dephasing channel steers: X on the pointer leaves
  // Bell-correlated C'B states that no hidden-state model reproduces
  SteeringVerdict v = test_unsteerable(sa);
  CHECK(v.steerable);
  // and the robustness matches the psi+ X/Z anchor: the Choi assemblage is
  // the psi+ assemblage under an isometry on Bob's side
  SteeringVerdict r = steering_robustness(sa);
  CHECK(std::abs(r.value - (kRoot2 - 1.0)) < 1e-6);
  (void)e;
}

TEST_CASE("Prop. 1 converse: reconstructed pointer extension reproduces the assemblage") {
  StateAssemblage sa = steered_assemblage(
      Operator(0.8 * max_entangled(2) + 0.2 * kron(0.5 * identity(2), 0.5 * identity(2))), 2,
      xz_measurements());
  // scale to a subnormalized-channel-like total? totals already trace 1
  SteeringVerdict v = test_unsteerable(sa);
  if (!v.steerable) {
    auto rec = reconstruct_pointer_extension(v.model, 2, 2, sa.dim() /* d_in = d here */);
    StateAssemblage back = choi_state_assemblage(induced_channel_assemblage(rec.extension, rec.ma));
    for (int x = 0; x < 2; ++x)
      for (int a = 0; a < 2; ++a)
        CHECK(fdist(back.members[x][a], sa.members[x][a]) < 1e-6);
  }
  // also exercise the converse on a genuinely unsteerable model
  Operator id4 = 0.25 * identity(2);
  std::vector<std::vector<Operator>> members{{id4, id4}, {id4, id4}};
  SteeringVerdict u = test_unsteerable(make_state_assemblage(members));
  REQUIRE_FALSE(u.steerable);
  auto rec = reconstruct_pointer_extension(u.model, 2, 2, 2);
  StateAssemblage back = choi_state_assemblage(induced_channel_assemblage(rec.extension, rec.ma));
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a)
      CHECK(fdist(back.members[x][a], id4) < 1e-6);
}

TEST_CASE("theorem 1: both routes agree on random extensions") {
  for (std::uint64_t seed : {1ull, 2ull}) {
    ChannelExtension e = random_extension(2, 2, 2, seed);
    MeasurementAssemblage ma = xz_measurements();
    Theorem1Report rep = verify_theorem1(e, ma);
    CHECK(rep.agree);
    CHECK(std::abs(rep.sr_channel - rep.sr_state) < 1e-6);
  }
}

TEST_CASE("theorem 2: PPT across A:BC' is necessary for incoherent extensions") {
  Instrument inst = random_instrument(2, 2, 2, 7);
  std::vector<Operator> states{random_density(2, 1), random_density(2, 2)};
  ChannelExtension inc = incoherent_extension(inst, states);
  Theorem2Report r1 = theorem2_necessary_check(inc, true);
  CHECK(r1.ppt);
  CHECK(r1.consistent);

  // the dephasing dilation is coherent: PPT must fail
  KrausSet dephasing{{Operator(0.5 * (identity(2) + pauli_z())),
                      Operator(0.5 * (identity(2) - pauli_z()))},
                     2, 2};
  ChannelExtension coh = extension_from_isometry(stinespring_from_kraus(dephasing));
  Theorem2Report r2 = theorem2_necessary_check(coh, false);
  CHECK_FALSE(r2.ppt);
  CHECK(r2.min_pt_eigenvalue < -1e-6);
  CHECK(r2.consistent);
  CHECK_FALSE(theorem2_necessary_check(coh, true).consistent);
}

TEST_CASE("local processing covariance identity") {
  ChannelExtension e = random_extension(2, 2, 2, 21);
  Channel gamma = random_channel(2, 3, 2, 22);
  MeasurementAssemblage ma = random_measurements(3, 2, 2, 23);
  CovarianceReport rep = local_processing_covariance(e, gamma, ma);
  CHECK(rep.identity_error < 1e-9);
  // by covariance the two assemblages coincide, so their robustness does too
  SteeringVerdict after = steering_robustness(rep.processed);
  SteeringVerdict dual = steering_robustness(rep.dual_processed);
  CHECK(std::abs(after.value - dual.value) < 1e-6);

  // monotonicity: dephasing Alice's side (same dimensions, same POVMs) can
  // only degrade steering
  Channel dephase = make_channel(
      Operator(0.5 * kron(ket(2, 0) * ket(2, 0).adjoint(), ket(2, 0) * ket(2, 0).adjoint()) +
               0.5 * kron(ket(2, 1) * ket(2, 1).adjoint(), ket(2, 1) * ket(2, 1).adjoint())),
      2, DimSpec{2});
  MeasurementAssemblage ma2 = random_measurements(2, 2, 2, 31);
  CovarianceReport rep2 = local_processing_covariance(e, dephase, ma2);
  SteeringVerdict orig =
      steering_robustness(choi_state_assemblage(induced_channel_assemblage(e, ma2)));
  SteeringVerdict proc = steering_robustness(rep2.processed);
  CHECK(proc.value <= orig.value + 1e-6);
}

TEST_CASE("channel quantifier: choi mode matches the direct computation") {
  // identity channel extended trivially, measured with X/Z on... A is trivial
  // here, so use the dephasing dilation with X/Z on the pointer
  KrausSet dephasing{{Operator(0.5 * (identity(2) + pauli_z())),
                      Operator(0.5 * (identity(2) - pauli_z()))},
                     2, 2};
  ChannelExtension e = extension_from_isometry(stinespring_from_kraus(dephasing));
  MeasurementAssemblage ma = xz_measurements();
  double direct =
      steering_robustness(choi_state_assemblage(induced_channel_assemblage(e, ma))).value;
  double choi_mode = channel_quantifier(e, ma, Quantifier::Robustness, InputMode::Choi);
  CHECK(std::abs(choi_mode - direct) < 1e-9);
  double search = channel_quantifier(e, ma, Quantifier::Robustness, InputMode::Search);
  CHECK(search >= choi_mode - 1e-9);
}

TEST_CASE("assemblage validation and repair") {
  Operator id4 = Operator(0.25 * identity(2));
  // drift 1e-9 between settings: repaired silently within tolerance
  Operator bump = Operator(id4 + 5e-10 * pauli_z());
  Operator dump = Operator(id4 - 5e-10 * pauli_z());
  StateAssemblage sa = make_state_assemblage({{bump, dump}, {id4, id4}});
  CHECK(fdist(sa.members[0][0] + sa.members[0][1], sa.members[1][0] + sa.members[1][1]) < 1e-12);

  // drift beyond 1e-8: hard error
  Operator big = Operator(id4 + 1e-6 * pauli_z());
  CHECK_THROWS(make_state_assemblage({{big, big}, {id4, id4}}));

  // non-PSD member: hard error
  Operator neg = Operator(id4 - 0.3 * pauli_z());
  CHECK(min_eigenvalue(neg) < -1e-6);
  CHECK_THROWS(make_state_assemblage({{neg, Operator(0.5 * identity(2) - neg)}}));

  // POVM must sum to identity
  CHECK_THROWS(make_measurement_assemblage({{Operator(0.5 * identity(2)),
                                             Operator(0.4 * identity(2))}}));
}

TEST_CASE("identity channel extension cannot be steered from a trivial A") {
  ChannelExtension e = identity_extension(2);
  MeasurementAssemblage ma = make_measurement_assemblage({{identity(1)}});
  StateAssemblage sa = choi_state_assemblage(induced_channel_assemblage(e, ma));
  SteeringVerdict v = test_unsteerable(sa);
  CHECK_FALSE(v.steerable);
}
