#include "chansteer/steering.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace chansteer {

namespace {

using sdp::BlockMat;
using sdp::Constraint;
using sdp::SdpProblem;

std::vector<Operator> hermitian_basis(int d) {
  std::vector<Operator> basis;
  double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    Operator b = Operator::Zero(d, d);
    b(i, i) = 1.0;
    basis.push_back(b);
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Operator br = Operator::Zero(d, d);
      br(i, j) = s;
      br(j, i) = s;
      basis.push_back(br);
      Operator bi = Operator::Zero(d, d);
      bi(i, j) = cxd(0, s);
      bi(j, i) = cxd(0, -s);
      basis.push_back(bi);
    }
  return basis;
}

double hdot(const Operator& a, const Operator& b) {
  return (a.adjoint() * b).trace().real();
}

enum class ProgramKind { Feasibility, Robustness, Weight };

struct Assembled {
  SdpProblem p;
  DeterministicStrategySet strategies;
  std::vector<Operator> basis;
  int d = 0;
  // constraint index layout: for (x, a, t): ((x*k + a) * d^2 + t)
};

// Blocks 0..N-1 are the hidden-model operators X_lambda. Robustness appends a
// single 1x1 block for the mixing weight t; Weight appends one slack block per
// (x, a). All data is assembled in the complex domain and embedded at the
// solver boundary.
//
// Robustness is measured against the uncorrelated assemblage
// omega_{a|x} = p(a|x) sigma_bar (Alice's statistics with Bob decoupled):
//   min t  s.t.  sum_lambda D_lambda(a|x) X_lambda = rho_{a|x} + t omega_{a|x}
// which vanishes exactly on unsteerable assemblages and is invariant under
// isometries on Bob's side.
Assembled assemble(const StateAssemblage& sa, ProgramKind kind) {
  Assembled out;
  int m = sa.settings(), k = sa.outcomes(), d = sa.dim();
  out.strategies = enumerate_strategies(m, k);
  out.basis = hermitian_basis(d);
  out.d = d;
  int N = out.strategies.size();
  SdpProblem& p = out.p;
  for (int l = 0; l < N; ++l) p.block_sizes.push_back(2 * d);
  if (kind == ProgramKind::Robustness) p.block_sizes.push_back(1);
  if (kind == ProgramKind::Weight)
    for (int s = 0; s < m * k; ++s) p.block_sizes.push_back(2 * d);
  p.C = sdp::bzero(p.block_sizes);
  if (kind == ProgramKind::Robustness) p.C[N](0, 0) = 1.0; // min t
  if (kind == ProgramKind::Weight)
    for (int l = 0; l < N; ++l)
      p.C[l] = -0.5 * Eigen::MatrixXd::Identity(2 * d, 2 * d); // <C, E(X)> = -tr X
  Operator sbar = sa.total();
  for (int x = 0; x < m; ++x)
    for (int a = 0; a < k; ++a) {
      double pax = sa.members[x][a].trace().real();
      for (size_t t = 0; t < out.basis.size(); ++t) {
        Constraint c;
        c.A = sdp::bzero(p.block_sizes);
        Eigen::MatrixXd eb = sdp::embed_complex(out.basis[t]);
        for (int l = 0; l < N; ++l)
          if (out.strategies.response(l, x) == a) c.A[l] = eb;
        if (kind == ProgramKind::Robustness)
          c.A[N](0, 0) = -2.0 * pax * hdot(out.basis[t], sbar); // sum D X - t omega = rho
        else if (kind == ProgramKind::Weight)
          c.A[N + x * k + a] = eb;                              // sum D X + S = rho
        c.b = 2.0 * hdot(out.basis[t], sa.members[x][a]);
        p.constraints.push_back(std::move(c));
      }
    }
  return out;
}

std::vector<Operator> extract_model(const BlockMat& X, int N) {
  std::vector<Operator> model;
  for (int l = 0; l < N; ++l) model.push_back(sdp::unembed_complex(X[l]));
  return model;
}

std::vector<std::vector<Operator>> extract_witness(const Eigen::VectorXd& y, const Assembled& as,
                                                   const StateAssemblage& sa, double scale) {
  int m = sa.settings(), k = sa.outcomes(), d = as.d;
  int nb = d * d;
  std::vector<std::vector<Operator>> F(m, std::vector<Operator>(k, Operator::Zero(d, d)));
  for (int x = 0; x < m; ++x)
    for (int a = 0; a < k; ++a)
      for (int t = 0; t < nb; ++t)
        F[x][a] += scale * y((x * k + a) * nb + t) * as.basis[t];
  for (auto& row : F)
    for (auto& f : row) f = hermitize(f);
  return F;
}

SolverDiagnostics diagnostics_of(const sdp::SdpSolution& s) {
  SolverDiagnostics d;
  switch (s.status) {
    case sdp::SdpStatus::Optimal: d.status = "optimal"; break;
    case sdp::SdpStatus::MaxIterations: d.status = "max-iterations"; break;
    default: d.status = "numerical-failure"; break;
  }
  d.gap = s.gap;
  d.primal_residual = s.primal_residual;
  d.dual_residual = s.dual_residual;
  d.iterations = s.iterations;
  return d;
}

void certify_model(const StateAssemblage& sa, const std::vector<Operator>& model,
                   const DeterministicStrategySet& st) {
  int m = sa.settings(), k = sa.outcomes();
  for (const auto& X : model)
    if (min_eigenvalue(X) < -1e-7)
      throw std::runtime_error("steering: unsteerable model is not PSD");
  for (int x = 0; x < m; ++x)
    for (int a = 0; a < k; ++a) {
      Operator rec = Operator::Zero(sa.dim(), sa.dim());
      for (int l = 0; l < st.size(); ++l)
        if (st.response(l, x) == a) rec += model[l];
      if (fdist(rec, sa.members[x][a]) > 1e-7)
        throw std::runtime_error("steering: model fails to reproduce the assemblage within 1e-7");
    }
}

// sum_x F_{lambda(x)|x} <= I for every deterministic strategy, so every
// unsteerable assemblage scores at most 1; the witness value on this
// assemblage must strictly exceed that bound.
void certify_witness(const StateAssemblage& sa, const std::vector<std::vector<Operator>>& F,
                     const DeterministicStrategySet& st, double claimed_sr) {
  int m = sa.settings(), k = sa.outcomes(), d = sa.dim();
  double value = 0.0;
  for (int x = 0; x < m; ++x)
    for (int a = 0; a < k; ++a) value += hdot(F[x][a], sa.members[x][a]);
  for (int l = 0; l < st.size(); ++l) {
    Operator agg = Operator::Zero(d, d);
    for (int x = 0; x < m; ++x) agg += F[x][st.response(l, x)];
    auto eig = eig_hermitian(hermitize(agg));
    if (eig.values.maxCoeff() > 1.0 + 1e-7)
      throw std::runtime_error("steering: witness violates the deterministic-strategy bound");
  }
  double gap = value - 1.0;
  double need = std::min(1e-6, 0.5 * claimed_sr);
  if (gap < need)
    throw std::runtime_error("steering: witness does not strictly separate the assemblage");
}

SteeringVerdict feasibility_verdict(const StateAssemblage& sa, bool want_witness_via_robustness);

} // namespace

MeasurementAssemblage make_measurement_assemblage(std::vector<std::vector<Operator>> povms) {
  if (povms.empty() || povms[0].empty())
    throw std::invalid_argument("MeasurementAssemblage: empty");
  int d = static_cast<int>(povms[0][0].rows());
  size_t k = povms[0].size();
  for (const auto& povm : povms) {
    if (povm.size() != k)
      throw std::invalid_argument("MeasurementAssemblage: ragged outcome counts");
    Operator sum = Operator::Zero(d, d);
    for (const auto& e : povm) {
      if (e.rows() != d || e.cols() != d)
        throw std::invalid_argument("MeasurementAssemblage: dimension mismatch");
      if (min_eigenvalue(e) < -1e-9)
        throw std::invalid_argument("MeasurementAssemblage: effect not PSD within 1e-9");
      sum += e;
    }
    if (fdist(sum, identity(d)) > 1e-9 * d)
      throw std::invalid_argument("MeasurementAssemblage: POVM does not sum to identity");
  }
  return MeasurementAssemblage{std::move(povms)};
}

Operator StateAssemblage::total() const {
  Operator t = Operator::Zero(dim(), dim());
  for (const auto& member : members[0]) t += member;
  return t;
}

StateAssemblage make_state_assemblage(std::vector<std::vector<Operator>> members) {
  if (members.empty() || members[0].empty())
    throw std::invalid_argument("StateAssemblage: empty");
  int d = static_cast<int>(members[0][0].rows());
  size_t k = members[0].size();
  std::vector<Operator> totals;
  Operator avg = Operator::Zero(d, d);
  for (const auto& row : members) {
    if (row.size() != k) throw std::invalid_argument("StateAssemblage: ragged outcome counts");
    Operator t = Operator::Zero(d, d);
    for (const auto& member : row) {
      if (member.rows() != d || member.cols() != d)
        throw std::invalid_argument("StateAssemblage: dimension mismatch");
      if (min_eigenvalue(member) < -1e-9)
        throw std::invalid_argument("StateAssemblage: member not PSD within 1e-9");
      t += member;
    }
    totals.push_back(t);
    avg += t;
  }
  avg /= static_cast<double>(members.size());
  if (std::abs(avg.trace().real() - 1.0) > 1e-8)
    throw std::invalid_argument("StateAssemblage: total trace differs from 1 beyond 1e-8");
  StateAssemblage sa;
  sa.members = std::move(members);
  for (size_t x = 0; x < sa.members.size(); ++x) {
    double drift = fdist(totals[x], avg);
    if (drift > 1e-8)
      throw std::invalid_argument("StateAssemblage: setting-dependent total beyond 1e-8");
    if (drift > 1e-14) {
      Operator shift = (avg - totals[x]) / static_cast<double>(k);
      for (auto& member : sa.members[x]) member += shift;
      if (drift > 1e-12) {
        sa.repaired = true;
        std::cerr << "[chansteer] warning: assemblage consistency drift " << drift
                  << " repaired by averaging\n";
      }
    }
  }
  return sa;
}

ChannelAssemblage make_channel_assemblage(std::vector<std::vector<Subchannel>> members) {
  if (members.empty() || members[0].empty())
    throw std::invalid_argument("ChannelAssemblage: empty");
  Operator avg;
  std::vector<Operator> totals;
  for (const auto& row : members) {
    Operator t = row[0].choi;
    for (size_t a = 1; a < row.size(); ++a) t += row[a].choi;
    totals.push_back(t);
    if (avg.size() == 0) avg = t; else avg += t;
  }
  avg /= static_cast<double>(members.size());
  for (const auto& t : totals)
    if (fdist(t, avg) > 1e-8)
      throw std::invalid_argument("ChannelAssemblage: instruments do not share a channel (Def. 4)");
  make_channel(avg, members[0][0].d_in, members[0][0].d_out);
  return ChannelAssemblage{std::move(members)};
}

int DeterministicStrategySet::size() const {
  int n = 1;
  for (int x = 0; x < settings; ++x) n *= outcomes;
  return n;
}

int DeterministicStrategySet::response(int strategy, int x) const {
  for (int i = 0; i < x; ++i) strategy /= outcomes;
  return strategy % outcomes;
}

DeterministicStrategySet enumerate_strategies(int settings, int outcomes, int cap) {
  double n = std::pow(static_cast<double>(outcomes), settings);
  if (n > cap)
    throw std::invalid_argument("deterministic strategy count k^m exceeds the cap");
  return DeterministicStrategySet{settings, outcomes};
}

ChannelAssemblage induced_channel_assemblage(const ChannelExtension& e,
                                             const MeasurementAssemblage& ma) {
  if (ma.dim() != e.d_A)
    throw std::invalid_argument("induced_channel_assemblage: POVM dimension != d_A");
  std::vector<std::vector<Subchannel>> members;
  for (int x = 0; x < ma.settings(); ++x) {
    std::vector<Subchannel> row;
    for (int a = 0; a < ma.outcomes(); ++a) {
      Operator proj = kron(kron(identity(e.d_C), ma.povms[x][a]), identity(e.d_B));
      Operator choi = partial_trace(Operator(proj * e.choi), e.full_dims(), {0, 2});
      row.push_back(make_subchannel(hermitize(choi), e.d_C, DimSpec{e.d_B}));
    }
    members.push_back(std::move(row));
  }
  return make_channel_assemblage(std::move(members));
}

StateAssemblage choi_state_assemblage(const ChannelAssemblage& ca) {
  std::vector<std::vector<Operator>> members;
  for (const auto& row : ca.members) {
    std::vector<Operator> r;
    for (const auto& sub : row) r.push_back(sub.choi);
    members.push_back(std::move(r));
  }
  return make_state_assemblage(std::move(members));
}

namespace {

SteeringVerdict robustness_impl(const StateAssemblage& sa) {
  Assembled as = assemble(sa, ProgramKind::Robustness);
  auto sol = sdp::solve(as.p);
  if (sol.status == sdp::SdpStatus::NumericalFailure)
    throw std::runtime_error("steering_robustness: solver failure");
  SteeringVerdict v;
  v.diagnostics = diagnostics_of(sol);
  double sr = sol.primal_obj; // the optimal mixing weight t
  if (sr < -1e-6) throw std::runtime_error("steering_robustness: negative value beyond tolerance");
  sr = std::max(sr, 0.0);
  v.boundary = (sr > 1e-8 && sr <= 1e-7);
  if (sr <= 1e-7) {
    v.steerable = false;
    v.value = 0.0;
    auto fr = sdp::check_feasible(assemble(sa, ProgramKind::Feasibility).p);
    if (fr.feasible) {
      v.model = extract_model(fr.X, as.strategies.size());
      certify_model(sa, v.model, as.strategies);
    }
    return v;
  }
  v.steerable = true;
  v.value = sr;
  // shift the raw dual F (pairwise strategy sums <= 0) into the normalized
  // witness W = F + I/m, scoring 1 + SR against the unsteerable bound of 1
  v.witness = extract_witness(sol.y, as, sa, 2.0);
  for (auto& row : v.witness)
    for (auto& w : row) w += identity(sa.dim()) / static_cast<double>(sa.settings());
  // absorb solver tolerance: rescale so the strategy bound holds exactly
  double beta = 1.0;
  for (int l = 0; l < as.strategies.size(); ++l) {
    Operator agg = Operator::Zero(sa.dim(), sa.dim());
    for (int x = 0; x < sa.settings(); ++x) agg += v.witness[x][as.strategies.response(l, x)];
    beta = std::max(beta, eig_hermitian(hermitize(agg)).values.maxCoeff());
  }
  for (auto& row : v.witness)
    for (auto& w : row) w /= beta;
  certify_witness(sa, v.witness, as.strategies, sr);
  return v;
}

SteeringVerdict feasibility_verdict(const StateAssemblage& sa, bool want_witness_via_robustness) {
  Assembled as = assemble(sa, ProgramKind::Feasibility);
  auto fr = sdp::check_feasible(as.p);
  SteeringVerdict v;
  v.diagnostics = diagnostics_of(fr.detail);
  if (fr.feasible) {
    v.steerable = false;
    v.value = 0.0;
    v.model = extract_model(fr.X, as.strategies.size());
    certify_model(sa, v.model, as.strategies);
    return v;
  }
  v.steerable = true;
  if (want_witness_via_robustness) {
    SteeringVerdict r = robustness_impl(sa);
    if (!r.steerable)
      throw std::runtime_error("steering: feasibility and robustness verdicts disagree");
    v.value = r.value;
    v.witness = r.witness;
    v.boundary = r.boundary;
  }
  return v;
}

} // namespace

SteeringVerdict test_unsteerable(const StateAssemblage& sa) {
  return feasibility_verdict(sa, true);
}

SteeringVerdict steering_robustness(const StateAssemblage& sa) { return robustness_impl(sa); }

SteeringVerdict steerable_weight(const StateAssemblage& sa) {
  Assembled as = assemble(sa, ProgramKind::Weight);
  auto sol = sdp::solve(as.p);
  if (sol.status == sdp::SdpStatus::NumericalFailure)
    throw std::runtime_error("steerable_weight: solver failure");
  SteeringVerdict v;
  v.diagnostics = diagnostics_of(sol);
  double sw = 1.0 + sol.primal_obj; // primal minimizes -sum tr X
  if (sw < -1e-8 || sw > 1.0 + 1e-8)
    throw std::runtime_error("steerable_weight: value outside [0, 1]");
  sw = std::clamp(sw, 0.0, 1.0);
  v.boundary = (sw > 1e-8 && sw <= 1e-7);
  if (sw <= 1e-7) {
    v.steerable = false;
    v.value = 0.0;
    auto fr = sdp::check_feasible(assemble(sa, ProgramKind::Feasibility).p);
    if (fr.feasible) {
      v.model = extract_model(fr.X, as.strategies.size());
      certify_model(sa, v.model, as.strategies);
    }
    return v;
  }
  v.steerable = true;
  v.value = sw;
  // dual certificate: W_{a|x} >= 0 with sum_x W_{x, lambda(x)} >= I and
  // 1 - sum <W, rho> = SW > 0
  auto W = extract_witness(sol.y, as, sa, -2.0);
  double wval = 0.0;
  for (int x = 0; x < sa.settings(); ++x)
    for (int a = 0; a < sa.outcomes(); ++a) wval += hdot(W[x][a], sa.members[x][a]);
  for (int l = 0; l < as.strategies.size(); ++l) {
    Operator agg = Operator::Zero(sa.dim(), sa.dim());
    for (int x = 0; x < sa.settings(); ++x) agg += W[x][as.strategies.response(l, x)];
    if (min_eigenvalue(agg) < 1.0 - 1e-6)
      throw std::runtime_error("steerable_weight: dual certificate violates the strategy bound");
  }
  if (1.0 - wval < 0.5 * sw - 1e-8)
    throw std::runtime_error("steerable_weight: dual certificate does not match the value");
  v.witness = std::move(W);
  return v;
}

StateAssemblage steered_assemblage(const Operator& rho, int d_A, const MeasurementAssemblage& ma) {
  if (rho.rows() % d_A != 0) throw std::invalid_argument("steered_assemblage: bad dimensions");
  int d_R = static_cast<int>(rho.rows()) / d_A;
  DimSpec dims{d_A, d_R};
  std::vector<std::vector<Operator>> members;
  for (int x = 0; x < ma.settings(); ++x) {
    std::vector<Operator> row;
    for (int a = 0; a < ma.outcomes(); ++a) {
      Operator proj = kron(ma.povms[x][a], identity(d_R));
      row.push_back(hermitize(partial_trace(Operator(proj * rho), dims, {1})));
    }
    members.push_back(std::move(row));
  }
  return make_state_assemblage(std::move(members));
}

Operator apply_to_subsystem(const Operator& state, const DimSpec& dims, int subsystem,
                            const Channel& gamma) {
  if (dims[subsystem] != gamma.d_in)
    throw std::invalid_argument("apply_to_subsystem: dimension mismatch");
  int pre = 1, post = 1;
  for (int i = 0; i < subsystem; ++i) pre *= dims[i];
  for (int i = subsystem + 1; i < dims.size(); ++i) post *= dims[i];
  auto ks = kraus_from_choi(gamma);
  int dout = gamma.out_total();
  Operator out = Operator::Zero(pre * dout * post, pre * dout * post);
  for (const auto& K : ks.ops) {
    Operator lifted = kron(kron(identity(pre), K), identity(post));
    out += lifted * state * lifted.adjoint();
  }
  return hermitize(out);
}

double channel_quantifier(const ChannelExtension& e, const MeasurementAssemblage& ma,
                          Quantifier q, InputMode mode) {
  auto evaluate_sa = [&](const StateAssemblage& sa) {
    SteeringVerdict v = (q == Quantifier::Robustness) ? steering_robustness(sa)
                                                      : steerable_weight(sa);
    return v.value;
  };
  StateAssemblage choi_sa = choi_state_assemblage(induced_channel_assemblage(e, ma));
  double choi_value = evaluate_sa(choi_sa);
  if (mode == InputMode::Choi) return choi_value;
  if (e.d_C > 4) throw std::invalid_argument("channel_quantifier: search mode requires d_C <= 4");

  int d = e.d_C;
  Channel as_channel = make_channel(e.choi, e.d_C, DimSpec{e.d_A, e.d_B});
  auto value_at = [&](const std::vector<double>& angles) {
    std::vector<double> c(d, 1.0);
    for (int i = 0; i < d - 1; ++i) {
      for (int j = i + 1; j < d; ++j) c[j] *= std::sin(angles[i]);
      c[i] *= std::cos(angles[i]);
    }
    Operator psi = Operator::Zero(d * d, 1);
    for (int j = 0; j < d; ++j) psi(j * d + j, 0) = c[j];
    Operator rho = psi * psi.adjoint();
    Operator out = apply(as_channel, rho, d); // on (A, B, C')
    StateAssemblage sa = steered_assemblage(out, e.d_A, ma);
    return evaluate_sa(sa);
  };

  int nang = d - 1;
  const int grid = 17;
  std::vector<double> best_angles(nang, 0.0);
  double best = -1.0;
  std::vector<int> idx(nang, 0);
  while (true) {
    std::vector<double> angles(nang);
    for (int i = 0; i < nang; ++i) angles[i] = idx[i] * (M_PI / 2) / (grid - 1);
    double v = value_at(angles);
    if (v > best) { best = v; best_angles = angles; }
    int i = 0;
    for (; i < nang; ++i) {
      if (++idx[i] < grid) break;
      idx[i] = 0;
    }
    if (i == nang) break;
  }
  // golden-section refinement per coordinate to 1e-4 in the angle
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double spacing = (M_PI / 2) / (grid - 1);
  for (int i = 0; i < nang; ++i) {
    double lo = std::max(0.0, best_angles[i] - spacing);
    double hi = std::min(M_PI / 2, best_angles[i] + spacing);
    auto f = [&](double t) {
      auto angles = best_angles;
      angles[i] = t;
      return value_at(angles);
    };
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > 1e-4) {
      if (f1 < f2) {
        lo = x1; x1 = x2; f1 = f2;
        x2 = lo + gr * (hi - lo); f2 = f(x2);
      } else {
        hi = x2; x2 = x1; f2 = f1;
        x1 = hi - gr * (hi - lo); f1 = f(x1);
      }
    }
    best_angles[i] = (f1 > f2) ? x1 : x2;
    best = std::max(best, std::max(f1, f2));
  }
  return std::max(best, choi_value);
}

Theorem1Report verify_theorem1(const ChannelExtension& e, const MeasurementAssemblage& ma) {
  Theorem1Report rep;
  // route (i): channel assemblage, then its Choi states
  StateAssemblage sa1 = choi_state_assemblage(induced_channel_assemblage(e, ma));
  rep.via_channel_assemblage = test_unsteerable(sa1);
  rep.sr_channel = rep.via_channel_assemblage.steerable
                       ? rep.via_channel_assemblage.value
                       : steering_robustness(sa1).value;
  // route (ii): J(e) measured directly as a state of A:(C'B)
  Operator state = permute_systems(e.choi, e.full_dims(), {1, 0, 2}); // (A, C', B)
  StateAssemblage sa2 = steered_assemblage(state, e.d_A, ma);
  rep.via_choi_state = test_unsteerable(sa2);
  rep.sr_state = rep.via_choi_state.steerable ? rep.via_choi_state.value
                                              : steering_robustness(sa2).value;
  rep.agree = (rep.via_channel_assemblage.steerable == rep.via_choi_state.steerable) &&
              std::abs(rep.sr_channel - rep.sr_state) <= 1e-6;
  if (!rep.agree)
    throw std::runtime_error("verify_theorem1: the two computation routes disagree");
  return rep;
}

Theorem2Report theorem2_necessary_check(const ChannelExtension& e, bool claimed_incoherent) {
  Theorem2Report rep;
  Operator pt = partial_transpose(e.choi, e.full_dims(), 1);
  rep.min_pt_eigenvalue = min_eigenvalue(pt);
  rep.ppt = rep.min_pt_eigenvalue >= -1e-8;
  rep.consistent = !(claimed_incoherent && !rep.ppt);
  rep.note = rep.ppt
                 ? "PPT across A:BC'; necessary for incoherence but not sufficient to certify it"
                 : "PPT violated across A:BC'; the extension is coherent";
  return rep;
}

CovarianceReport local_processing_covariance(const ChannelExtension& e, const Channel& gamma,
                                             const MeasurementAssemblage& ma) {
  if (gamma.d_in != e.d_A)
    throw std::invalid_argument("local_processing_covariance: gamma must act on A");
  if (ma.dim() != gamma.out_total())
    throw std::invalid_argument("local_processing_covariance: POVMs must act on gamma's output");
  Operator processed_choi = apply_to_subsystem(e.choi, e.full_dims(), 1, gamma);
  ChannelExtension processed = make_extension(processed_choi, e.d_C, gamma.out_total(), e.d_B);
  CovarianceReport rep;
  rep.processed = choi_state_assemblage(induced_channel_assemblage(processed, ma));

  auto ks = kraus_from_choi(gamma);
  std::vector<std::vector<Operator>> dual_povms;
  for (int x = 0; x < ma.settings(); ++x) {
    std::vector<Operator> row;
    for (int a = 0; a < ma.outcomes(); ++a) {
      Operator m = Operator::Zero(e.d_A, e.d_A);
      for (const auto& K : ks.ops) m += K.adjoint() * ma.povms[x][a] * K;
      row.push_back(hermitize(m));
    }
    dual_povms.push_back(std::move(row));
  }
  MeasurementAssemblage dual_ma = make_measurement_assemblage(std::move(dual_povms));
  rep.dual_processed = choi_state_assemblage(induced_channel_assemblage(e, dual_ma));

  double err = 0.0;
  for (int x = 0; x < ma.settings(); ++x)
    for (int a = 0; a < ma.outcomes(); ++a)
      err = std::max(err, fdist(rep.processed.members[x][a], rep.dual_processed.members[x][a]));
  rep.identity_error = err;
  if (err > 1e-9)
    throw std::runtime_error("local_processing_covariance: covariance identity violated");
  return rep;
}

Prop1Reconstruction reconstruct_pointer_extension(const std::vector<Operator>& model, int settings,
                                                  int outcomes, int d_in) {
  DeterministicStrategySet st = enumerate_strategies(settings, outcomes);
  if (static_cast<int>(model.size()) != st.size())
    throw std::invalid_argument("reconstruct_pointer_extension: model size != strategy count");
  int N = st.size();
  int d_out = static_cast<int>(model[0].rows()) / d_in;
  // project each model operator to the PSD cone to absorb solver noise
  std::vector<Subchannel> members;
  for (const auto& X : model) {
    auto eig = eig_hermitian(hermitize(X));
    Operator psd = Operator::Zero(X.rows(), X.cols());
    for (int i = 0; i < eig.values.size(); ++i)
      if (eig.values(i) > 0)
        psd += eig.values(i) * (eig.vectors.col(i) * eig.vectors.col(i).adjoint());
    members.push_back(Subchannel{psd, d_in, DimSpec{d_out}});
  }
  Operator choi = Operator::Zero(d_in * N * d_out, d_in * N * d_out);
  for (int l = 0; l < N; ++l) {
    Operator blk = kron(members[l].choi, Operator(ket(N, l) * ket(N, l).adjoint()));
    choi += permute_systems(blk, DimSpec{d_in, d_out, N}, {0, 2, 1});
  }
  Prop1Reconstruction rec{make_extension(choi, d_in, N, d_out), MeasurementAssemblage{}};
  // M_{a|x} = sum_lambda D_lambda(a|x) |lambda><lambda|
  std::vector<std::vector<Operator>> povms;
  for (int x = 0; x < settings; ++x) {
    std::vector<Operator> row(outcomes, Operator::Zero(N, N));
    for (int l = 0; l < N; ++l) row[st.response(l, x)](l, l) = 1.0;
    povms.push_back(std::move(row));
  }
  rec.ma = make_measurement_assemblage(std::move(povms));
  return rec;
}

MeasurementAssemblage xz_measurements() {
  Operator id2 = identity(2);
  std::vector<std::vector<Operator>> povms{
      {Operator(0.5 * (id2 + pauli_x())), Operator(0.5 * (id2 - pauli_x()))},
      {Operator(0.5 * (id2 + pauli_z())), Operator(0.5 * (id2 - pauli_z()))}};
  return make_measurement_assemblage(std::move(povms));
}

MeasurementAssemblage random_measurements(int dim, int settings, int outcomes, std::uint64_t seed) {
  std::vector<std::vector<Operator>> povms;
  for (int x = 0; x < settings; ++x) {
    std::vector<Operator> raw;
    Operator total = Operator::Zero(dim, dim);
    for (int a = 0; a < outcomes; ++a) {
      Operator g = random_density(dim, seed * 7919 + x * 131 + a + 1);
      raw.push_back(g);
      total += g;
    }
    auto eig = eig_hermitian(total);
    Operator inv_sqrt = Operator::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
      inv_sqrt += (1.0 / std::sqrt(eig.values(i))) *
                  (eig.vectors.col(i) * eig.vectors.col(i).adjoint());
    std::vector<Operator> row;
    for (auto& g : raw) row.push_back(hermitize(Operator(inv_sqrt * g * inv_sqrt)));
    povms.push_back(std::move(row));
  }
  return make_measurement_assemblage(std::move(povms));
}

} // namespace chansteer
