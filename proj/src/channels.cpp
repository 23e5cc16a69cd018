#include "chansteer/channels.hpp"

#include <cmath>
#include <random>

namespace chansteer {

namespace {

constexpr double kKrausCutoff = 1e-9; // eigenvalue threshold deciding Kraus rank

void check_cp(const Operator& choi, const char* what) {
  if (min_eigenvalue(choi) < -1e-9)
    throw std::invalid_argument(std::string(what) + ": Choi operator not PSD within 1e-9");
}

Operator trace_out(const Operator& choi, int d_in, int out_total) {
  return partial_trace(choi, DimSpec{d_in, out_total}, {0});
}

std::mt19937_64 seeded(std::uint64_t seed) { return std::mt19937_64(seed); }

Operator gaussian(int r, int c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Operator m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = cxd(g(rng), g(rng));
  return m;
}

} // namespace

DimSpec Channel::full_dims() const {
  std::vector<int> d{d_in};
  for (int x : d_out.dims()) d.push_back(x);
  return DimSpec(d);
}

DimSpec Subchannel::full_dims() const {
  std::vector<int> d{d_in};
  for (int x : d_out.dims()) d.push_back(x);
  return DimSpec(d);
}

Operator Instrument::total_choi() const {
  Operator t = members.at(0).choi;
  for (size_t i = 1; i < members.size(); ++i) t += members[i].choi;
  return t;
}

Channel make_channel(Operator choi, int d_in, DimSpec d_out) {
  choi = hermitize(choi);
  require_finite(choi, "Channel");
  if (choi.rows() != d_in * d_out.total())
    throw std::invalid_argument("Channel: Choi side does not match dims");
  check_cp(choi, "Channel");
  Operator marg = trace_out(choi, d_in, d_out.total());
  if (fdist(marg, Operator(identity(d_in) / double(d_in))) > 1e-9 * std::sqrt((double)d_in) + 1e-9)
    throw std::invalid_argument("Channel: not trace preserving (Tr_out J != I/d_in)");
  return Channel{std::move(choi), d_in, std::move(d_out)};
}

Subchannel make_subchannel(Operator choi, int d_in, DimSpec d_out) {
  choi = hermitize(choi);
  require_finite(choi, "Subchannel");
  if (choi.rows() != d_in * d_out.total())
    throw std::invalid_argument("Subchannel: Choi side does not match dims");
  check_cp(choi, "Subchannel");
  Operator slack = identity(d_in) / double(d_in) - trace_out(choi, d_in, d_out.total());
  if (min_eigenvalue(slack) < -1e-9)
    throw std::invalid_argument("Subchannel: trace increasing beyond tolerance");
  return Subchannel{std::move(choi), d_in, std::move(d_out)};
}

Instrument make_instrument(std::vector<Subchannel> members) {
  if (members.empty()) throw std::invalid_argument("Instrument: no members");
  Operator total = members[0].choi;
  for (size_t i = 1; i < members.size(); ++i) {
    if (members[i].d_in != members[0].d_in || members[i].d_out.total() != members[0].d_out.total())
      throw std::invalid_argument("Instrument: member dimension mismatch");
    total += members[i].choi;
  }
  make_channel(total, members[0].d_in, members[0].d_out); // throws if the sum is not a channel
  return Instrument{std::move(members)};
}

ChannelExtension make_extension(Operator choi, int d_C, int d_A, int d_B) {
  Channel c = make_channel(std::move(choi), d_C, DimSpec{d_A, d_B});
  ChannelExtension e{std::move(c.choi), d_C, d_A, d_B};
  // both marginals must themselves be channels
  marginal(e, Receiver::A);
  marginal(e, Receiver::B);
  return e;
}

Channel choi_from_kraus(const KrausSet& k) {
  if (k.ops.empty()) throw std::invalid_argument("choi_from_kraus: empty Kraus set");
  int din = k.d_in, dout = k.d_out;
  for (const auto& op : k.ops)
    if (op.rows() != dout || op.cols() != din)
      throw std::invalid_argument("choi_from_kraus: inconsistent operator shapes");
  Operator choi = Operator::Zero(din * dout, din * dout);
  double norm = 1.0 / std::sqrt(double(din));
  for (const auto& op : k.ops) {
    Operator v(din * dout, 1);
    for (int j = 0; j < din; ++j)
      for (int b = 0; b < dout; ++b) v(j * dout + b, 0) = norm * op(b, j);
    choi += v * v.adjoint();
  }
  return make_channel(choi, din, DimSpec{dout});
}

namespace {
KrausSet kraus_from_choi_impl(const Operator& choi, int din, int dout) {
  auto eig = eig_hermitian(hermitize(Operator(double(din) * choi)));
  KrausSet ks;
  ks.d_in = din;
  ks.d_out = dout;
  for (int k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) < kKrausCutoff) continue;
    double s = std::sqrt(eig.values(k));
    Operator K(dout, din);
    for (int j = 0; j < din; ++j)
      for (int b = 0; b < dout; ++b) K(b, j) = s * eig.vectors(j * dout + b, k);
    ks.ops.push_back(K);
  }
  if (ks.ops.empty()) ks.ops.push_back(Operator::Zero(dout, din));
  return ks;
}
} // namespace

KrausSet kraus_from_choi(const Channel& c) {
  if (min_eigenvalue(c.choi) < -1e-8)
    throw std::invalid_argument("kraus_from_choi: CP violation beyond tolerance");
  return kraus_from_choi_impl(c.choi, c.d_in, c.out_total());
}

KrausSet kraus_from_subchannel(const Subchannel& c) {
  if (min_eigenvalue(c.choi) < -1e-8)
    throw std::invalid_argument("kraus_from_subchannel: CP violation beyond tolerance");
  return kraus_from_choi_impl(c.choi, c.d_in, c.d_out.total());
}

StinespringIsometry stinespring_from_kraus(const KrausSet& k) {
  int r = static_cast<int>(k.ops.size());
  Operator sum = Operator::Zero(k.d_in, k.d_in);
  for (const auto& op : k.ops) sum += op.adjoint() * op;
  if (fdist(sum, identity(k.d_in)) > 1e-9 * k.d_in)
    throw std::invalid_argument("stinespring_from_kraus: Kraus set is not trace preserving");
  Operator V = Operator::Zero(r * k.d_out, k.d_in);
  for (int i = 0; i < r; ++i) V.block(i * k.d_out, 0, k.d_out, k.d_in) = k.ops[i];
  return StinespringIsometry{V, k.d_in, r, k.d_out};
}

ChannelExtension extension_from_isometry(const StinespringIsometry& v) {
  if (v.V.rows() != v.d_A * v.d_B || v.V.cols() != v.d_C)
    throw std::invalid_argument("extension_from_isometry: shape mismatch");
  if (fdist(Operator(v.V.adjoint() * v.V), identity(v.d_C)) > 1e-9 * v.d_C)
    throw std::invalid_argument("extension_from_isometry: V is not an isometry");
  int d = v.d_C;
  Operator vec(d * v.d_A * v.d_B, 1);
  double norm = 1.0 / std::sqrt(double(d));
  for (int j = 0; j < d; ++j)
    for (int ab = 0; ab < v.d_A * v.d_B; ++ab) vec(j * v.d_A * v.d_B + ab, 0) = norm * v.V(ab, j);
  Operator choi = vec * vec.adjoint();
  return make_extension(choi, v.d_C, v.d_A, v.d_B);
}

namespace {
Operator apply_impl(const Operator& choi, int din, int dout, const Operator& rho, int dD) {
  if (rho.rows() != rho.cols() || rho.rows() != din * dD)
    throw std::invalid_argument("apply: input dimension mismatch");
  KrausSet ks = kraus_from_choi_impl(hermitize(choi), din, dout);
  Operator out = Operator::Zero(dout * dD, dout * dD);
  Operator idD = identity(dD);
  for (const auto& K : ks.ops) {
    Operator KD = kron(K, idD);
    out += KD * rho * KD.adjoint();
  }
  return out;
}
} // namespace

Operator apply(const Channel& c, const Operator& rho, int ancilla_dim) {
  if (std::abs(rho.trace() - 1.0) > 1e-9)
    throw std::invalid_argument("apply: input is not a unit-trace density operator");
  return apply_impl(c.choi, c.d_in, c.out_total(), rho, ancilla_dim);
}

Operator apply_subchannel(const Subchannel& c, const Operator& rho, int ancilla_dim) {
  return apply_impl(c.choi, c.d_in, c.d_out.total(), rho, ancilla_dim);
}

Channel marginal(const ChannelExtension& e, Receiver keep) {
  if (keep == Receiver::B) {
    Operator m = partial_trace(e.choi, e.full_dims(), {0, 2});
    return make_channel(m, e.d_C, DimSpec{e.d_B});
  }
  Operator m = partial_trace(e.choi, e.full_dims(), {0, 1});
  return make_channel(m, e.d_C, DimSpec{e.d_A});
}

ChannelExtension incoherent_extension(const Instrument& inst, const std::vector<Operator>& states) {
  if (states.size() != inst.members.size())
    throw std::invalid_argument("incoherent_extension: instrument/state count mismatch");
  int d_A = static_cast<int>(states.at(0).rows());
  for (const auto& s : states) {
    if (s.rows() != d_A || s.cols() != d_A)
      throw std::invalid_argument("incoherent_extension: state dimension mismatch");
    if (std::abs(s.trace() - 1.0) > 1e-9 || min_eigenvalue(s) < -1e-9)
      throw std::invalid_argument("incoherent_extension: states must be unit-trace PSD");
  }
  int d_C = inst.d_in(), d_B = inst.d_out();
  Operator choi = Operator::Zero(d_C * d_A * d_B, d_C * d_A * d_B);
  for (size_t l = 0; l < states.size(); ++l) {
    // J_lambda (x) sigma_lambda lives on (C', B, A); reorder to (C', A, B).
    Operator blk = kron(inst.members[l].choi, states[l]);
    choi += permute_systems(blk, DimSpec{d_C, d_B, d_A}, {0, 2, 1});
  }
  return make_extension(choi, d_C, d_A, d_B);
}

ChannelExtension pointer_extension(const Instrument& inst) {
  int n = static_cast<int>(inst.members.size());
  std::vector<Operator> states;
  for (int l = 0; l < n; ++l) states.push_back(ket(n, l) * ket(n, l).adjoint());
  return incoherent_extension(inst, states);
}

ChannelExtension kraus_pointer_extension(const KrausSet& k) {
  Operator sum = Operator::Zero(k.d_in, k.d_in);
  for (const auto& op : k.ops) sum += op.adjoint() * op;
  if (fdist(sum, identity(k.d_in)) > 1e-9 * k.d_in)
    throw std::invalid_argument("kraus_pointer_extension: Kraus set is not trace preserving");
  std::vector<Subchannel> members;
  for (const auto& op : k.ops) {
    KrausSet single{{op}, k.d_in, k.d_out};
    Operator choi = Operator::Zero(k.d_in * k.d_out, k.d_in * k.d_out);
    double norm = 1.0 / std::sqrt(double(k.d_in));
    Operator v(k.d_in * k.d_out, 1);
    for (int j = 0; j < k.d_in; ++j)
      for (int b = 0; b < k.d_out; ++b) v(j * k.d_out + b, 0) = norm * op(b, j);
    choi = v * v.adjoint();
    members.push_back(make_subchannel(choi, k.d_in, DimSpec{k.d_out}));
  }
  return pointer_extension(make_instrument(std::move(members)));
}

ChannelExtension channel_convex_extension(const std::vector<Channel>& channels,
                                          const std::vector<double>& probs) {
  if (channels.size() != probs.size() || channels.empty())
    throw std::invalid_argument("channel_convex_extension: size mismatch");
  double total = 0.0;
  for (double p : probs) {
    if (p < -1e-12) throw std::invalid_argument("channel_convex_extension: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw std::invalid_argument("channel_convex_extension: probabilities do not sum to 1");
  std::vector<Subchannel> members;
  for (size_t l = 0; l < channels.size(); ++l)
    members.push_back(make_subchannel(Operator(probs[l] * channels[l].choi), channels[l].d_in,
                                      channels[l].d_out));
  return pointer_extension(make_instrument(std::move(members)));
}

Channel complementary(const ChannelExtension& e) { return marginal(e, Receiver::A); }

EbStatus eb_check(const Channel& c) {
  Operator pt = partial_transpose(c.choi, DimSpec{c.d_in, c.out_total()}, 0);
  if (min_eigenvalue(pt) < -1e-9) return EbStatus::NotEb;
  if (c.d_in * c.out_total() <= 6) return EbStatus::EbCertified;
  return EbStatus::Inconclusive;
}

std::vector<Operator> povm_from_instrument(const Instrument& inst) {
  std::vector<Operator> povm;
  int din = inst.d_in();
  for (const auto& m : inst.members) {
    Operator red = partial_trace(m.choi, m.full_dims(), {0});
    povm.push_back(hermitize(Operator(double(din) * red.transpose())));
  }
  return povm;
}

ChannelExtension fixed_output_extension(const Operator& sigma, int d_C) {
  if (std::abs(sigma.trace() - 1.0) > 1e-9 || min_eigenvalue(sigma) < -1e-9)
    throw std::invalid_argument("fixed_output_extension: sigma must be a density operator");
  Operator choi = kron(max_entangled(d_C), sigma); // psi+ on (C',A), sigma on B
  return make_extension(choi, d_C, d_C, static_cast<int>(sigma.rows()));
}

Operator haar_isometry(int rows, int cols, std::uint64_t seed) {
  if (rows < cols) throw std::invalid_argument("haar_isometry: rows < cols");
  auto rng = seeded(seed);
  Operator g = gaussian(rows, cols, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(rows, cols);
  Eigen::MatrixXcd R = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    cxd r = R(j, j);
    cxd phase = std::abs(r) > 0 ? r / std::abs(r) : cxd(1, 0);
    Q.col(j) *= phase;
  }
  return Q;
}

ChannelExtension random_extension(int d_C, int d_A, int d_B, std::uint64_t seed) {
  if (d_A * d_B < d_C) throw std::invalid_argument("random_extension: output too small for an isometry");
  Operator V = haar_isometry(d_A * d_B, d_C, seed);
  return extension_from_isometry(StinespringIsometry{V, d_C, d_A, d_B});
}

Instrument random_instrument(int d_in, int d_out, int members, std::uint64_t seed) {
  // Measure the pointer environment of a Haar isometry C -> B (x) E.
  Operator V = haar_isometry(d_out * members, d_in, seed);
  std::vector<Subchannel> subs;
  for (int l = 0; l < members; ++l) {
    // K_l = (I_B (x) <l|_E) V with ordering (B, E): rows b*members + l.
    Operator K(d_out, d_in);
    for (int b = 0; b < d_out; ++b) K.row(b) = V.row(b * members + l);
    Operator v(d_in * d_out, 1);
    double norm = 1.0 / std::sqrt(double(d_in));
    for (int j = 0; j < d_in; ++j)
      for (int b = 0; b < d_out; ++b) v(j * d_out + b, 0) = norm * K(b, j);
    subs.push_back(make_subchannel(v * v.adjoint(), d_in, DimSpec{d_out}));
  }
  return make_instrument(std::move(subs));
}

Channel random_channel(int d_in, int d_out, int n_kraus, std::uint64_t seed) {
  Operator V = haar_isometry(d_out * n_kraus, d_in, seed);
  KrausSet ks;
  ks.d_in = d_in;
  ks.d_out = d_out;
  for (int l = 0; l < n_kraus; ++l) {
    Operator K(d_out, d_in);
    for (int b = 0; b < d_out; ++b) K.row(b) = V.row(b * n_kraus + l);
    ks.ops.push_back(K);
  }
  return choi_from_kraus(ks);
}

Operator random_density(int d, std::uint64_t seed) {
  auto rng = seeded(seed);
  Operator g = gaussian(d, d, rng);
  Operator w = g * g.adjoint();
  return w / w.trace();
}

} // namespace chansteer
