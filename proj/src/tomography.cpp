#include "chansteer/tomography.hpp"

#include <cmath>

namespace chansteer {

namespace {

using MapVec = Eigen::Map<const Eigen::Matrix<cxd, Eigen::Dynamic, 1>>;

// row-major vectorization, matching the Operator storage order
Eigen::Matrix<cxd, Eigen::Dynamic, 1> vec(const Operator& m) {
  return MapVec(m.data(), m.size());
}

void check_statistics(const std::vector<std::pair<double, Operator>>& outs) {
  double total = 0.0;
  for (const auto& [p, cond] : outs) {
    if (p < -1e-10) throw std::runtime_error("tomography: negative outcome probability");
    total += p;
    if (p > 1e-9 && std::abs(cond.trace().real() - 1.0) > 1e-8)
      throw std::runtime_error("tomography: conditional output is not unit trace");
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw std::runtime_error("tomography: inconsistent probability normalization");
}

} // namespace

BlackBox black_box_from_extension(const ChannelExtension& e, const MeasurementAssemblage& ma) {
  if (ma.dim() != e.d_A)
    throw std::invalid_argument("black_box_from_extension: POVM dimension != d_A");
  BlackBox bb;
  bb.d_C = e.d_C;
  bb.d_B = e.d_B;
  Channel as_channel = make_channel(e.choi, e.d_C, DimSpec{e.d_A, e.d_B});
  bb.eval = [as_channel, e, ma](const Operator& input, int x) {
    if (input.rows() % e.d_C != 0)
      throw std::invalid_argument("black box: input dimension not a multiple of d_C");
    int d_anc = static_cast<int>(input.rows()) / e.d_C;
    Operator out = apply(as_channel, input, d_anc); // on (A, B, D)
    DimSpec dims{e.d_A, e.d_B, d_anc};
    std::vector<std::pair<double, Operator>> result;
    for (int a = 0; a < ma.outcomes(); ++a) {
      Operator proj = kron(ma.povms[x][a], identity(e.d_B * d_anc));
      Operator sub = hermitize(partial_trace(Operator(proj * out), dims, {1, 2}));
      double p = sub.trace().real();
      if (p > 1e-12)
        result.emplace_back(p, Operator(sub / p));
      else
        result.emplace_back(std::max(p, 0.0), identity(e.d_B * d_anc) / (e.d_B * d_anc));
    }
    return result;
  };
  return bb;
}

ProbeSet default_probes(int d) {
  ProbeSet ps;
  auto pure = [](const Operator& v) {
    Operator n = v / v.norm();
    return Operator(n * n.adjoint());
  };
  for (int j = 0; j < d; ++j) ps.states.push_back(pure(ket(d, j)));
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      ps.states.push_back(pure(Operator(ket(d, j) + ket(d, k))));
      ps.states.push_back(pure(Operator(ket(d, j) + cxd(0, 1) * ket(d, k))));
    }
  return ps;
}

ChannelAssemblage reconstruct_ancilla(const BlackBox& bb, int x_count, int a_count) {
  int d = bb.d_C;
  Operator psi = max_entangled(d); // on C (x) C'
  std::vector<std::vector<Subchannel>> members;
  for (int x = 0; x < x_count; ++x) {
    auto outs = bb.eval(psi, x);
    if (static_cast<int>(outs.size()) != a_count)
      throw std::runtime_error("tomography: outcome count mismatch");
    check_statistics(outs);
    std::vector<Subchannel> row;
    for (const auto& [p, cond] : outs) {
      Operator j = permute_systems(Operator(p * cond), DimSpec{bb.d_B, d}, {1, 0});
      row.push_back(Subchannel{hermitize(j), d, DimSpec{bb.d_B}});
    }
    members.push_back(std::move(row));
  }
  return make_channel_assemblage(std::move(members));
}

ChannelAssemblage reconstruct_products(const BlackBox& bb, const ProbeSet& probes, int x_count,
                                       int a_count) {
  int d = bb.d_C, db = bb.d_B;
  int n = static_cast<int>(probes.states.size());
  Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic> P(n, d * d);
  for (int i = 0; i < n; ++i) P.row(i) = vec(probes.states[i]).transpose();
  Eigen::ColPivHouseholderQR<Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic>> qr(P);
  qr.setThreshold(1e-9);
  if (qr.rank() < d * d)
    throw std::runtime_error("tomography: probe set is rank-deficient (operator space unspanned)");

  // unnormalized outputs per probe, then least-squares for the superoperator
  std::vector<std::vector<Subchannel>> members;
  std::vector<std::vector<Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic>>> outs(
      x_count, std::vector<Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic>>(
                   a_count, Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic>(n, db * db)));
  for (int i = 0; i < n; ++i)
    for (int x = 0; x < x_count; ++x) {
      auto res = bb.eval(probes.states[i], x);
      if (static_cast<int>(res.size()) != a_count)
        throw std::runtime_error("tomography: outcome count mismatch");
      check_statistics(res);
      for (int a = 0; a < a_count; ++a)
        outs[x][a].row(i) = vec(Operator(res[a].first * res[a].second)).transpose();
    }
  for (int x = 0; x < x_count; ++x) {
    std::vector<Subchannel> row;
    for (int a = 0; a < a_count; ++a) {
      // T solves P T = Y row-wise: T^T vec(rho) = vec(Lambda[rho])
      Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic> T = qr.solve(outs[x][a]);
      Operator j = Operator::Zero(d * db, d * db);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          Eigen::Matrix<cxd, Eigen::Dynamic, 1> image =
              T.row(r * d + c).transpose(); // Lambda[E_rc], vectorized
          for (int b1 = 0; b1 < db; ++b1)
            for (int b2 = 0; b2 < db; ++b2)
              j(r * db + b1, c * db + b2) += image(b1 * db + b2) / static_cast<double>(d);
        }
      row.push_back(Subchannel{hermitize(j), d, DimSpec{db}});
    }
    members.push_back(std::move(row));
  }
  return make_channel_assemblage(std::move(members));
}

} // namespace chansteer
