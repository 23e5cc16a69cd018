#include "chansteer/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chansteer::sdp {

namespace {

Eigen::MatrixXd sym(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

// W with W Z W = X (Nesterov-Todd scaling point), via eigendecompositions.
Eigen::MatrixXd nt_scaling(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ez(Z);
  double zfloor = std::max(1e-300, 1e-14 * ez.eigenvalues().maxCoeff());
  Eigen::VectorXd zsqrt = ez.eigenvalues().cwiseMax(zfloor).cwiseSqrt();
  Eigen::MatrixXd Zh = ez.eigenvectors() * zsqrt.asDiagonal() * ez.eigenvectors().transpose();
  Eigen::MatrixXd Zhi = ez.eigenvectors() * zsqrt.cwiseInverse().asDiagonal() * ez.eigenvectors().transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> et(sym(Zh * X * Zh));
  double tfloor = std::max(1e-300, 1e-14 * et.eigenvalues().maxCoeff());
  Eigen::VectorXd tsqrt = et.eigenvalues().cwiseMax(tfloor).cwiseSqrt();
  Eigen::MatrixXd Th = et.eigenvectors() * tsqrt.asDiagonal() * et.eigenvectors().transpose();
  return sym(Zhi * Th * Zhi);
}

// Largest step alpha with X + alpha*dX staying PSD, capped at 1.
double max_step(const Eigen::MatrixXd& X, const Eigen::MatrixXd& dX) {
  Eigen::LLT<Eigen::MatrixXd> llt(X);
  if (llt.info() != Eigen::Success) {
    // X can drift marginally indefinite from rounding; factor a ridged copy
    double ridge = 1e-12 * (1.0 + X.diagonal().cwiseAbs().maxCoeff());
    Eigen::MatrixXd Xr = X + ridge * Eigen::MatrixXd::Identity(X.rows(), X.cols());
    llt.compute(Xr);
    if (llt.info() != Eigen::Success) return 0.0;
  }
  Eigen::MatrixXd L = llt.matrixL();
  Eigen::MatrixXd N = L.triangularView<Eigen::Lower>().solve(dX);
  N = L.triangularView<Eigen::Lower>().solve(N.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym(N));
  double lmin = es.eigenvalues().minCoeff();
  if (lmin >= 0) return 1.0;
  return std::min(1.0, -1.0 / lmin);
}

struct Reduced {
  std::vector<int> kept;              // indices into the original constraint list
  bool consistent = true;
  Eigen::VectorXd inconsistency_y;    // Farkas combination over the full list
  double inconsistency_gap = 0.0;
};

Eigen::VectorXd vectorize(const Constraint& c, const std::vector<int>& sizes, int nfree) {
  int n = 0;
  for (int s : sizes) n += s * s;
  Eigen::VectorXd v(n + nfree);
  int off = 0;
  for (size_t k = 0; k < sizes.size(); ++k) {
    int s = sizes[k];
    v.segment(off, s * s) = Eigen::Map<const Eigen::VectorXd>(c.A[k].data(), s * s);
    off += s * s;
  }
  if (nfree > 0) v.segment(off, nfree) = c.f;
  return v;
}

// Column-pivoted QR selection of an independent constraint subset, with a
// consistency check on the dropped rows.
Reduced reduce_constraints(const SdpProblem& p) {
  Reduced r;
  int m = static_cast<int>(p.constraints.size());
  if (m == 0) return r;
  int n = p.nfree;
  for (int s : p.block_sizes) n += s * s;
  Eigen::MatrixXd Gt(n, m);
  for (int i = 0; i < m; ++i) Gt.col(i) = vectorize(p.constraints[i], p.block_sizes, p.nfree);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Gt);
  qr.setThreshold(1e-10);
  int rank = static_cast<int>(qr.rank());
  const auto& perm = qr.colsPermutation().indices();
  std::vector<char> keep(m, 0);
  for (int i = 0; i < rank; ++i) keep[perm(i)] = 1;
  for (int i = 0; i < m; ++i)
    if (keep[i]) r.kept.push_back(i);
  if (rank == m) return r;

  Eigen::MatrixXd Gk(n, rank);
  Eigen::VectorXd bk(rank);
  for (int i = 0; i < rank; ++i) {
    Gk.col(i) = Gt.col(r.kept[i]);
    bk(i) = p.constraints[r.kept[i]].b;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qrk(Gk);
  for (int j = 0; j < m; ++j) {
    if (keep[j]) continue;
    Eigen::VectorXd c = qrk.solve(Gt.col(j));
    double bpred = c.dot(bk);
    double gap = p.constraints[j].b - bpred;
    if (std::abs(gap) > 1e-8 * (1.0 + std::abs(p.constraints[j].b))) {
      r.consistent = false;
      Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
      double s = gap > 0 ? 1.0 : -1.0;
      y(j) = s;
      for (int i = 0; i < rank; ++i) y(r.kept[i]) = -s * c(i);
      r.inconsistency_y = y / std::abs(gap);
      r.inconsistency_gap = std::abs(gap);
      return r;
    }
  }
  return r;
}

struct Metrics {
  double pinf, dinf, relgap, compl_;
  double worst() const { return std::max({pinf, dinf, relgap}); }
};

} // namespace

void SdpProblem::validate() const {
  if (C.size() != block_sizes.size()) throw std::invalid_argument("SdpProblem: C block count mismatch");
  for (size_t k = 0; k < block_sizes.size(); ++k) {
    if (C[k].rows() != block_sizes[k] || C[k].cols() != block_sizes[k])
      throw std::invalid_argument("SdpProblem: C block shape mismatch");
    if ((C[k] - C[k].transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + C[k].cwiseAbs().maxCoeff()))
      throw std::invalid_argument("SdpProblem: C block not symmetric");
  }
  for (const auto& c : constraints) {
    if (c.A.size() != block_sizes.size()) throw std::invalid_argument("SdpProblem: constraint block count mismatch");
    for (size_t k = 0; k < block_sizes.size(); ++k) {
      if (c.A[k].rows() != block_sizes[k] || c.A[k].cols() != block_sizes[k])
        throw std::invalid_argument("SdpProblem: constraint block shape mismatch");
      if ((c.A[k] - c.A[k].transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + c.A[k].cwiseAbs().maxCoeff()))
        throw std::invalid_argument("SdpProblem: constraint block not symmetric");
    }
    if (nfree > 0 && c.f.size() != nfree)
      throw std::invalid_argument("SdpProblem: free-coefficient length mismatch");
  }
  if (nfree > 0 && cfree.size() != nfree) throw std::invalid_argument("SdpProblem: cfree length mismatch");
}

double bdot(const BlockMat& a, const BlockMat& b) {
  double s = 0.0;
  for (size_t k = 0; k < a.size(); ++k) s += (a[k].array() * b[k].array()).sum();
  return s;
}

BlockMat bzero(const std::vector<int>& sizes) {
  BlockMat b;
  for (int s : sizes) b.push_back(Eigen::MatrixXd::Zero(s, s));
  return b;
}

BlockMat bidentity(const std::vector<int>& sizes, double scale) {
  BlockMat b;
  for (int s : sizes) b.push_back(scale * Eigen::MatrixXd::Identity(s, s));
  return b;
}

double bnorm(const BlockMat& a) {
  double s = 0.0;
  for (const auto& m : a) s += m.squaredNorm();
  return std::sqrt(s);
}

double bmineig(const BlockMat& a) {
  double lmin = std::numeric_limits<double>::infinity();
  for (const auto& m : a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym(m));
    lmin = std::min(lmin, es.eigenvalues().minCoeff());
  }
  return lmin;
}

SdpSolution solve(const SdpProblem& p, const SolveOptions& opts) {
  p.validate();
  Reduced red = reduce_constraints(p);
  SdpSolution sol;
  int m_all = static_cast<int>(p.constraints.size());
  if (!red.consistent) {
    sol.status = SdpStatus::NumericalFailure;
    sol.y = red.inconsistency_y;
    sol.condition_estimate = std::numeric_limits<double>::infinity();
    return sol;
  }
  int m = static_cast<int>(red.kept.size());
  int nf = p.nfree;
  const auto& sizes = p.block_sizes;
  int nblk = static_cast<int>(sizes.size());
  int ntot = 0;
  for (int s : sizes) ntot += s;

  std::vector<const BlockMat*> A(m);
  Eigen::VectorXd b(m);
  Eigen::MatrixXd F(m, std::max(nf, 0));
  for (int i = 0; i < m; ++i) {
    const auto& c = p.constraints[red.kept[i]];
    A[i] = &c.A;
    b(i) = c.b;
    if (nf > 0) F.row(i) = c.f.transpose();
  }

  double normC = bnorm(p.C) + (nf > 0 ? p.cfree.norm() : 0.0);
  double normA = 0.0;
  for (int i = 0; i < m; ++i) normA = std::max(normA, bnorm(*A[i]));
  double xi_p = std::clamp(std::sqrt((double)ntot) * (1.0 + (m ? b.cwiseAbs().maxCoeff() : 0.0)) / (1.0 + normA), 10.0, 1e5);
  double xi_d = std::clamp(std::sqrt((double)ntot) + std::max(normC, normA), 10.0, 1e5);

  BlockMat X = bidentity(sizes, xi_p);
  BlockMat Z = bidentity(sizes, xi_d);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(std::max(nf, 0));

  auto applyA = [&](const BlockMat& V) {
    Eigen::VectorXd out(m);
    for (int i = 0; i < m; ++i) out(i) = bdot(*A[i], V);
    return out;
  };
  auto applyAT = [&](const Eigen::VectorXd& v) {
    BlockMat out = bzero(sizes);
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < nblk; ++k) out[k] += v(i) * (*A[i])[k];
    return out;
  };

  auto metrics_of = [&](const BlockMat& Xv, const Eigen::VectorXd& uv, const Eigen::VectorXd& yv,
                        const BlockMat& Zv) {
    Metrics mt{};
    Eigen::VectorXd rp = b - applyA(Xv);
    if (nf > 0) rp -= F * uv;
    BlockMat Rd = applyAT(yv);
    for (int k = 0; k < nblk; ++k) Rd[k] = p.C[k] - Rd[k] - Zv[k];
    double rf2 = 0.0;
    if (nf > 0) rf2 = (p.cfree - F.transpose() * yv).squaredNorm();
    mt.pinf = rp.norm() / (1.0 + b.norm());
    mt.dinf = std::sqrt(bnorm(Rd) * bnorm(Rd) + rf2) / (1.0 + normC);
    double pobj = bdot(p.C, Xv) + (nf > 0 ? p.cfree.dot(uv) : 0.0);
    double dobj = b.dot(yv);
    mt.relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    mt.compl_ = bdot(Xv, Zv);
    return mt;
  };

  SdpSolution best;
  double best_worst = std::numeric_limits<double>::infinity();
  auto record = [&](int iter) {
    Metrics mt = metrics_of(X, u, y, Z);
    if (mt.worst() < best_worst) {
      best_worst = mt.worst();
      best.X = X;
      best.u = u;
      best.Z = Z;
      best.y = Eigen::VectorXd::Zero(m_all);
      for (int i = 0; i < m; ++i) best.y(red.kept[i]) = y(i);
      best.primal_obj = bdot(p.C, X) + (nf > 0 ? p.cfree.dot(u) : 0.0);
      best.dual_obj = b.dot(y);
      best.gap = mt.relgap;
      best.complementarity = mt.compl_;
      best.primal_residual = mt.pinf;
      best.dual_residual = mt.dinf;
      best.iterations = iter;
    }
    return mt;
  };

  bool singular = false;
  int restarts = 0;
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    Metrics mt = record(iter);
    double mu = mt.compl_ / ntot;
    if (!std::isfinite(mt.worst()) || !std::isfinite(mu)) break;
    if (mt.worst() <= opts.tol) break;

    Eigen::VectorXd rp = b - applyA(X);
    if (nf > 0) rp -= F * u;
    BlockMat Rd = applyAT(y);
    for (int k = 0; k < nblk; ++k) Rd[k] = p.C[k] - Rd[k] - Z[k];
    Eigen::VectorXd rf = nf > 0 ? Eigen::VectorXd(p.cfree - F.transpose() * y) : Eigen::VectorXd();

    BlockMat W(nblk), Zi(nblk);
    for (int k = 0; k < nblk; ++k) {
      W[k] = nt_scaling(X[k], Z[k]);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ez(Z[k]);
      double zfloor = std::max(1e-300, 1e-14 * ez.eigenvalues().maxCoeff());
      Zi[k] = ez.eigenvectors() * ez.eigenvalues().cwiseMax(zfloor).cwiseInverse().asDiagonal() *
              ez.eigenvectors().transpose();
    }

    // Schur complement M_ij = <A_i, W A_j W>.
    Eigen::MatrixXd M(m, m);
    std::vector<BlockMat> WAW(m);
    for (int j = 0; j < m; ++j) {
      WAW[j] = bzero(sizes);
      for (int k = 0; k < nblk; ++k) WAW[j][k] = sym(W[k] * (*A[j])[k] * W[k]);
    }
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        M(i, j) = bdot(*A[i], WAW[j]);
        M(j, i) = M(i, j);
      }
    double ridge = 1e-13 * (1.0 + M.diagonal().cwiseAbs().maxCoeff());
    M.diagonal().array() += ridge;
    Eigen::LLT<Eigen::MatrixXd> lltM(M);
    if (lltM.info() != Eigen::Success) {
      M.diagonal().array() += 1e-8 * (1.0 + M.diagonal().cwiseAbs().maxCoeff());
      lltM.compute(M);
      if (lltM.info() != Eigen::Success) { singular = true; break; }
    }

    auto newton = [&](const BlockMat& Rc, BlockMat& dX, Eigen::VectorXd& dy, BlockMat& dZ,
                      Eigen::VectorXd& du) {
      BlockMat T = bzero(sizes); // Rc - W Rd W
      for (int k = 0; k < nblk; ++k) T[k] = Rc[k] - sym(W[k] * Rd[k] * W[k]);
      Eigen::VectorXd r1 = rp - applyA(T);
      if (nf == 0) {
        dy = lltM.solve(r1);
        dy += lltM.solve(r1 - M * dy); // one refinement pass against the ridge
      } else {
        Eigen::MatrixXd MiF = lltM.solve(F);
        Eigen::VectorXd Mir1 = lltM.solve(r1);
        Eigen::MatrixXd S = F.transpose() * MiF;
        du = S.ldlt().solve(F.transpose() * Mir1 - rf);
        dy = Mir1 - MiF * du;
      }
      dZ = applyAT(dy);
      for (int k = 0; k < nblk; ++k) dZ[k] = Rd[k] - dZ[k];
      dX = bzero(sizes);
      for (int k = 0; k < nblk; ++k) dX[k] = sym(Rc[k] - sym(W[k] * dZ[k] * W[k]));
      if (nf == 0) {
        // refine against the true constraint residual of the assembled step
        Eigen::VectorXd e = rp - applyA(dX);
        Eigen::VectorXd ddy = lltM.solve(e);
        dy += ddy;
        BlockMat dd = applyAT(ddy);
        for (int k = 0; k < nblk; ++k) {
          dZ[k] -= dd[k];
          dX[k] += sym(W[k] * dd[k] * W[k]);
        }
      }
    };

    // Affine (predictor) direction.
    BlockMat Rc(nblk);
    for (int k = 0; k < nblk; ++k) Rc[k] = -X[k];
    BlockMat dXa, dZa;
    Eigen::VectorXd dya, dua;
    newton(Rc, dXa, dya, dZa, dua);

    double apa = 1.0, ada = 1.0;
    for (int k = 0; k < nblk; ++k) {
      apa = std::min(apa, max_step(X[k], dXa[k]));
      ada = std::min(ada, max_step(Z[k], dZa[k]));
    }
    double mu_aff = 0.0;
    for (int k = 0; k < nblk; ++k)
      mu_aff += ((X[k] + 0.98 * apa * dXa[k]).array() * (Z[k] + 0.98 * ada * dZa[k]).array()).sum();
    mu_aff = std::max(mu_aff / ntot, 0.0);
    double sigma = std::clamp(std::pow(mu_aff / std::max(mu, 1e-300), 3.0), 1e-10, 1.0);

    // Corrector with Mehrotra second-order term.
    for (int k = 0; k < nblk; ++k)
      Rc[k] = sigma * mu * Zi[k] - X[k] - sym(dXa[k] * dZa[k] * Zi[k]);
    BlockMat dX, dZ;
    Eigen::VectorXd dy, du;
    newton(Rc, dX, dy, dZ, du);

    bool finite = std::isfinite(bnorm(dX)) && std::isfinite(bnorm(dZ)) && dy.allFinite();
    if (!finite) break;
    double ap = 1.0, ad = 1.0;
    for (int k = 0; k < nblk; ++k) {
      ap = std::min(ap, max_step(X[k], dX[k]));
      ad = std::min(ad, max_step(Z[k], dZ[k]));
    }
    // The second-order term can point far outside the cone; when it crushes
    // the step, fall back to a plain centering direction.
    if (std::min(ap, ad) < 0.2) {
      double sigma2 = std::max(sigma, 0.5);
      for (int k = 0; k < nblk; ++k) Rc[k] = sigma2 * mu * Zi[k] - X[k];
      BlockMat dX2, dZ2;
      Eigen::VectorXd dy2, du2;
      newton(Rc, dX2, dy2, dZ2, du2);
      double ap2 = 1.0, ad2 = 1.0;
      for (int k = 0; k < nblk; ++k) {
        ap2 = std::min(ap2, max_step(X[k], dX2[k]));
        ad2 = std::min(ad2, max_step(Z[k], dZ2[k]));
      }
      if (std::min(ap2, ad2) > std::min(ap, ad)) {
        dX = std::move(dX2);
        dZ = std::move(dZ2);
        dy = std::move(dy2);
        du = std::move(du2);
        ap = ap2;
        ad = ad2;
      }
    }
    double tau = mu < 1e-6 ? 0.999 : 0.98; // longer steps once nearly converged
    ap = std::min(1.0, tau * ap);
    ad = std::min(1.0, tau * ad);
    if (ap < 1e-10 || ad < 1e-10) {
      // stalled at the cone boundary: push the iterates inward and retry
      if (++restarts > 3) break;
      for (int k = 0; k < nblk; ++k) {
        double xs = 1e-9 * (1.0 + X[k].trace() / sizes[k]);
        double zs = 1e-9 * (1.0 + Z[k].trace() / sizes[k]);
        X[k] += xs * Eigen::MatrixXd::Identity(sizes[k], sizes[k]);
        Z[k] += zs * Eigen::MatrixXd::Identity(sizes[k], sizes[k]);
      }
      continue;
    }

    for (int k = 0; k < nblk; ++k) {
      X[k] = sym(X[k] + ap * dX[k]);
      Z[k] = sym(Z[k] + ad * dZ[k]);
    }
    y += ad * dy;
    if (nf > 0) u += ap * du;
  }
  record(iter);

  best.status = singular ? SdpStatus::NumericalFailure
               : (best_worst <= 1e-7 ? SdpStatus::Optimal : SdpStatus::MaxIterations);
  if (singular) best.condition_estimate = std::numeric_limits<double>::infinity();
  return best;
}

FeasibilityResult check_feasible(const SdpProblem& p, const SolveOptions& opts) {
  FeasibilityResult fr;
  int m = static_cast<int>(p.constraints.size());
  if (m == 0) {
    fr.feasible = true;
    fr.X = bzero(p.block_sizes);
    return fr;
  }
  Reduced red = reduce_constraints(p);
  if (!red.consistent) {
    fr.feasible = false;
    fr.farkas_y = red.inconsistency_y;
    double bv = 0.0;
    for (int i = 0; i < m; ++i) bv += red.inconsistency_y(i) * p.constraints[i].b;
    fr.farkas_value = bv;
    BlockMat agg = bzero(p.block_sizes);
    for (int i = 0; i < m; ++i)
      for (size_t k = 0; k < agg.size(); ++k) agg[k] += red.inconsistency_y(i) * p.constraints[i].A[k];
    for (auto& blk : agg) blk = -blk;
    fr.farkas_margin = agg.empty() ? 0.0 : -bmineig(agg); // lambda_max of sum y_i A_i
    return fr;
  }

  // Phase-I: min t  s.t.  <A_i, Y> - t tr(A_i) + f_i'u = b_i,  Y >= 0, t >= 0.
  SdpProblem p1;
  p1.block_sizes = p.block_sizes;
  p1.block_sizes.push_back(1);
  p1.C = bzero(p1.block_sizes);
  p1.C.back()(0, 0) = 1.0;
  p1.nfree = p.nfree;
  p1.cfree = p.cfree;
  for (const auto& c : p.constraints) {
    Constraint c1;
    c1.A = c.A;
    Eigen::MatrixXd t(1, 1);
    double tr = 0.0;
    for (const auto& blk : c.A) tr += blk.trace();
    t(0, 0) = -tr;
    c1.A.push_back(t);
    c1.f = c.f;
    c1.b = c.b;
    p1.constraints.push_back(c1);
  }
  SdpSolution s1 = solve(p1, opts);
  fr.detail = s1;
  double tstar = s1.X.empty() ? std::numeric_limits<double>::infinity() : s1.X.back()(0, 0);
  fr.phase1_optimum = tstar;
  if (s1.status != SdpStatus::NumericalFailure && tstar < 1e-8) {
    fr.feasible = true;
    fr.X = BlockMat(s1.X.begin(), s1.X.end() - 1);
    for (size_t k = 0; k < fr.X.size(); ++k)
      fr.X[k] -= tstar * Eigen::MatrixXd::Identity(p.block_sizes[k], p.block_sizes[k]);
    return fr;
  }
  fr.feasible = false;
  fr.farkas_y = s1.y;
  fr.farkas_value = 0.0;
  for (int i = 0; i < m; ++i) fr.farkas_value += s1.y(i) * p.constraints[i].b;
  BlockMat agg = bzero(p.block_sizes);
  for (int i = 0; i < m; ++i)
    for (size_t k = 0; k < agg.size(); ++k) agg[k] += s1.y(i) * p.constraints[i].A[k];
  for (auto& blk : agg) blk = -blk;
  fr.farkas_margin = -bmineig(agg); // = lambda_max of sum y_i A_i
  return fr;
}

Eigen::MatrixXd embed_complex(const Operator& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("embed_complex: not square");
  if (hermiticity_defect(h) > 1e-10)
    throw std::invalid_argument("embed_complex: input not Hermitian within 1e-10");
  int n = static_cast<int>(h.rows());
  Eigen::MatrixXd s(2 * n, 2 * n);
  Eigen::MatrixXd re = h.real(), im = h.imag();
  s.topLeftCorner(n, n) = re;
  s.topRightCorner(n, n) = -im;
  s.bottomLeftCorner(n, n) = im;
  s.bottomRightCorner(n, n) = re;
  return 0.5 * (s + s.transpose());
}

Operator unembed_complex(const Eigen::MatrixXd& s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0)
    throw std::invalid_argument("unembed_complex: bad shape");
  int n = static_cast<int>(s.rows()) / 2;
  Eigen::MatrixXd re = 0.5 * (s.topLeftCorner(n, n) + s.bottomRightCorner(n, n));
  Eigen::MatrixXd im = 0.5 * (s.bottomLeftCorner(n, n) - s.topRightCorner(n, n));
  Operator h(n, n);
  h.real() = re;
  h.imag() = im;
  return hermitize(h);
}

} // namespace chansteer::sdp
