#include "chansteer/operator.hpp"

#include <cmath>

namespace chansteer {

namespace {

std::vector<int> decompose(int idx, const DimSpec& dims) {
  std::vector<int> digits(dims.size());
  for (int k = dims.size() - 1; k >= 0; --k) {
    digits[k] = idx % dims[k];
    idx /= dims[k];
  }
  return digits;
}

int compose(const std::vector<int>& digits, const std::vector<int>& dims) {
  int idx = 0;
  for (size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
  return idx;
}

void require_square_dims(const Operator& m, const DimSpec& dims) {
  if (m.rows() != m.cols()) throw std::invalid_argument("operator must be square");
  if (dims.total() != m.rows()) throw std::invalid_argument("DimSpec does not match matrix side");
}

} // namespace

Operator make_operator(int rows, int cols, const std::vector<cxd>& entries) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("Operator: non-positive shape");
  if (static_cast<int>(entries.size()) != rows * cols)
    throw std::invalid_argument("Operator: entry count does not match shape");
  Operator m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = entries[i * cols + j];
  require_finite(m, "Operator");
  return m;
}

void require_finite(const Operator& m, const std::string& what) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        throw std::invalid_argument(what + ": non-finite entry");
}

Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Operator partial_trace(const Operator& m, const DimSpec& dims, const std::vector<int>& keep) {
  require_square_dims(m, dims);
  std::vector<bool> kept(dims.size(), false);
  for (int k : keep) {
    if (k < 0 || k >= dims.size()) throw std::invalid_argument("partial_trace: bad subsystem index");
    kept[k] = true;
  }
  std::vector<int> keep_dims, trace_dims, keep_idx, trace_idx;
  for (int k = 0; k < dims.size(); ++k) {
    if (kept[k]) { keep_dims.push_back(dims[k]); keep_idx.push_back(k); }
    else { trace_dims.push_back(dims[k]); trace_idx.push_back(k); }
  }
  int dk = 1, dt = 1;
  for (int d : keep_dims) dk *= d;
  for (int d : trace_dims) dt *= d;

  Operator out = Operator::Zero(dk, dk);
  std::vector<int> row(dims.size()), col(dims.size());
  for (int r = 0; r < dk; ++r) {
    auto rk = decompose(r, DimSpec(keep_dims.empty() ? std::vector<int>{1} : keep_dims));
    for (int c = 0; c < dk; ++c) {
      auto ck = decompose(c, DimSpec(keep_dims.empty() ? std::vector<int>{1} : keep_dims));
      cxd acc = 0.0;
      for (int t = 0; t < dt; ++t) {
        auto td = decompose(t, DimSpec(trace_dims.empty() ? std::vector<int>{1} : trace_dims));
        for (size_t k = 0; k < keep_idx.size(); ++k) { row[keep_idx[k]] = rk[k]; col[keep_idx[k]] = ck[k]; }
        for (size_t k = 0; k < trace_idx.size(); ++k) { row[trace_idx[k]] = td[k]; col[trace_idx[k]] = td[k]; }
        acc += m(compose(row, dims.dims()), compose(col, dims.dims()));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

Operator partial_transpose(const Operator& m, const DimSpec& dims, int subsystem) {
  require_square_dims(m, dims);
  if (subsystem < 0 || subsystem >= dims.size())
    throw std::invalid_argument("partial_transpose: bad subsystem index");
  int n = dims.total();
  Operator out(n, n);
  for (int r = 0; r < n; ++r) {
    auto rd = decompose(r, dims);
    for (int c = 0; c < n; ++c) {
      auto cd = decompose(c, dims);
      auto rs = rd, cs = cd;
      std::swap(rs[subsystem], cs[subsystem]);
      out(compose(rs, dims.dims()), compose(cs, dims.dims())) = m(r, c);
    }
  }
  return out;
}

Operator permute_systems(const Operator& m, const DimSpec& dims, const std::vector<int>& perm) {
  require_square_dims(m, dims);
  if (perm.size() != static_cast<size_t>(dims.size()))
    throw std::invalid_argument("permute_systems: permutation length mismatch");
  std::vector<int> new_dims(perm.size());
  for (size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims[perm[k]];
  DimSpec nd(new_dims);
  int n = dims.total();
  Operator out(n, n);
  for (int r = 0; r < n; ++r) {
    auto rd = decompose(r, dims);
    for (int c = 0; c < n; ++c) {
      auto cd = decompose(c, dims);
      std::vector<int> rn(perm.size()), cn(perm.size());
      for (size_t k = 0; k < perm.size(); ++k) { rn[k] = rd[perm[k]]; cn[k] = cd[perm[k]]; }
      out(compose(rn, nd.dims()), compose(cn, nd.dims())) = m(r, c);
    }
  }
  return out;
}

double hermiticity_defect(const Operator& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

EigResult eig_hermitian(const Operator& m) {
  if (hermiticity_defect(m) > 1e-10)
    throw std::invalid_argument("eig_hermitian: input not Hermitian within 1e-10");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver failed");
  EigResult r;
  r.values = es.eigenvalues();
  r.vectors = es.eigenvectors();
  return r;
}

bool is_psd(const Operator& m, double tol) {
  if (hermiticity_defect(m) > tol && hermiticity_defect(m) > 1e-10)
    throw std::invalid_argument("is_psd: input not Hermitian");
  return min_eigenvalue(hermitize(m)) >= -tol;
}

double min_eigenvalue(const Operator& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitize(m));
  return es.eigenvalues().minCoeff();
}

Operator ket(int d, int i) {
  Operator v = Operator::Zero(d, 1);
  v(i, 0) = 1.0;
  return v;
}

Operator max_entangled(int d) {
  Operator psi = Operator::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) psi(i * d + i, j * d + j) = 1.0 / d;
  return psi;
}

Operator pauli_x() { Operator m(2, 2); m << 0, 1, 1, 0; return m; }
Operator pauli_y() { Operator m(2, 2); m << 0, cxd(0, -1), cxd(0, 1), 0; return m; }
Operator pauli_z() { Operator m(2, 2); m << 1, 0, 0, -1; return m; }

} // namespace chansteer
