#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace chansteer {

using cxd = std::complex<double>;
using Operator = Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealVec = Eigen::VectorXd;

/// Ordered subsystem dimensions annotating one side of a matrix.
class DimSpec {
public:
  DimSpec() = default;
  DimSpec(std::initializer_list<int> dims) : dims_(dims) { check(); }
  explicit DimSpec(std::vector<int> dims) : dims_(std::move(dims)) { check(); }

  int total() const {
    int p = 1;
    for (int d : dims_) p *= d;
    return p;
  }
  int size() const { return static_cast<int>(dims_.size()); }
  int operator[](int i) const { return dims_.at(i); }
  const std::vector<int>& dims() const { return dims_; }

private:
  void check() const {
    for (int d : dims_)
      if (d < 1) throw std::invalid_argument("DimSpec: dimensions must be positive");
  }
  std::vector<int> dims_;
};

struct EigResult {
  RealVec values;   // ascending
  Operator vectors; // columns
};

// Construction-time validation: rejects NaN/Inf entries.
Operator make_operator(int rows, int cols, const std::vector<cxd>& row_major_entries);
void require_finite(const Operator& m, const std::string& what);

Operator kron(const Operator& a, const Operator& b);

// Trace over the subsystems not listed in `keep` (indices into dims, ascending output order).
Operator partial_trace(const Operator& m, const DimSpec& dims, const std::vector<int>& keep);

// Transpose on a single tensor factor.
Operator partial_transpose(const Operator& m, const DimSpec& dims, int subsystem);

// Reorder tensor factors; perm[k] names the old subsystem placed at new position k.
Operator permute_systems(const Operator& m, const DimSpec& dims, const std::vector<int>& perm);

// Hermitian eigendecomposition. Throws if max-abs deviation from Hermiticity
// exceeds 1e-10; callers pre-symmetrize with hermitize() when rounding has
// accumulated.
EigResult eig_hermitian(const Operator& m);

bool is_psd(const Operator& m, double tol);

double min_eigenvalue(const Operator& m);

inline Operator hermitize(const Operator& m) { return 0.5 * (m + m.adjoint()); }

inline Operator identity(int d) { return Operator::Identity(d, d); }

inline double fdist(const Operator& a, const Operator& b) { return (a - b).norm(); }

// Computational basis column vector.
Operator ket(int d, int i);

// Unit-trace maximally entangled state (1/d) sum_ij |ii><jj| on d x d.
Operator max_entangled(int d);

Operator pauli_x();
Operator pauli_y();
Operator pauli_z();

double hermiticity_defect(const Operator& m);

} // namespace chansteer
