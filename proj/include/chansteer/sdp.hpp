#pragma once

#include "chansteer/operator.hpp"

#include <Eigen/Dense>
#include <vector>

namespace chansteer::sdp {

// Block-diagonal real symmetric matrix, one dense block per cone block.
using BlockMat = std::vector<Eigen::MatrixXd>;

double bdot(const BlockMat& a, const BlockMat& b);
BlockMat bzero(const std::vector<int>& sizes);
BlockMat bidentity(const std::vector<int>& sizes, double scale = 1.0);
double bnorm(const BlockMat& a);
double bmineig(const BlockMat& a);

struct Constraint {
  BlockMat A;        // per-block symmetric coefficient
  Eigen::VectorXd f; // coefficients of the free scalar variables (may be empty)
  double b = 0.0;
};

// min <C,X> + cfree'u  s.t.  <A_i,X> + f_i'u = b_i,  X >= 0 (blockwise), u free.
struct SdpProblem {
  std::vector<int> block_sizes;
  BlockMat C;
  Eigen::VectorXd cfree; // size nfree
  std::vector<Constraint> constraints;
  int nfree = 0;

  void validate() const;
};

enum class SdpStatus { Optimal, MaxIterations, NumericalFailure };

struct SdpSolution {
  SdpStatus status = SdpStatus::NumericalFailure;
  BlockMat X;
  Eigen::VectorXd u; // free variables
  Eigen::VectorXd y; // multipliers, indexed by the ORIGINAL constraint list
  BlockMat Z;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double gap = 0.0;             // relative duality gap
  double complementarity = 0.0; // <X,Z>
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  double condition_estimate = 0.0;
};

struct FeasibilityResult {
  bool feasible = false;
  BlockMat X;                 // feasible witness
  Eigen::VectorXd farkas_y;   // infeasibility certificate
  double farkas_value = 0.0;  // sum_i y_i b_i (positive for a valid certificate)
  double farkas_margin = 0.0; // max eigenvalue of sum_i y_i A_i (<= ~0 for a valid certificate)
  double phase1_optimum = 0.0;
  SdpSolution detail;
};

// Process-wide default solve target, overridable (e.g. by the CLI's --tol).
inline double& solver_tolerance() {
  static double t = 1e-9;
  return t;
}

struct SolveOptions {
  int max_iterations = 200;
  double tol = solver_tolerance(); // target for gap and residuals (relative)
};

SdpSolution solve(const SdpProblem& p, const SolveOptions& opts = {});

// Pure feasibility via a phase-I shift: min t s.t. <A_i, Y> - t tr(A_i) = b_i,
// Y >= 0, t >= 0; feasible iff the optimum is below threshold.
FeasibilityResult check_feasible(const SdpProblem& p, const SolveOptions& opts = {});

// Hermitian n x n -> real symmetric 2n x 2n [[Re, -Im], [Im, Re]].
// Eigenvalues double in multiplicity; PSD iff input PSD.
Eigen::MatrixXd embed_complex(const Operator& h);

// Project a real symmetric 2n x 2n back to the Hermitian n x n it embeds.
Operator unembed_complex(const Eigen::MatrixXd& s);

} // namespace chansteer::sdp
