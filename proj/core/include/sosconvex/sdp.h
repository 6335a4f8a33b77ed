#pragma once

#include <Eigen/Dense>
#include <ostream>
#include <string>
#include <vector>

namespace sosconvex {

/// One entry of a symmetric coefficient matrix. Off-diagonal entries stand
/// for both (row, col) and (col, row).
struct SdpEntry {
  int block = 0;
  int row = 0;
  int col = 0;
  double value = 0;
};

/// ⟨A, X⟩ = rhs, with A given by its upper-triangular entries.
struct SdpConstraint {
  std::vector<SdpEntry> entries;
  double rhs = 0;
};

/// minimize ⟨C, X⟩ subject to ⟨A_i, X⟩ = b_i, X block-diagonal and ⪰ 0.
/// Nonnegative scalar variables are 1×1 blocks.
struct SdpProblem {
  std::vector<int> block_dims;
  std::vector<SdpConstraint> constraints;
  std::vector<SdpEntry> objective;

  /// Adds a constraint from dense per-block matrices; throws if any block is
  /// not symmetric or has the wrong size.
  void AddDenseConstraint(const std::vector<Eigen::MatrixXd>& blocks,
                          double rhs);
};

enum class SdpStatus { kFeasible, kInfeasible, kUnbounded, kMaxIterations };

std::string ToString(SdpStatus s);

struct SdpOptions {
  double tolerance = 1e-8;
  int max_iterations = 200;
  /// When progress stalls, an iterate whose residuals and gap are all below
  /// this bound is still reported as kFeasible, flagged reduced_accuracy.
  double stall_tolerance = 1e-6;
  /// One line per iteration when set.
  std::ostream* log = nullptr;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::kMaxIterations;
  /// For kFeasible the primal/dual optimal pair. For kInfeasible, y is a
  /// ray with bᵀy > 0 and -A*(y) ⪰ 0 (approximately); for kUnbounded, X is a
  /// ray with A(X) = 0 and ⟨C, X⟩ < 0.
  std::vector<Eigen::MatrixXd> x;
  Eigen::VectorXd y;
  std::vector<Eigen::MatrixXd> s;
  double primal_objective = 0;
  double dual_objective = 0;
  double primal_residual = 0;
  double dual_residual = 0;
  double gap = 0;
  double min_eigenvalue = 0;
  int iterations = 0;
  bool reduced_accuracy = false;
};

/// Homogeneous self-dual interior-point method with HKM search direction and
/// Mehrotra predictor-corrector steps.
/// Throws std::runtime_error when the SOSCONVEX_DISABLE_SDP environment
/// variable is set, which lets callers prove a path is purely exact.
SdpSolution Solve(const SdpProblem& problem, const SdpOptions& options = {});

}  // namespace sosconvex
