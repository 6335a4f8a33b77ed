#include "sosconvex/sdp.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace sosconvex {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Blocks = std::vector<MatrixXd>;

struct FullEntry {
  int block;
  int row;
  int col;
  double value;
};

// Problem data after expanding symmetric entries and scaling each
// constraint row to unit Frobenius norm.
struct Data {
  std::vector<int> dims;
  std::vector<std::vector<FullEntry>> a;
  VectorXd b;
  VectorXd row_scale;
  Blocks c;
  int total_dim = 0;
};

void CheckEntry(const SdpEntry& e, const std::vector<int>& dims) {
  if (e.block < 0 || e.block >= static_cast<int>(dims.size()) || e.row < 0 ||
      e.col < 0 || e.row >= dims[e.block] || e.col >= dims[e.block]) {
    throw std::invalid_argument("sdp entry index out of range");
  }
  if (!std::isfinite(e.value)) {
    throw std::invalid_argument("sdp entry is not finite");
  }
}

Blocks Zeros(const std::vector<int>& dims) {
  Blocks out;
  for (int d : dims) out.push_back(MatrixXd::Zero(d, d));
  return out;
}

Blocks Identity(const std::vector<int>& dims) {
  Blocks out;
  for (int d : dims) out.push_back(MatrixXd::Identity(d, d));
  return out;
}

double Inner(const Blocks& a, const Blocks& b) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    s += (a[k].array() * b[k].array()).sum();
  }
  return s;
}

double FrobNorm(const Blocks& a) { return std::sqrt(Inner(a, a)); }

// tr(A_i M) for every constraint; M need not be symmetric.
VectorXd ApplyA(const Data& d, const Blocks& m) {
  VectorXd out(d.a.size());
  for (std::size_t i = 0; i < d.a.size(); ++i) {
    double s = 0;
    for (const FullEntry& e : d.a[i]) s += e.value * m[e.block](e.col, e.row);
    out[i] = s;
  }
  return out;
}

Blocks ApplyAT(const Data& d, const VectorXd& y) {
  Blocks out = Zeros(d.dims);
  for (std::size_t i = 0; i < d.a.size(); ++i) {
    if (y[i] == 0) continue;
    for (const FullEntry& e : d.a[i]) {
      out[e.block](e.row, e.col) += y[i] * e.value;
    }
  }
  return out;
}

Blocks Sym(const Blocks& m) {
  Blocks out;
  for (const auto& b : m) out.push_back(0.5 * (b + b.transpose()));
  return out;
}

// Largest α with x + α·dx ⪰ 0; infinite when dx is PSD.
double MaxStep(const MatrixXd& x, const MatrixXd& dx) {
  Eigen::LLT<MatrixXd> llt(x);
  if (llt.info() != Eigen::Success) return 0;
  MatrixXd l_inv_dx = llt.matrixL().solve(dx);
  MatrixXd w = llt.matrixL().solve(l_inv_dx.transpose());
  w = 0.5 * (w + w.transpose());
  double lmin;
  if (w.rows() == 1) {
    lmin = w(0, 0);
  } else {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(w, Eigen::EigenvaluesOnly);
    lmin = es.eigenvalues()[0];
  }
  return lmin >= 0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

double MaxStepBlocks(const Blocks& x, const Blocks& dx) {
  double a = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < x.size(); ++k) a = std::min(a, MaxStep(x[k], dx[k]));
  return a;
}

double MinEigen(const Blocks& x) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& b : x) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(b, Eigen::EigenvaluesOnly);
    m = std::min(m, es.eigenvalues()[0]);
  }
  return m;
}

Data Prepare(const SdpProblem& p) {
  Data d;
  d.dims = p.block_dims;
  for (int dim : d.dims) {
    if (dim <= 0) throw std::invalid_argument("sdp block dimension must be positive");
    d.total_dim += dim;
  }
  const int m = static_cast<int>(p.constraints.size());
  d.b.resize(m);
  d.row_scale.resize(m);
  d.a.resize(m);
  for (int i = 0; i < m; ++i) {
    double norm2 = 0;
    for (const SdpEntry& e : p.constraints[i].entries) {
      CheckEntry(e, d.dims);
      norm2 += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
    }
    double scale = norm2 > 0 ? std::sqrt(norm2) : 1.0;
    d.row_scale[i] = scale;
    d.b[i] = p.constraints[i].rhs / scale;
    for (const SdpEntry& e : p.constraints[i].entries) {
      if (e.value == 0) continue;
      d.a[i].push_back({e.block, e.row, e.col, e.value / scale});
      if (e.row != e.col) {
        d.a[i].push_back({e.block, e.col, e.row, e.value / scale});
      }
    }
  }
  d.c = Zeros(d.dims);
  for (const SdpEntry& e : p.objective) {
    CheckEntry(e, d.dims);
    d.c[e.block](e.row, e.col) += e.value;
    if (e.row != e.col) d.c[e.block](e.col, e.row) += e.value;
  }
  return d;
}

// Schur complement M_ij = tr(A_i X A_j Z).
MatrixXd Schur(const Data& d, const Blocks& x, const Blocks& z) {
  const int m = static_cast<int>(d.a.size());
  MatrixXd out = MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      double s = 0;
      for (const FullEntry& ea : d.a[i]) {
        const MatrixXd& xb = x[ea.block];
        const MatrixXd& zb = z[ea.block];
        for (const FullEntry& eb : d.a[j]) {
          if (eb.block != ea.block) continue;
          s += ea.value * eb.value * xb(ea.col, eb.row) * zb(eb.col, ea.row);
        }
      }
      out(i, j) = s;
      out(j, i) = s;
    }
  }
  return out;
}

struct Direction {
  Blocks dx;
  VectorXd dy;
  Blocks ds;
  double dtau = 0;
  double dkappa = 0;
};

}  // namespace

void SdpProblem::AddDenseConstraint(const std::vector<Eigen::MatrixXd>& blocks,
                                    double rhs) {
  if (blocks.size() != block_dims.size()) {
    throw std::invalid_argument("constraint has wrong number of blocks");
  }
  SdpConstraint c;
  c.rhs = rhs;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto& b = blocks[k];
    if (b.rows() != block_dims[k] || b.cols() != block_dims[k]) {
      throw std::invalid_argument("constraint block has wrong size");
    }
    for (int i = 0; i < b.rows(); ++i) {
      for (int j = i; j < b.cols(); ++j) {
        if (b(i, j) != b(j, i)) {
          throw std::invalid_argument("constraint matrix is not symmetric");
        }
        if (b(i, j) != 0) {
          c.entries.push_back({static_cast<int>(k), i, j, b(i, j)});
        }
      }
    }
  }
  constraints.push_back(std::move(c));
}

std::string ToString(SdpStatus s) {
  switch (s) {
    case SdpStatus::kFeasible:
      return "feasible";
    case SdpStatus::kInfeasible:
      return "infeasible";
    case SdpStatus::kUnbounded:
      return "unbounded";
    case SdpStatus::kMaxIterations:
      return "max-iterations";
  }
  return "unknown";
}

SdpSolution Solve(const SdpProblem& problem, const SdpOptions& options) {
  if (std::getenv("SOSCONVEX_DISABLE_SDP") != nullptr) {
    throw std::runtime_error("SDP solver disabled by SOSCONVEX_DISABLE_SDP");
  }
  const Data d = Prepare(problem);
  const int m = static_cast<int>(d.a.size());
  const double tol = options.tolerance;
  const double nu = d.total_dim + 1.0;
  const double b_norm = d.b.norm();
  const double c_norm = FrobNorm(d.c);

  Blocks x = Identity(d.dims);
  Blocks s = Identity(d.dims);
  VectorXd y = VectorXd::Zero(m);
  double tau = 1, kappa = 1;

  SdpSolution sol;
  auto finish = [&](SdpStatus status, int iter) {
    sol.status = status;
    sol.iterations = iter;
    const double t = status == SdpStatus::kFeasible ? tau : 1.0;
    sol.x.clear();
    sol.s.clear();
    for (const auto& b : x) sol.x.push_back(b / t);
    for (const auto& b : s) sol.s.push_back(b / t);
    sol.y = y.cwiseQuotient(d.row_scale) / t;
    sol.min_eigenvalue = MinEigen(sol.x);
    return sol;
  };

  for (int iter = 0; iter <= options.max_iterations; ++iter) {
    const VectorXd ax = ApplyA(d, x);
    const Blocks aty = ApplyAT(d, y);
    const double cx = Inner(d.c, x);
    const double by = d.b.dot(y);

    VectorXd rp = d.b * tau - ax;
    Blocks rd = Zeros(d.dims);
    for (std::size_t k = 0; k < rd.size(); ++k) {
      rd[k] = d.c[k] * tau - aty[k] - s[k];
    }
    const double rg = kappa - by + cx;
    const double mu = (Inner(x, s) + tau * kappa) / nu;

    // Convergence tests on the de-homogenized iterate.
    sol.primal_residual = rp.norm() / tau / (1 + b_norm);
    sol.dual_residual = FrobNorm(rd) / tau / (1 + c_norm);
    sol.primal_objective = cx / tau;
    sol.dual_objective = by / tau;
    sol.gap = std::abs(cx - by) / tau /
              (1 + std::abs(sol.primal_objective) + std::abs(sol.dual_objective));

    if (options.log) {
      char line[200];
      std::snprintf(line, sizeof(line),
                    "iter %3d  mu %.3e  gap %.3e  pres %.3e  dres %.3e  "
                    "tau %.3e  kappa %.3e\n",
                    iter, mu, sol.gap, sol.primal_residual, sol.dual_residual,
                    tau, kappa);
      *options.log << line;
    }

    if (sol.primal_residual <= tol && sol.dual_residual <= tol &&
        sol.gap <= tol) {
      return finish(SdpStatus::kFeasible, iter);
    }
    if (by > 0) {
      Blocks ray = aty;
      for (std::size_t k = 0; k < ray.size(); ++k) ray[k] += s[k];
      if (FrobNorm(ray) / by <= tol) return finish(SdpStatus::kInfeasible, iter);
    }
    if (cx < 0 && ax.norm() / -cx <= tol) {
      return finish(SdpStatus::kUnbounded, iter);
    }
    if (iter == options.max_iterations || !std::isfinite(mu)) break;

    // Factor the Schur complement once for predictor and corrector.
    Blocks z;
    for (const auto& b : s) {
      Eigen::LLT<MatrixXd> llt(b);
      z.push_back(llt.solve(MatrixXd::Identity(b.rows(), b.cols())));
    }
    MatrixXd schur = Schur(d, x, z);
    Eigen::LLT<MatrixXd> chol(schur);
    if (chol.info() != Eigen::Success) {
      double reg = 1e-14 * std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
      schur.diagonal().array() += reg;
      chol.compute(schur);
      if (chol.info() != Eigen::Success) break;
    }

    Blocks xcz;  // X C Z
    for (std::size_t k = 0; k < x.size(); ++k) xcz.push_back(x[k] * d.c[k] * z[k]);
    const VectorXd g = ApplyA(d, xcz);
    double ccc = 0;  // tr(C X C Z)
    for (std::size_t k = 0; k < x.size(); ++k) {
      ccc += (d.c[k].transpose().array() * xcz[k].array()).sum();
    }
    Blocks xrdz;
    for (std::size_t k = 0; k < x.size(); ++k) xrdz.push_back(x[k] * rd[k] * z[k]);
    const VectorXd a_xrdz = ApplyA(d, xrdz);
    double c_xrdz = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      c_xrdz += (d.c[k].transpose().array() * xrdz[k].array()).sum();
    }
    // One step of iterative refinement keeps the Schur solves accurate when
    // the matrix is badly conditioned near the optimum.
    auto solve = [&](const VectorXd& rhs) {
      VectorXd v = chol.solve(rhs);
      v += chol.solve(rhs - schur * v);
      return v;
    };
    const VectorXd q = solve(d.b + g);
    const VectorXd bmg = d.b - g;
    const double denom = bmg.dot(q) + ccc + kappa / tau;

    auto direction = [&](double sigma, const Blocks* corr_x, const Blocks* corr_s,
                         double corr_tk) {
      const double eta = 1 - sigma;
      Blocks r;
      for (std::size_t k = 0; k < x.size(); ++k) {
        MatrixXd rk = sigma * mu * z[k] - x[k];
        if (corr_x) {
          MatrixXd t = (*corr_x)[k] * (*corr_s)[k] * z[k];
          rk -= 0.5 * (t + t.transpose());
        }
        r.push_back(rk);
      }
      const double rc = sigma * mu - tau * kappa - corr_tk;
      const VectorXd h1 = eta * rp - ApplyA(d, r) + eta * a_xrdz;
      const VectorXd p = solve(h1);
      Direction dir;
      dir.dtau = (rc / tau + eta * rg + Inner(d.c, r) - eta * c_xrdz -
                  bmg.dot(p)) /
                 denom;
      dir.dy = p + dir.dtau * q;
      const Blocks atdy = ApplyAT(d, dir.dy);
      for (std::size_t k = 0; k < x.size(); ++k) {
        dir.ds.push_back(eta * rd[k] - atdy[k] + d.c[k] * dir.dtau);
      }
      Blocks xdsz;
      for (std::size_t k = 0; k < x.size(); ++k) {
        xdsz.push_back(x[k] * dir.ds[k] * z[k]);
      }
      xdsz = Sym(xdsz);
      for (std::size_t k = 0; k < x.size(); ++k) dir.dx.push_back(r[k] - xdsz[k]);
      dir.dkappa = (rc - kappa * dir.dtau) / tau;
      return dir;
    };

    auto step_length = [&](const Direction& dir) {
      double a = std::min(MaxStepBlocks(x, dir.dx), MaxStepBlocks(s, dir.ds));
      if (dir.dtau < 0) a = std::min(a, -tau / dir.dtau);
      if (dir.dkappa < 0) a = std::min(a, -kappa / dir.dkappa);
      return a;
    };

    Direction pred = direction(0.0, nullptr, nullptr, 0.0);
    const double alpha_p = std::min(1.0, step_length(pred));
    double mu_aff = 0;
    {
      Blocks xa = x, sa = s;
      for (std::size_t k = 0; k < x.size(); ++k) {
        xa[k] += alpha_p * pred.dx[k];
        sa[k] += alpha_p * pred.ds[k];
      }
      mu_aff = (Inner(xa, sa) + (tau + alpha_p * pred.dtau) *
                                    (kappa + alpha_p * pred.dkappa)) /
               nu;
    }
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);
    Direction dir = direction(sigma, &pred.dx, &pred.ds, pred.dtau * pred.dkappa);
    double alpha = std::min(1.0, 0.98 * step_length(dir));
    if (!(alpha > 1e-12)) break;

    for (std::size_t k = 0; k < x.size(); ++k) {
      x[k] += alpha * dir.dx[k];
      s[k] += alpha * dir.ds[k];
      x[k] = 0.5 * (x[k] + x[k].transpose());
      s[k] = 0.5 * (s[k] + s[k].transpose());
    }
    y += alpha * dir.dy;
    tau += alpha * dir.dtau;
    kappa += alpha * dir.dkappa;
    sol.iterations = iter + 1;
  }
  if (sol.primal_residual <= options.stall_tolerance &&
      sol.dual_residual <= options.stall_tolerance &&
      sol.gap <= options.stall_tolerance) {
    sol.reduced_accuracy = true;
    return finish(SdpStatus::kFeasible, sol.iterations);
  }
  return finish(SdpStatus::kMaxIterations, sol.iterations);
}

}  // namespace sosconvex
