#include "piecenet/optimizer.hpp"

#include <cblas.h>
#include <lapacke.h>

#include <cmath>

extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace piecenet {

void set_dense_solver_threads(int threads) {
  if (openblas_set_num_threads) openblas_set_num_threads(threads);
}

namespace {

// In-place lower Cholesky of a row-major SPD matrix (lower triangle read,
// lower triangle of L written). Returns false on a non-positive pivot.
bool cholesky_lower(RowMatrix& h) {
  const int n = static_cast<int>(h.rows());
  for (int j = 0; j < n; ++j) {
    double d = h(j, j) - h.row(j).head(j).squaredNorm();
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    h(j, j) = ljj;
    for (int i = j + 1; i < n; ++i)
      h(i, j) = (h(i, j) - h.row(i).head(j).dot(h.row(j).head(j))) / ljj;
  }
  return true;
}

Vector cholesky_solve(const RowMatrix& l, const Vector& rhs) {
  const int n = static_cast<int>(l.rows());
  Vector y(n);
  for (int i = 0; i < n; ++i) y[i] = (rhs[i] - l.row(i).head(i).dot(y.head(i))) / l(i, i);
  Vector x(n);
  for (int i = n - 1; i >= 0; --i) {
    double acc = y[i];
    for (int k = i + 1; k < n; ++k) acc -= l(k, i) * x[k];
    x[i] = acc / l(i, i);
  }
  return x;
}

// Gram matrix (lower triangle) of J: J^T J when trans, else J J^T.
RowMatrix gram(const RowMatrix& jac, bool trans) {
  const int m = static_cast<int>(jac.rows());
  const int n = static_cast<int>(jac.cols());
  const int dim = trans ? n : m;
  RowMatrix g = RowMatrix::Zero(dim, dim);
  cblas_dsyrk(CblasRowMajor, CblasLower, trans ? CblasTrans : CblasNoTrans, dim, trans ? m : n,
              1.0, jac.data(), n, 0.0, g.data(), dim);
  return g;
}

}  // namespace

Vector lm_step_cholesky(const RowMatrix& jac, const Vector& r, double mu) {
  if (!(mu > 0.0)) throw Error("lm_step_cholesky: damping must be positive");
  if (jac.rows() != r.size()) throw DimensionError("lm step: residual length mismatch");
  const int m = static_cast<int>(jac.rows());
  const int n = static_cast<int>(jac.cols());
  if (m >= n) {
    RowMatrix h = gram(jac, true);
    h.diagonal().array() += mu;
    if (!cholesky_lower(h)) throw FactorizationError("normal equations not positive definite");
    return cholesky_solve(h, jac.transpose() * r);
  }
  RowMatrix g = gram(jac, false);
  g.diagonal().array() += mu;
  if (!cholesky_lower(g)) throw FactorizationError("normal equations not positive definite");
  return jac.transpose() * cholesky_solve(g, r);
}

Vector lm_step_qr(const RowMatrix& jac, const Vector& r, double mu) {
  if (!(mu > 0.0)) throw Error("lm_step_qr: damping must be positive");
  if (jac.rows() != r.size()) throw DimensionError("lm step: residual length mismatch");
  const int m = static_cast<int>(jac.rows());
  const int n = static_cast<int>(jac.cols());
  // column-major stacked system for dgels
  Matrix stacked = Matrix::Zero(m + n, n);
  stacked.topRows(m) = jac;
  stacked.bottomRows(n).diagonal().array() = std::sqrt(mu);
  Vector rhs = Vector::Zero(m + n);
  rhs.head(m) = r;
  const lapack_int info =
      LAPACKE_dgels(LAPACK_COL_MAJOR, 'N', m + n, n, 1, stacked.data(), m + n, rhs.data(), m + n);
  if (info != 0) throw Error("lm_step_qr: dgels failed with info " + std::to_string(info));
  return rhs.head(n);
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::Tolerance: return "tolerance";
    case Termination::MaxIterations: return "max-iterations";
    case Termination::Stall: return "stall";
  }
  return "unknown";
}

TrainingTrace train(const SystemBuilder& builder, const Vector& theta0, const LMConfig& config) {
  constexpr int kMaxRejects = 20;
  constexpr double kMuFloor = 1e-30;

  TrainingTrace trace;
  trace.theta = theta0;

  ResidualSystem sys = builder.full(trace.theta);
  double loss = sys.loss();
  if (!std::isfinite(loss)) throw Error("train: non-finite loss at the initial parameters");
  trace.final_loss = loss;
  if (loss <= config.tol) {
    trace.termination = Termination::Tolerance;
    return trace;
  }

  double mu = config.mu0;
  int rejects = 0;
  trace.termination = Termination::MaxIterations;
  while (trace.iterations < config.max_iters) {
    Vector step;
    bool solver_failed = false;
    try {
      // minimize ||J dtheta + r||^2 + mu ||dtheta||^2: pass the negated residual
      step = config.solver == LMConfig::Solver::Cholesky ? lm_step_cholesky(sys.jac, -sys.r, mu)
                                                         : lm_step_qr(sys.jac, -sys.r, mu);
    } catch (const FactorizationError&) {
      solver_failed = true;
    }

    double candidate_loss = std::numeric_limits<double>::infinity();
    Vector candidate;
    if (!solver_failed) {
      candidate = trace.theta + step;
      candidate_loss = builder.loss_only(candidate);
    }

    StepRecord rec;
    rec.iteration = trace.iterations + 1;
    rec.loss = candidate_loss;
    rec.mu = mu;
    rec.step_norm = solver_failed ? 0.0 : step.norm();

    if (candidate_loss < loss) {
      rec.accepted = true;
      trace.steps.push_back(rec);
      trace.theta = std::move(candidate);
      loss = candidate_loss;
      trace.final_loss = loss;
      ++trace.iterations;
      rejects = 0;
      mu = std::max(mu / config.nu, kMuFloor);
      if (loss <= config.tol) {
        trace.termination = Termination::Tolerance;
        return trace;
      }
      if (trace.iterations >= config.max_iters) return trace;
      sys = builder.full(trace.theta);
    } else {
      rec.accepted = false;
      trace.steps.push_back(rec);
      mu *= config.nu;
      if (++rejects >= kMaxRejects) {
        trace.termination = Termination::Stall;
        return trace;
      }
    }
  }
  return trace;
}

}  // namespace piecenet
