#pragma once

#include <functional>

#include "piecenet/residual.hpp"

namespace piecenet {

class FactorizationError : public Error {
 public:
  using Error::Error;
};

struct LMConfig {
  enum class Solver { Cholesky, QR };
  double mu0 = 1e-3;
  double nu = 3.0;
  int max_iters = 1000;
  double tol = 1e-15;
  Solver solver = Solver::QR;
};

enum class Termination { Tolerance, MaxIterations, Stall };

struct StepRecord {
  int iteration = 0;    // accepted-step counter at the time of the attempt
  double loss = 0.0;    // loss of the attempted parameters
  double mu = 0.0;
  double step_norm = 0.0;
  bool accepted = false;
};

struct TrainingTrace {
  std::vector<StepRecord> steps;
  Vector theta;
  double final_loss = 0.0;
  int iterations = 0;
  Termination termination = Termination::MaxIterations;
};

// Solves (J^T J + mu I) dtheta = J^T r through a symmetric positive-definite
// factorization. For wide systems (rows < cols) the equivalent small Gram
// system (J J^T + mu I) y = r, dtheta = J^T y is factored instead.
// Throws FactorizationError when round-off makes the Gram matrix indefinite.
Vector lm_step_cholesky(const RowMatrix& jac, const Vector& r, double mu);

// Least-squares solution of the stacked system [J; sqrt(mu) I] dtheta = [r; 0],
// mathematically equal to the Cholesky step but stable for tiny mu.
Vector lm_step_qr(const RowMatrix& jac, const Vector& r, double mu);

// Residual system access used by the trainer: `full` assembles residual and
// Jacobian, `loss_only` evaluates the loss of a tentative step.
struct SystemBuilder {
  std::function<ResidualSystem(const Vector&)> full;
  std::function<double(const Vector&)> loss_only;
};

// Levenberg-Marquardt iteration: accepted steps shrink mu by nu, rejected
// ones grow it and retry (20 consecutive rejects terminate as Stall). The
// system is re-assembled once per accepted step and reused across rejects.
TrainingTrace train(const SystemBuilder& builder, const Vector& theta0, const LMConfig& config);

// Caps the number of threads the dense solver backend may use (no-op when
// the linked BLAS has no such control). Used to keep concurrent trials from
// oversubscribing the machine.
void set_dense_solver_threads(int threads);

const char* termination_name(Termination t);

}  // namespace piecenet
