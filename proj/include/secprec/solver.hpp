#pragma once

/// Small dense convex engines:
///  - solve_min_norm: log-barrier interior-point method for
///    min ||x||^2 s.t. G x <= h, E x = f, ||C x|| <= r (one optional cone);
///  - dual_gradient_projection: projected gradient ascent on the Lagrange
///    dual of min ||x||^2 s.t. Q x - b <= 0, with Armijo backtracking;
///  - scp_minimize_with_norm_floor: sequential convex programming for the
///    non-convex norm-floor constraint ||x||^2 >= P0, plus a deterministic
///    null-space feasibility initializer.

#include "secprec/geometry.hpp"

namespace secprec {

enum class SolveStatus { Optimal, Infeasible, MaxIterations };

/// Fixed-objective program: minimize ||x||^2 over the listed constraints.
struct MinNormProgram {
  int dim = 0;
  RMat G;  // inequality rows, G x <= h
  RVec h;
  RMat E;  // equality rows, E x = f
  RVec f;
  bool has_cone = false;
  RMat C;              // 2 x dim
  double radius = 0.0;  // ||C x|| <= radius

  explicit MinNormProgram(int d)
      : dim(d), G(0, d), h(0), E(0, d), f(0), C(0, d) {}

  void add_inequality(const RVec& row, double rhs);
  /// Adds row.dot(x) >= offset, i.e. the ConstraintRow convention.
  void add_ge_inequality(const ConstraintRow& cr) {
    add_inequality(-cr.row, -cr.offset);
  }
  void add_equality(const RVec& row, double rhs);
  void set_cone(const RMat& c, double r);
};

struct SolverResult {
  RVec x;
  double objective = 0.0;
  SolveStatus status = SolveStatus::Infeasible;
  double kkt_residual = 0.0;
  int iterations = 0;
};

struct SolverTolerances {
  double duality_gap = 1e-8;   // barrier stop: m/t below this
  double feasibility = 1e-7;   // absolute constraint violation
  double kkt = 1e-6;
  int max_outer = 200;
  int max_newton = 60;
};

SolverResult solve_min_norm(const MinNormProgram& p, double tol = 1e-8);
SolverResult solve_min_norm(const MinNormProgram& p, const SolverTolerances& tols);

/// Dual function g(lambda) = -1/4 lambda^T QQ^T lambda - lambda^T b,
/// evaluated with QQ^T precomputed.
double dual_objective(const RMat& qqt, const RVec& b, const RVec& lambda);
RVec dual_gradient(const RMat& qqt, const RVec& b, const RVec& lambda);

/// Armijo backtracking on the projected dual step (t = 1, delta = 0.1,
/// mu = 0.5). Returns 0 when the step underflows below 1e-16.
double backtracking_line_search(const RMat& qqt, const RVec& b,
                                const RVec& lambda, const RVec& grad);

struct DualGpOptions {
  double eps = 1e-8;
  double feas_tol = 1e-7;   // primal violation of the recovered x
  double comp_tol = 1e-6;   // complementary slackness of (lambda, x)
  int max_iter = 5000;
  double lambda_guard = 1e8;  // ||lambda|| beyond this certifies infeasibility
};

/// Solves min ||x||^2 s.t. Q x - b <= 0 via its dual; recovers
/// x* = -1/2 Q^T lambda*. The recovered x is dual-stationary with lambda >= 0
/// by construction, so convergence is declared when the dual gain falls below
/// eps while x is primal-feasible and complementary slackness holds.
SolverResult dual_gradient_projection(const RMat& q, const RVec& b,
                                      const RVec& lambda0,
                                      const DualGpOptions& opts = {});

/// SCP for min ||x||^2 s.t. base constraints and ||x||^2 >= p0, starting
/// from a point feasible for everything including the floor. The floor is
/// linearized at each iterate, so every iterate stays feasible and the
/// objective is non-increasing.
struct ScpResult {
  SolverResult solution;
  std::vector<double> objective_trace;  // per accepted iterate
};

ScpResult scp_minimize_with_norm_floor(const MinNormProgram& base, double p0,
                                       const RVec& x0, double eps = 1e-6,
                                       int max_iter = 100);

/// Deterministic feasible start for the norm-floor program: solve the base
/// program, then walk along the common null space of all constraint rows
/// until the floor is met. Throws if no such direction exists.
RVec feasible_init_norm_floor(const MinNormProgram& base, double p0);

}  // namespace secprec
