#include "secprec/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace secprec {

void MinNormProgram::add_inequality(const RVec& row, double rhs) {
  G.conservativeResize(G.rows() + 1, Eigen::NoChange);
  G.row(G.rows() - 1) = row.transpose();
  h.conservativeResize(h.size() + 1);
  h[h.size() - 1] = rhs;
}

void MinNormProgram::add_equality(const RVec& row, double rhs) {
  E.conservativeResize(E.rows() + 1, Eigen::NoChange);
  E.row(E.rows() - 1) = row.transpose();
  f.conservativeResize(f.size() + 1);
  f[f.size() - 1] = rhs;
}

void MinNormProgram::set_cone(const RMat& c, double r) {
  if (r < 0.0) throw std::invalid_argument("set_cone: negative radius");
  if (c.rows() != 2 || c.cols() != dim)
    throw std::invalid_argument("set_cone: C must be 2 x dim");
  C = c;
  radius = r;
  has_cone = true;
}

namespace {

// Newton step for an equality-constrained centering problem. Returns the
// multiplier block alongside the step.
struct KktSolve {
  RVec dx;
  RVec w;
};

KktSolve solve_kkt(const RMat& hess, const RVec& grad, const RMat& eq,
                   const RVec& eq_resid) {
  const Eigen::Index d = hess.rows();
  const Eigen::Index e = eq.rows();
  RMat kkt = RMat::Zero(d + e, d + e);
  kkt.topLeftCorner(d, d) = hess;
  if (e > 0) {
    kkt.topRightCorner(d, e) = eq.transpose();
    kkt.bottomLeftCorner(e, d) = eq;
  }
  RVec rhs(d + e);
  rhs.head(d) = -grad;
  rhs.tail(e) = eq_resid;
  RVec sol = kkt.fullPivLu().solve(rhs);
  return {sol.head(d), sol.tail(e)};
}

double max_inequality_violation(const MinNormProgram& p, const RVec& x) {
  double v = 0.0;
  if (p.G.rows() > 0) v = (p.G * x - p.h).maxCoeff();
  if (p.has_cone)
    v = std::max(v, (p.C * x).squaredNorm() - p.radius * p.radius);
  return v;
}

// Minimum-norm point of the equality set alone.
RVec equality_least_norm(const MinNormProgram& p) {
  if (p.E.rows() == 0) return RVec::Zero(p.dim);
  return p.E.completeOrthogonalDecomposition().solve(p.f);
}

// Barrier value, gradient, and Hessian for the phase-2 centering objective
// t*||x||^2 - sum log(slack_i) - log(cone slack).
struct BarrierEval {
  bool interior = false;
  double value = 0.0;
  RVec grad;
  RMat hess;
};

BarrierEval eval_barrier(const MinNormProgram& p, const RVec& x, double t,
                         bool with_derivatives) {
  BarrierEval ev;
  ev.value = t * x.squaredNorm();
  if (with_derivatives) {
    ev.grad = 2.0 * t * x;
    ev.hess = 2.0 * t * RMat::Identity(p.dim, p.dim);
  }
  for (Eigen::Index i = 0; i < p.G.rows(); ++i) {
    const double slack = p.h[i] - p.G.row(i).dot(x);
    if (slack <= 0.0) return ev;
    ev.value -= std::log(slack);
    if (with_derivatives) {
      const RVec row = p.G.row(i).transpose();
      ev.grad += row / slack;
      ev.hess += row * row.transpose() / (slack * slack);
    }
  }
  if (p.has_cone) {
    const RVec u = p.C * x;
    const double slack = p.radius * p.radius - u.squaredNorm();
    if (slack <= 0.0) return ev;
    ev.value -= std::log(slack);
    if (with_derivatives) {
      const RVec q = 2.0 * p.C.transpose() * u;  // -grad of slack
      ev.grad += q / slack;
      ev.hess += q * q.transpose() / (slack * slack) +
                 2.0 * p.C.transpose() * p.C / slack;
    }
  }
  ev.interior = true;
  return ev;
}

// Centers t*||x||^2 + barrier over Ex = f by damped Newton. Equalities are
// eliminated up front: x is projected onto the manifold and every step is
// taken inside ker(E), so the Hessian solve can never push the iterate off
// it no matter how ill-conditioned the barrier becomes near the boundary.
// Returns the final equality multipliers (already on the t-scaled problem).
int center(const MinNormProgram& p, double t, RVec& x, RVec& w_out,
           int max_newton) {
  const Eigen::Index e = p.E.rows();
  RMat z = RMat::Identity(p.dim, p.dim);
  if (e > 0) {
    const auto cod = p.E.completeOrthogonalDecomposition();
    x += cod.solve(p.f - p.E * x);
    Eigen::FullPivLU<RMat> lu(p.E);
    lu.setThreshold(1e-12);
    const RMat ker = lu.kernel();
    if (ker.cols() == 1 && ker.col(0).isZero()) {
      // Full column rank: the manifold is a single point.
      w_out = p.E.transpose()
                  .completeOrthogonalDecomposition()
                  .solve(-eval_barrier(p, x, t, true).grad);
      return 0;
    }
    const Eigen::HouseholderQR<RMat> qr(ker);
    z = RMat(qr.householderQ()) .leftCols(ker.cols());
  }

  int iters = 0;
  BarrierEval ev;
  for (; iters < max_newton; ++iters) {
    ev = eval_barrier(p, x, t, true);
    const RVec gz = z.transpose() * ev.grad;
    const RMat hz = z.transpose() * ev.hess * z;
    const RVec dz = hz.fullPivLu().solve(-gz);
    const RVec dx = z * dz;
    const double decrement = dz.dot(hz * dz);
    // The stationarity residual reported to callers is the centering
    // gradient over t; a loose decrement here caps how small it can get.
    if (decrement / 2.0 <= 1e-18) break;
    // Backtrack into the interior, then Armijo.
    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 80; ++ls) {
      const BarrierEval trial = eval_barrier(p, x + alpha * dx, t, false);
      if (trial.interior &&
          trial.value <= ev.value + 0.01 * alpha * ev.grad.dot(dx)) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;  // progress below rounding
    x += alpha * dx;
  }
  if (e > 0) {
    ev = eval_barrier(p, x, t, true);
    w_out = p.E.transpose().completeOrthogonalDecomposition().solve(-ev.grad);
  }
  return iters;
}

// Phase-1: minimize s over (x, s) with slacks relaxed by s, Ex = f kept
// exact. Succeeds as soon as s dips below -1e-7; declares infeasibility when
// the barrier converges with s above the feasibility tolerance.
struct Phase1Result {
  bool feasible = false;
  RVec x;
  double best_s = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

Phase1Result phase1(const MinNormProgram& p, const SolverTolerances& tols) {
  const Eigen::Index d = p.dim;
  const Eigen::Index e = p.E.rows();
  const int m = static_cast<int>(p.G.rows()) + (p.has_cone ? 1 : 0);

  Phase1Result res;
  res.x = equality_least_norm(p);
  if (e > 0 && (p.E * res.x - p.f).norm() > tols.feasibility * (1.0 + p.f.norm()))
    return res;  // inconsistent equalities
  if (m == 0) {
    res.feasible = true;
    res.best_s = -1.0;
    return res;
  }
  double s = std::max(0.0, max_inequality_violation(p, res.x)) + 1.0;
  res.best_s = s;

  // Slack of relaxed constraint i at (x, s); all must stay positive.
  auto slacks = [&](const RVec& x, double sv) {
    RVec out(m);
    for (Eigen::Index i = 0; i < p.G.rows(); ++i)
      out[i] = sv + p.h[i] - p.G.row(i).dot(x);
    if (p.has_cone)
      out[m - 1] = sv + p.radius * p.radius - (p.C * x).squaredNorm();
    return out;
  };
  auto value = [&](const RVec& x, double sv, double t) {
    RVec sl = slacks(x, sv);
    if (sl.minCoeff() <= 0.0) return std::numeric_limits<double>::infinity();
    return t * sv - sl.array().log().sum();
  };

  RMat eq = RMat::Zero(e, d + 1);
  if (e > 0) eq.leftCols(d) = p.E;

  double t = 1.0;
  RVec y(d + 1);
  y.head(d) = res.x;
  y[d] = s;
  for (int outer = 0; outer < tols.max_outer; ++outer) {
    for (int it = 0; it < tols.max_newton; ++it) {
      ++res.iterations;
      const RVec xc = y.head(d);
      const double sc = y[d];
      if (sc < res.best_s) {
        res.best_s = sc;
        res.x = xc;
      }
      if (sc <= -1e-7) {
        res.feasible = true;
        return res;
      }
      RVec grad = RVec::Zero(d + 1);
      RMat hess = 1e-10 * RMat::Identity(d + 1, d + 1);
      grad[d] = t;
      RVec sl = slacks(xc, sc);
      for (int i = 0; i < m; ++i) {
        RVec q(d + 1);  // gradient of slack i
        if (i < p.G.rows()) {
          q.head(d) = -p.G.row(i).transpose();
        } else {
          q.head(d) = -2.0 * p.C.transpose() * (p.C * xc);
          hess.topLeftCorner(d, d) += 2.0 * p.C.transpose() * p.C / sl[i];
        }
        q[d] = 1.0;
        grad -= q / sl[i];
        hess += q * q.transpose() / (sl[i] * sl[i]);
      }
      const RVec eq_resid = e > 0 ? RVec(p.f - p.E * xc) : RVec(RVec::Zero(0));
      KktSolve step = solve_kkt(hess, grad, eq, eq_resid);
      const double decrement = step.dx.dot(hess * step.dx);
      if (decrement / 2.0 <= 1e-11) break;
      double alpha = 1.0;
      const double v0 = value(xc, sc, t);
      double vtrial = std::numeric_limits<double>::infinity();
      for (int ls = 0; ls < 80; ++ls) {
        RVec ytrial = y + alpha * step.dx;
        vtrial = value(ytrial.head(d), ytrial[d], t);
        if (vtrial <= v0 + 0.01 * alpha * grad.dot(step.dx)) break;
        alpha *= 0.5;
      }
      if (!std::isfinite(vtrial)) break;
      y += alpha * step.dx;
    }
    if (static_cast<double>(m) / t <= 0.1 * tols.feasibility) break;
    t *= 10.0;
  }
  res.feasible = res.best_s <= tols.feasibility &&
                 max_inequality_violation(p, res.x) < 0.0;
  return res;
}

// Active-set polish: re-solve with the near-active inequalities (and cone
// boundary) pinned as equalities via Newton on the KKT system. The barrier
// iterate certifies optimality only to O(gap); the polished point is exact
// to rounding, which is what the reported kkt_residual should reflect.
struct PolishOutcome {
  bool ok = false;
  RVec x;
  double kkt = std::numeric_limits<double>::infinity();
};

PolishOutcome polish_active_set(const MinNormProgram& p, const RVec& x0,
                                double t, const SolverTolerances& tols) {
  PolishOutcome out;
  const Eigen::Index d = p.dim;
  const Eigen::Index e = p.E.rows();

  std::vector<int> act;
  for (Eigen::Index i = 0; i < p.G.rows(); ++i) {
    const double slack = p.h[i] - p.G.row(i).dot(x0);
    if (slack <= 1e-5 * (1.0 + std::abs(p.h[i]))) act.push_back(int(i));
  }
  bool cone_act = false;
  if (p.has_cone) {
    const double slack = p.radius * p.radius - (p.C * x0).squaredNorm();
    cone_act = slack <= 1e-5 * (1.0 + p.radius * p.radius);
  }

  for (int pass = 0; pass <= 2 * int(p.G.rows()) + 2; ++pass) {
    const Eigen::Index na = Eigen::Index(act.size());
    if (na == 0 && e == 0 && !cone_act) {
      // Interior optimum: only possible at the origin.
      out.x = RVec::Zero(d);
      out.kkt = 0.0;
      out.ok = max_inequality_violation(p, out.x) <= tols.feasibility;
      return out;
    }
    RMat a(na + e, d);
    RVec c(na + e);
    for (Eigen::Index j = 0; j < na; ++j) {
      a.row(j) = p.G.row(act[size_t(j)]);
      c[j] = p.h[act[size_t(j)]];
    }
    if (e > 0) {
      a.bottomRows(e) = p.E;
      c.tail(e) = p.f;
    }

    // Unknowns: x, mu (row multipliers), nu (cone multiplier if active).
    RVec x = x0;
    RVec mu = RVec::Zero(na + e);
    for (Eigen::Index j = 0; j < na; ++j)
      mu[j] = 1.0 / (t * std::max(p.h[act[size_t(j)]] - a.row(j).dot(x0),
                                  1e-300));
    double nu = 0.0;
    if (cone_act)
      nu = 1.0 / (t * std::max(p.radius * p.radius - (p.C * x0).squaredNorm(),
                               1e-300));
    const Eigen::Index nv = d + na + e + (cone_act ? 1 : 0);
    double fnorm = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 30; ++it) {
      RVec cx = p.has_cone ? RVec(p.C * x) : RVec(RVec::Zero(0));
      RVec f(nv);
      f.head(d) = 2.0 * x + a.transpose() * mu;
      if (cone_act) f.head(d) += 2.0 * nu * p.C.transpose() * cx;
      f.segment(d, na + e) = a * x - c;
      if (cone_act) f[nv - 1] = cx.squaredNorm() - p.radius * p.radius;
      fnorm = f.norm();
      if (fnorm <= 1e-12 * (1.0 + x.norm())) break;
      RMat jac = RMat::Zero(nv, nv);
      jac.topLeftCorner(d, d) = 2.0 * RMat::Identity(d, d);
      if (cone_act)
        jac.topLeftCorner(d, d) += 2.0 * nu * p.C.transpose() * p.C;
      jac.block(0, d, d, na + e) = a.transpose();
      jac.block(d, 0, na + e, d) = a;
      if (cone_act) {
        jac.block(0, nv - 1, d, 1) = 2.0 * p.C.transpose() * cx;
        jac.block(nv - 1, 0, 1, d) = 2.0 * cx.transpose() * p.C;
      }
      const RVec dy = jac.fullPivLu().solve(-f);
      x += dy.head(d);
      mu += dy.segment(d, na + e);
      if (cone_act) nu += dy[nv - 1];
    }

    // Wrongly-signed multiplier: that constraint is not active after all.
    int worst = -1;
    double worst_mu = -1e-9;
    for (Eigen::Index j = 0; j < na; ++j)
      if (mu[j] < worst_mu) {
        worst_mu = mu[j];
        worst = int(j);
      }
    if (cone_act && nu < -1e-9 && nu < worst_mu) {
      cone_act = false;
      continue;
    }
    if (worst >= 0) {
      act.erase(act.begin() + worst);
      continue;
    }

    if (fnorm > 1e-9 * (1.0 + x.norm())) return out;

    // A weakly active row can sit outside the detection threshold at the
    // barrier point; pull any the polished point now violates into the set.
    bool grew = false;
    for (Eigen::Index i = 0; i < p.G.rows(); ++i) {
      if (std::find(act.begin(), act.end(), int(i)) != act.end()) continue;
      if (p.G.row(i).dot(x) - p.h[i] > tols.feasibility) {
        act.push_back(int(i));
        grew = true;
      }
    }
    if (grew) continue;
    if (max_inequality_violation(p, x) > tols.feasibility) return out;
    out.x = x;
    out.kkt = fnorm;
    out.ok = true;
    return out;
  }
  return out;
}

}  // namespace

SolverResult solve_min_norm(const MinNormProgram& p, double tol) {
  SolverTolerances tols;
  tols.duality_gap = tol;
  return solve_min_norm(p, tols);
}

SolverResult solve_min_norm(const MinNormProgram& p,
                            const SolverTolerances& tols) {
  SolverResult res;
  res.x = RVec::Zero(p.dim);

  MinNormProgram prog = p;
  // A zero-radius cone is the pair of equalities C x = 0.
  if (prog.has_cone && prog.radius == 0.0) {
    prog.add_equality(prog.C.row(0).transpose(), 0.0);
    prog.add_equality(prog.C.row(1).transpose(), 0.0);
    prog.has_cone = false;
  }

  const int m = static_cast<int>(prog.G.rows()) + (prog.has_cone ? 1 : 0);
  if (m == 0) {
    // Pure equality (or unconstrained) case has a closed form.
    res.x = equality_least_norm(prog);
    if (prog.E.rows() > 0 &&
        (prog.E * res.x - prog.f).norm() >
            tols.feasibility * (1.0 + prog.f.norm())) {
      res.status = SolveStatus::Infeasible;
      return res;
    }
    res.objective = res.x.squaredNorm();
    res.status = SolveStatus::Optimal;
    return res;
  }

  Phase1Result ph1 = phase1(prog, tols);
  res.iterations = ph1.iterations;
  if (!ph1.feasible) {
    res.status = SolveStatus::Infeasible;
    return res;
  }

  RVec x = ph1.x;
  RVec w = RVec::Zero(prog.E.rows());
  double t = 1.0;
  res.status = SolveStatus::MaxIterations;
  for (int outer = 0; outer < tols.max_outer; ++outer) {
    res.iterations += center(prog, t, x, w, tols.max_newton);
    const double gap = static_cast<double>(m) / t;
    if (gap <= tols.duality_gap * (1.0 + x.squaredNorm())) {
      res.status = SolveStatus::Optimal;
      break;
    }
    t *= 10.0;
  }

  res.x = x;
  res.objective = x.squaredNorm();

  const PolishOutcome pol = polish_active_set(prog, x, t, tols);
  if (pol.ok && pol.x.squaredNorm() <=
                    res.objective + tols.feasibility * (1.0 + res.objective)) {
    res.x = pol.x;
    res.objective = pol.x.squaredNorm();
    res.kkt_residual = pol.kkt;
    if (res.status == SolveStatus::Optimal &&
        max_inequality_violation(prog, res.x) > tols.feasibility)
      res.status = SolveStatus::MaxIterations;
    return res;
  }

  // Stationarity residual with barrier multipliers lambda_i = 1/(t slack_i).
  RVec stat = 2.0 * x;
  for (Eigen::Index i = 0; i < prog.G.rows(); ++i) {
    const double slack = prog.h[i] - prog.G.row(i).dot(x);
    stat += prog.G.row(i).transpose() / (t * slack);
  }
  if (prog.has_cone) {
    const double slack = prog.radius * prog.radius - (prog.C * x).squaredNorm();
    stat += 2.0 * prog.C.transpose() * (prog.C * x) / (t * slack);
  }
  if (prog.E.rows() > 0) stat += prog.E.transpose() * (w / t);
  res.kkt_residual = stat.norm();

  if (res.status == SolveStatus::Optimal &&
      (max_inequality_violation(prog, x) > tols.feasibility ||
       res.kkt_residual > tols.kkt))
    res.status = SolveStatus::MaxIterations;
  return res;
}

double dual_objective(const RMat& qqt, const RVec& b, const RVec& lambda) {
  return -0.25 * lambda.dot(qqt * lambda) - lambda.dot(b);
}

RVec dual_gradient(const RMat& qqt, const RVec& b, const RVec& lambda) {
  return -0.5 * (qqt * lambda) - b;
}

double backtracking_line_search(const RMat& qqt, const RVec& b,
                                const RVec& lambda, const RVec& grad) {
  double t = 1.0;
  const double delta = 0.1;
  const double mu = 0.5;
  const double g0 = dual_objective(qqt, b, lambda);
  while (t >= 1e-16) {
    const RVec next = (lambda + t * grad).cwiseMax(0.0);
    if (dual_objective(qqt, b, next) >= g0 + delta * grad.dot(next - lambda))
      return t;
    t *= mu;
  }
  return 0.0;
}

SolverResult dual_gradient_projection(const RMat& q, const RVec& b,
                                      const RVec& lambda0,
                                      const DualGpOptions& opts) {
  const RMat qqt = q * q.transpose();
  RVec lam = lambda0.cwiseMax(0.0);
  double gval = dual_objective(qqt, b, lam);

  SolverResult res;
  res.status = SolveStatus::MaxIterations;

  const double b_scale = 1.0 + (b.size() > 0 ? b.cwiseAbs().maxCoeff() : 0.0);

  int n = 0;
  for (; n < opts.max_iter; ++n) {
    const RVec grad = dual_gradient(qqt, b, lam);
    const double t = backtracking_line_search(qqt, b, lam, grad);
    if (t == 0.0) {
      res.status = SolveStatus::Optimal;
      break;
    }
    const RVec next = (lam + t * grad).cwiseMax(0.0);
    const double gnext = dual_objective(qqt, b, next);
    const double gain = gnext - gval;
    const bool stalled =
        (next - lam).lpNorm<Eigen::Infinity>() <=
        1e-15 * (1.0 + lam.lpNorm<Eigen::Infinity>());
    lam = next;
    gval = gnext;
    if (lam.norm() > opts.lambda_guard) {
      res.status = SolveStatus::Infeasible;
      break;
    }
    if (gain <= opts.eps) {
      const RVec xcur = -0.5 * q.transpose() * lam;
      const RVec resid = q * xcur - b;
      double comp = 0.0;
      for (Eigen::Index i = 0; i < lam.size(); ++i)
        comp = std::max(comp, std::abs(lam[i] * resid[i]));
      // A fixed point of the update leaves nothing more to gain in double
      // precision; accept it if the residuals are rounding-dominated.
      const double relax = stalled ? 100.0 : 1.0;
      if (resid.maxCoeff() <= relax * opts.feas_tol * b_scale &&
          comp <= relax * opts.comp_tol * (1.0 + xcur.squaredNorm())) {
        res.status = SolveStatus::Optimal;
        break;
      }
      if (stalled) break;  // stuck short of tolerance
    }
  }
  res.iterations = n;
  res.x = -0.5 * q.transpose() * lam;
  res.objective = res.x.squaredNorm();
  const RVec resid = q * res.x - b;
  double comp = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    comp = std::max(comp, std::abs(lam[i] * resid[i]));
  res.kkt_residual = comp;
  return res;
}

ScpResult scp_minimize_with_norm_floor(const MinNormProgram& base, double p0,
                                       const RVec& x0, double eps,
                                       int max_iter) {
  ScpResult out;
  if (p0 <= 0.0) {
    out.solution = solve_min_norm(base);
    out.objective_trace.push_back(out.solution.objective);
    return out;
  }
  if (x0.squaredNorm() < p0 * (1.0 - 1e-9) ||
      max_inequality_violation(base, x0) > 1e-6 ||
      (base.E.rows() > 0 && (base.E * x0 - base.f).norm() > 1e-6))
    throw std::invalid_argument(
        "scp_minimize_with_norm_floor: start point not feasible");

  RVec xn = x0;
  double obj = xn.squaredNorm();
  out.objective_trace.push_back(obj);
  out.solution.status = SolveStatus::MaxIterations;
  int total_iters = 0;
  for (int it = 0; it < max_iter; ++it) {
    MinNormProgram sub = base;
    // Linearized floor: 2 x_n . x >= p0 + ||x_n||^2.
    sub.add_inequality(-2.0 * xn, -(p0 + xn.squaredNorm()));
    SolverResult inner = solve_min_norm(sub);
    total_iters += inner.iterations;
    if (inner.status != SolveStatus::Optimal)
      throw std::runtime_error(
          "scp_minimize_with_norm_floor: inner problem not solved from a "
          "feasible start");
    if (inner.objective > obj) {
      // The subproblem contains the current iterate, so any increase is
      // solver noise at the fixed point; a tiny one means convergence.
      if (inner.objective - obj <= eps * (1.0 + obj))
        out.solution.status = SolveStatus::Optimal;
      break;
    }
    xn = inner.x;
    out.objective_trace.push_back(inner.objective);
    const double decrease = obj - inner.objective;
    obj = inner.objective;
    if (decrease <= eps) {
      out.solution.status = SolveStatus::Optimal;
      break;
    }
  }
  out.solution.x = xn;
  out.solution.objective = obj;
  out.solution.iterations = total_iters;
  return out;
}

RVec feasible_init_norm_floor(const MinNormProgram& base, double p0) {
  if (base.has_cone)
    throw std::invalid_argument(
        "feasible_init_norm_floor: cone constraints unsupported");
  SolverResult r = solve_min_norm(base);
  if (r.status != SolveStatus::Optimal)
    throw std::runtime_error("feasible_init_norm_floor: base program infeasible");
  const double target = std::max(p0 * (1.0 + 1e-6), p0 + 1e-9);
  if (r.objective >= target) return r.x;

  // Direction in the common null space of every constraint row leaves all
  // constraints unchanged while the norm grows without bound.
  const Eigen::Index rows = base.G.rows() + base.E.rows();
  RMat a(rows, base.dim);
  if (base.G.rows() > 0) a.topRows(base.G.rows()) = base.G;
  if (base.E.rows() > 0) a.bottomRows(base.E.rows()) = base.E;
  Eigen::JacobiSVD<RMat> svd(a, Eigen::ComputeFullV);
  svd.setThreshold(1e-10);
  const Eigen::Index rank = svd.rank();
  if (rank < base.dim) {
    const RVec v = svd.matrixV().col(base.dim - 1);
    const double c = r.x.dot(v);
    const double disc = c * c + target - r.objective;
    const double alpha = -c + std::sqrt(disc);
    return r.x + alpha * v;
  }

  // Degenerate fallback: walk the equality null space along a direction the
  // inequalities tolerate far enough to reach the floor.
  Eigen::JacobiSVD<RMat> esvd(base.E, Eigen::ComputeFullV);
  esvd.setThreshold(1e-10);
  for (Eigen::Index j = esvd.rank(); j < base.dim; ++j) {
    const RVec v = esvd.matrixV().col(j);
    for (double sign : {1.0, -1.0}) {
      const RVec dir = sign * v;
      double amax = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < base.G.rows(); ++i) {
        const double gv = base.G.row(i).dot(dir);
        if (gv > 1e-12)
          amax = std::min(amax, (base.h[i] - base.G.row(i).dot(r.x)) / gv);
      }
      if (!std::isfinite(amax)) amax = 1e6;
      const RVec cand = r.x + amax * dir;
      if (cand.squaredNorm() >= target &&
          max_inequality_violation(base, cand) <= 1e-9)
        return cand;
    }
  }
  throw std::runtime_error(
      "feasible_init_norm_floor: no norm-increasing feasible direction");
}

}  // namespace secprec
