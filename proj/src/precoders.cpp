#include "secprec/precoders.hpp"

#include <cmath>
#include <stdexcept>

namespace secprec {

const char* precoder_name(PrecoderKind kind) {
  switch (kind) {
    case PrecoderKind::TraditionalCi: return "traditional_ci";
    case PrecoderKind::CdPartial: return "cd_partial";
    case PrecoderKind::CdFull: return "cd_full";
    case PrecoderKind::Icss: return "icss";
    case PrecoderKind::FastIcss: return "fast_icss";
    case PrecoderKind::Zf: return "zf";
    case PrecoderKind::AnNoCsi: return "an_no_csi";
  }
  return "unknown";
}

PrecoderKind precoder_from_name(const std::string& name) {
  for (PrecoderKind k :
       {PrecoderKind::TraditionalCi, PrecoderKind::CdPartial,
        PrecoderKind::CdFull, PrecoderKind::Icss, PrecoderKind::FastIcss,
        PrecoderKind::Zf, PrecoderKind::AnNoCsi}) {
    if (name == precoder_name(k)) return k;
  }
  throw std::invalid_argument("unknown precoder scheme: " + name);
}

namespace {

HalfspaceCoeffs eve_coeffs(const CVec& h_e, const CVec& s) {
  // Secrecy is for user 1, so the eavesdropper frame is rotated by s_1.
  return halfspace_coeffs(rotate_to_symbol_frame(h_e, s[0]));
}

PrecoderSolution from_solver(const SolverResult& r) {
  PrecoderSolution sol;
  sol.status = r.status;
  if (r.status == SolveStatus::Optimal) {
    sol.x = inverse_lift(r.x);
    sol.power = r.objective;
  }
  return sol;
}

}  // namespace

MinNormProgram user_constraint_program(const CMat& H, const CVec& s,
                                       const PskConstellation& consts,
                                       const QosParams& qos) {
  const int k = static_cast<int>(H.rows());
  const int n = static_cast<int>(H.cols());
  MinNormProgram prog(2 * n);
  for (int u = 0; u < k; ++u) {
    const auto coeffs =
        halfspace_coeffs(rotate_to_symbol_frame(H.row(u).transpose(), s[u]));
    const auto [lo, hi] =
        constructive_rows(coeffs, qos.tau0, consts.half_sector);
    prog.add_ge_inequality(lo);
    prog.add_ge_inequality(hi);
  }
  return prog;
}

PrecoderSolution traditional_ci(const CMat& H, const CVec& s,
                                const PskConstellation& consts,
                                const QosParams& qos) {
  return from_solver(solve_min_norm(user_constraint_program(H, s, consts, qos)));
}

PrecoderSolution cd_partial(const CMat& H, const CVec& h_e, const CVec& s,
                            const PskConstellation& consts,
                            const QosParams& qos) {
  MinNormProgram prog = user_constraint_program(H, s, consts, qos);
  const auto ec = eve_coeffs(h_e, s);
  const double tp = consts.tan_phi();
  // -b_e.x <= (a_e.x - tau_e) tanPhi  and  b_e.x >= (a_e.x - tau_e) tanPhi.
  prog.add_inequality(-(ec.a * tp + ec.b), -qos.tau_e * tp);
  prog.add_inequality(ec.a * tp - ec.b, qos.tau_e * tp);
  return from_solver(solve_min_norm(prog));
}

PrecoderSolution cd_full(const CMat& H, const CVec& h_e, const CVec& s,
                         const PskConstellation& consts,
                         const QosParams& qos) {
  const MinNormProgram base = user_constraint_program(H, s, consts, qos);
  const auto ec = eve_coeffs(h_e, s);
  const double tp = consts.tan_phi();

  // Relaxed branch constraints; strict side conditions dropped since any
  // relaxed-branch point still lies in the full destructive region.
  struct Branch {
    RVec row;
    double rhs;
    SubproblemTag tag;
  };
  const Branch branches[3] = {
      {ec.a, qos.tau_e, SubproblemTag::D1},
      {ec.a * tp - ec.b, qos.tau_e * tp, SubproblemTag::D2},
      {ec.a * tp + ec.b, qos.tau_e * tp, SubproblemTag::D3},
  };

  PrecoderSolution best;
  best.status = SolveStatus::Infeasible;
  for (const Branch& br : branches) {
    MinNormProgram prog = base;
    prog.add_inequality(br.row, br.rhs);
    SolverResult r = solve_min_norm(prog);
    if (r.status != SolveStatus::Optimal) continue;
    if (best.status != SolveStatus::Optimal || r.objective < best.power) {
      best = from_solver(r);
      best.tag = br.tag;
    }
  }
  return best;
}

PrecoderSolution icss(const CMat& H, const CVec& h_e, const CVec& s,
                      const PskConstellation& consts, const QosParams& qos) {
  MinNormProgram prog = user_constraint_program(H, s, consts, qos);
  const auto ec = eve_coeffs(h_e, s);
  RMat c(2, prog.dim);
  c.row(0) = ec.a.transpose();
  c.row(1) = ec.b.transpose();
  prog.set_cone(c, qos.tau_e);
  return from_solver(solve_min_norm(prog));
}

void fast_icss_program(const CMat& H, const CVec& h_e, const CVec& s,
                       const PskConstellation& consts, const QosParams& qos,
                       RMat& q_out, RVec& b_out) {
  const int k = static_cast<int>(H.rows());
  const int n = static_cast<int>(H.cols());
  const double tp = consts.tan_phi();
  q_out.resize(2 * k + 4, 2 * n);
  b_out.resize(2 * k + 4);
  for (int u = 0; u < k; ++u) {
    const auto coeffs =
        halfspace_coeffs(rotate_to_symbol_frame(H.row(u).transpose(), s[u]));
    q_out.row(2 * u) = (-coeffs.a * tp + coeffs.b).transpose();
    q_out.row(2 * u + 1) = (-coeffs.a * tp - coeffs.b).transpose();
    b_out[2 * u] = -qos.tau0 * tp;
    b_out[2 * u + 1] = -qos.tau0 * tp;
  }
  const auto ec = eve_coeffs(h_e, s);
  const double half_side = std::numbers::sqrt2_v<double> / 2.0 * qos.tau_e;
  q_out.row(2 * k) = ec.a.transpose();
  q_out.row(2 * k + 1) = -ec.a.transpose();
  q_out.row(2 * k + 2) = ec.b.transpose();
  q_out.row(2 * k + 3) = -ec.b.transpose();
  b_out.tail(4).setConstant(half_side);
}

PrecoderSolution fast_icss(const CMat& H, const CVec& h_e, const CVec& s,
                           const PskConstellation& consts,
                           const QosParams& qos,
                           const DualGpOptions& gp_opts) {
  RMat q;
  RVec b;
  fast_icss_program(H, h_e, s, consts, qos, q, b);
  const RVec lambda0 = RVec::Zero(b.size());
  return from_solver(dual_gradient_projection(q, b, lambda0, gp_opts));
}

PrecoderSolution zf_precoder(const CMat& H, const CVec& h_e, const CVec& s,
                             const PskConstellation& consts,
                             const QosParams& qos) {
  (void)consts;
  const int k = static_cast<int>(H.rows());
  const int n = static_cast<int>(H.cols());
  if (n < k + 1)
    throw std::invalid_argument("zf_precoder: requires N >= K+1 antennas");
  CMat a(k + 1, n);
  a.topRows(k) = H;
  a.row(k) = h_e.transpose();
  CVec y = CVec::Zero(k + 1);
  y.head(k) = qos.tau0 * s;

  const CMat gram = a * a.adjoint();
  Eigen::FullPivLU<CMat> lu(gram);
  if (lu.rank() < k + 1)
    throw std::runtime_error("zf_precoder: stacked channel is rank deficient");
  PrecoderSolution sol;
  sol.x = a.adjoint() * lu.solve(y);
  sol.power = sol.x.squaredNorm();
  sol.status = SolveStatus::Optimal;
  return sol;
}

PrecoderSolution an_no_csi(const CMat& H, const CVec& s,
                           const PskConstellation& consts,
                           const QosParams& qos, double p0) {
  const int k = static_cast<int>(H.rows());
  const int n = static_cast<int>(H.cols());
  if (n <= k)
    throw std::invalid_argument("an_no_csi: requires N > K for the initializer");

  MinNormProgram prog(2 * n);
  // User 1 sits exactly at the constructive-region vertex.
  const auto c1 =
      halfspace_coeffs(rotate_to_symbol_frame(H.row(0).transpose(), s[0]));
  prog.add_equality(c1.a, qos.tau0);
  prog.add_equality(c1.b, 0.0);
  for (int u = 1; u < k; ++u) {
    const auto coeffs =
        halfspace_coeffs(rotate_to_symbol_frame(H.row(u).transpose(), s[u]));
    const auto [lo, hi] =
        constructive_rows(coeffs, qos.tau0, consts.half_sector);
    prog.add_ge_inequality(lo);
    prog.add_ge_inequality(hi);
  }

  try {
    const RVec x0 = feasible_init_norm_floor(prog, p0);
    ScpResult scp = scp_minimize_with_norm_floor(prog, p0, x0);
    PrecoderSolution sol = from_solver(scp.solution);
    if (scp.solution.status == SolveStatus::MaxIterations) {
      // Iteration cap hit but every iterate is feasible; keep the point.
      sol.x = inverse_lift(scp.solution.x);
      sol.power = scp.solution.objective;
    }
    return sol;
  } catch (const std::runtime_error&) {
    PrecoderSolution sol;
    sol.status = SolveStatus::Infeasible;
    return sol;
  }
}

PrecoderSolution run_precoder(PrecoderKind kind, const CMat& H,
                              const CVec& h_e, const CVec& s,
                              const PskConstellation& consts,
                              const QosParams& qos, double p0) {
  switch (kind) {
    case PrecoderKind::TraditionalCi:
      return traditional_ci(H, s, consts, qos);
    case PrecoderKind::CdPartial:
      return cd_partial(H, h_e, s, consts, qos);
    case PrecoderKind::CdFull:
      return cd_full(H, h_e, s, consts, qos);
    case PrecoderKind::Icss:
      return icss(H, h_e, s, consts, qos);
    case PrecoderKind::FastIcss:
      return fast_icss(H, h_e, s, consts, qos);
    case PrecoderKind::Zf:
      return zf_precoder(H, h_e, s, consts, qos);
    case PrecoderKind::AnNoCsi:
      return an_no_csi(H, s, consts, qos, p0);
  }
  throw std::logic_error("run_precoder: unhandled kind");
}

}  // namespace secprec
