#pragma once

/// Per-(channel, symbol vector) precoder optimizations. Each scheme builds a
/// MinNormProgram over the lifted transmit vector and returns the complex
/// solution with diagnostics. All eavesdropper constraints live in the frame
/// rotated by user 1's symbol.

#include "secprec/geometry.hpp"
#include "secprec/solver.hpp"

namespace secprec {

enum class PrecoderKind {
  TraditionalCi,
  CdPartial,
  CdFull,
  Icss,
  FastIcss,
  Zf,
  AnNoCsi,
};

const char* precoder_name(PrecoderKind kind);
PrecoderKind precoder_from_name(const std::string& name);

/// Which branch of the three-way destructive-region split won (C-D full).
enum class SubproblemTag { None, D1, D2, D3 };

struct PrecoderSolution {
  CVec x;
  double power = 0.0;  // ||x||^2, noise-normalized linear watts
  SolveStatus status = SolveStatus::Infeasible;
  SubproblemTag tag = SubproblemTag::None;
};

/// Constructive-region rows for every user, the common core of all schemes.
MinNormProgram user_constraint_program(const CMat& H, const CVec& s,
                                       const PskConstellation& consts,
                                       const QosParams& qos);

/// Power minimization subject only to the users' constructive regions.
PrecoderSolution traditional_ci(const CMat& H, const CVec& s,
                                const PskConstellation& consts,
                                const QosParams& qos);

/// Prior C-D scheme: eavesdropper pinned to the single upper wedge
/// Im z_e >= |Re z_e - tau_e| tan(Phi).
PrecoderSolution cd_partial(const CMat& H, const CVec& h_e, const CVec& s,
                            const PskConstellation& consts,
                            const QosParams& qos);

/// Full-destructive C-D: three convex subproblems covering the whole
/// destructive region; the cheapest feasible one wins.
PrecoderSolution cd_full(const CMat& H, const CVec& h_e, const CVec& s,
                         const PskConstellation& consts, const QosParams& qos);

/// Information-carrying-signal suppression: |z_e|^2 <= tau_e^2 as a
/// second-order cone.
PrecoderSolution icss(const CMat& H, const CVec& h_e, const CVec& s,
                      const PskConstellation& consts, const QosParams& qos);

/// ICSS with the disk replaced by the inscribed square, making the program
/// purely polyhedral; solved by dual gradient projection.
PrecoderSolution fast_icss(const CMat& H, const CVec& h_e, const CVec& s,
                           const PskConstellation& consts,
                           const QosParams& qos,
                           const DualGpOptions& gp_opts = {});

/// The stacked (2K+4) x 2N constraint data of the fast ICSS program.
void fast_icss_program(const CMat& H, const CVec& h_e, const CVec& s,
                       const PskConstellation& consts, const QosParams& qos,
                       RMat& q_out, RVec& b_out);

/// Minimum-norm solution of [H; h_e^T] x = [tau0 s; 0]: exact symbols at the
/// users, nothing at the eavesdropper. Requires a full-row-rank stack.
PrecoderSolution zf_precoder(const CMat& H, const CVec& h_e, const CVec& s,
                             const PskConstellation& consts,
                             const QosParams& qos);

/// No-CSI scheme: user 1 pinned to the constructive-region vertex, other
/// users constructive, transmit power floored at p0 (linear) to act as
/// artificial noise. Solved by SCP from the null-space initializer.
PrecoderSolution an_no_csi(const CMat& H, const CVec& s,
                           const PskConstellation& consts,
                           const QosParams& qos, double p0);

/// Dispatch by kind. h_e is ignored by schemes that do not use it; p0 only
/// matters for AnNoCsi.
PrecoderSolution run_precoder(PrecoderKind kind, const CMat& H,
                              const CVec& h_e, const CVec& s,
                              const PskConstellation& consts,
                              const QosParams& qos, double p0 = 0.0);

}  // namespace secprec
