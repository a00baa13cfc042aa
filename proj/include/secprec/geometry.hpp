#pragma once

/// PSK constellation geometry: symbol-frame rotation, real-valued lifting,
/// and the constructive/destructive region algebra used by all precoders.

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace secprec {

using cxd = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

/// Boundary tolerance for region predicates. Regions are closed sets so that
/// optimizer outputs sitting exactly on an active constraint classify as
/// feasible.
inline constexpr double kRegionTol = 1e-9;

/// Unit-modulus M-PSK point, 1-based index: exp(j(2m-1)pi/M).
cxd psk_symbol(int m, int order);

/// Normalized M-PSK constellation. half_sector is Phi = pi/M, half the angle
/// of each decision sector.
struct PskConstellation {
  int order;
  double half_sector;
  std::vector<cxd> points;

  explicit PskConstellation(int m);

  cxd symbol(int m) const { return points.at(static_cast<size_t>(m - 1)); }
  double tan_phi() const { return std::tan(half_sector); }
};

/// Channel rotated into the frame of a transmit symbol: g = h * conj(s).
struct RotatedChannel {
  CVec g;
};

/// Requires |s| = 1 (within 1e-12); preserves the channel norm.
RotatedChannel rotate_to_symbol_frame(const CVec& h, cxd s);

/// Stack [Re x; Im x] into a real vector of twice the length.
RVec real_lift(const CVec& x);

/// Inverse of real_lift.
CVec inverse_lift(const RVec& xbar);

/// Real row vectors a, b with a.dot(real_lift(x)) = Re{g^T x} and
/// b.dot(real_lift(x)) = Im{g^T x} for every complex x.
struct HalfspaceCoeffs {
  RVec a;
  RVec b;
};

HalfspaceCoeffs halfspace_coeffs(const RotatedChannel& rc);

/// SNR floor/ceiling in dB with the derived linear amplitude thresholds
/// (noise power fixed to 1, so tau = sqrt(gamma)).
struct QosParams {
  double gamma0_db;
  double gamma_e_db;
  double tau0;
  double tau_e;

  QosParams(double g0_db, double ge_db);
};

/// True iff |Im z| <= (Re z - tau0) tan(Phi), the closed constructive wedge.
bool in_constructive_region(cxd z, double tau0, double phi);

/// True iff |Im z| >= (Re z - tau_e) tan(Phi), the closed complement of the
/// open constructive interior at threshold tau_e.
bool in_destructive_region(cxd z, double tau_e, double phi);

/// One linear constraint in row.dot(xbar) - offset >= 0 form.
struct ConstraintRow {
  RVec row;
  double offset;
};

/// The two half-space rows equivalent to the constructive-region condition:
/// (a tanPhi - b) and (a tanPhi + b), both with offset tau0 tanPhi.
std::pair<ConstraintRow, ConstraintRow> constructive_rows(
    const HalfspaceCoeffs& coeffs, double tau0, double phi);

}  // namespace secprec
