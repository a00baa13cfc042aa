#include "secprec/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace secprec {

cxd psk_symbol(int m, int order) {
  if (order < 2) throw std::invalid_argument("psk_symbol: order must be >= 2");
  if (m < 1 || m > order)
    throw std::invalid_argument("psk_symbol: index out of range");
  const double ang = (2.0 * m - 1.0) * std::numbers::pi / order;
  return std::polar(1.0, ang);
}

PskConstellation::PskConstellation(int m)
    : order(m), half_sector(std::numbers::pi / m) {
  if (m < 2) throw std::invalid_argument("PskConstellation: order must be >= 2");
  points.reserve(static_cast<size_t>(m));
  for (int i = 1; i <= m; ++i) points.push_back(psk_symbol(i, m));
}

RotatedChannel rotate_to_symbol_frame(const CVec& h, cxd s) {
  if (std::abs(std::abs(s) - 1.0) > 1e-12)
    throw std::invalid_argument("rotate_to_symbol_frame: symbol not unit modulus");
  return RotatedChannel{h * std::conj(s)};
}

RVec real_lift(const CVec& x) {
  const Eigen::Index n = x.size();
  RVec xbar(2 * n);
  xbar.head(n) = x.real();
  xbar.tail(n) = x.imag();
  return xbar;
}

CVec inverse_lift(const RVec& xbar) {
  const Eigen::Index n = xbar.size() / 2;
  CVec x(n);
  x.real() = xbar.head(n);
  x.imag() = xbar.tail(n);
  return x;
}

HalfspaceCoeffs halfspace_coeffs(const RotatedChannel& rc) {
  const Eigen::Index n = rc.g.size();
  HalfspaceCoeffs c;
  c.a.resize(2 * n);
  c.b.resize(2 * n);
  c.a.head(n) = rc.g.real();
  c.a.tail(n) = -rc.g.imag();
  c.b.head(n) = rc.g.imag();
  c.b.tail(n) = rc.g.real();
  return c;
}

QosParams::QosParams(double g0_db, double ge_db)
    : gamma0_db(g0_db),
      gamma_e_db(ge_db),
      tau0(std::sqrt(std::pow(10.0, g0_db / 10.0))),
      tau_e(std::sqrt(std::pow(10.0, ge_db / 10.0))) {}

bool in_constructive_region(cxd z, double tau0, double phi) {
  return std::abs(z.imag()) <= (z.real() - tau0) * std::tan(phi) + kRegionTol;
}

bool in_destructive_region(cxd z, double tau_e, double phi) {
  return std::abs(z.imag()) >= (z.real() - tau_e) * std::tan(phi) - kRegionTol;
}

std::pair<ConstraintRow, ConstraintRow> constructive_rows(
    const HalfspaceCoeffs& coeffs, double tau0, double phi) {
  const double tp = std::tan(phi);
  ConstraintRow lower{coeffs.a * tp - coeffs.b, tau0 * tp};
  ConstraintRow upper{coeffs.a * tp + coeffs.b, tau0 * tp};
  return {lower, upper};
}

}  // namespace secprec
