#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "secprec/geometry.hpp"

using namespace secprec;

namespace {

CVec random_cvec(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVec v(n);
  for (int i = 0; i < n; ++i) v[i] = cxd(g(rng), g(rng));
  return v;
}

}  // namespace

TEST_CASE("psk_symbol matches the constellation definition") {
  const cxd c1 = psk_symbol(1, 4);
  CHECK(c1.real() == doctest::Approx(std::numbers::sqrt2 / 2).epsilon(1e-12));
  CHECK(c1.imag() == doctest::Approx(std::numbers::sqrt2 / 2).epsilon(1e-12));

  const cxd b1 = psk_symbol(1, 2);
  CHECK(b1.real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(b1.imag() == doctest::Approx(1.0).epsilon(1e-12));

  for (int m = 1; m <= 8; ++m)
    CHECK(std::abs(psk_symbol(m, 8)) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(psk_symbol(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(psk_symbol(5, 4), std::invalid_argument);
}

TEST_CASE("constellation invariants") {
  const PskConstellation qpsk(4);
  CHECK(qpsk.half_sector == doctest::Approx(std::numbers::pi / 4));
  for (int m = 1; m <= 4; ++m) {
    const double expected = (2.0 * m - 1.0) * std::numbers::pi / 4;
    CHECK(std::arg(qpsk.symbol(m)) ==
          doctest::Approx(std::remainder(expected, 2 * std::numbers::pi)));
  }
  // Adjacent symbols differ by a rotation of 2 pi / M.
  const cxd step = std::polar(1.0, 2 * std::numbers::pi / 4);
  for (int m = 1; m < 4; ++m)
    CHECK(std::abs(qpsk.symbol(m + 1) - qpsk.symbol(m) * step) < 1e-12);
}

TEST_CASE("rotate_to_symbol_frame") {
  CVec e1 = CVec::Zero(3);
  e1[0] = 1.0;
  CHECK(std::abs(rotate_to_symbol_frame(e1, cxd(1, 0)).g[0] - cxd(1, 0)) < 1e-15);

  const cxd s = std::polar(1.0, std::numbers::pi / 4);
  CHECK(std::abs(rotate_to_symbol_frame(e1, s).g[0] -
                 std::polar(1.0, -std::numbers::pi / 4)) < 1e-15);

  CHECK_THROWS_AS(rotate_to_symbol_frame(e1, cxd(1.1, 0)), std::invalid_argument);

  // g^T x = (h^T x) conj(s) for arbitrary x.
  std::mt19937_64 rng(7);
  const cxd c1 = psk_symbol(1, 4);
  const CVec h = random_cvec(6, rng);
  const CVec g = rotate_to_symbol_frame(h, c1).g;
  CHECK(g.norm() == doctest::Approx(h.norm()).epsilon(1e-12));
  for (int rep = 0; rep < 100; ++rep) {
    const CVec x = random_cvec(6, rng);
    const cxd lhs = (g.array() * x.array()).sum();
    const cxd rhs = (h.array() * x.array()).sum() * std::conj(c1);
    CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("real_lift and inverse") {
  CVec x(1);
  x[0] = cxd(1, 2);
  RVec xbar = real_lift(x);
  CHECK(xbar[0] == 1.0);
  CHECK(xbar[1] == 2.0);

  CHECK(real_lift(CVec::Zero(4)).norm() == 0.0);

  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const CVec v = random_cvec(5, rng);
    const RVec lifted = real_lift(v);
    CHECK(lifted.squaredNorm() == doctest::Approx(v.squaredNorm()).epsilon(1e-12));
    CHECK((inverse_lift(lifted) - v).norm() < 1e-15);
  }
}

TEST_CASE("halfspace_coeffs identities") {
  {
    CVec g(1);
    g[0] = cxd(1, 0);
    const auto c = halfspace_coeffs(RotatedChannel{g});
    CHECK(c.a[0] == 1.0);
    CHECK(c.a[1] == 0.0);
    CHECK(c.b[0] == 0.0);
    CHECK(c.b[1] == 1.0);
  }
  {
    CVec g(1);
    g[0] = cxd(0, 1);
    const auto c = halfspace_coeffs(RotatedChannel{g});
    CHECK(c.a[0] == 0.0);
    CHECK(c.a[1] == -1.0);
    CHECK(c.b[0] == 1.0);
    CHECK(c.b[1] == 0.0);
  }
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 100; ++rep) {
    const CVec g = random_cvec(6, rng);
    const CVec x = random_cvec(6, rng);
    const auto c = halfspace_coeffs(RotatedChannel{g});
    const cxd gx = (g.array() * x.array()).sum();
    CHECK(c.a.dot(real_lift(x)) == doctest::Approx(gx.real()).epsilon(1e-12));
    CHECK(c.b.dot(real_lift(x)) == doctest::Approx(gx.imag()).epsilon(1e-12));
  }
}

TEST_CASE("QosParams dB to amplitude") {
  const QosParams qos(10.0, -30.0);
  CHECK(qos.tau0 == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
  CHECK(qos.tau_e == doctest::Approx(std::sqrt(1e-3)).epsilon(1e-12));
}

TEST_CASE("constructive region predicate") {
  const double phi = std::numbers::pi / 4;  // QPSK
  const double tau0 = std::sqrt(10.0);
  CHECK(in_constructive_region(cxd(tau0, 0), tau0, phi));          // vertex
  CHECK_FALSE(in_constructive_region(cxd(tau0 - 0.01, 0), tau0, phi));
  CHECK(in_constructive_region(cxd(tau0 + 1, 1), tau0, phi));      // boundary
  CHECK_FALSE(in_constructive_region(cxd(tau0 + 1, 1.01), tau0, phi));
}

TEST_CASE("destructive region predicate and partition") {
  const double phi = std::numbers::pi / 4;
  const double tau_e = 0.7;
  CHECK(in_destructive_region(cxd(0, 0), tau_e, phi));
  CHECK_FALSE(in_destructive_region(cxd(2 * tau_e, 0), tau_e, phi));

  // Every point is destructive or strictly inside the constructive wedge,
  // never both (away from the measure-zero shared boundary).
  for (double re = -3.0; re <= 3.0; re += 0.09) {
    for (double im = -3.0; im <= 3.0; im += 0.09) {
      const cxd z(re, im);
      const bool destructive = in_destructive_region(z, tau_e, phi);
      const bool strict_constructive =
          std::abs(im) < (re - tau_e) * std::tan(phi) - kRegionTol;
      CHECK(destructive != strict_constructive);
    }
  }
}

TEST_CASE("rotation invariance of region membership") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  const PskConstellation psk(8);
  for (int rep = 0; rep < 500; ++rep) {
    const cxd z(u(rng), u(rng));
    for (int m = 1; m <= 8; ++m) {
      const cxd c = psk.symbol(m);
      // Membership relative to symbol c equals membership of the rotated
      // point in the canonical frame.
      const bool canonical =
          in_constructive_region(z * std::conj(c), 1.0, psk.half_sector);
      const cxd back = (z * std::conj(c)) * c;
      const bool again =
          in_constructive_region(back * std::conj(c), 1.0, psk.half_sector);
      CHECK(canonical == again);
    }
  }
}

TEST_CASE("constructive rows equal the predicate") {
  const PskConstellation qpsk(4);
  const double tau0 = 2.0;
  {
    CVec g(1);
    g[0] = cxd(1, 0);
    const auto c = halfspace_coeffs(RotatedChannel{g});
    const auto [lo, hi] = constructive_rows(c, tau0, qpsk.half_sector);
    CHECK(lo.row.isApprox((RVec(2) << 1, -1).finished(), 1e-12));
    CHECK(hi.row.isApprox((RVec(2) << 1, 1).finished(), 1e-12));
    CHECK(lo.offset == doctest::Approx(tau0));
    CHECK(hi.offset == doctest::Approx(tau0));

    // Vertex: both constraints tight simultaneously.
    const RVec vertex = real_lift((CVec(1) << cxd(tau0, 0)).finished());
    CHECK(lo.row.dot(vertex) == doctest::Approx(lo.offset));
    CHECK(hi.row.dot(vertex) == doctest::Approx(hi.offset));
  }

  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 1000; ++rep) {
    const CVec g = random_cvec(4, rng);
    const CVec x = random_cvec(4, rng);
    const auto c = halfspace_coeffs(RotatedChannel{g});
    const auto [lo, hi] = constructive_rows(c, tau0, qpsk.half_sector);
    const RVec xbar = real_lift(x);
    const cxd z = (g.array() * x.array()).sum();
    const bool by_rows = lo.row.dot(xbar) - lo.offset >= -kRegionTol &&
                         hi.row.dot(xbar) - hi.offset >= -kRegionTol;
    CHECK(by_rows == in_constructive_region(z, tau0, qpsk.half_sector));
  }
}

TEST_CASE("minimum-power constructive point is the vertex") {
  const double phi = std::numbers::pi / 8;
  const double tau0 = 1.7;
  double best = 1e30;
  cxd argbest;
  for (double re = 0.0; re <= 6.0; re += 0.003) {
    for (double im = -3.0; im <= 3.0; im += 0.003) {
      const cxd z(re, im);
      if (!in_constructive_region(z, tau0, phi)) continue;
      if (std::abs(z) < best) {
        best = std::abs(z);
        argbest = z;
      }
    }
  }
  CHECK(best == doctest::Approx(tau0).epsilon(1e-3));
  CHECK(std::abs(argbest.imag()) < 0.01);
}
