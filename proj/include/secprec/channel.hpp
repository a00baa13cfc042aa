#pragma once

/// Rayleigh fading channel sampling: i.i.d. legitimate channels and an
/// eavesdropper channel correlated with user 1's.

#include <random>

#include "secprec/geometry.hpp"

namespace secprec {

/// One downlink realization. Row k of H is h_k^T; h_e is drawn from
/// sqrt(beta_e)(sqrt(rho) h_1/sqrt(beta_1) + sqrt(1-rho) w).
struct ChannelRealization {
  CMat H;        // K x N, row k = h_k^T
  CVec h_e;      // N
  RVec beta;     // K large-scale gains
  double beta_e;
  double rho;
};

/// i.i.d. circular complex Gaussian vector; per-entry variance = `variance`
/// (real and imaginary parts each carry variance/2).
CVec sample_complex_gaussian(int len, double variance, std::mt19937_64& rng);

/// Correlated eavesdropper channel, rho in [0, 1]. With rho = 1 and
/// beta_e = beta_1 this returns h_1 exactly.
CVec sample_eve_correlated(const CVec& h_1, double beta_1, double beta_e,
                           double rho, std::mt19937_64& rng);

/// Unit-variance circular complex Gaussian receiver noise.
cxd sample_noise(std::mt19937_64& rng);

/// Draws H (rows in user order) followed by h_e.
ChannelRealization sample_channel(int n, int k, const RVec& beta,
                                  double beta_e, double rho,
                                  std::mt19937_64& rng);

}  // namespace secprec
