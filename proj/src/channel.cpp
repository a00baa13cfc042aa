#include "secprec/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace secprec {

namespace {
// Scaled standard normals keep the draw count independent of the variance.
CVec standard_complex_gaussian(int len, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVec v(len);
  for (int i = 0; i < len; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v[i] = cxd(re, im) * std::numbers::sqrt2_v<double> / 2.0;
  }
  return v;
}
}  // namespace

CVec sample_complex_gaussian(int len, double variance, std::mt19937_64& rng) {
  if (variance < 0.0)
    throw std::invalid_argument("sample_complex_gaussian: negative variance");
  return std::sqrt(variance) * standard_complex_gaussian(len, rng);
}

CVec sample_eve_correlated(const CVec& h_1, double beta_1, double beta_e,
                           double rho, std::mt19937_64& rng) {
  if (rho < 0.0 || rho > 1.0)
    throw std::invalid_argument("sample_eve_correlated: rho outside [0,1]");
  const CVec w = standard_complex_gaussian(static_cast<int>(h_1.size()), rng);
  return std::sqrt(beta_e) *
         (std::sqrt(rho) / std::sqrt(beta_1) * h_1 + std::sqrt(1.0 - rho) * w);
}

cxd sample_noise(std::mt19937_64& rng) {
  return standard_complex_gaussian(1, rng)[0];
}

ChannelRealization sample_channel(int n, int k, const RVec& beta,
                                  double beta_e, double rho,
                                  std::mt19937_64& rng) {
  ChannelRealization cr;
  cr.H.resize(k, n);
  for (int u = 0; u < k; ++u)
    cr.H.row(u) = sample_complex_gaussian(n, beta[u], rng).transpose();
  cr.h_e = sample_eve_correlated(cr.H.row(0).transpose(), beta[0], beta_e, rho, rng);
  cr.beta = beta;
  cr.beta_e = beta_e;
  cr.rho = rho;
  return cr;
}

}  // namespace secprec
