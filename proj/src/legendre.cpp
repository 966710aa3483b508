#include "specreg/legendre.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specreg {

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
  GaussLegendre gl;
  gl.nodes.assign(n, 0.0);
  gl.weights.assign(n, 0.0);
  auto eval = [n](double x, double& pn, double& pp) {
    double p0 = 1.0, p1 = x;
    for (int l = 2; l <= n; ++l) {
      const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
      p0 = p1;
      p1 = p2;
    }
    pn = (n == 0) ? 1.0 : p1;
    pp = n * (x * p1 - p0) / (x * x - 1.0);
  };
  const int mhalf = (n + 1) / 2;
  for (int i = 0; i < mhalf; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pn, pp;
    for (int iter = 0; iter < 100; ++iter) {
      eval(x, pn, pp);
      const double dx = pn / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    eval(x, pn, pp);
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  return gl;
}

namespace {

constexpr double kScale = 1e280;
constexpr double kScaleInv = 1e-280;
constexpr double kSeedFloor = 1e-140;

// Seed Pbar_m^m(x) = c_m (1-x^2)^{m/2}; returns mantissa and the number of
// kScaleInv factors still owed (>= 0).
void seed_mm(int m, double x, double& mant, int& scale) {
  mant = std::sqrt(0.5);
  scale = 0;
  const double sin_t = std::sqrt((1.0 - x) * (1.0 + x));
  for (int k = 1; k <= m; ++k) {
    mant *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * sin_t;
    if (std::abs(mant) < kSeedFloor) {
      mant *= kScale;
      ++scale;
    }
  }
}

}  // namespace

void legendre_row(int m, int l_max, double x, std::vector<double>& out) {
  if (m < 0 || l_max < m) throw std::invalid_argument("legendre_row: need 0 <= m <= l_max");
  out.assign(static_cast<std::size_t>(l_max - m + 1), 0.0);
  double pmm, pm1;
  int scale;
  seed_mm(m, x, pmm, scale);
  auto unscaled = [&](double v) {
    double r = v;
    for (int s = 0; s < scale; ++s) {
      r *= kScaleInv;
      if (r == 0.0) break;
    }
    return r;
  };
  out[0] = unscaled(pmm);
  if (l_max == m) return;
  pm1 = std::sqrt(2.0 * m + 3.0) * x * pmm;
  out[1] = unscaled(pm1);
  double pl2 = pmm, pl1 = pm1;
  for (int l = m + 2; l <= l_max; ++l) {
    const double ll = static_cast<double>(l);
    const double a = std::sqrt((4.0 * ll * ll - 1.0) / (ll * ll - m * m));
    const double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - m * m) / (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
    double pl = a * (x * pl1 - b * pl2);
    pl2 = pl1;
    pl1 = pl;
    // Remove one scale factor once the recurrence has grown back into range.
    if (scale > 0 && std::abs(pl1) > 1.0 / kSeedFloor) {
      pl1 *= kScaleInv;
      pl2 *= kScaleInv;
      --scale;
    }
    out[static_cast<std::size_t>(l - m)] = unscaled(pl1);
  }
}

double legendre_single(int l, int m, double x) {
  std::vector<double> row;
  legendre_row(m, l, x, row);
  return row.back();
}

}  // namespace specreg
