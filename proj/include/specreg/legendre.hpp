#pragma once

#include <cstddef>
#include <vector>

namespace specreg {

struct GaussLegendre {
  std::vector<double> nodes;    // ascending in [-1, 1]
  std::vector<double> weights;  // sum = 2
};

// Gauss-Legendre rule with n nodes; exact for polynomials of degree <= 2n-1.
GaussLegendre gauss_legendre(int n);

// Orthonormal associated Legendre functions Pbar_l^m with
//   int_{-1}^{1} Pbar_l^m(x) Pbar_{l'}^m(x) dx = delta_{l l'},
// Condon-Shortley phase included. The complex spherical harmonic is
//   Y_l^m(theta, phi) = Pbar_l^m(cos theta) e^{i m phi} / sqrt(2 pi),
// orthonormal for the area measure on the unit sphere (total area 4 pi).
//
// Fills out[l - m] for l = m..l_max. Stable to l ~ 2000 via scaled seeding of
// the (sin theta)^m prefactor that would otherwise underflow near the poles.
void legendre_row(int m, int l_max, double x, std::vector<double>& out);

// Single value Pbar_l^m(x), m >= 0.
double legendre_single(int l, int m, double x);

}  // namespace specreg
