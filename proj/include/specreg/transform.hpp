#pragma once

#include <array>
#include <complex>
#include <vector>

#include "specreg/spectrum.hpp"

namespace specreg {

// Sample grids, fixed conventions ("v1"):
//   circle  n1 points x_i = 2 pi i / n1
//   torus   n1 x n2 points (2 pi a / n1, 2 pi b / n2), row-major in a
//   sphere  n1 Gauss-Legendre colatitude rings (ordered by ascending theta,
//           i.e. descending cos theta) x n2 uniform longitudes 2 pi p / n2,
//           row-major in the ring index
struct GridSpec {
  Manifold manifold = Manifold::Circle;
  int n1 = 0;
  int n2 = 1;
  static GridSpec circle(int n) { return {Manifold::Circle, n, 1}; }
  static GridSpec torus(int n) { return {Manifold::Torus2, n, n}; }
  static GridSpec sphere(int n_theta, int n_phi) { return {Manifold::Sphere2, n_theta, n_phi}; }
  std::size_t size() const { return static_cast<std::size_t>(n1) * n2; }
};

struct SampledFunction {
  GridSpec grid;
  std::vector<std::complex<double>> values;  // grid.size() entries
};

// One coefficient block per eigenvalue level. Stored values are complex in
// linear scale; the effective coefficient is value * lambda^power * e^{log_scale}.
// apply_power only touches the integer exponent, so compositions are exact.
struct Block {
  std::vector<std::complex<double>> values;
  long long power = 0;
  double log_scale = 0.0;
};

// Level-blocked eigenfunction coefficients of a function (or functional).
class SpectralVector {
 public:
  SpectralVector(ModelOperator op, std::vector<SpectrumLevel> levels, std::vector<Block> blocks);

  const ModelOperator& op() const { return op_; }
  int j_max() const { return static_cast<int>(levels_.size()) - 1; }
  std::size_t level_count() const { return levels_.size(); }
  const SpectrumLevel& level(std::size_t j) const { return levels_[j]; }
  const std::vector<SpectrumLevel>& levels() const { return levels_; }
  Block& block(std::size_t j) { return blocks_[j]; }
  const Block& block(std::size_t j) const { return blocks_[j]; }

  // log of the effective coefficient magnitude offset for block j
  double log_offset(std::size_t j) const;
  // Hilbert-Schmidt norm of block j; log version is safe for huge offsets.
  double hs_norm(std::size_t j) const;
  double log_hs_norm(std::size_t j) const;
  // Effective coefficient, materialized. Throws if the offset overflows.
  std::complex<double> coeff(std::size_t j, int k) const;

  bool is_zero() const;

 private:
  ModelOperator op_;
  std::vector<SpectrumLevel> levels_;
  std::vector<Block> blocks_;
};

// Coefficients f_hat(j,k) = (f, e_j^k)_{L^2} for levels j = 0..j_max.
// Exact (to roundoff) for band-limited input; the grid must resolve the
// requested band: circle/torus n >= 2*max frequency + 1, sphere
// n1 >= l_max + 1 and n2 >= 2*l_max + 1.
SpectralVector forward(const ModelOperator& op, const SampledFunction& f, int j_max,
                       int threads = 1);

// Synthesis sum_{j <= j_max} sum_k f_hat(j,k) e_j^k on the grid.
SampledFunction inverse(const SpectralVector& v, const GridSpec& grid, int threads = 1);

// | ||f||^2 - sum_j ||f_hat(j)||^2 | / ||f||^2 with the L^2 norm by grid
// quadrature. Returns 0 for the zero function.
double plancherel_residual(const ModelOperator& op, const SampledFunction& f, int j_max,
                           int threads = 1);

// L^2 norm of f by quadrature on its grid.
double grid_l2_norm(const SampledFunction& f);

// Scales block j by lambda_j^m (exactly, via the integer exponent).
SpectralVector apply_power(const SpectralVector& v, long long m);

// log ||E^0 v||_{L^2} = log sqrt(sum_j ||v(j)||^2), safe for huge offsets.
double log_l2_norm(const SpectralVector& v);

// Multiplies mode (k1, k2) by (i k1)^a1 (i k2)^a2 (circle: a2 must be 0).
// Rejected on the sphere.
SpectralVector apply_derivative(const SpectralVector& v, std::array<int, 2> alpha);

}  // namespace specreg
