#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "specreg/transform.hpp"
#include "specreg/weights.hpp"

namespace specreg {

// splitmix64: the fixture generator. Stateless per-draw streams keyed by
// (seed, level, mode) keep synthesized data identical regardless of
// evaluation order or thread count.
std::uint64_t splitmix64(std::uint64_t& state);
double uniform01(std::uint64_t seed, std::uint64_t stream_a, std::uint64_t stream_b);

enum class ProfileModel { Exponential, Associated, Polynomial };
enum class PhaseMode { Zero, Random };
enum class SplitMode { FirstModeOnly, Equal, Random };

// Target HS-norm profile per level:
//   Exponential: exp(-L * lambda^{g/nu})
//   Associated:  exp(-M(L * lambda^{1/nu})) for the given weights
//   Polynomial:  (1 + lambda)^{-p}
struct DecayProfile {
  ProfileModel model = ProfileModel::Exponential;
  double L = 1.0;           // Exponential/Associated rate
  double g = 1.0;           // Exponential exponent (g = 1/s)
  double p = 1.0;           // Polynomial order
  std::optional<WeightSequence> weights;  // Associated only; must be certified
  PhaseMode phase = PhaseMode::Random;
  SplitMode split = SplitMode::Equal;
  std::uint64_t seed = 0;

  // log target HS norm at eigenvalue lambda (nu = operator order)
  double log_target(double lambda, int nu) const;
};

// Coefficients whose per-level HS norms match the profile exactly (phases
// and multiplicity splits preserve the norm). Reproducible under fixed seed.
SpectralVector from_profile(const ModelOperator& op, const DecayProfile& profile, int j_max);

// Circle Poisson kernel (1-r^2)/(1-2r cos x + r^2): samples on an n-point
// grid plus the exact coefficients sqrt(2 pi) r^{|k|} up to j_max.
std::pair<SampledFunction, SpectralVector> poisson_kernel(double r, int j_max, int n_samples);

// Functional u = delta_{x0}: u_hat(j,k) = conj(e_j^k(x0)).
SpectralVector delta_at(const ModelOperator& op, Point x0, int j_max);

// Random band-limited function: coefficients with moduli in [0.5, 1] and
// random phases at every mode with level <= j_max.
SpectralVector random_band_limited(const ModelOperator& op, int j_max, std::uint64_t seed);

}  // namespace specreg
