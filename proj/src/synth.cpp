#include "specreg/synth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specreg {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t stream_a, std::uint64_t stream_b) {
  std::uint64_t s = seed;
  std::uint64_t z = splitmix64(s);
  s = z ^ stream_a;
  z = splitmix64(s);
  s = z ^ stream_b;
  z = splitmix64(s);
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

double DecayProfile::log_target(double lambda, int nu) const {
  switch (model) {
    case ProfileModel::Exponential:
      return -L * std::pow(lambda, g / nu);
    case ProfileModel::Polynomial:
      return -p * std::log1p(lambda);
    case ProfileModel::Associated: {
      if (!weights) throw std::invalid_argument("Associated profile: weights required");
      AssociatedFunction af(*weights);
      return -af.value(L * std::pow(lambda, 1.0 / nu));
    }
  }
  throw std::invalid_argument("DecayProfile: bad model");
}

SpectralVector from_profile(const ModelOperator& op, const DecayProfile& profile, int j_max) {
  if (profile.model == ProfileModel::Associated) {
    if (!profile.weights) throw std::invalid_argument("Associated profile: weights required");
    if (!profile.weights->certificate() || !profile.weights->certificate()->ok())
      throw std::invalid_argument("Associated profile: weights must carry a passing certificate");
  }
  // Associated evaluations share one function object (cache reuse).
  std::optional<AssociatedFunction> af;
  if (profile.model == ProfileModel::Associated) af.emplace(*profile.weights);

  auto levels = op.enumerate_first(j_max + 1);
  std::vector<Block> blocks(levels.size());
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const int d = levels[j].d;
    Block& b = blocks[j];
    b.values.assign(static_cast<std::size_t>(d), {0.0, 0.0});
    const double lam = levels[j].lambda;
    b.log_scale = af ? -af->value(profile.L * std::pow(lam, 1.0 / op.order()))
                     : profile.log_target(lam, op.order());

    // unit-HS-norm direction across the eigenspace
    std::vector<std::complex<double>> dir(static_cast<std::size_t>(d), {0.0, 0.0});
    switch (profile.split) {
      case SplitMode::FirstModeOnly:
        dir[0] = {1.0, 0.0};
        break;
      case SplitMode::Equal: {
        const double mag = 1.0 / std::sqrt(static_cast<double>(d));
        for (int k = 0; k < d; ++k) dir[static_cast<std::size_t>(k)] = {mag, 0.0};
        break;
      }
      case SplitMode::Random: {
        double s2 = 0.0;
        for (int k = 0; k < d; ++k) {
          const double u = uniform01(profile.seed, j, 2 * static_cast<std::uint64_t>(k));
          const double mag = 0.25 + 0.75 * u;
          dir[static_cast<std::size_t>(k)] = {mag, 0.0};
          s2 += mag * mag;
        }
        const double inv = 1.0 / std::sqrt(s2);
        for (auto& z : dir) z *= inv;
        break;
      }
    }
    if (profile.phase == PhaseMode::Random) {
      for (int k = 0; k < d; ++k) {
        const double th =
            2.0 * std::numbers::pi *
            uniform01(profile.seed, j, 2 * static_cast<std::uint64_t>(k) + 1);
        dir[static_cast<std::size_t>(k)] *= std::complex<double>(std::cos(th), std::sin(th));
      }
    }
    b.values = std::move(dir);
  }
  return SpectralVector(op, std::move(levels), std::move(blocks));
}

std::pair<SampledFunction, SpectralVector> poisson_kernel(double r, int j_max, int n_samples) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("poisson_kernel: r in (0,1) required");
  if (n_samples < 1) throw std::invalid_argument("poisson_kernel: n_samples >= 1 required");
  SampledFunction f;
  f.grid = GridSpec::circle(n_samples);
  f.values.resize(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double x = 2.0 * std::numbers::pi * i / n_samples;
    f.values[static_cast<std::size_t>(i)] = {
        (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(x) + r * r), 0.0};
  }
  ModelOperator op(Manifold::Circle);
  auto levels = op.enumerate_first(j_max + 1);
  std::vector<Block> blocks(levels.size());
  const double s2pi = std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t j = 0; j < levels.size(); ++j) {
    blocks[j].values.assign(static_cast<std::size_t>(levels[j].d), {0.0, 0.0});
    for (int k = 0; k < levels[j].d; ++k) {
      const int freq = levels[j].labels[static_cast<std::size_t>(k)].a;
      blocks[j].values[static_cast<std::size_t>(k)] = {
          s2pi * std::pow(r, std::abs(freq)), 0.0};
    }
  }
  return {std::move(f), SpectralVector(op, std::move(levels), std::move(blocks))};
}

SpectralVector delta_at(const ModelOperator& op, Point x0, int j_max) {
  auto levels = op.enumerate_first(j_max + 1);
  std::vector<Block> blocks(levels.size());
  for (std::size_t j = 0; j < levels.size(); ++j) {
    blocks[j].values.resize(static_cast<std::size_t>(levels[j].d));
    for (int k = 0; k < levels[j].d; ++k)
      blocks[j].values[static_cast<std::size_t>(k)] = std::conj(op.basis_eval(levels[j], k, x0));
  }
  return SpectralVector(op, std::move(levels), std::move(blocks));
}

SpectralVector random_band_limited(const ModelOperator& op, int j_max, std::uint64_t seed) {
  auto levels = op.enumerate_first(j_max + 1);
  std::vector<Block> blocks(levels.size());
  for (std::size_t j = 0; j < levels.size(); ++j) {
    blocks[j].values.resize(static_cast<std::size_t>(levels[j].d));
    for (int k = 0; k < levels[j].d; ++k) {
      const double mag = 0.5 + 0.5 * uniform01(seed, j, 2 * static_cast<std::uint64_t>(k));
      const double th = 2.0 * std::numbers::pi *
                        uniform01(seed, j, 2 * static_cast<std::uint64_t>(k) + 1);
      blocks[j].values[static_cast<std::size_t>(k)] = {mag * std::cos(th), mag * std::sin(th)};
    }
  }
  return SpectralVector(op, std::move(levels), std::move(blocks));
}

}  // namespace specreg
