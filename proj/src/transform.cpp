#include "specreg/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "specreg/fft.hpp"
#include "specreg/legendre.hpp"
#include "specreg/numerics.hpp"

namespace specreg {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// lambda^p by repeated squaring (exact when representable).
double pow_int(double x, long long p) {
  if (p == 0) return 1.0;
  bool inv = p < 0;
  unsigned long long e = inv ? -static_cast<unsigned long long>(p) : p;
  double acc = 1.0, base = x;
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return inv ? 1.0 / acc : acc;
}
}  // namespace

SpectralVector::SpectralVector(ModelOperator op, std::vector<SpectrumLevel> levels,
                               std::vector<Block> blocks)
    : op_(op), levels_(std::move(levels)), blocks_(std::move(blocks)) {
  if (levels_.size() != blocks_.size())
    throw std::invalid_argument("SpectralVector: levels/blocks size mismatch");
  for (std::size_t j = 0; j < levels_.size(); ++j)
    if (static_cast<int>(blocks_[j].values.size()) != levels_[j].d)
      throw std::invalid_argument("SpectralVector: block length must equal multiplicity");
}

double SpectralVector::log_offset(std::size_t j) const {
  const Block& b = blocks_[j];
  if (b.power == 0) return b.log_scale;
  const double lam = levels_[j].lambda;
  if (lam == 0.0) return -std::numeric_limits<double>::infinity();
  return b.log_scale + static_cast<double>(b.power) * std::log(lam);
}

double SpectralVector::hs_norm(std::size_t j) const {
  const Block& b = blocks_[j];
  double s2 = 0.0;
  for (const auto& z : b.values) s2 += std::norm(z);
  double raw = std::sqrt(s2);
  if (b.power == 0 && b.log_scale == 0.0) return raw;
  const double lo = log_offset(j);
  if (lo == -std::numeric_limits<double>::infinity()) return 0.0;
  return raw * std::exp(lo);
}

double SpectralVector::log_hs_norm(std::size_t j) const {
  const Block& b = blocks_[j];
  double s2 = 0.0;
  for (const auto& z : b.values) s2 += std::norm(z);
  if (s2 == 0.0) return -std::numeric_limits<double>::infinity();
  return 0.5 * std::log(s2) + log_offset(j);
}

std::complex<double> SpectralVector::coeff(std::size_t j, int k) const {
  const Block& b = blocks_[j];
  const auto z = b.values[static_cast<std::size_t>(k)];
  if (b.power == 0 && b.log_scale == 0.0) return z;
  const double lam = levels_[j].lambda;
  double scale;
  if (b.power != 0 && lam == 0.0) {
    scale = 0.0;
  } else if (b.log_scale == 0.0) {
    scale = pow_int(lam, b.power);
  } else {
    const double lo = log_offset(j);
    scale = std::exp(lo);
  }
  if (!std::isfinite(scale))
    throw std::overflow_error("SpectralVector::coeff: offset overflows double range");
  return z * scale;
}

bool SpectralVector::is_zero() const {
  for (std::size_t j = 0; j < levels_.size(); ++j)
    for (const auto& z : blocks_[j].values)
      if (z != std::complex<double>(0.0, 0.0)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// grids and quadrature

namespace {

void check_grid(const GridSpec& g, Manifold m) {
  if (g.manifold != m) throw std::invalid_argument("grid manifold mismatch");
  if (g.n1 < 1 || g.n2 < 1) throw std::invalid_argument("grid: empty dimension");
}

int max_frequency(const std::vector<SpectrumLevel>& levels, Manifold m) {
  int mx = 0;
  for (const auto& lv : levels)
    for (const auto& lab : lv.labels) {
      if (m == Manifold::Circle)
        mx = std::max(mx, std::abs(lab.a));
      else
        mx = std::max({mx, std::abs(lab.a), std::abs(lab.b)});
    }
  return mx;
}

// ring DFT helper: computes g_m = sum_p f_p exp(-i m phi_p) for m in
// [-m_max, m_max], phi_p = 2 pi p / n.
struct RingTransform {
  std::vector<std::complex<double>> bins;  // size n, index m mod n
  int n = 0;
  void run(const std::complex<double>* f, int n_) {
    n = n_;
    bins.assign(f, f + n);
    dft(bins, -1);
  }
  std::complex<double> get(int m) const {
    int idx = m % n;
    if (idx < 0) idx += n;
    return bins[static_cast<std::size_t>(idx)];
  }
};

}  // namespace

SpectralVector forward(const ModelOperator& op, const SampledFunction& f, int j_max,
                       int threads) {
  check_grid(f.grid, op.manifold());
  if (f.values.size() != f.grid.size())
    throw std::invalid_argument("forward: sample count does not match grid");
  auto levels = op.enumerate_first(j_max + 1);
  const int kf = max_frequency(levels, op.manifold());

  std::vector<Block> blocks(levels.size());
  for (std::size_t j = 0; j < levels.size(); ++j)
    blocks[j].values.assign(static_cast<std::size_t>(levels[j].d), {0.0, 0.0});

  switch (op.manifold()) {
    case Manifold::Circle: {
      const int n = f.grid.n1;
      if (n < 2 * kf + 1)
        throw std::invalid_argument("forward: circle grid too coarse for the requested band");
      RingTransform rt;
      rt.run(f.values.data(), n);
      const double w = kTwoPi / n / std::sqrt(kTwoPi);  // quadrature x basis norm
      for (std::size_t j = 0; j < levels.size(); ++j)
        for (int k = 0; k < levels[j].d; ++k)
          blocks[j].values[static_cast<std::size_t>(k)] =
              w * rt.get(levels[j].labels[static_cast<std::size_t>(k)].a);
      break;
    }
    case Manifold::Torus2: {
      const int n1 = f.grid.n1, n2 = f.grid.n2;
      if (n1 < 2 * kf + 1 || n2 < 2 * kf + 1)
        throw std::invalid_argument("forward: torus grid too coarse for the requested band");
      // separable DFT: rows then columns
      std::vector<std::complex<double>> rowed(f.values);
      std::vector<std::complex<double>> buf;
      for (int a = 0; a < n1; ++a) {
        buf.assign(rowed.begin() + static_cast<std::ptrdiff_t>(a) * n2,
                   rowed.begin() + static_cast<std::ptrdiff_t>(a + 1) * n2);
        dft(buf, -1);
        std::copy(buf.begin(), buf.end(), rowed.begin() + static_cast<std::ptrdiff_t>(a) * n2);
      }
      // columns: gather, transform, scatter
      std::vector<std::complex<double>> col(static_cast<std::size_t>(n1));
      std::vector<std::complex<double>> full(static_cast<std::size_t>(n1) * n2);
      for (int b = 0; b < n2; ++b) {
        for (int a = 0; a < n1; ++a) col[static_cast<std::size_t>(a)] = rowed[static_cast<std::size_t>(a) * n2 + b];
        dft(col, -1);
        for (int a = 0; a < n1; ++a) full[static_cast<std::size_t>(a) * n2 + b] = col[static_cast<std::size_t>(a)];
      }
      const double w = kTwoPi / n1 * kTwoPi / n2 / kTwoPi;  // quadrature x (2pi)^{-1}
      for (std::size_t j = 0; j < levels.size(); ++j) {
        for (int k = 0; k < levels[j].d; ++k) {
          const auto lab = levels[j].labels[static_cast<std::size_t>(k)];
          int ia = lab.a % n1;
          if (ia < 0) ia += n1;
          int ib = lab.b % n2;
          if (ib < 0) ib += n2;
          blocks[j].values[static_cast<std::size_t>(k)] =
              w * full[static_cast<std::size_t>(ia) * n2 + ib];
        }
      }
      break;
    }
    case Manifold::Sphere2: {
      const int nt = f.grid.n1, np = f.grid.n2;
      const int l_max = j_max;
      if (nt < l_max + 1 || np < 2 * kf + 1)
        throw std::invalid_argument("forward: sphere grid too coarse for the requested band");
      const GaussLegendre gl = gauss_legendre(nt);
      // ring transforms (theta rings ordered by ascending theta = descending x)
      std::vector<RingTransform> rings(static_cast<std::size_t>(nt));
      for (int t = 0; t < nt; ++t)
        rings[static_cast<std::size_t>(t)].run(f.values.data() + static_cast<std::ptrdiff_t>(t) * np, np);
      // per-order Legendre accumulation; parallel over m
      std::vector<std::vector<std::complex<double>>> gm(
          static_cast<std::size_t>(2 * l_max + 1));
      parallel_for(static_cast<std::size_t>(2 * l_max + 1), threads, [&](std::size_t mi) {
        const int m = static_cast<int>(mi) - l_max;
        const int am = std::abs(m);
        auto& acc = gm[mi];
        acc.assign(static_cast<std::size_t>(l_max - am + 1), {0.0, 0.0});
        std::vector<double> row;
        // accumulate per (l, m) with pairwise sums over the rings
        std::vector<std::vector<double>> res(static_cast<std::size_t>(l_max - am + 1),
                                             std::vector<double>(static_cast<std::size_t>(nt)));
        std::vector<std::vector<double>> ims(static_cast<std::size_t>(l_max - am + 1),
                                             std::vector<double>(static_cast<std::size_t>(nt)));
        for (int t = 0; t < nt; ++t) {
          const double x = gl.nodes[static_cast<std::size_t>(nt - 1 - t)];  // ring t has descending x
          legendre_row(am, l_max, x, row);
          std::complex<double> g = rings[static_cast<std::size_t>(t)].get(m);
          const double wq = gl.weights[static_cast<std::size_t>(nt - 1 - t)] * kTwoPi / np /
                            std::sqrt(kTwoPi);
          g *= wq;
          for (int l = am; l <= l_max; ++l) {
            double plm = row[static_cast<std::size_t>(l - am)];
            res[static_cast<std::size_t>(l - am)][static_cast<std::size_t>(t)] = plm * g.real();
            ims[static_cast<std::size_t>(l - am)][static_cast<std::size_t>(t)] = plm * g.imag();
          }
        }
        const double sign = (m < 0 && (am % 2 == 1)) ? -1.0 : 1.0;
        for (int l = am; l <= l_max; ++l)
          acc[static_cast<std::size_t>(l - am)] =
              sign * std::complex<double>(pairwise_sum(res[static_cast<std::size_t>(l - am)]),
                                          pairwise_sum(ims[static_cast<std::size_t>(l - am)]));
      });
      for (int l = 0; l <= l_max; ++l)
        for (int m = -l; m <= l; ++m)
          blocks[static_cast<std::size_t>(l)].values[static_cast<std::size_t>(m + l)] =
              gm[static_cast<std::size_t>(m + l_max)][static_cast<std::size_t>(l - std::abs(m))];
      break;
    }
  }
  return SpectralVector(op, std::move(levels), std::move(blocks));
}

SampledFunction inverse(const SpectralVector& v, const GridSpec& grid, int threads) {
  check_grid(grid, v.op().manifold());
  SampledFunction f;
  f.grid = grid;
  f.values.assign(grid.size(), {0.0, 0.0});
  const auto& levels = v.levels();

  switch (grid.manifold) {
    case Manifold::Circle: {
      const int n = grid.n1;
      std::vector<std::complex<double>> bins(static_cast<std::size_t>(n), {0.0, 0.0});
      for (std::size_t j = 0; j < levels.size(); ++j) {
        for (int k = 0; k < levels[j].d; ++k) {
          int idx = levels[j].labels[static_cast<std::size_t>(k)].a % n;
          if (idx < 0) idx += n;
          bins[static_cast<std::size_t>(idx)] += v.coeff(j, k);
        }
      }
      dft(bins, +1);
      const double norm = 1.0 / std::sqrt(kTwoPi);
      for (int i = 0; i < n; ++i) f.values[static_cast<std::size_t>(i)] = norm * bins[static_cast<std::size_t>(i)];
      break;
    }
    case Manifold::Torus2: {
      const int n1 = grid.n1, n2 = grid.n2;
      std::vector<std::complex<double>> bins(grid.size(), {0.0, 0.0});
      for (std::size_t j = 0; j < levels.size(); ++j) {
        for (int k = 0; k < levels[j].d; ++k) {
          const auto lab = levels[j].labels[static_cast<std::size_t>(k)];
          int ia = lab.a % n1;
          if (ia < 0) ia += n1;
          int ib = lab.b % n2;
          if (ib < 0) ib += n2;
          bins[static_cast<std::size_t>(ia) * n2 + ib] += v.coeff(j, k);
        }
      }
      std::vector<std::complex<double>> buf;
      for (int a = 0; a < n1; ++a) {
        buf.assign(bins.begin() + static_cast<std::ptrdiff_t>(a) * n2,
                   bins.begin() + static_cast<std::ptrdiff_t>(a + 1) * n2);
        dft(buf, +1);
        std::copy(buf.begin(), buf.end(), bins.begin() + static_cast<std::ptrdiff_t>(a) * n2);
      }
      std::vector<std::complex<double>> col(static_cast<std::size_t>(n1));
      for (int b = 0; b < n2; ++b) {
        for (int a = 0; a < n1; ++a) col[static_cast<std::size_t>(a)] = bins[static_cast<std::size_t>(a) * n2 + b];
        dft(col, +1);
        for (int a = 0; a < n1; ++a) bins[static_cast<std::size_t>(a) * n2 + b] = col[static_cast<std::size_t>(a)];
      }
      const double norm = 1.0 / kTwoPi;
      for (std::size_t i = 0; i < bins.size(); ++i) f.values[i] = norm * bins[i];
      break;
    }
    case Manifold::Sphere2: {
      const int nt = grid.n1, np = grid.n2;
      const int l_max = v.j_max();
      const GaussLegendre gl = gauss_legendre(nt);
      parallel_for(static_cast<std::size_t>(nt), threads, [&](std::size_t t) {
        std::vector<std::complex<double>> ring(static_cast<std::size_t>(np), {0.0, 0.0});
        const double x = gl.nodes[static_cast<std::size_t>(nt - 1 - t)];
        std::vector<double> row;
        for (int m = -l_max; m <= l_max; ++m) {
          const int am = std::abs(m);
          legendre_row(am, l_max, x, row);
          const double sign = (m < 0 && (am % 2 == 1)) ? -1.0 : 1.0;
          std::complex<double> s(0.0, 0.0);
          for (int l = am; l <= l_max; ++l)
            s += v.coeff(static_cast<std::size_t>(l), m + l) * row[static_cast<std::size_t>(l - am)];
          int idx = m % np;
          if (idx < 0) idx += np;
          ring[static_cast<std::size_t>(idx)] += sign * s / std::sqrt(kTwoPi);
        }
        dft(ring, +1);
        std::copy(ring.begin(), ring.end(),
                  f.values.begin() + static_cast<std::ptrdiff_t>(t) * np);
      });
      break;
    }
  }
  return f;
}

double grid_l2_norm(const SampledFunction& f) {
  std::vector<double> terms;
  terms.reserve(f.values.size());
  double w = 0.0;
  switch (f.grid.manifold) {
    case Manifold::Circle: {
      w = kTwoPi / f.grid.n1;
      for (const auto& z : f.values) terms.push_back(std::norm(z) * w);
      break;
    }
    case Manifold::Torus2: {
      w = kTwoPi / f.grid.n1 * (kTwoPi / f.grid.n2);
      for (const auto& z : f.values) terms.push_back(std::norm(z) * w);
      break;
    }
    case Manifold::Sphere2: {
      const GaussLegendre gl = gauss_legendre(f.grid.n1);
      const double wp = kTwoPi / f.grid.n2;
      for (int t = 0; t < f.grid.n1; ++t) {
        const double wq = gl.weights[static_cast<std::size_t>(f.grid.n1 - 1 - t)] * wp;
        for (int p = 0; p < f.grid.n2; ++p)
          terms.push_back(std::norm(f.values[static_cast<std::size_t>(t) * f.grid.n2 + p]) * wq);
      }
      break;
    }
  }
  return std::sqrt(pairwise_sum(terms));
}

double plancherel_residual(const ModelOperator& op, const SampledFunction& f, int j_max,
                           int threads) {
  const double nf = grid_l2_norm(f);
  if (nf == 0.0) return 0.0;
  SpectralVector v = forward(op, f, j_max, threads);
  std::vector<double> terms;
  terms.reserve(v.level_count());
  for (std::size_t j = 0; j < v.level_count(); ++j) {
    const double h = v.hs_norm(j);
    terms.push_back(h * h);
  }
  const double sum = pairwise_sum(terms);
  return std::abs(nf * nf - sum) / (nf * nf);
}

SpectralVector apply_power(const SpectralVector& v, long long m) {
  if (m < 0) throw std::invalid_argument("apply_power: m >= 0 required");
  SpectralVector out = v;
  if (m == 0) return out;
  for (std::size_t j = 0; j < out.level_count(); ++j) {
    Block& b = out.block(j);
    if (out.level(j).lambda == 0.0) {
      // E^m annihilates the kernel level
      std::fill(b.values.begin(), b.values.end(), std::complex<double>(0.0, 0.0));
      b.power = 0;
      b.log_scale = 0.0;
    } else {
      b.power += m;
    }
  }
  return out;
}

double log_l2_norm(const SpectralVector& v) {
  std::vector<double> terms;
  terms.reserve(v.level_count());
  for (std::size_t j = 0; j < v.level_count(); ++j) terms.push_back(2.0 * v.log_hs_norm(j));
  return 0.5 * log_sum_exp(terms);
}

SpectralVector apply_derivative(const SpectralVector& v, std::array<int, 2> alpha) {
  const Manifold m = v.op().manifold();
  if (m == Manifold::Sphere2)
    throw std::invalid_argument("apply_derivative: no global coordinate frame on the sphere");
  if (alpha[0] < 0 || alpha[1] < 0)
    throw std::invalid_argument("apply_derivative: multi-index must be nonnegative");
  if (m == Manifold::Circle && alpha[1] != 0)
    throw std::invalid_argument("apply_derivative: circle has a single frame field");
  SpectralVector out = v;
  auto cipow = [](std::complex<double> base, int e) {
    // (ik)^0 = 1 even for k = 0
    std::complex<double> acc(1.0, 0.0);
    for (int i = 0; i < e; ++i) acc *= base;
    return acc;
  };
  const std::complex<double> iu(0.0, 1.0);
  for (std::size_t j = 0; j < out.level_count(); ++j) {
    Block& b = out.block(j);
    for (int k = 0; k < out.level(j).d; ++k) {
      const auto lab = out.level(j).labels[static_cast<std::size_t>(k)];
      std::complex<double> factor = cipow(iu * static_cast<double>(lab.a), alpha[0]);
      factor *= cipow(iu * static_cast<double>(lab.b), alpha[1]);
      auto& z = b.values[static_cast<std::size_t>(k)];
      z *= factor;
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::overflow_error("apply_derivative: mode factor overflow");
    }
  }
  return out;
}

}  // namespace specreg
