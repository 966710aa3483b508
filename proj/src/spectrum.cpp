#include "specreg/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "specreg/legendre.hpp"
#include "specreg/numerics.hpp"

namespace specreg {

std::string manifold_name(Manifold m) {
  switch (m) {
    case Manifold::Circle: return "circle";
    case Manifold::Torus2: return "torus2";
    case Manifold::Sphere2: return "sphere2";
  }
  return "?";
}

Manifold manifold_from_name(const std::string& name) {
  if (name == "circle") return Manifold::Circle;
  if (name == "torus2") return Manifold::Torus2;
  if (name == "sphere2") return Manifold::Sphere2;
  throw std::invalid_argument("unknown manifold '" + name + "'");
}

ModelOperator::ModelOperator(Manifold m, double shift) : manifold_(m), shift_(shift) {
  if (shift < 0.0) throw std::invalid_argument("ModelOperator: shift >= 0 required");
  n_ = (m == Manifold::Circle) ? 1 : 2;
}

namespace {

std::vector<SpectrumLevel> circle_levels(int j_hi, double shift) {
  std::vector<SpectrumLevel> out;
  out.reserve(static_cast<std::size_t>(j_hi) + 1);
  for (int j = 0; j <= j_hi; ++j) {
    SpectrumLevel lv;
    lv.j = j;
    lv.lambda = static_cast<double>(j) * j + shift;
    if (j == 0) {
      lv.d = 1;
      lv.labels = {{0, 0}};
    } else {
      lv.d = 2;
      lv.labels = {{-j, 0}, {j, 0}};
    }
    out.push_back(std::move(lv));
  }
  return out;
}

std::vector<SpectrumLevel> sphere_levels(int l_hi, double shift) {
  std::vector<SpectrumLevel> out;
  out.reserve(static_cast<std::size_t>(l_hi) + 1);
  for (int l = 0; l <= l_hi; ++l) {
    SpectrumLevel lv;
    lv.j = l;
    lv.lambda = static_cast<double>(l) * (l + 1.0) + shift;
    lv.d = 2 * l + 1;
    lv.labels.reserve(lv.d);
    for (int m = -l; m <= l; ++m) lv.labels.push_back({l, m});
    out.push_back(std::move(lv));
  }
  return out;
}

// Distinct values of k1^2 + k2^2 up to n_max with their lattice points.
std::vector<SpectrumLevel> torus_levels(long long n_max, double shift) {
  const int kmax = static_cast<int>(std::sqrt(static_cast<double>(n_max))) + 1;
  std::map<long long, std::vector<ModeLabel>> groups;
  for (int k1 = -kmax; k1 <= kmax; ++k1) {
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      const long long n = static_cast<long long>(k1) * k1 + static_cast<long long>(k2) * k2;
      if (n <= n_max) groups[n].push_back({k1, k2});
    }
  }
  std::vector<SpectrumLevel> out;
  out.reserve(groups.size());
  int j = 0;
  for (auto& [n, labels] : groups) {
    SpectrumLevel lv;
    lv.j = j++;
    lv.lambda = static_cast<double>(n) + shift;
    std::sort(labels.begin(), labels.end(),
              [](const ModeLabel& a, const ModeLabel& b) {
                return a.a != b.a ? a.a < b.a : a.b < b.b;
              });
    lv.d = static_cast<int>(labels.size());
    lv.labels = std::move(labels);
    out.push_back(std::move(lv));
  }
  return out;
}

}  // namespace

std::vector<SpectrumLevel> ModelOperator::enumerate_levels(double lambda_max) const {
  if (!(lambda_max > 0.0)) throw std::invalid_argument("enumerate_levels: lambda_max > 0 required");
  const double base = lambda_max - shift_;  // threshold on the unshifted eigenvalue
  switch (manifold_) {
    case Manifold::Circle: {
      if (base < 0.0) return {};
      return circle_levels(static_cast<int>(std::floor(std::sqrt(base))), shift_);
    }
    case Manifold::Sphere2: {
      if (base < 0.0) return {};
      const int l_hi = static_cast<int>(std::floor((std::sqrt(1.0 + 4.0 * base) - 1.0) / 2.0));
      return sphere_levels(l_hi, shift_);
    }
    case Manifold::Torus2: {
      if (base < 0.0) return {};
      return torus_levels(static_cast<long long>(std::floor(base)), shift_);
    }
  }
  throw std::logic_error("enumerate_levels: bad manifold");
}

std::vector<SpectrumLevel> ModelOperator::enumerate_first(int count) const {
  if (count < 1) throw std::invalid_argument("enumerate_first: count >= 1 required");
  switch (manifold_) {
    case Manifold::Circle: return circle_levels(count - 1, shift_);
    case Manifold::Sphere2: return sphere_levels(count - 1, shift_);
    case Manifold::Torus2: {
      // Grow lambda until enough distinct levels exist. Sums of two squares
      // have positive density, so a few doublings suffice.
      long long n_max = std::max(4 * count, 16);
      for (;;) {
        auto lv = torus_levels(n_max, shift_);
        if (static_cast<int>(lv.size()) >= count) {
          lv.resize(count);
          return lv;
        }
        n_max *= 2;
      }
    }
  }
  throw std::logic_error("enumerate_first: bad manifold");
}

std::vector<LevelInfo> ModelOperator::level_infos(double lambda_max) const {
  std::vector<LevelInfo> out;
  const double base = lambda_max - shift_;
  if (base < 0.0) return out;
  switch (manifold_) {
    case Manifold::Circle: {
      const int j_hi = static_cast<int>(std::floor(std::sqrt(base)));
      for (int j = 0; j <= j_hi; ++j)
        out.push_back({j, static_cast<double>(j) * j + shift_, j == 0 ? 1 : 2});
      return out;
    }
    case Manifold::Sphere2: {
      const int l_hi = static_cast<int>(std::floor((std::sqrt(1.0 + 4.0 * base) - 1.0) / 2.0));
      for (int l = 0; l <= l_hi; ++l)
        out.push_back({l, static_cast<double>(l) * (l + 1.0) + shift_, 2 * l + 1});
      return out;
    }
    case Manifold::Torus2: {
      // Sieve r2(n) for n <= base.
      const long long n_max = static_cast<long long>(std::floor(base));
      std::vector<int> r2(static_cast<std::size_t>(n_max) + 1, 0);
      const int kmax = static_cast<int>(std::sqrt(static_cast<double>(n_max))) + 1;
      for (int k1 = -kmax; k1 <= kmax; ++k1) {
        const long long a = static_cast<long long>(k1) * k1;
        if (a > n_max) continue;
        for (int k2 = -kmax; k2 <= kmax; ++k2) {
          const long long n = a + static_cast<long long>(k2) * k2;
          if (n <= n_max) ++r2[static_cast<std::size_t>(n)];
        }
      }
      int j = 0;
      for (long long n = 0; n <= n_max; ++n) {
        if (r2[static_cast<std::size_t>(n)] > 0)
          out.push_back({j++, static_cast<double>(n) + shift_, r2[static_cast<std::size_t>(n)]});
      }
      return out;
    }
  }
  throw std::logic_error("level_infos: bad manifold");
}

std::complex<double> ModelOperator::basis_eval(const SpectrumLevel& level, int mode_index,
                                               Point p) const {
  if (mode_index < 0 || mode_index >= level.d)
    throw std::out_of_range("basis_eval: mode_index out of range");
  const ModeLabel lab = level.labels[static_cast<std::size_t>(mode_index)];
  switch (manifold_) {
    case Manifold::Circle: {
      const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
      const double ph = lab.a * p.x;
      return {norm * std::cos(ph), norm * std::sin(ph)};
    }
    case Manifold::Torus2: {
      const double norm = 1.0 / (2.0 * std::numbers::pi);
      const double ph = lab.a * p.x + lab.b * p.y;
      return {norm * std::cos(ph), norm * std::sin(ph)};
    }
    case Manifold::Sphere2: {
      const int l = lab.a, m = lab.b;
      const int am = std::abs(m);
      double pl = legendre_single(l, am, std::cos(p.x));
      if (m < 0 && (am % 2 == 1)) pl = -pl;  // Y_l^{-m} = (-1)^m conj(Y_l^m)
      const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
      const double ph = m * p.y;
      return {norm * pl * std::cos(ph), norm * pl * std::sin(ph)};
    }
  }
  throw std::logic_error("basis_eval: bad manifold");
}

WeylReport weyl_checks(const ModelOperator& op, double lambda_max) {
  const auto levels = op.level_infos(lambda_max);
  if (levels.size() < 20)
    throw std::invalid_argument("weyl_checks: lambda_max must cover at least 20 levels");
  WeylReport rep;
  rep.levels_checked = static_cast<int>(levels.size());
  const double expo = static_cast<double>(op.dim()) / op.order();

  double cmax = 0.0;
  for (const auto& lv : levels)
    cmax = std::max(cmax, lv.d / std::pow(1.0 + lv.lambda, expo));
  rep.multiplicity_witness = cmax;

  for (double q : {expo - 0.25, expo + 0.25, expo + 1.0}) {
    WeylReport::SumDiagnostic diag;
    diag.q = q;
    std::vector<double> terms;
    terms.reserve(levels.size());
    for (const auto& lv : levels) terms.push_back(lv.d * std::pow(1.0 + lv.lambda, -q));
    diag.partial_sum = pairwise_sum(terms);
    // Dyadic blocks over lambda; diagnostics use the trailing blocks.
    std::map<int, double> blocks;
    double max_last = 0.0;
    const double top = levels.back().lambda;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const double lam = std::max(levels[i].lambda, 1.0);
      blocks[static_cast<int>(std::floor(std::log2(lam)))] += terms[i];
      if (levels[i].lambda > top / 2.0) max_last = std::max(max_last, terms[i]);
    }
    diag.max_term_last_block = max_last;
    std::vector<double> bs;
    for (auto& [e, v] : blocks) bs.push_back(v);
    if (bs.size() >= 5) {
      // last block may straddle the cut; use the four before it
      const std::size_t n = bs.size() - 1;
      diag.last_block_ratio = bs[n - 1] / bs[n - 2];
      diag.blocks_increasing =
          bs[n - 3] > bs[n - 4] && bs[n - 2] > bs[n - 3] && bs[n - 1] > bs[n - 2];
      diag.converged_marker = diag.last_block_ratio < 1.0 && !diag.blocks_increasing;
    }
    rep.sums.push_back(diag);
  }

  // Sup-norm growth: per-level max of |e_j^k| over a dense grid. Constant on
  // the circle and torus; on the sphere scan colatitude for each order m.
  const double sup_expo = (op.dim() - 1.0) / (2.0 * op.order());
  std::vector<double> log_lam, log_sup;
  double cwit = 0.0;
  if (op.manifold() == Manifold::Sphere2) {
    const int l_cap = std::min<int>(static_cast<int>(levels.size()) - 1, 200);
    const int nx = 512;  // includes both poles
    std::vector<double> mx(static_cast<std::size_t>(l_cap) + 1, 0.0);
    std::vector<double> row;
    for (int ix = 0; ix <= nx; ++ix) {
      const double x = -1.0 + 2.0 * ix / nx;
      for (int m = 0; m <= l_cap; ++m) {
        legendre_row(m, l_cap, x, row);
        for (int l = m; l <= l_cap; ++l)
          mx[static_cast<std::size_t>(l)] = std::max(
              mx[static_cast<std::size_t>(l)], std::abs(row[static_cast<std::size_t>(l - m)]));
      }
    }
    for (int l = 1; l <= l_cap; ++l) {
      const double sup = mx[static_cast<std::size_t>(l)] / std::sqrt(2.0 * std::numbers::pi);
      const double lam = levels[static_cast<std::size_t>(l)].lambda;
      cwit = std::max(cwit, sup / std::pow(lam, sup_expo));
      if (l >= l_cap / 4) {
        log_lam.push_back(std::log(lam));
        log_sup.push_back(std::log(sup));
      }
    }
  } else {
    const double c = (op.manifold() == Manifold::Circle)
                         ? 1.0 / std::sqrt(2.0 * std::numbers::pi)
                         : 1.0 / (2.0 * std::numbers::pi);
    const std::size_t cap = std::min<std::size_t>(levels.size(), 201);
    for (std::size_t i = 1; i < cap; ++i) {
      const double lam = levels[i].lambda;
      cwit = std::max(cwit, c / std::pow(lam, sup_expo));
      log_lam.push_back(std::log(lam));
      log_sup.push_back(std::log(c));
    }
  }
  rep.supnorm_witness = cwit;
  rep.supnorm_exponent_fit = linear_fit(log_lam, log_sup).slope;
  return rep;
}

}  // namespace specreg
