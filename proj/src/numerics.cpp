#include "specreg/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace specreg {

double pairwise_sum(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

double log_sum_exp(std::span<const double> v) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : v)
    if (x > mx) mx = x;
  if (!std::isfinite(mx)) return mx;
  std::vector<double> terms;
  terms.reserve(v.size());
  for (double x : v) terms.push_back(std::isfinite(x) ? std::exp(x - mx) : 0.0);
  return mx + std::log(pairwise_sum(terms));
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("linear_fit: need matching inputs, n >= 2");
  const std::size_t n = x.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) { sx += x[i]; sy += y[i]; }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissa");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / n);
  fit.n = n;
  return fit;
}

double theil_sen_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("theil_sen_slope: need matching inputs, n >= 2");
  std::vector<double> slopes;
  slopes.reserve(x.size() * (x.size() - 1) / 2);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (x[j] != x[i]) slopes.push_back((y[j] - y[i]) / (x[j] - x[i]));
  if (slopes.empty()) throw std::invalid_argument("theil_sen_slope: all abscissae equal");
  const std::size_t m = slopes.size();
  std::nth_element(slopes.begin(), slopes.begin() + m / 2, slopes.end());
  double hi = slopes[m / 2];
  if (m % 2 == 1) return hi;
  std::nth_element(slopes.begin(), slopes.begin() + (m / 2 - 1), slopes.begin() + m / 2);
  return 0.5 * (slopes[m / 2 - 1] + hi);
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void parallel_for(std::size_t n, int nthreads, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  if (nthreads <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t t = std::min<std::size_t>(nthreads, n);
  std::vector<std::thread> pool;
  pool.reserve(t);
  std::exception_ptr err;
  std::mutex err_mu;
  for (std::size_t w = 0; w < t; ++w) {
    const std::size_t lo = n * w / t, hi = n * (w + 1) / t;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> g(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace specreg
