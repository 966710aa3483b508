#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace specreg {

// Pairwise summation. Fixed reduction order, so results do not depend on
// thread count or chunking decisions made by callers.
double pairwise_sum(std::span<const double> v);

// log(sum(exp(v_i))) ignoring -inf entries; returns -inf for an empty/all-inf input.
double log_sum_exp(std::span<const double> v);

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double rms = 0.0;  // RMS residual
  std::size_t n = 0;
};

// Ordinary least squares y ~ intercept + slope * x. Requires n >= 2.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

// Median of pairwise slopes. Requires at least two distinct x values.
double theil_sen_slope(std::span<const double> x, std::span<const double> y);

// Minimize a unimodal function on [lo, hi] by golden-section search.
// Runs a coarse grid pre-scan first so mildly multimodal objectives land
// in the right basin. Deterministic.
template <class F>
double golden_minimize(F&& f, double lo, double hi, double tol = 1e-6, int grid = 24) {
  double best_x = lo, best_f = f(lo);
  for (int i = 1; i <= grid; ++i) {
    double x = lo + (hi - lo) * i / grid;
    double fx = f(x);
    if (fx < best_f) { best_f = fx; best_x = x; }
  }
  double a = best_x - (hi - lo) / grid;
  double b = best_x + (hi - lo) / grid;
  if (a < lo) a = lo;
  if (b > hi) b = hi;
  const double phi = 0.6180339887498949;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - phi * (b - a); f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + phi * (b - a); f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

// Format a double with 17 significant digits (round-trips exactly).
std::string format_g17(double v);

// Run fn(i) for i in [0, n) split across nthreads contiguous chunks.
// Each index is processed exactly once; writers must target disjoint slots.
void parallel_for(std::size_t n, int nthreads, const std::function<void(std::size_t)>& fn);

}  // namespace specreg
