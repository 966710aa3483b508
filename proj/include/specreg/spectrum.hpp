#pragma once

#include <complex>
#include <string>
#include <vector>

namespace specreg {

enum class Manifold { Circle, Torus2, Sphere2 };

std::string manifold_name(Manifold m);
Manifold manifold_from_name(const std::string& name);

// Mode identifiers: circle k = a; torus (k1, k2) = (a, b); sphere (l, m) = (a, b).
struct ModeLabel {
  int a = 0;
  int b = 0;
  friend bool operator==(const ModeLabel&, const ModeLabel&) = default;
};

struct SpectrumLevel {
  int j = 0;          // level index
  double lambda = 0;  // eigenvalue (includes shift)
  int d = 0;          // multiplicity
  std::vector<ModeLabel> labels;  // size d, fixed order (see basis_eval)
};

struct LevelInfo {
  int j = 0;
  double lambda = 0;
  int d = 0;
};

// Evaluation point: circle uses x; torus (x, y) in [0, 2pi)^2;
// sphere (theta, phi) with colatitude theta in [0, pi].
struct Point {
  double x = 0;
  double y = 0;
};

// Model operator E = -Delta + shift on the circle, flat 2-torus, or 2-sphere.
// Order nu = 2; eigenvalues are listed level by level (distinct values),
// multiplicities exact. Immutable; all operations are pure.
class ModelOperator {
 public:
  explicit ModelOperator(Manifold m, double shift = 0.0);

  Manifold manifold() const { return manifold_; }
  int dim() const { return n_; }
  int order() const { return 2; }
  double shift() const { return shift_; }

  // All levels with lambda <= lambda_max, ascending.
  std::vector<SpectrumLevel> enumerate_levels(double lambda_max) const;
  // First count levels (j = 0 .. count-1).
  std::vector<SpectrumLevel> enumerate_first(int count) const;
  // Level skeleton without labels; cheap at large scale.
  std::vector<LevelInfo> level_infos(double lambda_max) const;

  // Orthonormal basis value e_j^k(x) for the fixed convention:
  //   circle  e_k(x) = (2 pi)^{-1/2} exp(i k x)
  //   torus   e_k(x) = (2 pi)^{-1}   exp(i k . x)
  //   sphere  Y_l^m(theta, phi), orthonormal for the area measure
  // Labels are ordered: circle (-j, +j); torus lexicographic (k1, k2);
  // sphere m = -l .. l.
  std::complex<double> basis_eval(const SpectrumLevel& level, int mode_index, Point p) const;

 private:
  Manifold manifold_;
  int n_;
  double shift_;
};

struct WeylReport {
  // (a) multiplicity bound d_j <= C (1 + lambda_j)^{n/nu}: smallest witness C seen
  double multiplicity_witness = 0.0;
  // (b) partial sums of d_j (1 + lambda_j)^{-q}
  struct SumDiagnostic {
    double q = 0;
    double partial_sum = 0;
    double max_term_last_block = 0;   // sup of increments near truncation
    double last_block_ratio = 0;      // dyadic block-sum ratio B_last / B_prev
    bool blocks_increasing = false;   // monotone divergence marker (last 4 blocks)
    bool converged_marker = false;    // ratio < 1 and terms vanishing
  };
  std::vector<SumDiagnostic> sums;
  // (c) sup-norm bound ||e||_inf <= C lambda^{(n-1)/(2 nu)}
  double supnorm_witness = 0.0;
  double supnorm_exponent_fit = 0.0;  // log-log slope of the per-level sup norms
  int levels_checked = 0;
};

// Desk-scale verification of the multiplicity bound, the convergence
// criterion at q = n/nu -/+ 0.25 and n/nu + 1, and the eigenfunction
// sup-norm growth bound. lambda_max must cover at least 20 levels.
WeylReport weyl_checks(const ModelOperator& op, double lambda_max);

}  // namespace specreg
