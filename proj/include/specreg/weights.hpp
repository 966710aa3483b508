#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace specreg {

enum class WeightKind { Gevrey, Factorial, Custom };

// Witness constants for the stability conditions; H restricted to powers of
// two so certificates are reproducible. k_max_checked records how far the
// inequalities were verified; nothing is claimed beyond that range.
struct ConditionCertificate {
  bool m0 = false;
  bool m1_ok = false;
  double m1_A = 0.0, m1_H = 0.0;
  bool m2_ok = false;
  double m2_A = 0.0, m2_H = 0.0;
  bool log_convex = false;
  bool growth = false;          // k! <= C_l l^k M_k for some l in {1,2,4,8}, C_l <= 1e6
  double growth_C = 0.0;
  double growth_l = 0.0;
  int k_max_checked = 0;
  bool ok() const { return m0 && m1_ok && m2_ok && growth; }
};

// A positive weight sequence {M_k} with M_0 = 1, stored as log M_k.
//
// The table extends on demand. Extension mutates shared state, so concurrent
// readers must call ensure(k) up front; after that, log_at stays read-only
// for indices below the ensured bound. Custom tables continue past their
// last given entry by the documented log-convex rule
//   M_{k+1} = M_k * (M_k / M_{k-1}) * (k+1)/k.
class WeightSequence {
 public:
  static WeightSequence gevrey(double s, int nu);
  static WeightSequence factorial(int nu);                       // Gevrey(1)
  static WeightSequence custom(const std::vector<double>& m_values, int nu);
  static WeightSequence custom_log(const std::vector<double>& log_m_values, int nu);

  WeightKind kind() const { return kind_; }
  double gevrey_s() const { return s_; }
  int nu() const { return nu_; }

  double log_at(int k) const;   // log M_k, extending the table if needed
  double log_at_big(long long k) const;  // closed form past the table cap
  void ensure(int k_max) const;
  int table_size() const;

  const std::optional<ConditionCertificate>& certificate() const { return cert_; }
  void set_certificate(const ConditionCertificate& c) { cert_ = c; }

  // Structured text record {kind, s?, nu, table}; see read_weights.
  void write(std::ostream& os, int k_max = 32) const;

 private:
  WeightSequence() = default;
  struct Table;
  WeightKind kind_ = WeightKind::Factorial;
  double s_ = 1.0;
  int nu_ = 1;
  std::shared_ptr<Table> table_;
  std::optional<ConditionCertificate> cert_;
};

WeightSequence make_weights(WeightKind kind, double s, int nu);
WeightSequence read_weights(std::istream& is);

// Verifies (M.0), (M.1), (M.2), logarithmic convexity and the standing
// growth assumption for k <= k_max. Requires k_max >= 4. Finds the smallest
// dyadic H (A capped at 1e6) witnessing each stability condition.
ConditionCertificate check_conditions(const WeightSequence& w, int k_max);

// Direct log-space check of M_{2k} <= A H^{2k} M_k^2 on k <= k_max.
bool holds_m2(const WeightSequence& w, double A, double H, int k_max);
bool holds_m1(const WeightSequence& w, double A, double H, int k_max);

// Largest log-convex minorant of {(k, log M_k)} for k <= k_max, as a custom
// sequence. Idempotent; leaves log-convex input unchanged; keeps M_0 = 1.
WeightSequence log_convex_regularize(const WeightSequence& w, int k_max);

// Associated function M(r) = sup_{k >= 0} log( r^{nu k} / M_{nu k} ),
// with M(0) = 0. Nondecreasing and nonnegative.
class AssociatedFunction {
 public:
  explicit AssociatedFunction(WeightSequence w);

  const WeightSequence& weights() const { return w_; }
  int nu() const { return w_.nu(); }

  double value(double r) const;    // M(r)
  long long argmax(double r) const;  // maximizing k for the last convention

  struct Eval {
    double m = 0.0;
    long long k_star = 0;
  };
  Eval evaluate(double r) const;

  // Pre-extends the weight table for evaluations with r <= r_max; afterwards
  // value() is read-only for such r (shareable across threads).
  void ensure(double r_max) const;

 private:
  Eval eval_scan(double log_r) const;    // forward scan, any sequence
  Eval eval_convex(double log_r) const;  // binary search on the difference sign
  double term(long long k, double log_r) const;

  struct Cache;
  WeightSequence w_;
  bool convex_ = false;
  std::shared_ptr<Cache> cache_;
};

struct GevreyBoundsReport {
  std::vector<double> r_checked;
  std::vector<double> m_values;
  std::vector<double> violations_lower;  // r where s/(4 nu e) r^{1/s} > M(r)
  std::vector<double> violations_upper;  // r where M(r) > s r^{1/s}
  std::vector<double> violations_aux;    // r where inf_p (nu p)^{nu p s} r^{-nu p} > exp(-(s/(4 nu e)) r^{1/s})
  bool ok() const {
    return violations_lower.empty() && violations_upper.empty() && violations_aux.empty();
  }
};

// Checks s/(4 nu e) r^{1/s} <= M(r) <= s r^{1/s} for Gevrey(s) weights at the
// given grid points, plus the auxiliary inf_p inequality (brute-force inf).
// The lower and auxiliary inequalities hold from moderate r on (r >= 10 for
// s <= 3, nu = 2); callers choose the grid accordingly.
GevreyBoundsReport gevrey_bounds_check(double s, int nu, const std::vector<double>& r_grid);

struct SuppressionReport {
  double sup = 0.0;            // max over levels of lambda^q exp(-delta M(L lambda^{1/nu}))
  std::size_t argmax_index = 0;
  bool eventually_decreasing = false;  // strictly decreasing over the last quarter
  std::vector<double> values;
};

// Evaluates lambda^q exp(-delta M(L lambda^{1/nu})) over the supplied levels.
SuppressionReport ev_suppression_check(const AssociatedFunction& af, double q, double L,
                                       double delta, const std::vector<double>& levels);

}  // namespace specreg
