#include "specreg/weights.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "specreg/numerics.hpp"

namespace specreg {

namespace {
constexpr double kConditionACap = 1e6;
constexpr int kHExpLo = -8;
constexpr int kHExpHi = 64;
// Forward scans bail out when a sequence grows too slowly to dominate r^{nu k};
// sized for the verification grids (r up to 1e6 at s = 1 needs k ~ 5e5).
constexpr long long kScanMax = 2'000'000;
// Explicit log-space tables are kept below this index; beyond it Gevrey and
// continued custom sequences use the closed form via lgamma.
constexpr int kTableCap = 4'000'000;
}  // namespace

struct WeightSequence::Table {
  std::vector<double> log_m;   // log M_k for k < log_m.size()
  int given = 0;               // entries fixed by the constructor (custom kind)
};

WeightSequence WeightSequence::gevrey(double s, int nu) {
  if (s < 1.0) throw std::invalid_argument("gevrey weights: s >= 1 required");
  if (nu < 1) throw std::invalid_argument("weights: nu >= 1 required");
  WeightSequence w;
  w.kind_ = (s == 1.0) ? WeightKind::Factorial : WeightKind::Gevrey;
  w.s_ = s;
  w.nu_ = nu;
  w.table_ = std::make_shared<Table>();
  w.table_->log_m = {0.0};
  w.table_->given = 1;
  return w;
}

WeightSequence WeightSequence::factorial(int nu) { return gevrey(1.0, nu); }

WeightSequence WeightSequence::custom(const std::vector<double>& m_values, int nu) {
  std::vector<double> logs;
  logs.reserve(m_values.size());
  for (double v : m_values) {
    if (!(v > 0.0)) throw std::invalid_argument("custom weights: entries must be positive");
    logs.push_back(std::log(v));
  }
  if (!logs.empty()) {
    if (m_values.front() != 1.0)
      throw std::invalid_argument("custom weights: M_0 = 1 required");
    logs.front() = 0.0;
  }
  return custom_log(logs, nu);
}

WeightSequence WeightSequence::custom_log(const std::vector<double>& log_m_values, int nu) {
  if (nu < 1) throw std::invalid_argument("weights: nu >= 1 required");
  if (log_m_values.size() < 2)
    throw std::invalid_argument("custom weights: need at least M_0, M_1");
  if (log_m_values.front() != 0.0)
    throw std::invalid_argument("custom weights: M_0 = 1 required");
  for (double lv : log_m_values)
    if (!std::isfinite(lv)) throw std::invalid_argument("custom weights: non-finite entry");
  WeightSequence w;
  w.kind_ = WeightKind::Custom;
  w.s_ = 0.0;
  w.nu_ = nu;
  w.table_ = std::make_shared<Table>();
  w.table_->log_m = log_m_values;
  w.table_->given = static_cast<int>(log_m_values.size());
  return w;
}

void WeightSequence::ensure(int k_max) const {
  if (k_max < 0) return;
  auto& t = *table_;
  if (static_cast<int>(t.log_m.size()) > k_max) return;
  const int target = std::min(k_max, kTableCap - 1);
  t.log_m.reserve(static_cast<std::size_t>(target) + 1);
  while (static_cast<int>(t.log_m.size()) <= target) {
    const int k = static_cast<int>(t.log_m.size());
    if (kind_ != WeightKind::Custom) {
      t.log_m.push_back(t.log_m.back() + s_ * std::log(static_cast<double>(k)));
    } else {
      // log-convex continuation: M_{k} = M_{k-1} * (M_{k-1}/M_{k-2}) * k/(k-1)
      const double g = t.log_m[k - 1] - t.log_m[k - 2];
      t.log_m.push_back(t.log_m[k - 1] + g +
                        std::log(static_cast<double>(k) / static_cast<double>(k - 1)));
    }
  }
}

double WeightSequence::log_at(int k) const {
  if (k < 0) throw std::invalid_argument("log_at: k >= 0 required");
  const auto& t = *table_;
  if (k < static_cast<int>(t.log_m.size())) return t.log_m[k];
  if (k < kTableCap) {
    ensure(k);
    return t.log_m[k];
  }
  return log_at_big(k);
}

// Closed forms for indices past the table cap (reached only inside huge-L
// associated-function searches).
double WeightSequence::log_at_big(long long k) const {
  if (k < kTableCap) return log_at(static_cast<int>(k));
  if (kind_ != WeightKind::Custom) return s_ * std::lgamma(static_cast<double>(k) + 1.0);
  ensure(kTableCap - 1);
  const auto& t = *table_;
  const long long base = kTableCap - 1;
  const double g = t.log_m[base] - t.log_m[base - 1];
  const double j = static_cast<double>(k - base);
  // Telescoped continuation: step i past the base adds g + log((base+i)/base).
  const double cum = std::lgamma(static_cast<double>(k) + 1.0) -
                     std::lgamma(static_cast<double>(base) + 1.0) -
                     j * std::log(static_cast<double>(base));
  return t.log_m[base] + j * g + cum;
}

int WeightSequence::table_size() const { return static_cast<int>(table_->log_m.size()); }

WeightSequence make_weights(WeightKind kind, double s, int nu) {
  switch (kind) {
    case WeightKind::Gevrey: return WeightSequence::gevrey(s, nu);
    case WeightKind::Factorial: return WeightSequence::factorial(nu);
    case WeightKind::Custom:
      throw std::invalid_argument("make_weights: use WeightSequence::custom for tables");
  }
  throw std::invalid_argument("make_weights: bad kind");
}

void WeightSequence::write(std::ostream& os, int k_max) const {
  os << "weights v1\n";
  switch (kind_) {
    case WeightKind::Gevrey: os << "kind gevrey\ns " << format_g17(s_) << "\n"; break;
    case WeightKind::Factorial: os << "kind factorial\n"; break;
    case WeightKind::Custom: os << "kind custom\n"; break;
  }
  os << "nu " << nu_ << "\n";
  const int n = (kind_ == WeightKind::Custom) ? std::max(table_->given - 1, k_max) : k_max;
  ensure(n);
  os << "kmax " << n << "\n";
  for (int k = 0; k <= n; ++k) os << "logM " << k << " " << format_g17(log_at(k)) << "\n";
}

WeightSequence read_weights(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "weights v1")
    throw std::runtime_error("weights file: bad magic (line 1)");
  std::string kind;
  double s = 1.0;
  int nu = -1, kmax = -1;
  std::vector<double> logs;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    auto fail = [&](const std::string& what) {
      throw std::runtime_error("weights file: " + what + " (line " + std::to_string(lineno) + ")");
    };
    if (tag == "kind") {
      if (!(ls >> kind)) fail("missing kind");
    } else if (tag == "s") {
      if (!(ls >> s)) fail("bad s");
    } else if (tag == "nu") {
      if (!(ls >> nu)) fail("bad nu");
    } else if (tag == "kmax") {
      if (!(ls >> kmax)) fail("bad kmax");
    } else if (tag == "logM") {
      int k;
      double v;
      if (!(ls >> k >> v)) fail("bad logM record");
      if (k != static_cast<int>(logs.size())) fail("logM records out of order");
      logs.push_back(v);
    } else {
      fail("unknown tag '" + tag + "'");
    }
  }
  if (nu < 1) throw std::runtime_error("weights file: missing nu");
  if (kind == "gevrey") return WeightSequence::gevrey(s, nu);
  if (kind == "factorial") return WeightSequence::factorial(nu);
  if (kind == "custom") {
    if (logs.size() < 2) throw std::runtime_error("weights file: custom table too short");
    if (logs.front() != 0.0)
      throw std::runtime_error("weights file: custom table violates M_0 = 1");
    return WeightSequence::custom_log(logs, nu);
  }
  throw std::runtime_error("weights file: unknown kind '" + kind + "'");
}

namespace {

// Smallest dyadic H whose required A stays under the cap, or nullopt.
// required_log_A(H) must be nonincreasing in H.
std::optional<std::pair<double, double>> dyadic_witness(
    const std::function<double(double)>& required_log_A) {
  for (int e = kHExpLo; e <= kHExpHi; ++e) {
    const double h = std::ldexp(1.0, e);
    const double la = required_log_A(h);
    if (la <= std::log(kConditionACap)) return std::make_pair(std::exp(std::max(la, 0.0)), h);
  }
  return std::nullopt;
}

}  // namespace

ConditionCertificate check_conditions(const WeightSequence& w, int k_max) {
  if (k_max < 4) throw std::invalid_argument("check_conditions: k_max >= 4 required");
  w.ensure(2 * k_max);
  ConditionCertificate cert;
  cert.k_max_checked = k_max;
  cert.m0 = (w.log_at(0) == 0.0);

  // (M.1): M_{k+1} <= A H^k M_k  ->  log A >= max_k (logM_{k+1} - logM_k - k log H)
  auto m1_req = [&](double h) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= k_max; ++k)
      worst = std::max(worst, w.log_at(k + 1) - w.log_at(k) - k * std::log(h));
    return worst;
  };
  if (auto wit = dyadic_witness(m1_req)) {
    cert.m1_ok = true;
    cert.m1_A = wit->first;
    cert.m1_H = wit->second;
  }

  // (M.2): M_{2k} <= A H^{2k} M_k^2
  auto m2_req = [&](double h) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= k_max; ++k)
      worst = std::max(worst, w.log_at(2 * k) - 2.0 * w.log_at(k) - 2.0 * k * std::log(h));
    return worst;
  };
  if (auto wit = dyadic_witness(m2_req)) {
    cert.m2_ok = true;
    cert.m2_A = wit->first;
    cert.m2_H = wit->second;
  }

  cert.log_convex = true;
  for (int k = 1; k < k_max; ++k) {
    if (2.0 * w.log_at(k) > w.log_at(k - 1) + w.log_at(k + 1) + 1e-12) {
      cert.log_convex = false;
      break;
    }
  }

  // standing growth assumption: k! <= C_l l^k M_k for some l in {1,2,4,8}
  double log_fact = 0.0;
  std::vector<double> req(4, -std::numeric_limits<double>::infinity());
  const double lvals[4] = {1.0, 2.0, 4.0, 8.0};
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) log_fact += std::log(static_cast<double>(k));
    for (int i = 0; i < 4; ++i)
      req[i] = std::max(req[i], log_fact - k * std::log(lvals[i]) - w.log_at(k));
  }
  for (int i = 0; i < 4; ++i) {
    if (req[i] <= std::log(kConditionACap)) {
      cert.growth = true;
      cert.growth_C = std::exp(std::max(req[i], 0.0));
      cert.growth_l = lvals[i];
      break;
    }
  }
  return cert;
}

bool holds_m1(const WeightSequence& w, double A, double H, int k_max) {
  w.ensure(k_max + 1);
  for (int k = 0; k <= k_max; ++k)
    if (w.log_at(k + 1) > std::log(A) + k * std::log(H) + w.log_at(k) + 1e-12) return false;
  return true;
}

bool holds_m2(const WeightSequence& w, double A, double H, int k_max) {
  w.ensure(2 * k_max);
  for (int k = 0; k <= k_max; ++k)
    if (w.log_at(2 * k) > std::log(A) + 2.0 * k * std::log(H) + 2.0 * w.log_at(k) + 1e-12)
      return false;
  return true;
}

WeightSequence log_convex_regularize(const WeightSequence& w, int k_max) {
  if (k_max < 1) throw std::invalid_argument("log_convex_regularize: k_max >= 1 required");
  w.ensure(k_max);
  std::vector<double> y(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) y[k] = w.log_at(k);
  // Monotone-chain lower hull of (k, y_k); endpoints are always vertices.
  std::vector<int> hull;
  for (int k = 0; k <= k_max; ++k) {
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2], b = hull[hull.size() - 1];
      // drop b if it lies on or above segment a-k
      const double cross = (static_cast<double>(b - a)) * (y[k] - y[a]) -
                           (static_cast<double>(k - a)) * (y[b] - y[a]);
      if (cross <= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(k);
  }
  std::vector<double> env(y.size());
  for (std::size_t seg = 0; seg + 1 < hull.size(); ++seg) {
    const int a = hull[seg], b = hull[seg + 1];
    for (int k = a; k <= b; ++k) {
      const double t = static_cast<double>(k - a) / static_cast<double>(b - a);
      env[k] = y[a] + t * (y[b] - y[a]);
    }
  }
  env[0] = 0.0;  // (M.0) is exact
  return WeightSequence::custom_log(env, w.nu());
}

// ---------------------------------------------------------------------------
// Associated function

struct AssociatedFunction::Cache {
  std::mutex mu;
  std::map<double, Eval> entries;
};

AssociatedFunction::AssociatedFunction(WeightSequence w) : w_(std::move(w)) {
  if (w_.kind() != WeightKind::Custom) {
    convex_ = true;  // (k!)^s is log-convex
  } else {
    // Convexity of the given part decides the evaluation strategy; the
    // continuation rule is log-convex by construction.
    convex_ = true;
    const int n = w_.table_size();
    for (int k = 1; k + 1 < n; ++k) {
      if (2.0 * w_.log_at(k) > w_.log_at(k - 1) + w_.log_at(k + 1) + 1e-12) {
        convex_ = false;
        break;
      }
    }
  }
  cache_ = std::make_shared<Cache>();
}

double AssociatedFunction::term(long long k, double log_r) const {
  const long long nk = static_cast<long long>(nu()) * k;
  return static_cast<double>(nk) * log_r - w_.log_at_big(nk);
}

AssociatedFunction::Eval AssociatedFunction::eval_scan(double log_r) const {
  Eval best{0.0, 0};
  int decreasing = 0;
  double prev = 0.0;
  for (long long k = 1; k <= kScanMax; ++k) {
    const double t = term(k, log_r);
    if (t > best.m) {
      best.m = t;
      best.k_star = k;
    }
    if (k > 1 && t < prev) {
      if (++decreasing >= 8) return best;
    } else {
      decreasing = 0;
    }
    prev = t;
  }
  throw std::runtime_error(
      "associated function: sequence grows too slowly for this r (growth assumption violated)");
}

AssociatedFunction::Eval AssociatedFunction::eval_convex(double log_r) const {
  // t_k is concave in k, so the first k with t_{k+1} <= t_k is the argmax.
  auto diff_pos = [&](long long k) { return term(k + 1, log_r) - term(k, log_r) > 0.0; };
  if (!diff_pos(0)) return {std::max(0.0, term(0, log_r)), 0};
  long long hi = 1;
  while (diff_pos(hi)) {
    hi *= 2;
    if (hi > (1LL << 42))
      throw std::runtime_error(
          "associated function: sequence grows too slowly for this r (growth assumption violated)");
  }
  long long lo = 0;
  while (lo < hi) {
    const long long mid = lo + (hi - lo) / 2;
    if (diff_pos(mid))
      lo = mid + 1;
    else
      hi = mid;
  }
  const double v = term(lo, log_r);
  if (v <= 0.0) return {0.0, 0};
  return {v, lo};
}

AssociatedFunction::Eval AssociatedFunction::evaluate(double r) const {
  if (r < 0.0) throw std::invalid_argument("associated function: r >= 0 required");
  if (r == 0.0) return {0.0, 0};
  {
    std::lock_guard<std::mutex> g(cache_->mu);
    if (auto it = cache_->entries.find(r); it != cache_->entries.end()) return it->second;
  }
  const double log_r = std::log(r);
  const Eval e = convex_ ? eval_convex(log_r) : eval_scan(log_r);
  {
    std::lock_guard<std::mutex> g(cache_->mu);
    if (cache_->entries.size() < 4096) cache_->entries.emplace(r, e);
  }
  return e;
}

double AssociatedFunction::value(double r) const { return evaluate(r).m; }
long long AssociatedFunction::argmax(double r) const { return evaluate(r).k_star; }

void AssociatedFunction::ensure(double r_max) const {
  const Eval e = evaluate(r_max);
  const long long need = static_cast<long long>(nu()) * (e.k_star + 16);
  w_.ensure(static_cast<int>(std::min<long long>(need, kTableCap - 1)));
}

// ---------------------------------------------------------------------------

GevreyBoundsReport gevrey_bounds_check(double s, int nu, const std::vector<double>& r_grid) {
  if (s < 1.0) throw std::invalid_argument("gevrey_bounds_check: s >= 1 required");
  AssociatedFunction af(WeightSequence::gevrey(s, nu));
  GevreyBoundsReport rep;
  for (double r : r_grid) {
    if (!(r >= 0.0)) throw std::invalid_argument("gevrey_bounds_check: grid must be nonnegative");
    const double m = af.value(r);
    rep.r_checked.push_back(r);
    rep.m_values.push_back(m);
    const double lower = s / (4.0 * nu * std::numbers::e) * std::pow(r, 1.0 / s);
    const double upper = s * std::pow(r, 1.0 / s);
    if (lower > m * (1.0 + 1e-12) + 1e-15) rep.violations_lower.push_back(r);
    if (m > upper * (1.0 + 1e-12) + 1e-15) rep.violations_upper.push_back(r);
    if (r > 0.0) {
      // brute-force inf_p (nu p)^{nu p s} r^{-nu p}, p >= 1 (log space)
      double inf_log = std::numeric_limits<double>::infinity();
      const double log_r = std::log(r);
      double prev = std::numeric_limits<double>::infinity();
      int rising = 0;
      for (long long p = 1; p <= kScanMax; ++p) {
        const double np = static_cast<double>(nu) * static_cast<double>(p);
        const double t = np * s * std::log(np) - np * log_r;
        inf_log = std::min(inf_log, t);
        if (t > prev) {
          if (++rising >= 8) break;
        } else {
          rising = 0;
        }
        prev = t;
      }
      const double rhs = -(s / (4.0 * nu * std::numbers::e)) * std::pow(r, 1.0 / s);
      if (inf_log > rhs + 1e-12) rep.violations_aux.push_back(r);
    }
  }
  return rep;
}

SuppressionReport ev_suppression_check(const AssociatedFunction& af, double q, double L,
                                       double delta, const std::vector<double>& levels) {
  if (!(L > 0.0) || !(delta > 0.0) || q < 0.0)
    throw std::invalid_argument("ev_suppression_check: require q >= 0, L > 0, delta > 0");
  SuppressionReport rep;
  rep.values.reserve(levels.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double lam = levels[i];
    if (!(lam > 0.0)) throw std::invalid_argument("ev_suppression_check: levels must be positive");
    const double lv = q * std::log(lam) - delta * af.value(L * std::pow(lam, 1.0 / af.nu()));
    const double v = std::exp(lv);
    rep.values.push_back(v);
    if (v > best) {
      best = v;
      rep.argmax_index = i;
    }
  }
  rep.sup = best;
  rep.eventually_decreasing = true;
  const std::size_t q4 = std::max<std::size_t>(2, rep.values.size() / 4);
  for (std::size_t i = rep.values.size() - q4; i + 1 < rep.values.size(); ++i) {
    if (!(rep.values[i + 1] < rep.values[i])) {
      rep.eventually_decreasing = false;
      break;
    }
  }
  return rep;
}

}  // namespace specreg
