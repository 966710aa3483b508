#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specreg/transform.hpp"
#include "specreg/weights.hpp"

namespace specreg {

// Finite-truncation conventions, pinned. The existential/universal
// quantifiers of the characterizations are probed on the dyadic grid
// L = 2^t, t in [L_t_min, L_t_max]; "no growth trend" means the Theil-Sen
// slope of the tested log-quantity against lambda^{1/nu} over the top
// quartile of usable levels stays <= trend_tol. Membership additionally
// requires the decay rate to be a nontrivial multiple of the class rate:
// the slope of -log||f_hat|| against M(lambda^{1/nu}) must reach rate_min
// (small-L grid points are otherwise vacuously stable at any truncation).
struct ClassifyOptions {
  double floor = 1e-14;        // relative HS-norm floor; 0 disables
  int L_t_min = -20;
  int L_t_max = 20;
  double trend_tol = 0.05;
  double rate_min = 0.05;
  double g_lo = 0.05;          // stretched-exponential search range
  double g_hi = 1.2;
  double analytic_tol = 0.1;   // |s - 1| <= tol reported as Analytic
  int min_usable_levels = 12;
  double def_residual_tol = 2.0;  // one-sided log-space tolerance, definition test
  int threads = 1;
};

enum class FitModel { Polynomial, Exponential, Associated };

struct DecayFit {
  FitModel model = FitModel::Polynomial;
  double log_C = 0.0;
  double L = 0.0;      // Exponential/Associated rate (Associated: witness grid L)
  double g = 0.0;      // Exponential exponent; s = 1/g
  double p = 0.0;      // Polynomial order
  double residual = 0.0;  // RMS in log-space
  double aic = 0.0;
  std::size_t levels_used = 0;
};

// Levels surviving the floor, with lambda > 0, as fit inputs.
struct UsableLevels {
  std::vector<double> lambda;
  std::vector<double> x;       // lambda^{1/nu}
  std::vector<double> log_hs;  // log ||f_hat(j)||_HS
  std::vector<std::size_t> level_index;
};
UsableLevels usable_levels(const SpectralVector& v, const ClassifyOptions& opts = {});

// Polynomial and stretched-exponential fits of the HS-norm decay; adds the
// associated-function model when weights are supplied. Throws if fewer than
// opts.min_usable_levels survive; exact-zero input yields an empty list.
std::vector<DecayFit> fit_decay(const SpectralVector& v,
                                const std::optional<WeightSequence>& weights = std::nullopt,
                                const ClassifyOptions& opts = {});

enum class Regime { Roumieu, Beurling };

struct MembershipResult {
  bool member = false;
  bool exact_zero = false;
  double witness_L = 0.0;     // Roumieu: largest stable grid L
  double witness_log_C = 0.0; // sup of the tested quantity at the witness
  double rate = 0.0;          // decay-rate multiple of the class rate
  double first_failing_L = 0.0;  // Beurling rejection evidence
  bool growth_at_every_L = false;
  std::string detail;
};

// Coefficient-side test of ||f_hat(l)|| <= C exp(-M(L lambda^{1/nu})):
// Roumieu searches the grid for the largest stable L, Beurling demands
// stability at every grid L. Requires a certified weight sequence.
MembershipResult komatsu_membership(const SpectralVector& v, const WeightSequence& w,
                                    Regime regime, const ClassifyOptions& opts = {});

struct DefinitionResult {
  bool member = false;
  bool exact_zero = false;
  bool truncation_dominated = false;  // spectral norms pinned at the truncation edge
  double log_C = 0.0;
  double h = 0.0;
  int usable_m = 0;
  double max_excess = 0.0;  // worst one-sided residual above the affine fit
  std::string detail;
};

// Norm-side test of ||E^m phi|| <= C h^{nu m} M_{nu m} for m = 0..m_max,
// via log-space spectral norms and an affine fit in m. Levels contributing
// mostly from the truncation edge mark the norm unusable; if too few m
// remain the verdict falls back to non-membership with the flag set.
DefinitionResult definition_membership(const ModelOperator& op, const SpectralVector& v,
                                       const WeightSequence& w, int m_max,
                                       const ClassifyOptions& opts = {});

enum class Tier {
  UltradistributionRoumieu,
  UltradistributionBeurling,
  Distribution,
  SquareIntegrable,
  Sobolev,
  Smooth,
  Gevrey,
  Analytic,
};
std::string tier_name(Tier t);

struct GevreyEstimate {
  bool ok = false;
  double s = 0.0;
  double uncertainty = 0.0;
  bool super_analytic = false;  // g > 1: faster than the analytic regime
  std::string detail;
};

// s = 1/g from the stretched-exponential fit; uncertainty from refits on
// the two halves of the usable range. Errors if the polynomial model wins.
GevreyEstimate gevrey_order(const SpectralVector& v, const ClassifyOptions& opts = {});

struct SmoothnessResult {
  Tier tier = Tier::SquareIntegrable;
  double order = 0.0;     // Sobolev / Distribution heuristic label, p*nu -/+ n/2
  double p = 0.0;         // fitted polynomial rate (sign: decay positive)
  double s = 0.0;         // Gevrey order when applicable
  bool exact_zero = false;
  bool inconclusive = false;
  std::string detail;
};

// Decay-side tier decision: polynomial decay -> Sobolev(order) (or
// SquareIntegrable when too weak), super-polynomial -> Smooth, escalated to
// Gevrey/Analytic via the stretched fit. Growth routes to Distribution or,
// beyond polynomial growth, to the dual tests.
SmoothnessResult smoothness_class(const SpectralVector& v, const ClassifyOptions& opts = {});

enum class DualVerdict { RoumieuDual, BeurlingDual, Neither };

struct DualGrowthResult {
  DualVerdict verdict = DualVerdict::Neither;
  double beurling_witness_L = 0.0;  // one stable L (existence side)
  double beurling_log_K = 0.0;
  double roumieu_failing_L = 0.0;   // smallest grid L that breaks the universal side
  std::string detail;
};

// Growth test ||u_hat(l)|| <= K exp(M(L lambda^{1/nu})): the Roumieu dual
// needs stability at every grid L, the Beurling dual at one.
DualGrowthResult dual_growth(const SpectralVector& v, const WeightSequence& w,
                             const ClassifyOptions& opts = {});

enum class PairingStatus { Converged, Diverged, Inconclusive };

struct PairingResult {
  PairingStatus status = PairingStatus::Inconclusive;
  double partial_sum = 0.0;
  double tail_estimate = 0.0;  // geometric extrapolation of the block sums
  double block_ratio = 0.0;
  std::string detail;
};

// Absolute pairing sum_l sum_k |u(l,k)| |phi_hat(l,k)| with a Cauchy-tail
// estimate from the trailing blocks. Requires matching operator/truncation.
PairingResult pairing_converges(const SpectralVector& u, const SpectralVector& phi,
                                const ClassifyOptions& opts = {});

struct ClassificationReport {
  Tier tier = Tier::SquareIntegrable;
  double order = 0.0;
  double s = 0.0;
  double s_uncertainty = 0.0;
  bool smooth_flag = false;
  bool gevrey_flag = false;
  bool analytic_flag = false;
  bool exact_zero = false;
  bool inconclusive = false;
  std::vector<DecayFit> fits;
  std::optional<MembershipResult> roumieu;
  std::optional<MembershipResult> beurling;
  std::optional<DefinitionResult> definition;
  std::optional<DualGrowthResult> dual;
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, std::string>> evidence;
};

// Full pipeline used by the analyze command.
ClassificationReport classify(const SpectralVector& v,
                              const std::optional<WeightSequence>& weights = std::nullopt,
                              const ClassifyOptions& opts = {});

}  // namespace specreg
