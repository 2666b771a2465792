#pragma once

#include <numbers>

namespace edgecontract {

/// Scalars of the two-type screening model. Defaults are the reference
/// simulation values (I_r1 = 1.3, I_r2 = 1.4, theta = {1, sqrt 2},
/// eta = {5, 250, 1}, beta = {0.4, 0.6}, delta_c = 10).
struct ContractParams {
  double theta_low = 1.0;
  double theta_high = std::numbers::sqrt2;
  double beta_low = 0.4;
  double beta_high = 0.6;
  /// Edge-side cost per unit of required model performance.
  double eta1 = 5.0;
  /// Scale inside the teleoperator's log-quality term.
  double eta2 = 250.0;
  /// Linear quality coefficient of the teleoperator.
  double eta3 = 1.0;
  /// Performance threshold I_r1; quality below it is worthless.
  double perf_threshold = 1.3;
  /// Expected performance I_r2.
  double perf_expected = 1.4;
  /// Compensation constant added to edge utility.
  double delta_c = 10.0;
  /// Utility reported whenever perf <= perf_threshold (the log is undefined there).
  double utility_floor = -10.0;

  /// Throws InvalidParams when a structural invariant fails.
  void validate() const;

  /// True when the closed-form menu exists and is feasible: eta1 > eta3,
  /// theta_L > beta_H * theta_H, and eta2 (I_L - I_r1) > 1 at the closed-form I_L.
  [[nodiscard]] bool admissible() const;

  friend bool operator==(const ContractParams&, const ContractParams&) = default;
};

struct ContractBundle {
  double price = 0.0;
  double perf = 0.0;

  friend bool operator==(const ContractBundle&, const ContractBundle&) = default;
};

struct ContractMenu {
  ContractBundle low;
  ContractBundle high;

  friend bool operator==(const ContractMenu&, const ContractMenu&) = default;
};

/// Residuals of the participation and self-selection constraints. Each
/// residual is "own utility minus alternative", so >= 0 means satisfied.
struct FeasibilityReport {
  double ir_low = 0.0;   // U_L(low)
  double ir_high = 0.0;  // U_H(high)
  double ic_low = 0.0;   // U_L(low) - U_L(high)
  double ic_high = 0.0;  // U_H(high) - U_H(low)
  bool feasible = false;
  /// |ir_low| <= tol: the low type is held at its reservation utility.
  bool low_ir_binding = false;
  /// |ic_high| <= tol: the high type is indifferent between the bundles.
  bool high_ic_binding = false;
};

struct PerfRange {
  double low = 0.0;
  double high = 0.0;
};

/// theta * ln[eta2 (perf - I_r1)] + eta3 (perf - I_r2), or the floor when perf <= I_r1.
double gross_value(double theta, double perf, const ContractParams& params);

/// Teleoperator utility of buying `perf` at `price` with valuation `theta`.
/// Returns params.utility_floor (price ignored) when perf <= I_r1.
double teleoperator_utility(double theta, double perf, double price, const ContractParams& params);

/// price - eta1 * perf + delta_c
double edge_utility(const ContractBundle& bundle, const ContractParams& params);

/// Optimal screening menu in closed form. The low type's participation
/// constraint and the high type's self-selection constraint bind; the
/// required performances maximize the resulting unconstrained objective.
/// Throws AdmissibilityError when !params.admissible().
ContractMenu solve_contract(const ContractParams& params);

/// beta_L (p_L - eta1 I_L) + beta_H (p_H - eta1 I_H) + delta_c
double expected_system_utility(const ContractMenu& menu, const ContractParams& params);

FeasibilityReport verify_feasibility(const ContractMenu& menu, const ContractParams& params, double tol);

/// Brute-force optimum over a (I_L, I_H) grid. Prices are set by the two
/// binding equalities, points violating any participation or
/// self-selection constraint are discarded. Throws EmptyFeasibleSet.
ContractMenu grid_search_oracle(const ContractParams& params, PerfRange range, double step);

/// Single bundle for the pooled valuation theta_bar = beta_L theta_L + beta_H theta_H,
/// participation-binding at theta_bar. Throws AdmissibilityError when eta1 <= eta3.
ContractBundle solve_pooled_contract(const ContractParams& params);

/// Residual tolerance used by the closed-form checks.
inline constexpr double kClosedFormTolerance = 1e-9;

}  // namespace edgecontract
