#include "edgecontract/contract.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "edgecontract/errors.hpp"

namespace edgecontract {

namespace {

bool finite_all(std::initializer_list<double> xs) {
  for (double x : xs) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

void ContractParams::validate() const {
  if (!finite_all({theta_low, theta_high, beta_low, beta_high, eta1, eta2, eta3, perf_threshold,
                   perf_expected, delta_c, utility_floor})) {
    throw InvalidParams("contract parameters must be finite");
  }
  if (!(theta_low > 0.0 && theta_high > theta_low)) {
    throw InvalidParams("need theta_high > theta_low > 0");
  }
  if (beta_low < 0.0 || beta_low > 1.0 || beta_high < 0.0 || beta_high > 1.0 ||
      std::abs(beta_low + beta_high - 1.0) > 1e-12) {
    throw InvalidParams("beta_low and beta_high must be probabilities summing to 1");
  }
  if (!(perf_threshold > 0.0 && perf_expected > perf_threshold)) {
    throw InvalidParams("need perf_expected > perf_threshold > 0");
  }
  if (!(eta1 > 0.0 && eta2 > 0.0 && eta3 > 0.0)) {
    throw InvalidParams("eta1, eta2, eta3 must be positive");
  }
}

bool ContractParams::admissible() const {
  if (!(eta1 > eta3 && theta_low > beta_high * theta_high && beta_low > 0.0)) return false;
  // The high type's participation is implied by its self-selection constraint
  // only while the low bundle has positive log value: eta2 (I_L - I_r1) > 1.
  const double low_margin = (theta_low - beta_high * theta_high) / (beta_low * (eta1 - eta3));
  return eta2 * low_margin > 1.0;
}

double gross_value(double theta, double perf, const ContractParams& params) {
  if (!(perf > params.perf_threshold)) return params.utility_floor;
  return theta * std::log(params.eta2 * (perf - params.perf_threshold)) +
         params.eta3 * (perf - params.perf_expected);
}

double teleoperator_utility(double theta, double perf, double price, const ContractParams& params) {
  if (!(perf > params.perf_threshold)) return params.utility_floor;
  return gross_value(theta, perf, params) - price;
}

double edge_utility(const ContractBundle& bundle, const ContractParams& params) {
  return bundle.price - params.eta1 * bundle.perf + params.delta_c;
}

ContractMenu solve_contract(const ContractParams& params) {
  params.validate();
  if (!(params.eta1 > params.eta3)) {
    throw AdmissibilityError("closed-form contract needs eta1 > eta3");
  }
  if (!(params.theta_low > params.beta_high * params.theta_high) || !(params.beta_low > 0.0)) {
    throw AdmissibilityError("closed-form contract needs theta_low > beta_high * theta_high");
  }
  if (!params.admissible()) {
    throw AdmissibilityError("closed-form contract needs eta2 (I_L - perf_threshold) > 1; otherwise the "
                             "high type's participation constraint is violated");
  }

  const double margin = params.eta1 - params.eta3;
  ContractMenu menu;
  menu.low.perf = params.perf_threshold +
                  (params.theta_low - params.beta_high * params.theta_high) / (params.beta_low * margin);
  menu.high.perf = params.perf_threshold + params.theta_high / margin;

  // Low type held at zero utility; high type indifferent between bundles.
  menu.low.price = gross_value(params.theta_low, menu.low.perf, params);
  menu.high.price = gross_value(params.theta_high, menu.high.perf, params) -
                    gross_value(params.theta_high, menu.low.perf, params) + menu.low.price;
  return menu;
}

double expected_system_utility(const ContractMenu& menu, const ContractParams& params) {
  return params.beta_low * (menu.low.price - params.eta1 * menu.low.perf) +
         params.beta_high * (menu.high.price - params.eta1 * menu.high.perf) + params.delta_c;
}

FeasibilityReport verify_feasibility(const ContractMenu& menu, const ContractParams& params, double tol) {
  const double low_on_low = teleoperator_utility(params.theta_low, menu.low.perf, menu.low.price, params);
  const double low_on_high = teleoperator_utility(params.theta_low, menu.high.perf, menu.high.price, params);
  const double high_on_high = teleoperator_utility(params.theta_high, menu.high.perf, menu.high.price, params);
  const double high_on_low = teleoperator_utility(params.theta_high, menu.low.perf, menu.low.price, params);

  FeasibilityReport report;
  report.ir_low = low_on_low;
  report.ir_high = high_on_high;
  report.ic_low = low_on_low - low_on_high;
  report.ic_high = high_on_high - high_on_low;
  report.feasible = report.ir_low >= -tol && report.ir_high >= -tol && report.ic_low >= -tol &&
                    report.ic_high >= -tol;
  report.low_ir_binding = std::abs(report.ir_low) <= tol;
  report.high_ic_binding = std::abs(report.ic_high) <= tol;
  return report;
}

ContractMenu grid_search_oracle(const ContractParams& params, PerfRange range, double step) {
  params.validate();
  if (!(step > 0.0)) throw InvalidParams("grid step must be positive");
  if (!(range.low > params.perf_threshold)) {
    throw InvalidParams("grid range must start above perf_threshold");
  }
  if (!(range.high >= range.low)) throw InvalidParams("grid range is empty");

  const auto count = static_cast<std::size_t>(std::floor((range.high - range.low) / step + 1e-9)) + 1;
  std::vector<double> perf(count);
  std::vector<double> value_low(count);
  std::vector<double> value_high(count);
  for (std::size_t k = 0; k < count; ++k) {
    perf[k] = range.low + static_cast<double>(k) * step;
    value_low[k] = gross_value(params.theta_low, perf[k], params);
    value_high[k] = gross_value(params.theta_high, perf[k], params);
  }

  constexpr double kReject = 1e-9;
  double best = -std::numeric_limits<double>::infinity();
  ContractMenu best_menu;
  bool found = false;
  for (std::size_t i = 0; i < count; ++i) {
    const double price_low = value_low[i];
    const double low_on_low = value_low[i] - price_low;
    const double high_on_low = value_high[i] - price_low;
    for (std::size_t j = 0; j < count; ++j) {
      const double price_high = value_high[j] - value_high[i] + price_low;
      const double high_on_high = value_high[j] - price_high;
      const double low_on_high = value_low[j] - price_high;
      if (low_on_low < -kReject || high_on_high < -kReject || low_on_low - low_on_high < -kReject ||
          high_on_high - high_on_low < -kReject) {
        continue;
      }
      const double objective = params.beta_low * (price_low - params.eta1 * perf[i]) +
                               params.beta_high * (price_high - params.eta1 * perf[j]) + params.delta_c;
      if (objective > best) {
        best = objective;
        best_menu = {{price_low, perf[i]}, {price_high, perf[j]}};
        found = true;
      }
    }
  }
  if (!found) throw EmptyFeasibleSet("no grid point satisfies the participation and self-selection constraints");
  return best_menu;
}

ContractBundle solve_pooled_contract(const ContractParams& params) {
  params.validate();
  if (!(params.eta1 > params.eta3)) {
    throw AdmissibilityError("pooled contract needs eta1 > eta3");
  }
  const double pooled_theta = params.beta_low * params.theta_low + params.beta_high * params.theta_high;
  ContractBundle bundle;
  bundle.perf = params.perf_threshold + pooled_theta / (params.eta1 - params.eta3);
  bundle.price = gross_value(pooled_theta, bundle.perf, params);
  return bundle;
}

}  // namespace edgecontract
