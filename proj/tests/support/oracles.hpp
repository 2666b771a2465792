#pragma once

// Test-only reference implementations, written independently of src/.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace oracles {

struct Params {
  double theta_low = 1.0;
  double theta_high = std::sqrt(2.0);
  double beta_low = 0.4;
  double beta_high = 0.6;
  double eta1 = 5.0;
  double eta2 = 250.0;
  double eta3 = 1.0;
  double ir1 = 1.3;
  double ir2 = 1.4;
  double delta_c = 10.0;
};

inline double gross(const Params& p, double theta, double perf) {
  return theta * std::log(p.eta2 * (perf - p.ir1)) + p.eta3 * (perf - p.ir2);
}

// Principal objective after substituting the binding low IR and high IC
// constraints: p_L = g_L(I_L), p_H = g_H(I_H) - g_H(I_L) + p_L.
struct ReducedMenu {
  double perf_low, price_low, perf_high, price_high, utility;
};

inline ReducedMenu reduced_menu(const Params& p, double i_low, double i_high) {
  const double p_low = gross(p, p.theta_low, i_low);
  const double p_high = gross(p, p.theta_high, i_high) - gross(p, p.theta_high, i_low) + p_low;
  const double u = p.beta_low * (p_low - p.eta1 * i_low) + p.beta_high * (p_high - p.eta1 * i_high) + p.delta_c;
  return {i_low, p_low, i_high, p_high, u};
}

inline double golden_max(const std::function<double(double)>& f, double a, double b, double tol = 1e-12) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2.0;
}

// The reduced objective separates into a term in I_L and a term in I_H;
// each is concave under admissibility, so a 1-D golden search per axis suffices.
inline ReducedMenu maximize_reduced(const Params& p) {
  const double lo = p.ir1 + 1e-9;
  const double hi = p.ir1 + 10.0;
  const double i_high =
      golden_max([&](double x) { return p.beta_high * (gross(p, p.theta_high, x) - p.eta1 * x); }, lo, hi);
  const double i_low = golden_max(
      [&](double x) {
        return gross(p, p.theta_low, x) - p.beta_high * gross(p, p.theta_high, x) - p.beta_low * p.eta1 * x;
      },
      lo, hi);
  return reduced_menu(p, i_low, i_high);
}

// FIFO hand simulation: tasks are served per server in the given order,
// each waiting for every compute time ahead of it.
struct FifoJob {
  int server;
  double transmit;
  double compute;
};

inline std::vector<double> fifo_totals(const std::vector<FifoJob>& jobs) {
  std::map<int, double> backlog;
  std::vector<double> totals;
  for (const auto& job : jobs) {
    double& busy = backlog[job.server];
    totals.push_back(job.transmit + busy + job.compute);
    busy += job.compute;
  }
  return totals;
}

}  // namespace oracles
