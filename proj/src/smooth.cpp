#include "hyperdist/smooth.hpp"

#include <array>
#include <cmath>

#include "hyperdist/error.hpp"
#include "hyperdist/quadrature.hpp"

namespace hyperdist::smooth {

namespace {

constexpr int kStepPanels = 64;

double step_density(double tau) { return bump(2.0 * tau - 1.0); }

// Cumulative integrals of the smoothstep density at tau_i = i / kStepPanels.
struct StepTable {
  std::array<double, kStepPanels + 1> cumulative{};
  double total = 0.0;

  StepTable() {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-17;
    cfg.max_subdivisions = 200;
    double acc = 0.0;
    cumulative[0] = 0.0;
    for (int i = 1; i <= kStepPanels; ++i) {
      const double a = static_cast<double>(i - 1) / kStepPanels;
      const double b = static_cast<double>(i) / kStepPanels;
      acc += integrate<double>(step_density, a, b, cfg, 0.0).value;
      cumulative[i] = acc;
    }
    total = acc;
  }
};

const StepTable& step_table() {
  static const StepTable table;
  return table;
}

}  // namespace

double bump(double t) {
  if (!(std::abs(t) < 1.0)) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t));
}

Jet bump_jet(double t0, std::size_t order) {
  if (!(std::abs(t0) < 1.0)) return Jet(order);
  Jet inner(order);
  inner[0] = 1.0 - t0 * t0;
  if (order >= 1) inner[1] = -2.0 * t0;
  if (order >= 2) inner[2] = -1.0;
  Jet result = exp(-recip(inner));
  if (result[0] == 0.0) return Jet(order);
  for (double c : result.coefficients()) {
    if (!std::isfinite(c)) {
      throw Error(ErrorKind::UnsupportedEvaluation,
                  "bump Taylor coefficients overflow near the support edge");
    }
  }
  return result;
}

double bump_integral() {
  static const double value = [] {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-16;
    const std::array<double, 3> pts{-1.0, 0.0, 1.0};
    return integrate<double>(bump, std::span<const double>(pts), cfg, 0.0).value;
  }();
  return value;
}

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const StepTable& table = step_table();
  const int i = std::min(kStepPanels - 1, static_cast<int>(t * kStepPanels));
  const double a = static_cast<double>(i) / kStepPanels;
  // Remaining piece [a, t] is shorter than one panel; a 20-point Gauss rule
  // resolves it to rounding.
  const GaussLegendre& gl = GaussLegendre::rule(20);
  const double half = 0.5 * (t - a);
  const double mid = 0.5 * (t + a);
  double partial = 0.0;
  for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
    partial += gl.weights[k] * step_density(mid + half * gl.nodes[k]);
  }
  partial *= half;
  return (table.cumulative[i] + partial) / table.total;
}

Jet smoothstep_jet(double t0, std::size_t order) {
  Jet out(order);
  out[0] = smoothstep(t0);
  if (order == 0 || t0 <= 0.0 || t0 >= 1.0) return out;
  const double z = step_table().total;
  // S' = psi / Z with psi(tau) = b(2 tau - 1).
  const Jet density = bump_jet(2.0 * t0 - 1.0, order - 1).rescaled(2.0);
  for (std::size_t k = 1; k <= order; ++k) {
    out[k] = density[k - 1] / (static_cast<double>(k) * z);
  }
  return out;
}

double plateau(double x, double inner, double outer) {
  const double a = std::abs(x);
  if (a <= inner) return 1.0;
  if (a >= outer) return 0.0;
  return 1.0 - smoothstep((a - inner) / (outer - inner));
}

Jet plateau_jet(double x0, double inner, double outer, std::size_t order) {
  const double a = std::abs(x0);
  if (a <= inner) return Jet::constant(1.0, order);
  if (a >= outer) return Jet(order);
  const double width = outer - inner;
  const double sign = x0 < 0 ? -1.0 : 1.0;
  Jet step = smoothstep_jet((a - inner) / width, order).rescaled(sign / width);
  return Jet::constant(1.0, order) - step;
}

}  // namespace hyperdist::smooth
