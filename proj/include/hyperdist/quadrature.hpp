#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperdist/error.hpp"
#include "hyperdist/hyperreal.hpp"

namespace hyperdist {

enum class QuadratureRule { AdaptiveSimpson, GaussKronrod15 };

std::string_view to_string(QuadratureRule rule);
QuadratureRule parse_quadrature_rule(std::string_view text);

struct QuadratureConfig {
  double abs_tol = 1e-10;
  int max_subdivisions = 2000;
  QuadratureRule rule = QuadratureRule::GaussKronrod15;

  void validate() const;
};

template <class V>
struct QuadResult {
  V value;
  double error = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

/// Vector-space operations the adaptive integrator needs from a value type.
template <class V>
struct QuadTraits;

template <>
struct QuadTraits<double> {
  static void add_scaled(double& acc, double w, const double& x) { acc += w * x; }
  static double distance(const double& a, const double& b) { return std::abs(a - b); }
  static double magnitude(const double& a) { return std::abs(a); }
};

template <>
struct QuadTraits<std::vector<double>> {
  static void add_scaled(std::vector<double>& acc, double w, const std::vector<double>& x) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * x[i];
  }
  static double distance(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
  }
  static double magnitude(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
  }
};

/// Coefficient-wise integration of series-valued integrands; the norm is the
/// largest coefficient magnitude.
template <>
struct QuadTraits<HyperReal> {
  static void add_scaled(HyperReal& acc, double w, const HyperReal& x) { acc += x * w; }
  static double distance(const HyperReal& a, const HyperReal& b) { return magnitude(a - b); }
  static double magnitude(const HyperReal& a) {
    double m = 0.0;
    for (const Term& t : a.terms()) m = std::max(m, std::abs(t.coef));
    return m;
  }
};

namespace quad_detail {

struct Kronrod15 {
  static const std::array<double, 8> nodes;
  static const std::array<double, 8> kronrod_weights;
  static const std::array<double, 4> gauss_weights;
};

template <class V, class F>
std::pair<V, double> gauss_kronrod15(F& f, double a, double b, const V& zero) {
  using T = QuadTraits<V>;
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  V kronrod = zero;
  V gauss = zero;
  std::array<V, 15> values;
  values[0] = f(center);
  T::add_scaled(kronrod, Kronrod15::kronrod_weights[7], values[0]);
  T::add_scaled(gauss, Kronrod15::gauss_weights[3], values[0]);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * Kronrod15::nodes[j];
    values[1 + 2 * j] = f(center - dx);
    values[2 + 2 * j] = f(center + dx);
    T::add_scaled(kronrod, Kronrod15::kronrod_weights[j], values[1 + 2 * j]);
    T::add_scaled(kronrod, Kronrod15::kronrod_weights[j], values[2 + 2 * j]);
    if (j % 2 == 1) {
      T::add_scaled(gauss, Kronrod15::gauss_weights[j / 2], values[1 + 2 * j]);
      T::add_scaled(gauss, Kronrod15::gauss_weights[j / 2], values[2 + 2 * j]);
    }
  }
  // QUADPACK-style error scaling with resasc = integral of |f - mean|.
  V mean = zero;
  T::add_scaled(mean, 0.5, kronrod);
  double resasc = Kronrod15::kronrod_weights[7] * T::distance(values[0], mean);
  for (int j = 0; j < 7; ++j) {
    resasc += Kronrod15::kronrod_weights[j] *
              (T::distance(values[1 + 2 * j], mean) + T::distance(values[2 + 2 * j], mean));
  }
  resasc *= std::abs(half);
  V result = zero;
  T::add_scaled(result, half, kronrod);
  V coarse = zero;
  T::add_scaled(coarse, half, gauss);
  double err = T::distance(result, coarse);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  return {std::move(result), err};
}

template <class V, class F>
V simpson(F& f, double a, double b, const V& zero, const V& fa, const V& fm, const V& fb) {
  (void)f;
  V s = zero;
  const double h = (b - a) / 6.0;
  QuadTraits<V>::add_scaled(s, h, fa);
  QuadTraits<V>::add_scaled(s, 4.0 * h, fm);
  QuadTraits<V>::add_scaled(s, h, fb);
  return s;
}

template <class V, class F>
std::pair<V, double> simpson_panel(F& f, double a, double b, const V& zero) {
  const double m = 0.5 * (a + b);
  const V fa = f(a), fb = f(b), fm = f(m);
  const V fl = f(0.5 * (a + m)), fr = f(0.5 * (m + b));
  const V whole = simpson(f, a, b, zero, fa, fm, fb);
  V halves = simpson(f, a, m, zero, fa, fl, fm);
  QuadTraits<V>::add_scaled(halves, 1.0, simpson(f, m, b, zero, fm, fr, fb));
  const double diff = QuadTraits<V>::distance(halves, whole);
  V extrapolated = halves;
  V correction = zero;
  QuadTraits<V>::add_scaled(correction, 1.0, halves);
  QuadTraits<V>::add_scaled(correction, -1.0, whole);
  QuadTraits<V>::add_scaled(extrapolated, 1.0 / 15.0, correction);
  return {std::move(extrapolated), diff / 15.0};
}

}  // namespace quad_detail

/// Globally adaptive integration over [points.front(), points.back()], split
/// initially at every interior point. The interval with the largest error is
/// bisected first (ties go to the leftmost), and the final sum runs left to
/// right, so identical inputs give bit-identical results.
template <class V, class F>
QuadResult<V> integrate(F&& f, std::span<const double> points, const QuadratureConfig& cfg,
                        const V& zero) {
  using T = QuadTraits<V>;
  struct Panel {
    double a, b;
    V value;
    double error;
  };
  auto apply_rule = [&](double a, double b) {
    if (cfg.rule == QuadratureRule::GaussKronrod15) {
      return quad_detail::gauss_kronrod15<V>(f, a, b, zero);
    }
    return quad_detail::simpson_panel<V>(f, a, b, zero);
  };

  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i + 1] > points[i])) continue;
    auto [v, e] = apply_rule(points[i], points[i + 1]);
    panels.push_back({points[i], points[i + 1], std::move(v), e});
  }

  QuadResult<V> out{zero, 0.0, 0, false};
  auto total_error = [&] {
    double s = 0.0;
    for (const Panel& p : panels) s += p.error;
    return s;
  };
  double err = total_error();
  int splits = 0;
  while (err > cfg.abs_tol && splits < cfg.max_subdivisions) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i) {
      if (panels[i].error > panels[worst].error) worst = i;
    }
    const double a = panels[worst].a;
    const double b = panels[worst].b;
    const double m = 0.5 * (a + b);
    if (!(m > a && m < b)) break;
    auto [lv, le] = apply_rule(a, m);
    auto [rv, re] = apply_rule(m, b);
    panels[worst] = Panel{a, m, std::move(lv), le};
    panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1,
                  Panel{m, b, std::move(rv), re});
    ++splits;
    err = total_error();
  }
  for (const Panel& p : panels) T::add_scaled(out.value, 1.0, p.value);
  out.error = err;
  out.subdivisions = splits;
  out.converged = err <= cfg.abs_tol;
  return out;
}

template <class V, class F>
QuadResult<V> integrate(F&& f, double a, double b, const QuadratureConfig& cfg, const V& zero) {
  const std::array<double, 2> pts{a, b};
  return integrate<V>(std::forward<F>(f), std::span<const double>(pts), cfg, zero);
}

/// As integrate, throwing QuadratureFailure when the tolerance is not met.
template <class V, class F>
QuadResult<V> integrate_checked(F&& f, std::span<const double> points,
                                const QuadratureConfig& cfg, const V& zero) {
  QuadResult<V> r = integrate<V>(std::forward<F>(f), points, cfg, zero);
  if (!r.converged) {
    throw Error(ErrorKind::QuadratureFailure,
                "quadrature error estimate " + std::to_string(r.error) + " exceeds tolerance " +
                    std::to_string(cfg.abs_tol) + " after " + std::to_string(r.subdivisions) +
                    " subdivisions");
  }
  return r;
}

/// Fixed n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  static const GaussLegendre& rule(std::size_t n);
};

}  // namespace hyperdist
