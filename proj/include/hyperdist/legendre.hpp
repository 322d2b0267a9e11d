#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hyperdist/expr.hpp"
#include "hyperdist/quadrature.hpp"
#include "hyperdist/testfn.hpp"

namespace hyperdist {

/// P_0..P_{N-1} evaluated at x / c on [-c, c].
struct LegendreBasis {
  double c = 1.0;
  std::size_t N = 64;

  /// Integral of P_n(x/c)^2 over [-c, c].
  double norm(std::size_t n) const { return 2.0 * c / (2.0 * static_cast<double>(n) + 1.0); }
  /// All N values at x, by the three-term recurrence.
  std::vector<double> values(double x) const;
};

/// Sum_n coeffs[n] P_n(x / c).
double legendre_series(const std::vector<double>& coeffs, double c, double x);

/// Coefficients of P_0..P_n in powers of t, row k holding P_k.
std::vector<std::vector<double>> legendre_power_table(std::size_t n);

inline constexpr std::size_t kDefaultLegendreN = 64;
inline constexpr double kColumnTol = 1e-10;
inline constexpr double kMatchTol = 1e-6;

struct CoefficientMatrix {
  LegendreBasis basis;
  /// B[j][n]: Legendre coefficient of g_j on P_n.
  std::vector<std::vector<double>> B;
  std::vector<std::size_t> selected_columns;
  /// B restricted to the selected columns.
  std::vector<std::vector<double>> A;
  /// Smallest pivot magnitude met during column selection.
  double condition = 0.0;
  double quad_error = 0.0;
};

/// c defaults to 1.1 times the largest support half-width about the origin.
/// Throws SupportViolation when a support reaches +-c.
CoefficientMatrix expand(const std::vector<TestFn>& g_list, std::size_t N = kDefaultLegendreN,
                         const QuadratureConfig& cfg = {}, std::optional<double> c = std::nullopt);

/// Scans columns left to right with row pivoting and keeps a column when its
/// largest remaining pivot reaches cond_tol. Throws IndependenceError when
/// fewer than m columns qualify.
void select_columns(CoefficientMatrix& M, double cond_tol = kColumnTol);

struct MatchResult {
  CoefficientMatrix matrix;
  std::vector<double> targets;
  /// c_l for each selected column.
  std::vector<double> coefficients;
  /// Dense Legendre coefficients, length N.
  std::vector<double> legendre;
  /// Coefficients of 1, x, x^2, ... up to the largest selected degree.
  std::vector<double> monomial;
  InternalExpr polynomial;
  /// |int p g_j - a_j| by quadrature independent of the expansion.
  std::vector<double> residuals;
};

MatchResult match(const std::vector<TestFn>& g_list, const std::vector<double>& targets,
                  std::size_t N = kDefaultLegendreN, const QuadratureConfig& cfg = {},
                  std::optional<double> c = std::nullopt);

struct OraclePolynomial {
  double c = 1.0;
  /// Minimum-norm dense Legendre coefficients.
  std::vector<double> legendre;
};

/// Minimum-norm solution over all N columns of M x = a, M[j][n] = int g_j P_n.
OraclePolynomial brute_force_oracle(const std::vector<TestFn>& g_list,
                                    const std::vector<double>& targets,
                                    std::size_t N = kDefaultLegendreN,
                                    const QuadratureConfig& cfg = {},
                                    std::optional<double> c = std::nullopt);

/// int p g_j for a Legendre series p, one value per g_j.
std::vector<double> functional_values(const std::vector<double>& legendre, double c,
                                      const std::vector<TestFn>& g_list,
                                      const QuadratureConfig& cfg = {});

}  // namespace hyperdist
