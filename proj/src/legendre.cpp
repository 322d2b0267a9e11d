#include "hyperdist/legendre.hpp"

#include <algorithm>
#include <cmath>

#include "hyperdist/error.hpp"

namespace hyperdist {

std::vector<double> LegendreBasis::values(double x) const {
  std::vector<double> p(N, 0.0);
  const double t = x / c;
  if (N > 0) p[0] = 1.0;
  if (N > 1) p[1] = t;
  for (std::size_t n = 1; n + 1 < N; ++n) {
    const double nn = static_cast<double>(n);
    p[n + 1] = ((2.0 * nn + 1.0) * t * p[n] - nn * p[n - 1]) / (nn + 1.0);
  }
  return p;
}

double legendre_series(const std::vector<double>& coeffs, double c, double x) {
  const LegendreBasis basis{c, coeffs.size()};
  const std::vector<double> p = basis.values(x);
  double s = 0.0;
  for (std::size_t n = 0; n < coeffs.size(); ++n) s += coeffs[n] * p[n];
  return s;
}

std::vector<std::vector<double>> legendre_power_table(std::size_t n) {
  std::vector<std::vector<double>> P(n + 1, std::vector<double>(n + 1, 0.0));
  P[0][0] = 1.0;
  if (n >= 1) P[1][1] = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    for (std::size_t i = 0; i <= k; ++i) P[k + 1][i + 1] += (2.0 * kk + 1.0) * P[k][i] / (kk + 1.0);
    for (std::size_t i = 0; i < k; ++i) P[k + 1][i] -= kk * P[k - 1][i] / (kk + 1.0);
  }
  return P;
}

namespace {

double default_half_width(const std::vector<TestFn>& g_list) {
  double h = 0.0;
  for (const TestFn& g : g_list) h = std::max(h, g.support().half_width_about_origin());
  return h > 0.0 ? 1.1 * h : 1.0;
}

void check_inputs(const std::vector<TestFn>& g_list, std::size_t N) {
  if (g_list.empty()) throw Error(ErrorKind::InvalidArgument, "no test functions to match");
  if (g_list.size() > N) {
    throw Error(ErrorKind::InvalidArgument, "more test functions than basis members");
  }
}

/// Solves the square system by Gaussian elimination with partial pivoting.
std::vector<double> solve(std::vector<std::vector<double>> A, std::vector<double> b, double rel_tol) {
  const std::size_t m = b.size();
  double scale = 0.0;
  for (const auto& row : A) {
    for (double v : row) scale = std::max(scale, std::abs(v));
  }
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < m; ++r) {
      if (std::abs(A[r][k]) > std::abs(A[piv][k])) piv = r;
    }
    if (!(std::abs(A[piv][k]) > rel_tol * scale)) {
      throw Error(ErrorKind::IndependenceError, "test functions are linearly dependent");
    }
    std::swap(A[k], A[piv]);
    std::swap(b[k], b[piv]);
    for (std::size_t r = k + 1; r < m; ++r) {
      const double f = A[r][k] / A[k][k];
      if (f == 0.0) continue;
      for (std::size_t j = k; j < m; ++j) A[r][j] -= f * A[k][j];
      b[r] -= f * b[k];
    }
  }
  std::vector<double> x(m, 0.0);
  for (std::size_t k = m; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < m; ++j) s -= A[k][j] * x[j];
    x[k] = s / A[k][k];
  }
  return x;
}

std::vector<double> residual(const std::vector<std::vector<double>>& A, const std::vector<double>& x,
                             const std::vector<double>& b) {
  std::vector<double> r(b);
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) r[i] -= A[i][j] * x[j];
  }
  return r;
}

}  // namespace

CoefficientMatrix expand(const std::vector<TestFn>& g_list, std::size_t N, const QuadratureConfig& cfg,
                         std::optional<double> c) {
  check_inputs(g_list, N);
  cfg.validate();
  const double half = c.value_or(default_half_width(g_list));
  if (!(half > 0.0)) throw Error(ErrorKind::InvalidArgument, "basis half-width must be positive");
  CoefficientMatrix M;
  M.basis = LegendreBasis{half, N};
  for (const TestFn& g : g_list) {
    const SupportInterval s = g.support();
    if (s.lo <= -half || s.hi >= half) {
      throw Error(ErrorKind::SupportViolation, "test function support [" + std::to_string(s.lo) + ", " +
                                                   std::to_string(s.hi) + "] reaches the basis edge " +
                                                   std::to_string(half));
    }
    std::vector<double> row(N, 0.0);
    if (s.lo < s.hi) {
      auto integrand = [&](double x) {
        std::vector<double> p = M.basis.values(x);
        const double gx = g(x);
        for (double& v : p) v *= gx;
        return p;
      };
      const std::array<double, 2> pts{s.lo, s.hi};
      auto r = integrate_checked<std::vector<double>>(integrand, std::span<const double>(pts), cfg,
                                                      std::vector<double>(N, 0.0));
      M.quad_error = std::max(M.quad_error, r.error);
      row = std::move(r.value);
      for (std::size_t n = 0; n < N; ++n) row[n] /= M.basis.norm(n);
    }
    M.B.push_back(std::move(row));
  }
  return M;
}

void select_columns(CoefficientMatrix& M, double cond_tol) {
  const std::size_t m = M.B.size();
  const std::size_t N = M.basis.N;
  std::vector<std::vector<double>> W = M.B;
  std::vector<bool> used(m, false);
  M.selected_columns.clear();
  M.condition = 0.0;
  for (std::size_t col = 0; col < N && M.selected_columns.size() < m; ++col) {
    std::optional<std::size_t> piv;
    for (std::size_t r = 0; r < m; ++r) {
      if (used[r]) continue;
      if (!piv || std::abs(W[r][col]) > std::abs(W[*piv][col])) piv = r;
    }
    if (!piv || std::abs(W[*piv][col]) < cond_tol) continue;
    const double p = W[*piv][col];
    used[*piv] = true;
    for (std::size_t r = 0; r < m; ++r) {
      if (used[r]) continue;
      const double f = W[r][col] / p;
      for (std::size_t j = col; j < N; ++j) W[r][j] -= f * W[*piv][j];
    }
    M.condition = M.selected_columns.empty() ? std::abs(p) : std::min(M.condition, std::abs(p));
    M.selected_columns.push_back(col);
  }
  if (M.selected_columns.size() < m) {
    throw Error(ErrorKind::IndependenceError,
                "coefficient matrix has rank " + std::to_string(M.selected_columns.size()) + " < " +
                    std::to_string(m) + "; the test functions are not linearly independent");
  }
  M.A.assign(m, std::vector<double>(m, 0.0));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t l = 0; l < m; ++l) M.A[j][l] = M.B[j][M.selected_columns[l]];
  }
}

std::vector<double> functional_values(const std::vector<double>& legendre, double c,
                                      const std::vector<TestFn>& g_list, const QuadratureConfig& cfg) {
  std::vector<double> out;
  for (const TestFn& g : g_list) {
    const SupportInterval s = g.support();
    if (!(s.lo < s.hi)) {
      out.push_back(0.0);
      continue;
    }
    auto integrand = [&](double x) { return legendre_series(legendre, c, x) * g(x); };
    out.push_back(integrate_checked<double>(integrand, std::array<double, 2>{s.lo, s.hi}, cfg, 0.0).value);
  }
  return out;
}

MatchResult match(const std::vector<TestFn>& g_list, const std::vector<double>& targets, std::size_t N,
                  const QuadratureConfig& cfg, std::optional<double> c) {
  if (targets.size() != g_list.size()) {
    throw Error(ErrorKind::InvalidArgument, "one target per test function is required");
  }
  MatchResult out;
  out.matrix = expand(g_list, N, cfg, c);
  select_columns(out.matrix);
  out.targets = targets;
  const CoefficientMatrix& M = out.matrix;
  const std::size_t m = g_list.size();

  std::vector<double> b = solve(M.A, targets, 1e-14);
  // One step of iterative refinement.
  const std::vector<double> r = residual(M.A, b, targets);
  const std::vector<double> db = solve(M.A, r, 1e-14);
  for (std::size_t i = 0; i < m; ++i) b[i] += db[i];

  out.legendre.assign(N, 0.0);
  std::size_t degree = 0;
  for (std::size_t l = 0; l < m; ++l) {
    const std::size_t j = M.selected_columns[l];
    out.coefficients.push_back(b[l] / M.basis.norm(j));
    out.legendre[j] = out.coefficients.back();
    degree = std::max(degree, j);
  }

  const auto table = legendre_power_table(degree);
  out.monomial.assign(degree + 1, 0.0);
  for (std::size_t k = 0; k <= degree; ++k) {
    double s = 0.0;
    for (std::size_t n = k; n <= degree; ++n) s += out.legendre[n] * table[n][k];
    out.monomial[k] = s / std::pow(M.basis.c, static_cast<double>(k));
  }
  InternalExpr p = constant(out.monomial[degree]);
  for (std::size_t k = degree; k-- > 0;) p = add(mul(p, var()), constant(out.monomial[k]));
  out.polynomial = p;

  const std::vector<double> values = functional_values(out.legendre, M.basis.c, g_list, cfg);
  for (std::size_t j = 0; j < m; ++j) out.residuals.push_back(std::abs(values[j] - targets[j]));
  return out;
}

OraclePolynomial brute_force_oracle(const std::vector<TestFn>& g_list, const std::vector<double>& targets,
                                    std::size_t N, const QuadratureConfig& cfg, std::optional<double> c) {
  if (targets.size() != g_list.size()) {
    throw Error(ErrorKind::InvalidArgument, "one target per test function is required");
  }
  const CoefficientMatrix E = expand(g_list, N, cfg, c);
  const std::size_t m = g_list.size();
  std::vector<std::vector<double>> Mx(m, std::vector<double>(N));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t n = 0; n < N; ++n) Mx[j][n] = E.B[j][n] * E.basis.norm(n);
  }
  std::vector<std::vector<double>> G(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t n = 0; n < N; ++n) G[i][j] += Mx[i][n] * Mx[j][n];
    }
  }
  std::vector<double> y = solve(G, targets, 1e-12);
  const std::vector<double> r = residual(G, y, targets);
  const std::vector<double> dy = solve(G, r, 1e-12);
  for (std::size_t i = 0; i < m; ++i) y[i] += dy[i];

  OraclePolynomial out{E.basis.c, std::vector<double>(N, 0.0)};
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t j = 0; j < m; ++j) out.legendre[n] += Mx[j][n] * y[j];
  }
  return out;
}

}  // namespace hyperdist
