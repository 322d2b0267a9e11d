#pragma once

// Reference values computed once with 30-digit arbitrary-precision
// quadrature (tanh-sinh) and frozen here. b(u) = exp(-1/(1-u^2)) on (-1, 1).
namespace oracle {

inline constexpr double kBumpIntegral = 0.443993816168079437823048921171;        // int b
inline constexpr double kBumpSquaredIntegral = 0.133086120844994271556947327955; // int b^2
inline constexpr double kBumpSecondMoment = 0.0702014767529754099883759076064;   // int u^2 b
inline constexpr double kBumpFourthMoment = 0.0235235995711447684167916679361;   // int u^4 b
inline constexpr double kNormalizedSecondMoment = 0.158113636263798230228050428159;
inline constexpr double kCosBumpIntegral = 0.409859132390344353531091182924;     // int cos(u) b
inline constexpr double kSinSquaredUnit = 0.272675643293579576150995033522;      // int_0^1 sin^2
inline constexpr double kInvE = 0.367879441171442321595523770161;
inline constexpr double kDiracEnergy = 0.67511681300969752898743321024;          // I_{b^2} / I_b^2
inline constexpr double kInvBumpIntegral = 2.25228362104358101049978125556;

// Legendre coefficients of b on [-1.2, 1.2].
inline constexpr double kLegendreA0 = 0.184997423403366432426270383821;
inline constexpr double kLegendreA2 = -0.310146603749354861472846298949;
inline constexpr double kLegendreA4 = 0.124922896972637656860236702923;

}  // namespace oracle

namespace oracle_tools {

/// Composite Simpson rule with n (even) panels; deliberately independent of
/// the library's adaptive integrators.
template <class F>
double simpson(F&& f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Fourth-order central difference.
template <class F>
double central_diff(F&& f, double x, double h = 1e-3) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

}  // namespace oracle_tools
