#include "hyperdist/quadrature.hpp"

#include <map>
#include <mutex>
#include <numbers>

namespace hyperdist {

namespace quad_detail {

// Abscissae and weights of the 7-point Gauss / 15-point Kronrod pair
// (QUADPACK qk15). nodes[7] is the center.
const std::array<double, 8> Kronrod15::nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

const std::array<double, 8> Kronrod15::kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

const std::array<double, 4> Kronrod15::gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace quad_detail

std::string_view to_string(QuadratureRule rule) {
  return rule == QuadratureRule::GaussKronrod15 ? "gauss-kronrod-15" : "adaptive-simpson";
}

QuadratureRule parse_quadrature_rule(std::string_view text) {
  if (text == "gauss-kronrod-15") return QuadratureRule::GaussKronrod15;
  if (text == "adaptive-simpson") return QuadratureRule::AdaptiveSimpson;
  throw Error(ErrorKind::ParseError, "unknown quadrature rule '" + std::string(text) + "'");
}

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "abs_tol must be positive");
  if (max_subdivisions < 1) {
    throw Error(ErrorKind::InvalidArgument, "max_subdivisions must be positive");
  }
}

namespace {

GaussLegendre build_gauss_legendre(std::size_t n) {
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    gl.nodes[i] = x;
    gl.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return gl;
}

}  // namespace

const GaussLegendre& GaussLegendre::rule(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, GaussLegendre> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
  return it->second;
}

}  // namespace hyperdist
