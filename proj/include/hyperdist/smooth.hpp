#pragma once

#include <cstddef>

#include "hyperdist/jet.hpp"

namespace hyperdist::smooth {

/// Cauchy flat bump b(t) = exp(-1/(1-t^2)) on |t| < 1, zero elsewhere.
double bump(double t);
/// Taylor jet of b about t0. Zero when |t0| >= 1, where b is flat.
Jet bump_jet(double t0, std::size_t order);

/// Integral of b over [-1, 1].
double bump_integral();

/// Normalized integral of a bump: 0 for t <= 0, 1 for t >= 1, C-infinity.
double smoothstep(double t);
Jet smoothstep_jet(double t0, std::size_t order);

/// Even plateau: 1 on |x| <= inner, 0 on |x| >= outer, smoothstep between.
double plateau(double x, double inner, double outer);
Jet plateau_jet(double x0, double inner, double outer, std::size_t order);

}  // namespace hyperdist::smooth
