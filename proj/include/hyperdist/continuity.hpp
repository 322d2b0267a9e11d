#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperdist/expr.hpp"
#include "hyperdist/hyperreal.hpp"
#include "hyperdist/testfn.hpp"

namespace hyperdist {

/// Finite sample of the monad of 0. Context probes are tried before the
/// defaults so that witnesses tied to the function's own scales come first.
struct MonadProbeSet {
  std::vector<HyperReal> deltas;
  std::vector<HyperReal> extra;

  /// +-eps, +-2eps, +-eps/2, +-eps^2, +-eps^(3/2), +-eps^(1/2).
  static MonadProbeSet defaults(const TruncationPolicy& policy = {});
  /// Defaults plus probes derived from infinitesimal constants in Piecewise
  /// conditions, infinitesimal mollifier scales and infinite multipliers of
  /// the variable.
  static MonadProbeSet for_expr(const InternalExpr& f, const TruncationPolicy& policy = {});

  /// Context probes then defaults, without duplicates.
  std::vector<HyperReal> ordered() const;
};

enum class VerdictKind { Refuted, NotRefuted, Proved };
std::string_view to_string(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::NotRefuted;
  /// Probe displacement, infinite index or boundary point behind a refutation.
  std::optional<HyperReal> witness;
  /// Values compared at the witness (probe value first).
  std::vector<HyperReal> values;
  /// Structural rule for PROVED, or a short explanation otherwise.
  std::string rule;
  /// Agreement with the standard characterization on a real ladder, when the
  /// check applies.
  std::optional<bool> crosscheck;
};

/// f maps the monad of p into the monad of f(p). REFUTED carries the first
/// failing probe; PROVED only by structural rules.
Verdict s_continuity(const InternalExpr& f, double p, const MonadProbeSet& probes);
Verdict s_continuity(const InternalExpr& f, double p, const TruncationPolicy& policy = {});

/// Structural decision of hyperreal epsilon-delta continuity at q.
Verdict star_continuity(const InternalExpr& f, const HyperReal& q);

/// s is a tree in the index variable. Default omegas are 1/eps, 2/eps and
/// 1/eps^2.
Verdict s_convergence(const InternalExpr& s, const HyperReal& q,
                      std::vector<HyperReal> omegas = {});

/// |x - q| is limited.
bool limited_point(const HyperReal& x, const HyperReal& q);

struct ShadowResult {
  /// Standard tree when the function is shadowable, else empty.
  std::optional<InternalExpr> ast;
  /// (p, st f(p)) on the grid.
  std::vector<std::pair<double, double>> table;
  double max_defect = 0.0;
};

/// Throws NotSContinuousHere at the first grid point where S-continuity is
/// refuted and NotLimited where the value is infinite.
ShadowResult shadow(const InternalExpr& f, const std::vector<double>& grid,
                    const TruncationPolicy& policy = {});

Verdict product_s_continuity(const InternalExpr& f, const InternalExpr& h, double p,
                             const TruncationPolicy& policy = {});

/// ||g||_k = sup |g^(k)| sampled on the lattice (1/512) Z inside supp g.
struct SeminormFamily {
  unsigned k_max = 4;
  double lattice_step = 1.0 / 512.0;

  double seminorm(const TestFn& g, unsigned k) const;
  /// max over k <= k_max.
  double max_seminorm(const TestFn& g) const;
};

}  // namespace hyperdist
