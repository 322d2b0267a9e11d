#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperdist/continuity.hpp"
#include "hyperdist/expr.hpp"
#include "hyperdist/pairing.hpp"

namespace hyperdist {

/// g -> (-1)^k st <rep, *g^(k)>.
struct GenFunctional {
  InternalExpr rep;
  unsigned deriv_order = 0;
  std::string label;
  /// Cached membership verdict for rep, when it has been checked.
  std::optional<MembershipVerdict> admission;
};

/// Checks rep against the corpus and throws NotAdmitted when rejected.
GenFunctional admit(InternalExpr rep, std::string label, const std::vector<TestFn>& corpus,
                    const QuadratureConfig& cfg = {}, const TruncationPolicy& policy = {});

/// The Dirac functional with the mollifier representative.
GenFunctional dirac(const TruncationPolicy& policy = {});

/// Throws NotLimited when the pairing is unlimited and OrderCap when the
/// derivative order exceeds cap.
double apply(const GenFunctional& F, const TestFn& g, const QuadratureConfig& cfg = {},
             const TruncationPolicy& policy = {}, unsigned cap = kDefaultDerivativeCap);

enum class EquivalenceKind { EquivalentNotRefuted, Distinct };
std::string_view to_string(EquivalenceKind k);

struct EquivalenceVerdict {
  EquivalenceKind kind = EquivalenceKind::EquivalentNotRefuted;
  std::optional<TestFn> witness;
  std::optional<std::size_t> witness_index;
  std::optional<PairingResult> witness_pairing;
};

/// |st| at or below this counts as an infinitesimal pairing.
inline constexpr double kInfinitesimalStTol = 1e-8;

EquivalenceVerdict in_T0(const InternalExpr& f, const std::vector<TestFn>& corpus,
                         const QuadratureConfig& cfg = {}, const TruncationPolicy& policy = {});
EquivalenceVerdict equivalent(const InternalExpr& f, const InternalExpr& h,
                              const std::vector<TestFn>& corpus, const QuadratureConfig& cfg = {},
                              const TruncationPolicy& policy = {});

GenFunctional derivative(const GenFunctional& F, unsigned cap = kDefaultDerivativeCap);

/// Representative smooth_std * rep. Throws NotStandardSmooth unless the
/// factor is a standard smooth tree and F is not a derivative.
GenFunctional customary_product(const InternalExpr& smooth_std, const GenFunctional& F);

struct PointValue {
  double value = 0.0;
  Verdict s_continuity_evidence;
};

/// st rep(p), gated by S-continuity at p.
PointValue value_at(const GenFunctional& F, double p, const TruncationPolicy& policy = {});

/// Point value of F + sign * G.
PointValue sum_at(const GenFunctional& F, const GenFunctional& G, double p, int sign = 1,
                  const TruncationPolicy& policy = {});

enum class TrendVerdict { Consistent, Inconsistent };
std::string_view to_string(TrendVerdict v);

struct SchwarzDiagnostic {
  /// f[g_n] for each member of the sequence.
  std::vector<double> trend;
  /// max_k sup |g_n^(k)| for each member.
  std::vector<double> seminorms;
  TrendVerdict verdict = TrendVerdict::Inconsistent;
  bool precondition_ok = false;
  std::string message;
};

/// Finite-prefix heuristic for sequential continuity: the sequence must be
/// null in its seminorms, and the functional values must settle down with
/// them (a non-increasing tail within 1e-4 of the peak magnitude, ending no
/// higher than the seminorm decay allows).
SchwarzDiagnostic schwarz_class_diagnostic(const GenFunctional& F, const std::vector<TestFn>& seq,
                                           const QuadratureConfig& cfg = {},
                                           const TruncationPolicy& policy = {},
                                           const SeminormFamily& norms = {});

}  // namespace hyperdist
