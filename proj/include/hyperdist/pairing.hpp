#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperdist/expr.hpp"
#include "hyperdist/hyperreal.hpp"
#include "hyperdist/quadrature.hpp"
#include "hyperdist/testfn.hpp"

namespace hyperdist {

enum class PairingStatus { Limited, Infinitesimal, Unlimited };
enum class PairingForm { Regular, Mollified, Sum };

std::string_view to_string(PairingStatus s);
std::string_view to_string(PairingForm f);

/// Status implied by classify() under the value's zero_tol.
PairingStatus status_of(const HyperReal& value);

struct PairingResult {
  HyperReal value;
  PairingStatus status = PairingStatus::Infinitesimal;
  double quad_error = 0.0;
  PairingForm form = PairingForm::Regular;
};

/// <f, *g> as a series. f must reduce to a sum of REGULAR terms (no
/// infinitesimal-scale mollifier) and MOLLIFIED terms (a product with
/// mollifiers of one common infinitesimal scale and compact base support).
/// Throws UnsupportedForm or QuadratureFailure.
PairingResult pair(const InternalExpr& f, const TestFn& g, const QuadratureConfig& cfg = {},
                   const TruncationPolicy& policy = {});

/// Integral of f^2 over [c, d].
PairingResult energy(const InternalExpr& f, double c, double d, const QuadratureConfig& cfg = {},
                     const TruncationPolicy& policy = {});

/// Integral of f over [c, d].
PairingResult integral(const InternalExpr& f, double c, double d,
                       const QuadratureConfig& cfg = {}, const TruncationPolicy& policy = {});

/// Shifted and dilated bumps, then bumps modulated by monomials.
std::vector<TestFn> default_corpus();

enum class MembershipVerdict { Admitted, Rejected };
std::string_view to_string(MembershipVerdict v);

struct EnergyProbe {
  double c = 0.0;
  double d = 0.0;
  std::optional<PairingResult> result;
  std::string failure;
};

/// Refutation-sound membership test: ADMITTED means no corpus member or
/// sampled interval refuted membership.
struct MembershipResult {
  MembershipVerdict verdict = MembershipVerdict::Admitted;
  /// Every sampled energy integral was computable.
  bool energy_computable = true;
  /// Every computable energy integral was limited.
  bool energy_limited = true;
  std::vector<EnergyProbe> energies;
  std::optional<TestFn> witness;
  std::optional<std::size_t> witness_index;
  std::optional<PairingResult> witness_pairing;
  std::optional<std::pair<double, double>> witness_interval;
  std::string reason;
};

MembershipResult member_T(const InternalExpr& f, const std::vector<TestFn>& corpus,
                          const QuadratureConfig& cfg = {}, const TruncationPolicy& policy = {});

struct SchwarzCheck {
  bool holds = false;
  double lhs = 0.0;  ///< st(<f, g>)^2
  double rhs = 0.0;  ///< st(energy of f over supp g) * st(integral of g^2)
  std::string diagnostic;
};

SchwarzCheck schwarz_check(const InternalExpr& f, const TestFn& g, const QuadratureConfig& cfg = {},
                           const TruncationPolicy& policy = {});

}  // namespace hyperdist
