#include "hyperdist/functional.hpp"

#include <algorithm>
#include <cmath>

#include "hyperdist/error.hpp"

namespace hyperdist {

std::string_view to_string(EquivalenceKind k) {
  return k == EquivalenceKind::EquivalentNotRefuted ? "EQUIVALENT_NOT_REFUTED" : "DISTINCT";
}

std::string_view to_string(TrendVerdict v) {
  return v == TrendVerdict::Consistent ? "CONSISTENT" : "INCONSISTENT";
}

GenFunctional admit(InternalExpr rep, std::string label, const std::vector<TestFn>& corpus,
                    const QuadratureConfig& cfg, const TruncationPolicy& policy) {
  const MembershipResult m = member_T(rep, corpus, cfg, policy);
  if (m.verdict == MembershipVerdict::Rejected) {
    throw Error(ErrorKind::NotAdmitted, "'" + label + "' is not admitted: " + m.reason);
  }
  return GenFunctional{std::move(rep), 0, std::move(label), MembershipVerdict::Admitted};
}

GenFunctional dirac(const TruncationPolicy& policy) {
  return GenFunctional{make_dirac(policy), 0, "delta", MembershipVerdict::Admitted};
}

double apply(const GenFunctional& F, const TestFn& g, const QuadratureConfig& cfg,
             const TruncationPolicy& policy, unsigned cap) {
  if (F.deriv_order > cap) {
    throw Error(ErrorKind::OrderCap, "derivative order " + std::to_string(F.deriv_order) +
                                         " exceeds cap " + std::to_string(cap));
  }
  const TestFn gk = F.deriv_order == 0 ? g : TestFn::derivative(F.deriv_order, g);
  const PairingResult r = pair(F.rep, gk, cfg, policy);
  if (r.status == PairingStatus::Unlimited) {
    throw Error(ErrorKind::NotLimited, "pairing is unlimited: " + to_string(r.value));
  }
  const double s = standard_part(r.value);
  return F.deriv_order % 2 == 0 ? s : -s;
}

EquivalenceVerdict in_T0(const InternalExpr& f, const std::vector<TestFn>& corpus,
                         const QuadratureConfig& cfg, const TruncationPolicy& policy) {
  EquivalenceVerdict out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    PairingResult r = pair(f, corpus[i], cfg, policy);
    const bool visible = r.status == PairingStatus::Unlimited ||
                         std::abs(standard_part(r.value)) > kInfinitesimalStTol;
    if (visible) {
      out.kind = EquivalenceKind::Distinct;
      out.witness = corpus[i];
      out.witness_index = i;
      out.witness_pairing = std::move(r);
      return out;
    }
  }
  return out;
}

EquivalenceVerdict equivalent(const InternalExpr& f, const InternalExpr& h,
                              const std::vector<TestFn>& corpus, const QuadratureConfig& cfg,
                              const TruncationPolicy& policy) {
  return in_T0(sub(f, h), corpus, cfg, policy);
}

GenFunctional derivative(const GenFunctional& F, unsigned cap) {
  if (F.deriv_order + 1 > cap) {
    throw Error(ErrorKind::OrderCap, "derivative order " + std::to_string(F.deriv_order + 1) +
                                         " exceeds cap " + std::to_string(cap));
  }
  GenFunctional out = F;
  ++out.deriv_order;
  out.label = F.label + "'";
  return out;
}

GenFunctional customary_product(const InternalExpr& smooth_std, const GenFunctional& F) {
  if (!is_standard_smooth(smooth_std)) {
    throw Error(ErrorKind::NotStandardSmooth,
                "factor is not a standard smooth tree: " + to_string(smooth_std));
  }
  if (F.deriv_order != 0) {
    throw Error(ErrorKind::NotStandardSmooth,
                "customary product needs a functional given by a representative, not a derivative");
  }
  GenFunctional out{mul(smooth_std, F.rep), 0, "(" + to_string(smooth_std) + ")*" + F.label, F.admission};
  return out;
}

PointValue value_at(const GenFunctional& F, double p, const TruncationPolicy& policy) {
  if (F.deriv_order != 0) {
    throw Error(ErrorKind::InvalidArgument, "point values are defined for representatives only");
  }
  Verdict v = s_continuity(F.rep, p, policy);
  if (v.kind == VerdictKind::Refuted) {
    throw Error(ErrorKind::NotSContinuousHere,
                "'" + F.label + "' is not S-continuous at " + std::to_string(p) + " (probe " +
                    to_string(*v.witness) + ")");
  }
  const HyperReal value = eval_at(F.rep, HyperReal::from_real(p, policy));
  return PointValue{standard_part(value), std::move(v)};
}

PointValue sum_at(const GenFunctional& F, const GenFunctional& G, double p, int sign,
                  const TruncationPolicy& policy) {
  const InternalExpr rep = sign >= 0 ? add(F.rep, G.rep) : sub(F.rep, G.rep);
  return value_at(GenFunctional{rep, 0, F.label + (sign >= 0 ? "+" : "-") + G.label, std::nullopt}, p,
                  policy);
}

SchwarzDiagnostic schwarz_class_diagnostic(const GenFunctional& F, const std::vector<TestFn>& seq,
                                           const QuadratureConfig& cfg,
                                           const TruncationPolicy& policy,
                                           const SeminormFamily& norms) {
  SchwarzDiagnostic out;
  if (seq.size() < 2) throw Error(ErrorKind::InvalidArgument, "sequence needs at least two members");
  for (const TestFn& g : seq) {
    out.seminorms.push_back(norms.max_seminorm(g));
    out.trend.push_back(apply(F, g, cfg, policy));
  }
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    decreasing = decreasing && out.seminorms[i + 1] < out.seminorms[i];
  }
  out.precondition_ok = decreasing && out.seminorms.back() < out.seminorms.front();
  if (!out.precondition_ok) {
    out.verdict = TrendVerdict::Inconsistent;
    out.message = "precondition failed: the sequence is not null in its seminorms";
    return out;
  }
  double peak = 0.0;
  for (double v : out.trend) peak = std::max(peak, std::abs(v));
  // Values below the infinitesimal threshold are quadrature noise around zero.
  const double tol_trend = std::max(1e-4 * peak, kInfinitesimalStTol);
  bool settled = true;
  for (std::size_t i = seq.size() / 2; i + 1 < seq.size(); ++i) {
    settled = settled && std::abs(out.trend[i + 1]) <= std::abs(out.trend[i]) + tol_trend;
  }
  const double allowed = out.seminorms.back() / out.seminorms.front() * peak + tol_trend;
  settled = settled && std::abs(out.trend.back()) <= allowed;
  out.verdict = settled ? TrendVerdict::Consistent : TrendVerdict::Inconsistent;
  out.message = settled ? "values decay with the seminorms" : "values do not decay with the seminorms";
  return out;
}

}  // namespace hyperdist
