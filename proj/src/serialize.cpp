#include "hyperdist/serialize.hpp"

#include <charconv>
#include <string>

#include "hyperdist/detail/overloaded.hpp"
#include "hyperdist/error.hpp"
#include "hyperdist/expr_parse.hpp"

namespace hyperdist {

namespace en = expr_nodes;
namespace tn = testfn_nodes;
using detail::Overloaded;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "' in " + j.dump());
  return j.at(key);
}

double number_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) bad(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

const Json& args(const Json& j, std::size_t count) {
  const Json& a = field(j, "args");
  if (!a.is_array() || a.size() != count) {
    bad("'" + j.value("op", std::string("?")) + "' takes " + std::to_string(count) + " argument(s)");
  }
  return a;
}

}  // namespace

Json to_json(const HyperReal& h) {
  Json out = Json::array();
  for (const Term& t : h.terms()) out.push_back({{"exp", t.exp.to_string()}, {"coef", t.coef}});
  return out;
}

HyperReal hyperreal_from_json(const Json& j, const TruncationPolicy& policy) {
  if (j.is_number()) return HyperReal::from_real(j.get<double>(), policy);
  if (!j.is_array()) bad("hyperreal must be an array of {exp, coef} terms");
  std::vector<Term> terms;
  for (const Json& t : j) {
    const Json& e = field(t, "exp");
    ExponentQ exp = e.is_number_integer() ? ExponentQ(e.get<std::int64_t>())
                    : e.is_string()       ? ExponentQ::parse(e.get<std::string>())
                                          : (bad("exponent must be \"p/q\" or an integer"), ExponentQ());
    terms.push_back(Term{exp, number_field(t, "coef")});
  }
  return HyperReal::from_terms(std::move(terms), policy);
}

Json to_json(const TruncationPolicy& p) {
  return {{"max_order", p.max_order.to_string()}, {"max_terms", p.max_terms}, {"zero_tol", p.zero_tol}};
}

TruncationPolicy policy_from_json(const Json& j, TruncationPolicy base) {
  if (!j.is_object()) bad("policy must be an object");
  if (j.contains("max_order")) {
    const Json& m = j.at("max_order");
    base.max_order = m.is_number_integer() ? ExponentQ(m.get<std::int64_t>())
                                           : ExponentQ::parse(m.get<std::string>());
  }
  if (j.contains("max_terms")) base.max_terms = j.at("max_terms").get<std::size_t>();
  if (j.contains("zero_tol")) base.zero_tol = j.at("zero_tol").get<double>();
  base.validate();
  return base;
}

Json to_json(const QuadratureConfig& q) {
  return {{"abs_tol", q.abs_tol}, {"max_subdivisions", q.max_subdivisions}, {"rule", to_string(q.rule)}};
}

QuadratureConfig quad_from_json(const Json& j, QuadratureConfig base) {
  if (!j.is_object()) bad("quadrature config must be an object");
  if (j.contains("abs_tol")) base.abs_tol = j.at("abs_tol").get<double>();
  if (j.contains("max_subdivisions")) base.max_subdivisions = j.at("max_subdivisions").get<int>();
  if (j.contains("rule")) base.rule = parse_quadrature_rule(j.at("rule").get<std::string>());
  base.validate();
  return base;
}

Json to_json(const TestFn& g) {
  return std::visit(
      Overloaded{
          [](const tn::Bump& b) -> Json { return {{"op", "bump"}, {"center", b.center}, {"halfwidth", b.halfwidth}}; },
          [](const tn::Plateau& p) -> Json { return {{"op", "plateau"}, {"inner", p.inner}, {"outer", p.outer}}; },
          [](const tn::PolyMod& p) -> Json { return {{"op", "polymod"}, {"coeffs", p.coeffs}, {"inner", to_json(p.inner)}}; },
          [](const tn::Scale& s) -> Json { return {{"op", "scale"}, {"factor", s.factor}, {"inner", to_json(s.inner)}}; },
          [](const tn::Shift& s) -> Json { return {{"op", "shift"}, {"offset", s.offset}, {"inner", to_json(s.inner)}}; },
          [](const tn::LinComb& l) -> Json {
            Json terms = Json::array();
            for (const auto& [w, fn] : l.terms) terms.push_back({{"weight", w}, {"fn", to_json(fn)}});
            return {{"op", "lincomb"}, {"terms", terms}};
          },
          [](const tn::Derivative& d) -> Json { return {{"op", "derivative"}, {"order", d.order}, {"inner", to_json(d.inner)}}; },
      },
      g.node().value);
}

TestFn testfn_from_json(const Json& j) {
  if (j.is_string()) return testfn_from_short(j.get<std::string>());
  const std::string op = field(j, "op").get<std::string>();
  if (op == "bump") return TestFn::bump(number_field(j, "center"), number_field(j, "halfwidth"));
  if (op == "plateau") return TestFn::plateau(number_field(j, "inner"), number_field(j, "outer"));
  if (op == "polymod") {
    return TestFn::poly_mod(field(j, "coeffs").get<std::vector<double>>(), testfn_from_json(field(j, "inner")));
  }
  if (op == "scale") return TestFn::scale(number_field(j, "factor"), testfn_from_json(field(j, "inner")));
  if (op == "shift") return TestFn::shift(number_field(j, "offset"), testfn_from_json(field(j, "inner")));
  if (op == "lincomb") {
    std::vector<std::pair<double, TestFn>> terms;
    for (const Json& t : field(j, "terms")) terms.emplace_back(number_field(t, "weight"), testfn_from_json(field(t, "fn")));
    return TestFn::lin_comb(std::move(terms));
  }
  if (op == "derivative") {
    return TestFn::derivative(field(j, "order").get<unsigned>(), testfn_from_json(field(j, "inner")));
  }
  bad("unknown test function op '" + op + "'");
}

TestFn testfn_from_short(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) bad("test function shorthand is kind:a,b, got '" + std::string(text) + "'");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  const std::size_t comma = rest.find(',');
  if (comma == std::string_view::npos) bad("test function shorthand needs two numbers");
  const auto num = [](std::string_view s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(std::string(s), &used);
      if (used != s.size()) throw std::invalid_argument("trailing text");
      return v;
    } catch (const std::exception&) {
      bad("bad number '" + std::string(s) + "' in test function shorthand");
    }
  };
  const double a = num(rest.substr(0, comma));
  const double b = num(rest.substr(comma + 1));
  if (kind == "bump") return TestFn::bump(a, b);
  if (kind == "plateau") return TestFn::plateau(a, b);
  bad("unknown test function shorthand '" + std::string(kind) + "'");
}

Json to_json(const InternalExpr& f) {
  const auto unary = [](const char* op, const InternalExpr& a) -> Json {
    return {{"op", op}, {"args", Json::array({to_json(a)})}};
  };
  const auto binary = [](const char* op, const InternalExpr& a, const InternalExpr& b) -> Json {
    return {{"op", op}, {"args", Json::array({to_json(a), to_json(b)})}};
  };
  return std::visit(
      Overloaded{
          [](const en::Var&) -> Json { return {{"op", "var"}}; },
          [](const en::Const& c) -> Json { return {{"op", "const"}, {"value", to_json(c.value)}}; },
          [&](const en::Add& a) { return binary("add", a.lhs, a.rhs); },
          [&](const en::Mul& m) { return binary("mul", m.lhs, m.rhs); },
          [&](const en::Neg& a) { return unary("neg", a.arg); },
          [&](const en::IntPow& p) {
            Json j = unary("pow", p.arg);
            j["n"] = p.n;
            return j;
          },
          [&](const en::Recip& r) { return unary("recip", r.arg); },
          [&](const en::Sin& a) { return unary("sin", a.arg); },
          [&](const en::Cos& a) { return unary("cos", a.arg); },
          [&](const en::Exp& a) { return unary("exp", a.arg); },
          [&](const en::Bump& b) { return unary("bump", b.arg); },
          [&](const en::Plateau& p) {
            Json j = unary("plateau", p.arg);
            j["a"] = p.a;
            return j;
          },
          [](const en::Piecewise& p) -> Json {
            return {{"op", "piecewise"},
                    {"cmp", to_string(p.op)},
                    {"args", Json::array({to_json(p.lhs), to_json(p.rhs), to_json(p.then_branch),
                                          to_json(p.else_branch)})}};
          },
          [&](const en::Mollify& m) {
            Json j = unary("mollify", m.base);
            j["scale"] = to_json(m.scale);
            j["amplitude"] = to_json(m.amplitude);
            return j;
          },
          [](const en::TestRef& r) -> Json { return {{"op", "test"}, {"fn", to_json(r.fn)}}; },
      },
      f.node().value);
}

InternalExpr expr_from_json(const Json& j, const TruncationPolicy& policy) {
  if (j.is_string()) return parse_infix(j.get<std::string>(), policy);
  if (j.is_number()) return constant(j.get<double>(), policy);
  const std::string op = field(j, "op").get<std::string>();
  const auto arg = [&](std::size_t count, std::size_t i) { return expr_from_json(args(j, count)[i], policy); };
  if (op == "var") return var();
  if (op == "const") return constant(hyperreal_from_json(field(j, "value"), policy));
  if (op == "add") return add(arg(2, 0), arg(2, 1));
  if (op == "sub") return sub(arg(2, 0), arg(2, 1));
  if (op == "mul") return mul(arg(2, 0), arg(2, 1));
  if (op == "neg") return neg(arg(1, 0));
  if (op == "pow") return ipow(arg(1, 0), field(j, "n").get<unsigned>());
  if (op == "recip") return recip(arg(1, 0));
  if (op == "sin") return sin(arg(1, 0));
  if (op == "cos") return cos(arg(1, 0));
  if (op == "exp") return exp(arg(1, 0));
  if (op == "bump") return bump(arg(1, 0));
  if (op == "plateau") return plateau(number_field(j, "a"), arg(1, 0));
  if (op == "piecewise") {
    return piecewise(arg(4, 0), parse_cmp_op(field(j, "cmp").get<std::string>()), arg(4, 1), arg(4, 2), arg(4, 3));
  }
  if (op == "mollify") {
    return mollify(arg(1, 0), hyperreal_from_json(field(j, "scale"), policy),
                   hyperreal_from_json(field(j, "amplitude"), policy));
  }
  if (op == "test") return test_ref(testfn_from_json(field(j, "fn")));
  if (op == "dirac") return make_dirac(policy);
  bad("unknown expression op '" + op + "'");
}

Json to_json(const PairingResult& r) {
  return {{"value", to_json(r.value)},
          {"status", to_string(r.status)},
          {"quad_error", r.quad_error},
          {"form", to_string(r.form)}};
}

Json to_json(const MembershipResult& m) {
  Json energies = Json::array();
  for (const EnergyProbe& e : m.energies) {
    Json x{{"interval", {e.c, e.d}}};
    if (e.result) x["result"] = to_json(*e.result);
    if (!e.failure.empty()) x["failure"] = e.failure;
    energies.push_back(std::move(x));
  }
  Json out{{"verdict", to_string(m.verdict)},
           {"energy_computable", m.energy_computable},
           {"energy_limited", m.energy_limited},
           {"energies", energies},
           {"reason", m.reason}};
  if (m.witness) out["witness"] = to_json(*m.witness);
  if (m.witness_index) out["witness_index"] = *m.witness_index;
  if (m.witness_pairing) out["witness_pairing"] = to_json(*m.witness_pairing);
  if (m.witness_interval) out["witness_interval"] = {m.witness_interval->first, m.witness_interval->second};
  return out;
}

Json to_json(const Verdict& v) {
  Json out{{"verdict", to_string(v.kind)}, {"rule", v.rule}};
  if (v.witness) out["witness"] = to_json(*v.witness);
  if (!v.values.empty()) {
    Json vals = Json::array();
    for (const HyperReal& h : v.values) vals.push_back(to_json(h));
    out["values"] = vals;
  }
  if (v.crosscheck) out["standard_crosscheck_agrees"] = *v.crosscheck;
  return out;
}

Json to_json(const EquivalenceVerdict& v) {
  Json out{{"verdict", to_string(v.kind)}};
  if (v.witness) out["witness"] = to_json(*v.witness);
  if (v.witness_index) out["witness_index"] = *v.witness_index;
  if (v.witness_pairing) out["witness_pairing"] = to_json(*v.witness_pairing);
  return out;
}

Json to_json(const ShadowResult& s) {
  Json table = Json::array();
  for (const auto& [p, v] : s.table) table.push_back({p, v});
  Json out{{"table", table}, {"max_defect", s.max_defect}};
  out["ast"] = s.ast ? to_json(*s.ast) : Json(nullptr);
  if (s.ast) out["ast_text"] = to_string(*s.ast);
  return out;
}

Json to_json(const MatchResult& m) {
  Json legendre = Json::array();
  for (std::size_t n = 0; n < m.legendre.size(); ++n) {
    if (m.legendre[n] != 0.0) legendre.push_back({{"n", n}, {"coef", m.legendre[n]}});
  }
  return {{"c", m.matrix.basis.c},
          {"N", m.matrix.basis.N},
          {"selected_columns", m.matrix.selected_columns},
          {"A", m.matrix.A},
          {"condition", m.matrix.condition},
          {"targets", m.targets},
          {"coefficients", m.coefficients},
          {"legendre", legendre},
          {"monomial", m.monomial},
          {"polynomial", to_json(m.polynomial)},
          {"residuals", m.residuals}};
}

Json to_json(const OraclePolynomial& p) { return {{"c", p.c}, {"legendre", p.legendre}}; }

Json to_json(const SchwarzDiagnostic& d) {
  return {{"trend", d.trend},
          {"seminorms", d.seminorms},
          {"verdict", to_string(d.verdict)},
          {"precondition_ok", d.precondition_ok},
          {"message", d.message}};
}

Json to_json(const SchwarzCheck& c) {
  return {{"holds", c.holds}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"diagnostic", c.diagnostic}};
}

}  // namespace hyperdist
