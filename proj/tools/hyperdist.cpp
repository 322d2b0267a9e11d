#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hyperdist/continuity.hpp"
#include "hyperdist/error.hpp"
#include "hyperdist/expr_parse.hpp"
#include "hyperdist/functional.hpp"
#include "hyperdist/legendre.hpp"
#include "hyperdist/pairing.hpp"
#include "hyperdist/serialize.hpp"
#include "hyperdist/session.hpp"

using namespace hyperdist;

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json error_json(std::string_view kind, std::string_view message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

/// lo:hi:step, inclusive of hi up to rounding.
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      parts.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("bad grid '" + text + "', expected lo:hi:step");
    }
  }
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw UsageError("bad grid '" + text + "', expected lo:hi:step with step > 0");
  }
  std::vector<double> grid;
  const auto count = static_cast<long long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
  if (count > 1000000) throw UsageError("grid has too many points");
  for (long long i = 0; i <= count; ++i) grid.push_back(parts[0] + static_cast<double>(i) * parts[2]);
  return grid;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("bad number '" + item + "' in list '" + text + "'");
    }
  }
  return out;
}

/// A test function given as shorthand, @label, inline JSON or a JSON file.
Json testfn_arg(const std::string& text) {
  if (text.empty()) throw UsageError("empty test function argument");
  if (text.front() == '{') return Json::parse(text);
  if (text.find(':') != std::string::npos || text.front() == '@') return text;
  return read_json_file(text);
}

struct Options {
  std::string config_path;
  std::string session_path;
  std::string plot_path;
  bool show_config = false;
  std::optional<std::string> max_order;
  std::optional<double> abs_tol;
  std::optional<std::string> rule;
  std::optional<std::uint64_t> seed;

  std::string expr;
  std::string fn_path;
  std::string g;
  std::string testfns_path;
  std::string targets;
  std::string at;
  std::string grid;
  std::string sweep;
  std::string f_other;
  std::string h_other;
  std::size_t N = kDefaultLegendreN;
  unsigned order = 0;
  unsigned n_max = 8;
  double c = -1.0;
  double d = 1.0;
  bool oracle = false;
};

class App {
 public:
  explicit App(Options o) : o_(std::move(o)) {}

  void load() {
    if (!o_.session_path.empty()) session_ = Session::load(o_.session_path);
    if (!o_.config_path.empty()) session_.config = config_from_json(read_json_file(o_.config_path), session_.config);
    Json overrides = Json::object();
    if (o_.max_order) overrides["policy"]["max_order"] = *o_.max_order;
    if (o_.abs_tol) overrides["quad"]["abs_tol"] = *o_.abs_tol;
    if (o_.rule) overrides["quad"]["rule"] = *o_.rule;
    if (o_.seed) overrides["seed"] = *o_.seed;
    if (!overrides.empty()) session_.config = config_from_json(overrides, session_.config);
  }

  const SessionConfig& cfg() const { return session_.config; }
  const TruncationPolicy& policy() const { return cfg().policy; }
  const QuadratureConfig& quad() const { return cfg().quad; }

  InternalExpr function(const std::string& expr, const std::string& path) const {
    if (!expr.empty() && !path.empty()) throw UsageError("give either --expr or --fn, not both");
    if (!path.empty()) return session_.resolve_expr(read_json_file(path));
    if (expr.empty()) throw UsageError("a function is required (--expr or --fn)");
    return session_.resolve_expr(Json(expr));
  }
  InternalExpr function() const { return function(o_.expr, o_.fn_path); }

  GenFunctional functional() const {
    if (!o_.fn_path.empty()) return session_.resolve_functional(read_json_file(o_.fn_path));
    if (o_.expr.empty()) throw UsageError("a functional is required (--expr or --fn)");
    GenFunctional F = session_.resolve_functional(Json(o_.expr));
    F.deriv_order += o_.order;
    return F;
  }

  TestFn testfn() const {
    if (o_.g.empty()) throw UsageError("a test function is required (--g)");
    return session_.resolve_testfn(testfn_arg(o_.g));
  }

  HyperReal point(const std::string& text) const {
    if (text.empty()) throw UsageError("a point is required (--at)");
    const InternalExpr e = parse_infix(text, policy());
    if (contains_var(e)) throw UsageError("point must be constant: '" + text + "'");
    return eval_at(e, HyperReal(policy()));
  }

  double real_point(const std::string& text) const {
    const HyperReal p = point(text);
    if (!p.is_real()) throw UsageError("point must be a standard real: '" + text + "'");
    return p.coefficient(ExponentQ(0));
  }

  void plot(const std::vector<std::tuple<double, double, std::string>>& rows) const {
    if (o_.plot_path.empty()) return;
    std::ofstream out(o_.plot_path);
    if (!out) throw UsageError("cannot write plot data to '" + o_.plot_path + "'");
    out.precision(17);
    out << "x,value,coefficient_index\n";
    for (const auto& [x, v, idx] : rows) out << x << "," << v << "," << idx << "\n";
  }

  static void add_series_rows(std::vector<std::tuple<double, double, std::string>>& rows, double x,
                              const HyperReal& h) {
    if (h.is_zero()) rows.emplace_back(x, 0.0, "0");
    for (const Term& t : h.terms()) rows.emplace_back(x, t.coef, t.exp.to_string());
  }

  Json classify_cmd() const {
    HyperReal value;
    const InternalExpr e = function();
    if (contains_var(e)) {
      value = eval_at(e, point(o_.at));
    } else {
      if (!o_.at.empty()) throw UsageError("--at applies to expressions in x only");
      value = eval_at(e, HyperReal(policy()));
    }
    Json out{{"value", to_json(value)}, {"class", to_string(classify(value))}, {"text", to_string(value)}};
    out["leading_exp"] = value.is_zero() ? Json(nullptr) : Json(value.leading_exponent().to_string());
    if (classify(value) != NumClass::Infinite) out["standard_part"] = standard_part(value);
    return out;
  }

  Json pair_cmd() const {
    const InternalExpr f = function();
    const TestFn g = testfn();
    if (o_.sweep.empty()) {
      const PairingResult r = pair(f, g, quad(), policy());
      std::vector<std::tuple<double, double, std::string>> rows;
      add_series_rows(rows, 0.0, r.value);
      plot(rows);
      return to_json(r);
    }
    Json out = Json::array();
    std::vector<std::tuple<double, double, std::string>> rows;
    for (double s : parse_grid(o_.sweep)) {
      const PairingResult r = pair(f, TestFn::shift(s, g), quad(), policy());
      add_series_rows(rows, s, r.value);
      Json item = to_json(r);
      item["shift"] = s;
      out.push_back(std::move(item));
    }
    plot(rows);
    return {{"sweep", out}};
  }

  Json functional_cmd() const {
    const GenFunctional F = functional();
    Json out{{"label", F.label}, {"deriv_order", F.deriv_order}};
    if (!o_.at.empty()) {
      const PointValue v = value_at(F, real_point(o_.at), policy());
      out["point"] = real_point(o_.at);
      out["value"] = v.value;
      out["s_continuity"] = to_json(v.s_continuity_evidence);
      return out;
    }
    const TestFn g = testfn();
    out["applied"] = apply(F, g, quad(), policy());
    out["test_fn"] = to_json(g);
    return out;
  }

  Json dirac_check_cmd() const {
    const TestFn g = testfn();
    GenFunctional F = dirac(policy());
    for (unsigned k = 0; k < o_.order; ++k) F = derivative(F);
    const double applied = apply(F, g, quad(), policy());
    const double gk0 = deriv_eval(g, o_.order, 0.0);
    const double expected = o_.order % 2 == 0 ? gk0 : -gk0;
    Json out{{"applied", applied}, {"abs_err", std::abs(applied - expected)}, {"deriv_order", o_.order}};
    out[o_.order == 0 ? "expected_g0" : "expected"] = expected;
    return out;
  }

  std::vector<TestFn> testfn_list() const {
    if (o_.testfns_path.empty()) throw UsageError("--testfns is required");
    const Json j = read_json_file(o_.testfns_path);
    if (!j.is_array()) throw Error(ErrorKind::ParseError, "--testfns file must hold a JSON array");
    std::vector<TestFn> out;
    for (const Json& g : j) out.push_back(session_.resolve_testfn(g));
    return out;
  }

  Json legendre_cmd() const {
    const std::vector<TestFn> gs = testfn_list();
    const std::vector<double> targets = parse_list(o_.targets);
    const MatchResult m = match(gs, targets, o_.N, quad());
    Json out = to_json(m);
    std::vector<std::tuple<double, double, std::string>> rows;
    const double c = m.matrix.basis.c;
    for (int i = 0; i <= 200; ++i) {
      const double x = -c + 2.0 * c * i / 200.0;
      rows.emplace_back(x, legendre_series(m.legendre, c, x), "0");
    }
    plot(rows);
    if (o_.oracle) {
      const OraclePolynomial p = brute_force_oracle(gs, targets, o_.N, quad());
      const std::vector<double> mine = functional_values(m.legendre, c, gs, quad());
      const std::vector<double> theirs = functional_values(p.legendre, p.c, gs, quad());
      double agree = 0.0;
      for (std::size_t j = 0; j < gs.size(); ++j) agree = std::max(agree, std::abs(mine[j] - theirs[j]));
      out["oracle"] = to_json(p);
      out["oracle_agreement"] = agree;
    }
    return out;
  }

  Json s_continuity_cmd() const { return to_json(s_continuity(function(), real_point(o_.at), policy())); }

  Json star_continuity_cmd() const { return to_json(star_continuity(function(), point(o_.at))); }

  Json shadow_cmd() const {
    if (o_.grid.empty()) throw UsageError("--grid lo:hi:step is required");
    const ShadowResult s = shadow(function(), parse_grid(o_.grid), policy());
    std::vector<std::tuple<double, double, std::string>> rows;
    for (const auto& [p, v] : s.table) rows.emplace_back(p, v, "0");
    plot(rows);
    return to_json(s);
  }

  Json equiv_cmd() const {
    const InternalExpr f = function(o_.f_other, "");
    const auto& corpus = cfg().effective_corpus();
    if (o_.h_other.empty()) return to_json(in_T0(f, corpus, quad(), policy()));
    return to_json(equivalent(f, function(o_.h_other, ""), corpus, quad(), policy()));
  }

  Json energy_cmd() const { return to_json(energy(function(), o_.c, o_.d, quad(), policy())); }

  Json member_cmd() const { return to_json(member_T(function(), cfg().effective_corpus(), quad(), policy())); }

  Json schwarz_cmd() const {
    const GenFunctional F = functional();
    const TestFn g = testfn();
    if (o_.n_max < 2) throw UsageError("--n-max must be at least 2");
    std::vector<TestFn> seq;
    for (unsigned n = 1; n <= o_.n_max; ++n) seq.push_back(TestFn::lin_comb({{1.0 / n, g}}));
    const SchwarzDiagnostic d = schwarz_class_diagnostic(F, seq, quad(), policy());
    std::vector<std::tuple<double, double, std::string>> rows;
    for (std::size_t i = 0; i < d.trend.size(); ++i) rows.emplace_back(static_cast<double>(i + 1), d.trend[i], "0");
    plot(rows);
    return to_json(d);
  }

 private:
  Options o_;
  Session session_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Computable hyperreal distribution calculus"};
  cli.fallthrough();
  cli.set_help_all_flag("--help-all");
  Options o;
  cli.add_option("--config", o.config_path, "JSON config file");
  cli.add_option("--session", o.session_path, "JSON session file with named bindings");
  cli.add_option("--plot-data", o.plot_path, "Write CSV (x, value, coefficient_index)");
  cli.add_flag("--show-config", o.show_config, "Print the effective config and exit");
  cli.add_option("--max-order", o.max_order, "Truncation order, e.g. 6 or 13/2");
  cli.add_option("--abs-tol", o.abs_tol, "Quadrature absolute tolerance");
  cli.add_option("--rule", o.rule, "gauss-kronrod-15 or adaptive-simpson");
  cli.add_option("--seed", o.seed, "Seed recorded in the config");

  const auto add_fn = [&](CLI::App* sub) {
    sub->add_option("--expr", o.expr, "Infix expression or @label");
    sub->add_option("--fn", o.fn_path, "Expression JSON file");
  };
  const auto add_g = [&](CLI::App* sub) {
    sub->add_option("--g", o.g, "Test function: bump:c,h | plateau:a,b | @label | JSON | file");
  };

  auto* classify_cmd = cli.add_subcommand("classify", "Classify a hyperreal constant or f(at)");
  add_fn(classify_cmd);
  classify_cmd->add_option("--at", o.at, "Point for expressions in x");

  auto* pair_cmd = cli.add_subcommand("pair", "Quasi-inner product <f, *g>");
  add_fn(pair_cmd);
  add_g(pair_cmd);
  pair_cmd->add_option("--sweep", o.sweep, "Shift g over lo:hi:step");

  auto* functional_cmd = cli.add_subcommand("functional", "Apply f[g] or take a point value");
  add_fn(functional_cmd);
  add_g(functional_cmd);
  functional_cmd->add_option("--order", o.order, "Derivative order");
  functional_cmd->add_option("--at", o.at, "Point value at a real p instead of applying");

  auto* dirac_cmd = cli.add_subcommand("dirac-check", "Compare delta^(k)[g] with (-1)^k g^(k)(0)");
  add_g(dirac_cmd);
  dirac_cmd->add_option("--order", o.order, "Derivative order");

  auto* legendre_cmd = cli.add_subcommand("legendre-match", "Polynomial with prescribed functional values");
  legendre_cmd->add_option("--testfns", o.testfns_path, "JSON array of test functions")->required();
  legendre_cmd->add_option("--targets", o.targets, "Comma-separated targets")->required();
  legendre_cmd->add_option("--N", o.N, "Number of Legendre basis members");
  legendre_cmd->add_flag("--oracle", o.oracle, "Also run the minimum-norm oracle");

  auto* s_cmd = cli.add_subcommand("s-continuity", "S-continuity verdict at a real point");
  add_fn(s_cmd);
  s_cmd->add_option("--at", o.at, "Real point")->required();

  auto* star_cmd = cli.add_subcommand("star-continuity", "*-continuity verdict at a hyperreal point");
  add_fn(star_cmd);
  star_cmd->add_option("--at", o.at, "Hyperreal point, e.g. 1 + eps")->required();

  auto* shadow_cmd = cli.add_subcommand("shadow", "Standard shadow on a grid");
  add_fn(shadow_cmd);
  shadow_cmd->add_option("--grid", o.grid, "lo:hi:step")->required();

  auto* equiv_cmd = cli.add_subcommand("equiv", "Equivalence modulo T0 on the corpus");
  equiv_cmd->add_option("--lhs", o.f_other, "First function (infix or @label)")->required();
  equiv_cmd->add_option("--rhs", o.h_other, "Second function; omitted means test lhs in T0");

  auto* energy_cmd = cli.add_subcommand("energy", "Integral of f^2 over [c, d]");
  add_fn(energy_cmd);
  energy_cmd->add_option("--c", o.c, "Lower limit");
  energy_cmd->add_option("--d", o.d, "Upper limit");

  auto* member_cmd = cli.add_subcommand("member", "Membership verdict on the corpus");
  add_fn(member_cmd);

  auto* schwarz_cmd = cli.add_subcommand("schwarz-diagnostic", "f[g/n] trend for n = 1..n-max");
  add_fn(schwarz_cmd);
  add_g(schwarz_cmd);
  schwarz_cmd->add_option("--order", o.order, "Derivative order");
  schwarz_cmd->add_option("--n-max", o.n_max, "Sequence length");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    emit(error_json("UsageError", e.what()));
    return kExitUsage;
  }

  App app(o);
  try {
    app.load();
    if (o.show_config) {
      emit(to_json(app.cfg()));
      return 0;
    }
    Json out;
    if (classify_cmd->parsed()) out = app.classify_cmd();
    else if (pair_cmd->parsed()) out = app.pair_cmd();
    else if (functional_cmd->parsed()) out = app.functional_cmd();
    else if (dirac_cmd->parsed()) out = app.dirac_check_cmd();
    else if (legendre_cmd->parsed()) out = app.legendre_cmd();
    else if (s_cmd->parsed()) out = app.s_continuity_cmd();
    else if (star_cmd->parsed()) out = app.star_continuity_cmd();
    else if (shadow_cmd->parsed()) out = app.shadow_cmd();
    else if (equiv_cmd->parsed()) out = app.equiv_cmd();
    else if (energy_cmd->parsed()) out = app.energy_cmd();
    else if (member_cmd->parsed()) out = app.member_cmd();
    else if (schwarz_cmd->parsed()) out = app.schwarz_cmd();
    else throw UsageError("a subcommand is required; see --help");
    emit(out);
    return 0;
  } catch (const UsageError& e) {
    emit(error_json("UsageError", e.what()));
    return kExitUsage;
  } catch (const Error& e) {
    emit(error_json(to_string(e.kind()), e.what()));
    return kExitDomain;
  } catch (const Json::exception& e) {
    emit(error_json("ParseError", e.what()));
    return kExitDomain;
  } catch (const std::exception& e) {
    emit(error_json("InternalError", e.what()));
    return kExitDomain;
  }
}
