#include "hyperdist/session.hpp"

#include <fstream>
#include <sstream>

#include "hyperdist/error.hpp"

namespace hyperdist {

const std::vector<TestFn>& SessionConfig::effective_corpus() const {
  static const std::vector<TestFn> fallback = default_corpus();
  return corpus.empty() ? fallback : corpus;
}

Json to_json(const SessionConfig& c) {
  Json corpus = "default";
  if (!c.corpus.empty()) {
    corpus = Json::array();
    for (const TestFn& g : c.corpus) corpus.push_back(to_json(g));
  }
  return {{"policy", to_json(c.policy)}, {"quad", to_json(c.quad)}, {"corpus", corpus}, {"seed", c.seed}};
}

SessionConfig config_from_json(const Json& j, SessionConfig base) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "policy" && key != "quad" && key != "corpus" && key != "seed") {
      throw Error(ErrorKind::ParseError, "unknown config field '" + key + "'");
    }
  }
  if (j.contains("policy")) base.policy = policy_from_json(j.at("policy"), base.policy);
  if (j.contains("quad")) base.quad = quad_from_json(j.at("quad"), base.quad);
  if (j.contains("corpus")) {
    const Json& c = j.at("corpus");
    base.corpus.clear();
    if (c.is_array()) {
      for (const Json& g : c) base.corpus.push_back(testfn_from_json(g));
      if (base.corpus.empty()) throw Error(ErrorKind::InvalidArgument, "corpus must not be empty");
    } else if (!(c.is_string() && c.get<std::string>() == "default")) {
      throw Error(ErrorKind::ParseError, "corpus must be \"default\" or an array of test functions");
    }
  }
  if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
  base.policy.validate();
  base.quad.validate();
  return base;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "'" + path + "': " + e.what());
  }
}

bool Session::has_label(const std::string& label) const {
  return functions.contains(label) || testfns.contains(label) || functionals.contains(label);
}

namespace {

std::optional<std::string> label_ref(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (!s.empty() && s.front() == '@') return s.substr(1);
  }
  return std::nullopt;
}

[[noreturn]] void unknown_label(const std::string& label, const char* kind) {
  throw Error(ErrorKind::InvalidArgument, std::string("no ") + kind + " bound to label '" + label + "'");
}

}  // namespace

InternalExpr Session::resolve_expr(const Json& j) const {
  if (auto label = label_ref(j)) {
    if (auto it = functions.find(*label); it != functions.end()) return it->second;
    if (auto it = testfns.find(*label); it != testfns.end()) return test_ref(it->second);
    unknown_label(*label, "function");
  }
  return expr_from_json(j, config.policy);
}

TestFn Session::resolve_testfn(const Json& j) const {
  if (auto label = label_ref(j)) {
    if (auto it = testfns.find(*label); it != testfns.end()) return it->second;
    unknown_label(*label, "test function");
  }
  return testfn_from_json(j);
}

GenFunctional Session::resolve_functional(const Json& j) const {
  if (auto label = label_ref(j)) {
    if (auto it = functionals.find(*label); it != functionals.end()) return it->second;
    if (auto it = functions.find(*label); it != functions.end()) {
      return GenFunctional{it->second, 0, *label, std::nullopt};
    }
    unknown_label(*label, "functional");
  }
  const InternalExpr rep = resolve_expr(j);
  return GenFunctional{rep, 0, to_string(rep), std::nullopt};
}

Session Session::from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "session must be a JSON object");
  Session s;
  if (j.contains("config")) s.config = config_from_json(j.at("config"));
  const auto claim = [&](const std::string& label) {
    if (label.empty() || s.has_label(label)) {
      throw Error(ErrorKind::InvalidArgument, "duplicate or empty session label '" + label + "'");
    }
  };
  if (j.contains("testfns")) {
    for (const auto& [label, v] : j.at("testfns").items()) {
      claim(label);
      s.testfns.emplace(label, testfn_from_json(v));
    }
  }
  if (j.contains("functions")) {
    for (const auto& [label, v] : j.at("functions").items()) {
      claim(label);
      s.functions.emplace(label, s.resolve_expr(v));
    }
  }
  if (j.contains("functionals")) {
    for (const auto& [label, v] : j.at("functionals").items()) {
      claim(label);
      GenFunctional F = s.resolve_functional(v.is_object() && v.contains("rep") ? v.at("rep") : v);
      F.label = label;
      if (v.is_object() && v.contains("deriv_order")) F.deriv_order = v.at("deriv_order").get<unsigned>();
      s.functionals.emplace(label, std::move(F));
    }
  }
  return s;
}

Session Session::load(const std::string& path) { return from_json(read_json_file(path)); }

Json Session::to_json() const {
  Json fs = Json::object();
  for (const auto& [label, f] : functions) fs[label] = hyperdist::to_json(f);
  Json ts = Json::object();
  for (const auto& [label, g] : testfns) ts[label] = hyperdist::to_json(g);
  Json gs = Json::object();
  for (const auto& [label, F] : functionals) {
    gs[label] = {{"rep", hyperdist::to_json(F.rep)}, {"deriv_order", F.deriv_order}};
  }
  return {{"config", hyperdist::to_json(config)}, {"functions", fs}, {"testfns", ts}, {"functionals", gs}};
}

}  // namespace hyperdist
