#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hyperdist/functional.hpp"
#include "hyperdist/serialize.hpp"

namespace hyperdist {

struct SessionConfig {
  TruncationPolicy policy;
  QuadratureConfig quad;
  /// Empty means the default corpus.
  std::vector<TestFn> corpus;
  std::uint64_t seed = 0;

  const std::vector<TestFn>& effective_corpus() const;
};

Json to_json(const SessionConfig& c);
/// Fields absent from j keep the values of base. Validates the result.
SessionConfig config_from_json(const Json& j, SessionConfig base = {});

/// Named bindings sharing one label namespace.
struct Session {
  SessionConfig config;
  std::map<std::string, InternalExpr> functions;
  std::map<std::string, TestFn> testfns;
  std::map<std::string, GenFunctional> functionals;

  static Session from_json(const Json& j);
  static Session load(const std::string& path);
  Json to_json() const;

  bool has_label(const std::string& label) const;
  /// "@label" or an expression (JSON or infix text).
  InternalExpr resolve_expr(const Json& j) const;
  /// "@label", shorthand such as "bump:0,1", or test function JSON.
  TestFn resolve_testfn(const Json& j) const;
  /// "@label" of a functional or of a function (taken with order 0), or an
  /// expression used as representative.
  GenFunctional resolve_functional(const Json& j) const;
};

Json read_json_file(const std::string& path);

}  // namespace hyperdist
