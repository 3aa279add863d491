#pragma once

// Runs parsed programs through scope elaboration and the matching checker,
// and renders reports.

#include <optional>
#include <string>
#include <vector>

#include "polcheck/scope.hpp"
#include "polcheck/verdict.hpp"

namespace polcheck::driver {

enum class Stage { Ok, Parse, Scope, Type };

struct QueryRecord {
  std::string kind;  // query kind, or "parse" for a program that failed to parse
  std::optional<std::string> type;
  std::optional<std::string> context;
  std::optional<Diagnostic> error;
  Stage stage = Stage::Ok;
  double timeMs = 0;
};

struct Report {
  std::vector<QueryRecord> queries;

  bool ok() const;
  /// 0 when every query succeeds, 2 on any parse or scope error, else 1.
  int exitCode() const;
  std::string json() const;
  std::string text() const;
};

/// The calculus and preset a query is checked under.
struct Setting {
  scope::Calculus calculus = scope::Calculus::Pol;
  StructConfig cfg;
};

/// Typechecks an elaborated query. Pattern/copattern and λ-synthesis queries
/// yield a type; cocontextual and System L queries yield the synthesised
/// context over every synthesisable directive entry, with ⊤ for unused ones.
Verdict runQuery(const scope::ScopedQuery& q);

/// Parses, elaborates and checks every query of `source`.
Report checkSource(const std::string& source, const Setting& s, bool timing);

/// The elaborated tree of every query; errors are rendered inline. Without a
/// setting, System L queries use lnl/lnl-full and λ queries cdb/cartesian.
/// Throws surface::ParseError.
std::string elaborateSource(const std::string& source, const std::optional<Setting>& s);

/// Dualized program text. Throws surface::ParseError.
std::string dualizeSource(const std::string& source);

}  // namespace polcheck::driver
