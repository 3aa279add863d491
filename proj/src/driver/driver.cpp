#include "polcheck/driver.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "polcheck/lambda.hpp"
#include "polcheck/systeml.hpp"

namespace polcheck::driver {

using scope::Calculus;
using scope::ScopedQuery;
using surface::QueryKind;

namespace {

// Checkable-side types of the directive entries, keyed by binding id.
systeml::CheckableEnv checkableEnv(const ScopedQuery& q) {
  systeml::CheckableEnv env;
  for (std::size_t i = 0; i < q.entries.size(); ++i)
    if (q.types[i] && !isSynthesisable(q.entries[i].cls)) env.emplace(q.entries[i].id, *q.types[i]);
  return env;
}

// Widens a root-aligned context to every entry of `target`, filling unused
// ones with the top of their polarity.
TypedCtx widen(const TypedCtx& ctx, const ScopedCtx& root, const ScopedCtx& target) {
  Thinning th;
  for (const auto& e : target) {
    const bool used = std::any_of(root.begin(), root.end(),
                                  [&](const ScopedEntry& r) { return r.id == e.id; });
    th.push_back(used ? ThinStep::Keep : ThinStep::Drop);
  }
  return extendTyped(th, ctx, target);
}

Verdict runL(const ScopedQuery& q) {
  const auto env = checkableEnv(q);
  const auto& root = *q.root;
  Verdict v;
  switch (q.kind) {
    case QueryKind::Expr: v = systeml::checkExpr(env, *q.type, root, q.cfg); break;
    case QueryKind::Coexpr: v = systeml::checkCoexpr(env, *q.type, root, q.cfg); break;
    case QueryKind::Pattern: v = systeml::synthPattern(env, root, q.cfg); break;
    case QueryKind::Copattern: v = systeml::synthCopattern(env, root, q.cfg); break;
    default: v = systeml::checkCommand(env, root, q.cfg); break;
  }
  if (v.ok() && v.ctx)
    v.ctx = widen(*v.ctx, systeml::synthesisable(root.scope), systeml::synthesisable(q.entries));
  return v;
}

Verdict runLambda(const ScopedQuery& q) {
  const bool check = q.kind == QueryKind::LambdaCheck;
  if (q.calculus == Calculus::Stlc) {
    TypedCtx ctx;
    for (std::size_t i = 0; i < q.entries.size(); ++i)
      ctx.push_back({q.entries[i].name, VarClass::Lambda, *q.types[i]});
    return check ? lambda::checkStandard(ctx, *q.type, *q.root)
                 : lambda::synthStandard(ctx, *q.root);
  }
  const bool lin = q.calculus == Calculus::Lin;
  Verdict v = check ? lambda::checkCocontextual(q.root->scope, *q.type, *q.root, q.cfg, lin)
                    : lambda::synthCocontextual(q.root->scope, *q.root, q.cfg, lin);
  if (v.ok() && v.ctx) v.ctx = widen(*v.ctx, q.root->scope, q.entries);
  return v;
}

std::vector<const surface::Directive*> queriesOf(const surface::Program& p) {
  std::vector<const surface::Directive*> out;
  for (const auto& d : p.directives)
    if (d.tag == surface::Directive::Tag::Query) out.push_back(&d);
  return out;
}

nlohmann::ordered_json errorJson(const Diagnostic& d) {
  nlohmann::ordered_json j;
  j["code"] = d.code;
  j["message"] = d.message;
  j["line"] = d.loc.line;
  j["column"] = d.loc.column;
  return j;
}

std::string where(const surface::Loc& l) {
  return std::to_string(l.line) + ":" + std::to_string(l.column);
}

}  // namespace

Verdict runQuery(const ScopedQuery& q) {
  try {
    return familyOf(q.calculus) == Family::Lambda ? runLambda(q) : runL(q);
  } catch (const IllFormedQuery& e) {
    return Verdict::failure(TypeError("ill-formed-query", e.what(), q.loc));
  }
}

bool Report::ok() const {
  return std::all_of(queries.begin(), queries.end(),
                     [](const QueryRecord& r) { return r.stage == Stage::Ok; });
}

int Report::exitCode() const {
  int code = 0;
  for (const auto& r : queries) {
    if (r.stage == Stage::Parse || r.stage == Stage::Scope) return 2;
    if (r.stage == Stage::Type) code = 1;
  }
  return code;
}

std::string Report::json() const {
  nlohmann::ordered_json j;
  j["status"] = ok() ? "ok" : "error";
  j["queries"] = nlohmann::ordered_json::array();
  for (const auto& r : queries) {
    nlohmann::ordered_json q;
    q["kind"] = r.kind;
    q["type"] = r.type ? nlohmann::ordered_json(*r.type) : nullptr;
    q["context"] = r.context ? nlohmann::ordered_json(*r.context) : nullptr;
    q["error"] = r.error ? errorJson(*r.error) : nullptr;
    q["time_ms"] = r.timeMs;
    j["queries"].push_back(std::move(q));
  }
  return j.dump(2) + "\n";
}

std::string Report::text() const {
  std::ostringstream out;
  for (const auto& r : queries) {
    if (r.error) {
      out << where(r.error->loc) << " " << r.kind << ": error " << r.error->code << ": "
          << r.error->message << "\n";
      continue;
    }
    out << r.kind << ": ok";
    if (r.type) out << "  type " << *r.type;
    if (r.context) out << "  context " << *r.context;
    out << "\n";
  }
  out << "status: " << (ok() ? "ok" : "error") << "\n";
  return out.str();
}

Report checkSource(const std::string& source, const Setting& s, bool timing) {
  Report rep;
  surface::Program prog;
  try {
    prog = surface::parseProgram(source);
  } catch (const surface::ParseError& e) {
    rep.queries.push_back(
        {"parse", std::nullopt, std::nullopt, Diagnostic{e.code(), e.what(), e.loc()}, Stage::Parse});
    return rep;
  }
  for (const auto* d : queriesOf(prog)) {
    QueryRecord rec;
    rec.kind = surface::queryKindName(d->kind);
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto q = scope::elaborate(*d, s.calculus, s.cfg);
      const Verdict v = runQuery(q);
      if (v.ok()) {
        if (v.type) rec.type = printType(*v.type);
        if (v.ctx) rec.context = printTypedCtx(*v.ctx);
      } else {
        rec.error = v.error;
        rec.stage = Stage::Type;
      }
    } catch (const scope::ScopeError& e) {
      rec.error = Diagnostic{e.code(), e.what(), e.loc()};
      rec.stage = Stage::Scope;
    }
    if (timing) {
      const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - start;
      rec.timeMs = std::round(dt.count() * 1000) / 1000;
    }
    rep.queries.push_back(std::move(rec));
  }
  return rep;
}

std::string elaborateSource(const std::string& source, const std::optional<Setting>& s) {
  const auto prog = surface::parseProgram(source);
  std::ostringstream out;
  for (const auto* d : queriesOf(prog)) {
    Setting use;
    if (s) {
      use = *s;
    } else {
      use.calculus = surface::queryFamily(d->kind) == Family::Lambda ? scope::Calculus::Cdb
                                                                     : scope::Calculus::Lnl;
      use.cfg = StructConfig::of(scope::defaultPreset(use.calculus));
    }
    try {
      out << scope::printTree(scope::elaborate(*d, use.calculus, use.cfg));
    } catch (const scope::ScopeError& e) {
      out << where(e.loc()) << " " << surface::queryKindName(d->kind) << ": error " << e.code()
          << ": " << e.what() << "\n";
    }
  }
  return out.str();
}

std::string dualizeSource(const std::string& source) {
  return surface::printProgram(systeml::dualize(surface::parseProgram(source)));
}

}  // namespace polcheck::driver
