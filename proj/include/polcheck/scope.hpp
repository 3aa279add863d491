#pragma once

// Scope elaboration: raw named terms to intrinsically scoped co-de Bruijn
// syntax with judgement classes, covers and thinnings.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polcheck/kernel.hpp"
#include "polcheck/surface.hpp"

namespace polcheck::scope {

using surface::Loc;
using surface::RawKind;

enum class Calculus : std::uint8_t { Stlc, Lin, Cdb, Pos, Neg, Pol, Lnl };

const char* calculusName(Calculus c);
std::optional<Calculus> calculusFromName(const std::string& s);
Family familyOf(Calculus c);
bool isCocontextual(Calculus c);
Preset defaultPreset(Calculus c);
bool presetAllowed(Calculus c, Preset p);

enum class Judgement : std::uint8_t { Chk, Syn, Expr, Pattern, Copattern, Coexpr, Command };

const char* judgementName(Judgement j);
Polarity polarityOf(Judgement j);
/// Σ-side (synthesised) variable positions: expressions and coexpressions.
bool usesSynthesisedVars(Judgement j);
Judgement queryJudgement(surface::QueryKind k);

/// The class a System L constructor occupies in the polarity × chirality
/// table; nullopt for variables, which take the class of their position.
std::optional<Judgement> constructClass(RawKind k);
/// Mode of a λ constructor in the standard or cocontextual calculi; nullopt
/// when the constructor is not part of that calculus.
std::optional<Judgement> lambdaMode(RawKind k, bool cocontextual);

enum class Form : std::uint8_t { Plain, Emb, Branch };

struct Binder {
  std::string name;
  VarClass cls = VarClass::Lambda;
  int id = -1;
  Loc loc;
};

struct Node;
using NodePtr = std::shared_ptr<Node>;

struct Node {
  Form form = Form::Plain;
  RawKind kind = RawKind::Var;
  Judgement judgement = Judgement::Chk;
  Loc loc;
  // variables
  std::string name;
  int varId = -1;
  VarClass varClass = VarClass::Lambda;
  // binders; the thinning holds one Keep/Drop step per binder
  std::vector<Binder> binders;
  std::optional<Thinning> thinning;
  std::optional<Type> annot;
  std::vector<NodePtr> kids;
  ScopedCtx scope;             // free variables, ordered by binding id
  std::optional<Cover> cover;  // two-premise nodes outside the standard λ-calculus
  bool additive = false;       // two-branch (co)match: Σ shared by both branches
  Polarity cutPolarity = Polarity::Unpolarised;
};

/// A directive after elaboration.
struct ScopedQuery {
  surface::QueryKind kind = surface::QueryKind::Command;
  Calculus calculus = Calculus::Pol;
  StructConfig cfg;
  ScopedCtx entries;                       // every directive entry, classes resolved
  std::vector<std::optional<Type>> types;  // parallel to entries; typed ones only
  Thinning rootThinning;                   // root scope ⊆ entries
  NodePtr root;
  std::optional<Type> type;
  Loc loc;
};

class ScopeError : public std::runtime_error {
 public:
  ScopeError(std::string code, const std::string& msg, Loc loc)
      : std::runtime_error(msg), code_(std::move(code)), loc_(loc) {}
  const std::string& code() const { return code_; }
  Loc loc() const { return loc_; }

 private:
  std::string code_;
  Loc loc_;
};

ScopedQuery elaborate(const surface::Directive& d, Calculus calc, const StructConfig& cfg);

Judgement modeOf(const Node& n);

/// Indented tree, one node per line: `label [cover: LRB] [thin: KD]`.
std::string printTree(const ScopedQuery& q);

/// The cover restricted to entries of `scope` satisfying `keep`.
template <class Pred>
Cover restrictCover(const Cover& c, const ScopedCtx& scope, Pred keep) {
  Cover out;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (keep(scope[i])) out.push_back(c[i]);
  return out;
}

}  // namespace polcheck::scope
