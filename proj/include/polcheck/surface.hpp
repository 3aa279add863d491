#pragma once

// Concrete syntax: raw named ASTs for every calculus, the `.pl0` directive
// format, its parser and a canonical printer.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polcheck/kernel.hpp"

namespace polcheck::surface {

struct Loc {
  int line = 0;
  int column = 0;
};

enum class RawKind : std::uint8_t {
  // λ-calculus family
  Var,
  Lam,
  App,
  Annot,
  Pair,
  Unit,
  Proj1,
  Proj2,
  Inl,
  Inr,
  Case,
  Absurd,
  LetUnit,
  LetPair,
  // System L family (variables reuse Var)
  Cut,
  MuPlus,
  MutPlus,
  MuMinus,
  MutMinus,
  Tuple,
  Cotuple,
  UnitI,
  CounitBot,
  InlE,
  InrE,
  Pi1E,
  Pi2E,
  SimIntro,
  NotCointro,
  DownIntro,
  UpCointro,
  UUpIntro,    // Up(e : A)
  DDownIntro,  // Down(e : A)
  MatchUnit,
  MatchPair,
  MatchSum,
  MatchEmpty,
  MatchSim,
  MatchDown,
  MatchDDown,
  ComatchBot,
  ComatchPar,
  ComatchWith,
  ComatchEmpty,
  ComatchNot,
  ComatchUp,
  ComatchUUp,
};

const char* rawKindName(RawKind k);
bool isLambdaKind(RawKind k);
/// True for the five constructs that carry a type annotation.
bool carriesAnnotation(RawKind k);

struct RawTerm;
using RawPtr = std::shared_ptr<RawTerm>;

/// One node of a raw term. `binders` lists the names bound by the node in
/// source order; `kids` are sub-terms (commands for (co)match branches).
struct RawTerm {
  RawKind kind = RawKind::Var;
  Loc loc;
  std::string name;  // variables
  std::vector<std::string> binders;
  std::vector<Loc> binderLocs;
  std::vector<RawPtr> kids;
  std::optional<Type> annot;

  static RawPtr make(RawKind k, Loc loc = {});
};

bool sameTerm(const RawTerm& a, const RawTerm& b);
std::size_t termSize(const RawTerm& t);
std::size_t countAnnotations(const RawTerm& t);

enum class QueryKind : std::uint8_t {
  LambdaCheck,
  LambdaSynth,
  Expr,
  Pattern,
  Copattern,
  Coexpr,
  Command
};

const char* queryKindName(QueryKind k);
std::optional<QueryKind> queryKindFromName(std::string_view s);
bool queryNeedsType(QueryKind k);
Family queryFamily(QueryKind k);

struct CtxEntry {
  std::string name;
  std::optional<Type> type;       // typed entry: checkable side
  std::optional<Polarity> mark;   // optional `x+` / `x-` on scoped entries
  Loc loc;
};

struct Directive {
  enum class Tag { Atom, Query };
  Tag tag = Tag::Query;
  Loc loc;
  // atom declarations
  std::string atomName;
  Polarity atomPolarity = Polarity::Unpolarised;
  // queries
  QueryKind kind = QueryKind::Command;
  std::vector<CtxEntry> ctx;
  RawPtr term;
  std::optional<Type> type;
};

bool sameDirective(const Directive& a, const Directive& b);

using AtomTable = std::map<std::string, Polarity>;

struct Program {
  std::vector<Directive> directives;
  AtomTable atoms;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string code, const std::string& msg, Loc loc)
      : std::runtime_error(msg), code_(std::move(code)), loc_(loc) {}
  const std::string& code() const { return code_; }
  Loc loc() const { return loc_; }

 private:
  std::string code_;
  Loc loc_;
};

struct TypeParseOptions {
  Family family = Family::SystemL;
  bool allowTops = false;  // tops are checker-internal; only tests re-read them
};

Type parseType(std::string_view text, const AtomTable& atoms, TypeParseOptions opts = {});
Program parseProgram(std::string_view text);

std::string printTerm(const RawTerm& t, Family fam);
std::string printDirective(const Directive& d);
std::string printProgram(const Program& p);

}  // namespace polcheck::surface
