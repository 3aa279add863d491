#include "polcheck/surface.hpp"

namespace polcheck::surface {

RawPtr RawTerm::make(RawKind k, Loc loc) {
  auto t = std::make_shared<RawTerm>();
  t->kind = k;
  t->loc = loc;
  return t;
}

const char* rawKindName(RawKind k) {
  switch (k) {
    case RawKind::Var: return "var";
    case RawKind::Lam: return "lam";
    case RawKind::App: return "app";
    case RawKind::Annot: return "annot";
    case RawKind::Pair: return "pair";
    case RawKind::Unit: return "unit";
    case RawKind::Proj1: return "pi1";
    case RawKind::Proj2: return "pi2";
    case RawKind::Inl: return "inl";
    case RawKind::Inr: return "inr";
    case RawKind::Case: return "case";
    case RawKind::Absurd: return "absurd";
    case RawKind::LetUnit: return "let-unit";
    case RawKind::LetPair: return "let-pair";
    case RawKind::Cut: return "cut";
    case RawKind::MuPlus: return "mu+";
    case RawKind::MutPlus: return "mut+";
    case RawKind::MuMinus: return "mu-";
    case RawKind::MutMinus: return "mut-";
    case RawKind::Tuple: return "tuple";
    case RawKind::Cotuple: return "cotuple";
    case RawKind::UnitI: return "unit";
    case RawKind::CounitBot: return "counit";
    case RawKind::InlE: return "inl";
    case RawKind::InrE: return "inr";
    case RawKind::Pi1E: return "pi1";
    case RawKind::Pi2E: return "pi2";
    case RawKind::SimIntro: return "sim";
    case RawKind::NotCointro: return "not";
    case RawKind::DownIntro: return "down";
    case RawKind::UpCointro: return "up";
    case RawKind::UUpIntro: return "Up";
    case RawKind::DDownIntro: return "Down";
    case RawKind::MatchUnit: return "match-unit";
    case RawKind::MatchPair: return "match-pair";
    case RawKind::MatchSum: return "match-sum";
    case RawKind::MatchEmpty: return "match-empty";
    case RawKind::MatchSim: return "match-sim";
    case RawKind::MatchDown: return "match-down";
    case RawKind::MatchDDown: return "match-Down";
    case RawKind::ComatchBot: return "comatch-bot";
    case RawKind::ComatchPar: return "comatch-par";
    case RawKind::ComatchWith: return "comatch-with";
    case RawKind::ComatchEmpty: return "comatch-empty";
    case RawKind::ComatchNot: return "comatch-not";
    case RawKind::ComatchUp: return "comatch-up";
    case RawKind::ComatchUUp: return "comatch-Up";
  }
  return "?";
}

bool isLambdaKind(RawKind k) { return k <= RawKind::LetPair; }

bool carriesAnnotation(RawKind k) {
  return k == RawKind::Annot || k == RawKind::MatchDown || k == RawKind::ComatchUp ||
         k == RawKind::UUpIntro || k == RawKind::DDownIntro;
}

bool sameTerm(const RawTerm& a, const RawTerm& b) {
  if (a.kind != b.kind || a.name != b.name || a.binders != b.binders ||
      a.kids.size() != b.kids.size() || a.annot.has_value() != b.annot.has_value())
    return false;
  if (a.annot && *a.annot != *b.annot) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!sameTerm(*a.kids[i], *b.kids[i])) return false;
  return true;
}

std::size_t termSize(const RawTerm& t) {
  std::size_t n = 1;
  for (const auto& k : t.kids) n += termSize(*k);
  return n;
}

std::size_t countAnnotations(const RawTerm& t) {
  std::size_t n = t.annot ? 1 : 0;
  for (const auto& k : t.kids) n += countAnnotations(*k);
  return n;
}

namespace {

constexpr std::pair<QueryKind, const char*> kQueryNames[] = {
    {QueryKind::LambdaCheck, "lambda-check"}, {QueryKind::LambdaSynth, "lambda-synth"},
    {QueryKind::Expr, "expr"},                {QueryKind::Pattern, "pattern"},
    {QueryKind::Copattern, "copattern"},      {QueryKind::Coexpr, "coexpr"},
    {QueryKind::Command, "command"}};

}  // namespace

const char* queryKindName(QueryKind k) {
  for (const auto& [kind, name] : kQueryNames)
    if (kind == k) return name;
  return "?";
}

std::optional<QueryKind> queryKindFromName(std::string_view s) {
  for (const auto& [kind, name] : kQueryNames)
    if (s == name) return kind;
  return std::nullopt;
}

bool queryNeedsType(QueryKind k) {
  return k == QueryKind::LambdaCheck || k == QueryKind::Expr || k == QueryKind::Coexpr;
}

Family queryFamily(QueryKind k) {
  return k == QueryKind::LambdaCheck || k == QueryKind::LambdaSynth ? Family::Lambda
                                                                      : Family::SystemL;
}

bool sameDirective(const Directive& a, const Directive& b) {
  if (a.tag != b.tag) return false;
  if (a.tag == Directive::Tag::Atom)
    return a.atomName == b.atomName && a.atomPolarity == b.atomPolarity;
  if (a.kind != b.kind || a.ctx.size() != b.ctx.size() || a.type.has_value() != b.type.has_value())
    return false;
  if (a.type && *a.type != *b.type) return false;
  for (std::size_t i = 0; i < a.ctx.size(); ++i) {
    const auto& x = a.ctx[i];
    const auto& y = b.ctx[i];
    if (x.name != y.name || x.mark != y.mark || x.type.has_value() != y.type.has_value())
      return false;
    if (x.type && *x.type != *y.type) return false;
  }
  return sameTerm(*a.term, *b.term);
}

}  // namespace polcheck::surface
