#include "polcheck/surface.hpp"

namespace polcheck::surface {

namespace {

// λ terms need precedence-aware parentheses; L terms are self-delimiting.
enum Level { Open = 0, Application = 1, Prefix = 2, Closed = 3 };

Level levelOf(const RawTerm& t) {
  switch (t.kind) {
    case RawKind::Lam:
    case RawKind::Case:
    case RawKind::LetUnit:
    case RawKind::LetPair:
      return Open;
    case RawKind::App:
      return Application;
    case RawKind::Proj1:
    case RawKind::Proj2:
    case RawKind::Inl:
    case RawKind::Inr:
    case RawKind::Absurd:
      return Prefix;
    default:
      return Closed;
  }
}

std::string lam(const RawTerm& t, Level need);

std::string lamBody(const RawTerm& t) {
  const auto& k = t.kids;
  switch (t.kind) {
    case RawKind::Var: return t.name;
    case RawKind::Unit: return "()";
    case RawKind::Annot: return "(" + lam(*k[0], Open) + " : " + printType(*t.annot) + ")";
    case RawKind::Pair: return "(" + lam(*k[0], Open) + ", " + lam(*k[1], Open) + ")";
    case RawKind::Lam: return "\\" + t.binders[0] + ". " + lam(*k[0], Open);
    case RawKind::App: return lam(*k[0], Application) + " " + lam(*k[1], Closed);
    case RawKind::Proj1: return "pi1 " + lam(*k[0], Prefix);
    case RawKind::Proj2: return "pi2 " + lam(*k[0], Prefix);
    case RawKind::Inl: return "inl " + lam(*k[0], Prefix);
    case RawKind::Inr: return "inr " + lam(*k[0], Prefix);
    case RawKind::Absurd: return "absurd " + lam(*k[0], Prefix);
    case RawKind::Case:
      return "case " + lam(*k[0], Open) + " of { inl " + t.binders[0] + " => " +
             lam(*k[1], Open) + "; inr " + t.binders[1] + " => " + lam(*k[2], Open) + " }";
    case RawKind::LetUnit:
      return "let () = " + lam(*k[0], Open) + " in " + lam(*k[1], Open);
    case RawKind::LetPair:
      return "let (" + t.binders[0] + ", " + t.binders[1] + ") = " + lam(*k[0], Open) +
             " in " + lam(*k[1], Open);
    default:
      return "<L-term>";
  }
}

std::string lam(const RawTerm& t, Level need) {
  std::string s = lamBody(t);
  return levelOf(t) < need ? "(" + s + ")" : s;
}

std::string lterm(const RawTerm& t) {
  const auto& k = t.kids;
  auto bound = [&](std::size_t i) { return t.binders[i]; };
  switch (t.kind) {
    case RawKind::Var: return t.name;
    case RawKind::Cut: return "< " + lterm(*k[0]) + " | " + lterm(*k[1]) + " >";
    case RawKind::MuPlus: return "mu+ " + bound(0) + ". " + lterm(*k[0]);
    case RawKind::MutPlus: return "mut+ " + bound(0) + ". " + lterm(*k[0]);
    case RawKind::MuMinus: return "mu- " + bound(0) + ". " + lterm(*k[0]);
    case RawKind::MutMinus: return "mut- " + bound(0) + ". " + lterm(*k[0]);
    case RawKind::Tuple: return "(" + lterm(*k[0]) + ", " + lterm(*k[1]) + ")";
    case RawKind::Cotuple: return "[" + lterm(*k[0]) + ", " + lterm(*k[1]) + "]";
    case RawKind::UnitI: return "()";
    case RawKind::CounitBot: return "[]";
    case RawKind::InlE: return "inl " + lterm(*k[0]);
    case RawKind::InrE: return "inr " + lterm(*k[0]);
    case RawKind::Pi1E: return "pi1 " + lterm(*k[0]);
    case RawKind::Pi2E: return "pi2 " + lterm(*k[0]);
    case RawKind::SimIntro: return "~ " + lterm(*k[0]);
    case RawKind::NotCointro: return "not " + lterm(*k[0]);
    case RawKind::DownIntro: return "down " + lterm(*k[0]);
    case RawKind::UpCointro: return "up " + lterm(*k[0]);
    case RawKind::UUpIntro: return "Up(" + lterm(*k[0]) + " : " + printType(*t.annot) + ")";
    case RawKind::DDownIntro: return "Down(" + lterm(*k[0]) + " : " + printType(*t.annot) + ")";
    case RawKind::MatchUnit: return "match { () => " + lterm(*k[0]) + " }";
    case RawKind::MatchPair:
      return "match { (" + bound(0) + ", " + bound(1) + ") => " + lterm(*k[0]) + " }";
    case RawKind::MatchSum:
      return "match { inl " + bound(0) + " => " + lterm(*k[0]) + "; inr " + bound(1) + " => " +
             lterm(*k[1]) + " }";
    case RawKind::MatchEmpty: return "match {}";
    case RawKind::MatchSim: return "match { ~" + bound(0) + " => " + lterm(*k[0]) + " }";
    case RawKind::MatchDown:
      return "match { down(" + bound(0) + " : " + printType(*t.annot) + ") => " + lterm(*k[0]) +
             " }";
    case RawKind::MatchDDown: return "match { Down " + bound(0) + " => " + lterm(*k[0]) + " }";
    case RawKind::ComatchBot: return "comatch { " + lterm(*k[0]) + " => [] }";
    case RawKind::ComatchPar:
      return "comatch { " + lterm(*k[0]) + " => [" + bound(0) + ", " + bound(1) + "] }";
    case RawKind::ComatchWith:
      return "comatch { " + lterm(*k[0]) + " => pi1 " + bound(0) + "; " + lterm(*k[1]) +
             " => pi2 " + bound(1) + " }";
    case RawKind::ComatchEmpty: return "comatch {}";
    case RawKind::ComatchNot: return "comatch { " + lterm(*k[0]) + " => not " + bound(0) + " }";
    case RawKind::ComatchUp:
      return "comatch { " + lterm(*k[0]) + " => up(" + bound(0) + " : " + printType(*t.annot) +
             ") }";
    case RawKind::ComatchUUp: return "comatch { " + lterm(*k[0]) + " => Up " + bound(0) + " }";
    default:
      return "<λ-term>";
  }
}

}  // namespace

std::string printTerm(const RawTerm& t, Family fam) {
  return fam == Family::Lambda ? lam(t, Open) : lterm(t);
}

std::string printDirective(const Directive& d) {
  if (d.tag == Directive::Tag::Atom)
    return "atom " + d.atomName + " " + polarityName(d.atomPolarity) + ";";
  std::string s = queryKindName(d.kind);
  s += " [";
  for (std::size_t i = 0; i < d.ctx.size(); ++i) {
    const auto& e = d.ctx[i];
    if (i) s += ", ";
    s += e.name;
    if (e.mark) s += *e.mark == Polarity::Positive ? "+" : "-";
    if (e.type) s += " : " + printType(*e.type);
  }
  s += "] " + printTerm(*d.term, queryFamily(d.kind));
  if (d.type) s += " : " + printType(*d.type);
  return s + ";";
}

std::string printProgram(const Program& p) {
  std::string s;
  for (const auto& d : p.directives) s += printDirective(d) + "\n";
  return s;
}

}  // namespace polcheck::surface
