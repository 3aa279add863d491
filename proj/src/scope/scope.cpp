#include "polcheck/scope.hpp"

namespace polcheck::scope {

using surface::QueryKind;

const char* calculusName(Calculus c) {
  switch (c) {
    case Calculus::Stlc: return "stlc";
    case Calculus::Lin: return "lin";
    case Calculus::Cdb: return "cdb";
    case Calculus::Pos: return "pos";
    case Calculus::Neg: return "neg";
    case Calculus::Pol: return "pol";
    case Calculus::Lnl: return "lnl";
  }
  return "?";
}

std::optional<Calculus> calculusFromName(const std::string& s) {
  for (auto c : {Calculus::Stlc, Calculus::Lin, Calculus::Cdb, Calculus::Pos, Calculus::Neg,
                 Calculus::Pol, Calculus::Lnl})
    if (s == calculusName(c)) return c;
  return std::nullopt;
}

Family familyOf(Calculus c) {
  switch (c) {
    case Calculus::Stlc:
    case Calculus::Lin:
    case Calculus::Cdb:
      return Family::Lambda;
    default:
      return Family::SystemL;
  }
}

bool isCocontextual(Calculus c) { return c == Calculus::Lin || c == Calculus::Cdb; }

Preset defaultPreset(Calculus c) {
  switch (c) {
    case Calculus::Stlc:
    case Calculus::Cdb:
      return Preset::Cartesian;
    case Calculus::Lnl:
      return Preset::LnlFull;
    default:
      return Preset::Linear;
  }
}

bool presetAllowed(Calculus c, Preset p) {
  const bool lnlPreset = p == Preset::LnlBang || p == Preset::LnlFull;
  if (c == Calculus::Lnl) return true;
  if (lnlPreset) return false;
  return c != Calculus::Stlc || p == Preset::Cartesian;
}

const char* judgementName(Judgement j) {
  switch (j) {
    case Judgement::Chk: return "chk";
    case Judgement::Syn: return "syn";
    case Judgement::Expr: return "expr+";
    case Judgement::Pattern: return "pattern+";
    case Judgement::Copattern: return "copattern-";
    case Judgement::Coexpr: return "coexpr-";
    case Judgement::Command: return "command";
  }
  return "?";
}

Polarity polarityOf(Judgement j) {
  switch (j) {
    case Judgement::Expr:
    case Judgement::Pattern:
      return Polarity::Positive;
    case Judgement::Copattern:
    case Judgement::Coexpr:
      return Polarity::Negative;
    default:
      return Polarity::Unpolarised;
  }
}

bool usesSynthesisedVars(Judgement j) {
  return j == Judgement::Expr || j == Judgement::Coexpr;
}

Judgement queryJudgement(QueryKind k) {
  switch (k) {
    case QueryKind::LambdaCheck: return Judgement::Chk;
    case QueryKind::LambdaSynth: return Judgement::Syn;
    case QueryKind::Expr: return Judgement::Expr;
    case QueryKind::Pattern: return Judgement::Pattern;
    case QueryKind::Copattern: return Judgement::Copattern;
    case QueryKind::Coexpr: return Judgement::Coexpr;
    case QueryKind::Command: return Judgement::Command;
  }
  return Judgement::Command;
}

std::optional<Judgement> constructClass(RawKind k) {
  switch (k) {
    case RawKind::MuPlus:
    case RawKind::UnitI:
    case RawKind::Tuple:
    case RawKind::InlE:
    case RawKind::InrE:
    case RawKind::SimIntro:
    case RawKind::DownIntro:
    case RawKind::MatchDDown:
      return Judgement::Expr;
    case RawKind::MutPlus:
    case RawKind::MatchUnit:
    case RawKind::MatchPair:
    case RawKind::MatchSum:
    case RawKind::MatchEmpty:
    case RawKind::MatchSim:
    case RawKind::MatchDown:
    case RawKind::DDownIntro:
      return Judgement::Pattern;
    case RawKind::MuMinus:
    case RawKind::ComatchBot:
    case RawKind::ComatchPar:
    case RawKind::ComatchWith:
    case RawKind::ComatchEmpty:
    case RawKind::ComatchNot:
    case RawKind::ComatchUp:
    case RawKind::UUpIntro:
      return Judgement::Copattern;
    case RawKind::MutMinus:
    case RawKind::CounitBot:
    case RawKind::Cotuple:
    case RawKind::Pi1E:
    case RawKind::Pi2E:
    case RawKind::NotCointro:
    case RawKind::UpCointro:
    case RawKind::ComatchUUp:
      return Judgement::Coexpr;
    case RawKind::Cut:
      return Judgement::Command;
    default:
      return std::nullopt;
  }
}

std::optional<Judgement> lambdaMode(RawKind k, bool cocontextual) {
  const auto chk = Judgement::Chk;
  const auto syn = Judgement::Syn;
  if (cocontextual) {
    switch (k) {
      case RawKind::Var:
      case RawKind::App:
        return chk;
      case RawKind::Lam:
      case RawKind::Annot:
      case RawKind::Unit:
      case RawKind::Pair:
      case RawKind::LetUnit:
      case RawKind::LetPair:
        return syn;
      default:
        return std::nullopt;
    }
  }
  switch (k) {
    case RawKind::Var:
    case RawKind::App:
    case RawKind::Annot:
    case RawKind::Proj1:
    case RawKind::Proj2:
      return syn;
    case RawKind::Lam:
    case RawKind::Unit:
    case RawKind::Pair:
    case RawKind::Inl:
    case RawKind::Inr:
    case RawKind::Case:
    case RawKind::Absurd:
      return chk;
    default:
      return std::nullopt;
  }
}

Judgement modeOf(const Node& n) { return n.judgement; }

namespace {

std::string label(const Node& n) {
  std::string s;
  switch (n.form) {
    case Form::Emb:
      return std::string("emb ") + judgementName(n.judgement);
    case Form::Branch:
      s = "branch";
      for (const auto& b : n.binders) s += " " + b.name;
      return s;
    case Form::Plain:
      break;
  }
  if (n.kind == RawKind::Var) {
    s = "var " + n.name + " " + judgementName(n.judgement);
    if (n.varClass != VarClass::Lambda) s += std::string(" ") + varClassName(n.varClass);
    return s;
  }
  s = surface::rawKindName(n.kind);
  if (n.kind == RawKind::Cut) s += n.cutPolarity == Polarity::Positive ? "+" : "-";
  for (const auto& b : n.binders) s += " " + b.name;
  s += std::string(" ") + judgementName(n.judgement);
  if (n.annot) s += " : " + printType(*n.annot);
  return s;
}

void printNode(const Node& n, int depth, std::string& out) {
  out += std::string(2 * depth, ' ') + label(n);
  if (n.cover) out += " [cover: " + printCover(*n.cover) + "]";
  if (n.thinning && n.form != Form::Emb) out += " [thin: " + printThinning(*n.thinning) + "]";
  out += "\n";
  for (const auto& k : n.kids) printNode(*k, depth + 1, out);
}

}  // namespace

std::string printTree(const ScopedQuery& q) {
  std::string out = std::string("query ") + surface::queryKindName(q.kind) + " [";
  for (std::size_t i = 0; i < q.entries.size(); ++i) {
    if (i) out += ", ";
    out += q.entries[i].name;
    if (q.entries[i].cls != VarClass::Lambda)
      out += std::string(" ") + varClassName(q.entries[i].cls);
  }
  out += "] [thin: " + printThinning(q.rootThinning) + "]\n";
  printNode(*q.root, 1, out);
  return out;
}

}  // namespace polcheck::scope
