#include "polcheck/systeml.hpp"

namespace polcheck::systeml {

using surface::Directive;
using surface::QueryKind;
using surface::RawKind;
using surface::RawPtr;
using surface::RawTerm;

namespace {

TypeKind dualKind(TypeKind k) {
  switch (k) {
    case TypeKind::PAtom: return TypeKind::NAtom;
    case TypeKind::NAtom: return TypeKind::PAtom;
    case TypeKind::I: return TypeKind::Bot;
    case TypeKind::Bot: return TypeKind::I;
    case TypeKind::Tensor: return TypeKind::Par;
    case TypeKind::Par: return TypeKind::Tensor;
    case TypeKind::ZeroP: return TypeKind::One1;
    case TypeKind::One1: return TypeKind::ZeroP;
    case TypeKind::Plus: return TypeKind::With;
    case TypeKind::With: return TypeKind::Plus;
    case TypeKind::SimNeg: return TypeKind::NotNeg;
    case TypeKind::NotNeg: return TypeKind::SimNeg;
    case TypeKind::DownShift: return TypeKind::UpShift;
    case TypeKind::UpShift: return TypeKind::DownShift;
    case TypeKind::DDown: return TypeKind::UUp;
    case TypeKind::UUp: return TypeKind::DDown;
    case TypeKind::TopPos: return TypeKind::TopNeg;
    case TypeKind::TopNeg: return TypeKind::TopPos;
    default:
      throw std::invalid_argument("λ-calculus types have no dual");
  }
}

RawKind dualKind(RawKind k) {
  switch (k) {
    case RawKind::Var: return RawKind::Var;
    case RawKind::Cut: return RawKind::Cut;
    case RawKind::MuPlus: return RawKind::MutMinus;
    case RawKind::MutMinus: return RawKind::MuPlus;
    case RawKind::MutPlus: return RawKind::MuMinus;
    case RawKind::MuMinus: return RawKind::MutPlus;
    case RawKind::Tuple: return RawKind::Cotuple;
    case RawKind::Cotuple: return RawKind::Tuple;
    case RawKind::UnitI: return RawKind::CounitBot;
    case RawKind::CounitBot: return RawKind::UnitI;
    case RawKind::InlE: return RawKind::Pi1E;
    case RawKind::Pi1E: return RawKind::InlE;
    case RawKind::InrE: return RawKind::Pi2E;
    case RawKind::Pi2E: return RawKind::InrE;
    case RawKind::SimIntro: return RawKind::NotCointro;
    case RawKind::NotCointro: return RawKind::SimIntro;
    case RawKind::DownIntro: return RawKind::UpCointro;
    case RawKind::UpCointro: return RawKind::DownIntro;
    case RawKind::UUpIntro: return RawKind::DDownIntro;
    case RawKind::DDownIntro: return RawKind::UUpIntro;
    case RawKind::MatchUnit: return RawKind::ComatchBot;
    case RawKind::ComatchBot: return RawKind::MatchUnit;
    case RawKind::MatchPair: return RawKind::ComatchPar;
    case RawKind::ComatchPar: return RawKind::MatchPair;
    case RawKind::MatchSum: return RawKind::ComatchWith;
    case RawKind::ComatchWith: return RawKind::MatchSum;
    case RawKind::MatchEmpty: return RawKind::ComatchEmpty;
    case RawKind::ComatchEmpty: return RawKind::MatchEmpty;
    case RawKind::MatchSim: return RawKind::ComatchNot;
    case RawKind::ComatchNot: return RawKind::MatchSim;
    case RawKind::MatchDown: return RawKind::ComatchUp;
    case RawKind::ComatchUp: return RawKind::MatchDown;
    case RawKind::MatchDDown: return RawKind::ComatchUUp;
    case RawKind::ComatchUUp: return RawKind::MatchDDown;
    default:
      throw std::invalid_argument("λ-calculus terms have no dual");
  }
}

QueryKind dualKind(QueryKind k) {
  switch (k) {
    case QueryKind::Expr: return QueryKind::Coexpr;
    case QueryKind::Coexpr: return QueryKind::Expr;
    case QueryKind::Pattern: return QueryKind::Copattern;
    case QueryKind::Copattern: return QueryKind::Pattern;
    case QueryKind::Command: return QueryKind::Command;
    default:
      throw std::invalid_argument("λ-calculus queries have no dual");
  }
}

Polarity flip(Polarity p) {
  if (p == Polarity::Positive) return Polarity::Negative;
  if (p == Polarity::Negative) return Polarity::Positive;
  return p;
}

}  // namespace

// Atoms keep their names and flip polarity.
Type dualize(const Type& t) {
  const TypeKind k = dualKind(t.kind());
  if (isAtomKind(k)) return Type::atom(t.name(), flip(polarityOf(t)));
  switch (arity(k)) {
    case 0: return Type::constant(k);
    case 1: return Type::unary(k, dualize(t.inner()));
    default: return Type::binary(k, dualize(t.lhs()), dualize(t.rhs()));
  }
}

RawPtr dualize(const RawTerm& t) {
  auto out = std::make_shared<RawTerm>(t);
  out->kind = dualKind(t.kind);
  if (t.annot) out->annot = dualize(*t.annot);
  for (auto& k : out->kids) k = dualize(*k);
  return out;
}

Directive dualize(const Directive& d) {
  Directive out = d;
  if (d.tag == Directive::Tag::Atom) {
    out.atomPolarity = flip(d.atomPolarity);
    return out;
  }
  out.kind = dualKind(d.kind);
  for (auto& e : out.ctx) {
    if (e.type) e.type = dualize(*e.type);
    if (e.mark) e.mark = flip(*e.mark);
  }
  out.term = dualize(*d.term);
  if (d.type) out.type = dualize(*d.type);
  return out;
}

surface::Program dualize(const surface::Program& p) {
  surface::Program out;
  for (const auto& d : p.directives) out.directives.push_back(dualize(d));
  for (const auto& [name, pol] : p.atoms) out.atoms[name] = flip(pol);
  return out;
}

VarClass dualize(VarClass c) {
  switch (c) {
    case VarClass::GammaPos: return VarClass::DeltaNeg;
    case VarClass::DeltaNeg: return VarClass::GammaPos;
    case VarClass::DeltaPos: return VarClass::GammaNeg;
    case VarClass::GammaNeg: return VarClass::DeltaPos;
    case VarClass::Lambda: break;
  }
  throw std::invalid_argument("λ variables have no dual class");
}

}  // namespace polcheck::systeml
