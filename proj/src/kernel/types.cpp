#include "polcheck/kernel.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

namespace polcheck {

const char* polarityName(Polarity p) {
  switch (p) {
    case Polarity::Positive: return "positive";
    case Polarity::Negative: return "negative";
    case Polarity::Unpolarised: return "plain";
  }
  return "?";
}

int arity(TypeKind k) {
  switch (k) {
    case TypeKind::Arrow:
    case TypeKind::Lolli:
    case TypeKind::Prod:
    case TypeKind::Sum:
    case TypeKind::Tensor:
    case TypeKind::Plus:
    case TypeKind::Par:
    case TypeKind::With:
      return 2;
    case TypeKind::SimNeg:
    case TypeKind::DownShift:
    case TypeKind::DDown:
    case TypeKind::NotNeg:
    case TypeKind::UpShift:
    case TypeKind::UUp:
      return 1;
    default:
      return 0;
  }
}

Family familyOf(TypeKind k) {
  return static_cast<int>(k) <= static_cast<int>(TypeKind::Top) ? Family::Lambda
                                                                : Family::SystemL;
}

bool isTopKind(TypeKind k) {
  return k == TypeKind::Top || k == TypeKind::TopPos || k == TypeKind::TopNeg;
}

bool isAtomKind(TypeKind k) {
  return k == TypeKind::LAtom || k == TypeKind::PAtom || k == TypeKind::NAtom;
}

Type Type::make(TypeKind k, std::string name, std::vector<Type> kids) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->name = std::move(name);
  n->kids = std::move(kids);
  std::size_t h = std::hash<int>{}(static_cast<int>(k)) * 0x9e3779b97f4a7c15ULL;
  h ^= std::hash<std::string>{}(n->name) + (h << 6) + (h >> 2);
  n->hasTop = isTopKind(k);
  for (const auto& kid : n->kids) {
    h ^= kid.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    n->depth = std::max(n->depth, kid.depth() + 1);
    n->hasTop = n->hasTop || kid.containsTop();
  }
  n->hash = h;
  return Type(std::move(n));
}

Type Type::atom(std::string name, Polarity pol) {
  TypeKind k = pol == Polarity::Positive   ? TypeKind::PAtom
               : pol == Polarity::Negative ? TypeKind::NAtom
                                           : TypeKind::LAtom;
  return make(k, std::move(name), {});
}

Type Type::constant(TypeKind k) {
  if (arity(k) != 0 || isAtomKind(k)) throw std::invalid_argument("not a type constant");
  return make(k, {}, {});
}

Type Type::unary(TypeKind k, Type inner) {
  if (arity(k) != 1) throw std::invalid_argument("not a unary connective");
  return make(k, {}, {std::move(inner)});
}

Type Type::binary(TypeKind k, Type l, Type r) {
  if (arity(k) != 2) throw std::invalid_argument("not a binary connective");
  return make(k, {}, {std::move(l), std::move(r)});
}

Type Type::topOf(Polarity pol) {
  switch (pol) {
    case Polarity::Positive: return constant(TypeKind::TopPos);
    case Polarity::Negative: return constant(TypeKind::TopNeg);
    case Polarity::Unpolarised: return constant(TypeKind::Top);
  }
  return constant(TypeKind::Top);
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.node_->hash != b.node_->hash || a.kind() != b.kind() || a.name() != b.name())
    return false;
  const auto& ka = a.node_->kids;
  const auto& kb = b.node_->kids;
  for (std::size_t i = 0; i < ka.size(); ++i)
    if (ka[i] != kb[i]) return false;
  return true;
}

bool operator<(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return false;
  if (!a.node_) return true;
  if (!b.node_) return false;
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  if (a.name() != b.name()) return a.name() < b.name();
  const auto& ka = a.node_->kids;
  const auto& kb = b.node_->kids;
  for (std::size_t i = 0; i < ka.size(); ++i) {
    if (ka[i] < kb[i]) return true;
    if (kb[i] < ka[i]) return false;
  }
  return false;
}

Polarity polarityOf(const Type& t) {
  switch (t.kind()) {
    case TypeKind::PAtom:
    case TypeKind::I:
    case TypeKind::Tensor:
    case TypeKind::ZeroP:
    case TypeKind::Plus:
    case TypeKind::SimNeg:
    case TypeKind::DownShift:
    case TypeKind::DDown:
    case TypeKind::TopPos:
      return Polarity::Positive;
    case TypeKind::NAtom:
    case TypeKind::Bot:
    case TypeKind::Par:
    case TypeKind::One1:
    case TypeKind::With:
    case TypeKind::NotNeg:
    case TypeKind::UpShift:
    case TypeKind::UUp:
    case TypeKind::TopNeg:
      return Polarity::Negative;
    default:
      return Polarity::Unpolarised;
  }
}

Family familyOf(const Type& t) { return familyOf(t.kind()); }

namespace {

// Expected polarity of the operands of each L connective.
Polarity operandPolarity(TypeKind k) {
  switch (k) {
    case TypeKind::Tensor:
    case TypeKind::Plus:
    case TypeKind::NotNeg:
    case TypeKind::UpShift:
    case TypeKind::UUp:
      return Polarity::Positive;
    case TypeKind::Par:
    case TypeKind::With:
    case TypeKind::SimNeg:
    case TypeKind::DownShift:
    case TypeKind::DDown:
      return Polarity::Negative;
    default:
      return Polarity::Unpolarised;
  }
}

}  // namespace

void validatePolarity(const Type& t) {
  const int n = arity(t.kind());
  if (n == 0) return;
  const Family fam = familyOf(t);
  for (int i = 0; i < n; ++i) {
    const Type& kid = i == 0 ? t.lhs() : t.rhs();
    if (familyOf(kid) != fam)
      throw std::invalid_argument("λ-calculus and System L connectives mixed in " +
                                  printType(t));
    if (fam == Family::SystemL && polarityOf(kid) != operandPolarity(t.kind()))
      throw std::invalid_argument("operand " + printType(kid) + " of " + printType(t) +
                                  " must be " + polarityName(operandPolarity(t.kind())));
    validatePolarity(kid);
  }
}

namespace {

const char* symbolOf(TypeKind k) {
  switch (k) {
    case TypeKind::Unit1: return "1";
    case TypeKind::Zero0: return "0";
    case TypeKind::Top: return "Top";
    case TypeKind::Arrow: return "->";
    case TypeKind::Lolli: return "-o";
    case TypeKind::Prod: return "*";
    case TypeKind::Sum: return "+";
    case TypeKind::I: return "I";
    case TypeKind::Tensor: return "*";
    case TypeKind::ZeroP: return "0";
    case TypeKind::Plus: return "+";
    case TypeKind::SimNeg: return "~";
    case TypeKind::DownShift: return "down";
    case TypeKind::DDown: return "Down";
    case TypeKind::TopPos: return "Top+";
    case TypeKind::Bot: return "bot";
    case TypeKind::Par: return "par";
    case TypeKind::One1: return "1";
    case TypeKind::With: return "&";
    case TypeKind::NotNeg: return "not";
    case TypeKind::UpShift: return "up";
    case TypeKind::UUp: return "Up";
    case TypeKind::TopNeg: return "Top-";
    default: return "?";
  }
}

std::string operand(const Type& t) {
  if (arity(t.kind()) == 0) return printType(t);
  return "(" + printType(t) + ")";
}

}  // namespace

std::string printType(const Type& t) {
  if (!t.valid()) return "<none>";
  if (isAtomKind(t.kind())) return t.name();
  switch (arity(t.kind())) {
    case 0: return symbolOf(t.kind());
    case 1:
      if (t.kind() == TypeKind::SimNeg) return "~" + operand(t.inner());
      return std::string(symbolOf(t.kind())) + " " + operand(t.inner());
    default:
      return operand(t.lhs()) + " " + symbolOf(t.kind()) + " " + operand(t.rhs());
  }
}

}  // namespace polcheck
