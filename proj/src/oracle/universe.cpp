#include <algorithm>
#include <unordered_set>

#include "polcheck/oracle.hpp"

namespace polcheck::oracle {

using scope::Calculus;

namespace {

struct Connective {
  TypeKind kind;
  int arity;
  Polarity result;
  Polarity operand;  // of every operand
};

std::vector<Connective> connectives(Calculus c) {
  using K = TypeKind;
  const auto pos = Polarity::Positive;
  const auto neg = Polarity::Negative;
  const auto plain = Polarity::Unpolarised;
  switch (c) {
    case Calculus::Stlc:
      return {{K::Unit1, 0, plain, plain}, {K::Zero0, 0, plain, plain},
              {K::Arrow, 2, plain, plain}, {K::Prod, 2, plain, plain},
              {K::Sum, 2, plain, plain}};
    case Calculus::Lin:
      return {{K::Unit1, 0, plain, plain}, {K::Lolli, 2, plain, plain}, {K::Prod, 2, plain, plain}};
    case Calculus::Cdb:
      return {{K::Unit1, 0, plain, plain}, {K::Arrow, 2, plain, plain}, {K::Prod, 2, plain, plain}};
    case Calculus::Pos:
      return {{K::I, 0, pos, pos}, {K::Tensor, 2, pos, pos}, {K::ZeroP, 0, pos, pos},
              {K::Plus, 2, pos, pos}};
    case Calculus::Neg:
      return {{K::Bot, 0, neg, neg}, {K::Par, 2, neg, neg}, {K::One1, 0, neg, neg},
              {K::With, 2, neg, neg}};
    case Calculus::Pol:
    case Calculus::Lnl: {
      std::vector<Connective> out = {
          {K::I, 0, pos, pos},         {K::Tensor, 2, pos, pos},    {K::ZeroP, 0, pos, pos},
          {K::Plus, 2, pos, pos},      {K::SimNeg, 1, pos, neg},    {K::DownShift, 1, pos, neg},
          {K::Bot, 0, neg, neg},       {K::Par, 2, neg, neg},       {K::One1, 0, neg, neg},
          {K::With, 2, neg, neg},      {K::NotNeg, 1, neg, pos},    {K::UpShift, 1, neg, pos}};
      if (c == Calculus::Lnl) {
        out.push_back({K::DDown, 1, pos, neg});
        out.push_back({K::UUp, 1, neg, pos});
      }
      return out;
    }
  }
  return {};
}

int slot(Polarity p) { return static_cast<int>(p); }

}  // namespace

std::vector<Type> enumerateTypes(const TypeUniverse& u, Polarity pol) {
  const auto conns = connectives(u.calculus);
  // levels[p] holds every type of polarity p up to the current depth.
  std::vector<Type> levels[3];
  std::unordered_set<Type, TypeHash> seen[3];
  auto add = [&](const Type& t) {
    const int s = slot(polarityOf(t));
    if (seen[s].insert(t).second) levels[s].push_back(t);
  };

  for (const auto& [name, p] : u.atoms)
    if (familyOf(u.calculus) == Family::Lambda ? p == Polarity::Unpolarised
                                               : p != Polarity::Unpolarised)
      add(Type::atom(name, p));
  for (Polarity p : {Polarity::Positive, Polarity::Negative, Polarity::Unpolarised})
    for (const auto& c : conns)
      if (c.arity == 0 && c.result == p) add(Type::constant(c.kind));

  for (int d = 1; d <= u.depth; ++d) {
    std::vector<Type> prev[3] = {levels[0], levels[1], levels[2]};
    for (Polarity p : {Polarity::Positive, Polarity::Negative, Polarity::Unpolarised}) {
      for (const auto& c : conns) {
        if (c.result != p || c.arity == 0) continue;
        const auto& ops = prev[slot(c.operand)];
        if (c.arity == 1) {
          for (const auto& a : ops) add(Type::unary(c.kind, a));
        } else {
          for (const auto& a : ops)
            for (const auto& b : ops) add(Type::binary(c.kind, a, b));
        }
      }
    }
  }
  return levels[slot(pol)];
}

bool inUniverse(const Type& t, const TypeUniverse& u) {
  if (t.depth() > u.depth) return false;
  if (isAtomKind(t.kind())) {
    auto it = u.atoms.find(t.name());
    return it != u.atoms.end() && it->second == polarityOf(t);
  }
  const auto conns = connectives(u.calculus);
  auto c = std::find_if(conns.begin(), conns.end(), [&](const Connective& x) { return x.kind == t.kind(); });
  if (c == conns.end()) return false;
  for (int i = 0; i < c->arity; ++i) {
    const Type& k = i == 0 ? t.lhs() : t.rhs();
    if (polarityOf(k) != c->operand || !inUniverse(k, u)) return false;
  }
  return true;
}

namespace {

int maxDepth(const scope::Node& n) {
  int d = n.annot ? n.annot->depth() : 0;
  for (const auto& k : n.kids) d = std::max(d, maxDepth(*k));
  return d;
}

}  // namespace

TypeUniverse universeFor(const scope::ScopedQuery& q, surface::AtomTable atoms, int minDepth) {
  int d = std::max(minDepth, maxDepth(*q.root));
  for (const auto& t : q.types)
    if (t) d = std::max(d, t->depth());
  if (q.type) d = std::max(d, q.type->depth());
  return {std::move(atoms), d, q.calculus};
}

}  // namespace polcheck::oracle
