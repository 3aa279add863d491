#include <map>
#include <set>

#include "polcheck/oracle.hpp"

namespace polcheck::oracle {

using scope::Calculus;
using scope::Form;
using scope::Node;
using scope::ScopedQuery;
using surface::QueryKind;
using surface::RawKind;

namespace {

// ---------------------------------------------------------------------------
// Order on types, kept separate from the kernel's: ⊤ is greatest, function
// types are contravariant on the left, everything else covariant.

bool isTop(const Type& t) {
  return t.kind() == TypeKind::Top || t.kind() == TypeKind::TopPos || t.kind() == TypeKind::TopNeg;
}

bool contra(TypeKind k) { return k == TypeKind::Arrow || k == TypeKind::Lolli; }

bool leq(const Type& a, const Type& b) {
  if (isTop(b)) return polarityOf(a) == polarityOf(b);
  if (a.kind() != b.kind()) return false;
  if (isAtomKind(a.kind())) return a.name() == b.name();
  switch (arity(a.kind())) {
    case 0: return true;
    case 1: return leq(a.inner(), b.inner());
    default:
      return (contra(a.kind()) ? leq(b.lhs(), a.lhs()) : leq(a.lhs(), b.lhs())) &&
             leq(a.rhs(), b.rhs());
  }
}

std::optional<Type> glb(const Type& a, const Type& b);

Type lub(const Type& a, const Type& b) {
  if (isTop(a)) return a;
  if (isTop(b)) return b;
  const Type top = Type::topOf(polarityOf(a));
  if (a.kind() != b.kind()) return top;
  if (isAtomKind(a.kind())) return a.name() == b.name() ? a : top;
  switch (arity(a.kind())) {
    case 0: return a;
    case 1: return Type::unary(a.kind(), lub(a.inner(), b.inner()));
    default: {
      std::optional<Type> l = contra(a.kind()) ? glb(a.lhs(), b.lhs())
                                               : std::optional<Type>(lub(a.lhs(), b.lhs()));
      if (!l) return top;
      return Type::binary(a.kind(), *l, lub(a.rhs(), b.rhs()));
    }
  }
}

std::optional<Type> glb(const Type& a, const Type& b) {
  if (isTop(a)) return b;
  if (isTop(b)) return a;
  if (a.kind() != b.kind()) return std::nullopt;
  if (isAtomKind(a.kind())) return a.name() == b.name() ? std::optional<Type>(a) : std::nullopt;
  switch (arity(a.kind())) {
    case 0: return a;
    case 1: {
      auto in = glb(a.inner(), b.inner());
      if (!in) return std::nullopt;
      return Type::unary(a.kind(), *in);
    }
    default: {
      std::optional<Type> l = contra(a.kind()) ? std::optional<Type>(lub(a.lhs(), b.lhs()))
                                               : glb(a.lhs(), b.lhs());
      auto r = glb(a.rhs(), b.rhs());
      if (!l || !r) return std::nullopt;
      return Type::binary(a.kind(), *l, *r);
    }
  }
}

// ---------------------------------------------------------------------------
// Usage: free occurrences by binding id, and the linear discipline.

using Occ = std::map<int, int>;

class Usage {
 public:
  Usage(const StructConfig& cfg, std::map<int, VarClass> classes)
      : cfg_(cfg), classes_(std::move(classes)) {}

  bool ok() const { return ok_; }

  Occ walk(const Node& n) {
    if (n.kind == RawKind::Var && n.form == Form::Plain && n.varId >= 0 && n.kids.empty()) {
      classes_.emplace(n.varId, n.varClass);
      return {{n.varId, 1}};
    }
    std::vector<Occ> kids;
    for (const auto& k : n.kids) kids.push_back(walk(*k));
    Occ out;
    if (kids.size() == 2 && n.additive) {
      for (const auto& [id, c] : kids[0]) out[id] += c;
      for (const auto& [id, c] : kids[1]) out[id] += c;
      for (const auto& [id, c] : out) {
        const bool left = kids[0].count(id), right = kids[1].count(id);
        const VarClass cls = classOf(id);
        // The synthesised side is shared by both branches; the rest is split.
        if (isSynthesisable(cls) ? left != right : left && right) require(cls);
      }
      // A shared variable counts once.
      for (auto& [id, c] : out)
        if (kids[0].count(id) && kids[1].count(id) && isSynthesisable(classOf(id)))
          c = std::max(kids[0].at(id), kids[1].at(id));
    } else {
      for (std::size_t i = 0; i < kids.size(); ++i)
        for (const auto& [id, c] : kids[i]) {
          for (std::size_t j = 0; j < i; ++j)
            if (kids[j].count(id)) require(classOf(id));
          out[id] += c;
        }
    }
    for (const auto& b : n.binders) {
      classes_.emplace(b.id, b.cls);
      if (!out.count(b.id)) require(b.cls);
      out.erase(b.id);
    }
    return out;
  }

  void require(VarClass cls) {
    if (!cfg_.structural(cls)) ok_ = false;
  }

  VarClass classOf(int id) const {
    auto it = classes_.find(id);
    return it == classes_.end() ? VarClass::Lambda : it->second;
  }

 private:
  const StructConfig& cfg_;
  std::map<int, VarClass> classes_;
  bool ok_ = true;
};

// ---------------------------------------------------------------------------
// Judgement sets.

using Sigma = std::map<int, Type>;  // synthesised side, by binding id
using Env = std::map<int, Type>;    // given side, by binding id
using Sigmas = std::set<Sigma>;
using Typed = std::set<std::pair<Type, Sigma>>;

std::optional<Sigma> combine(const Sigma& a, const Sigma& b) {
  Sigma out = a;
  for (const auto& [id, t] : b) {
    auto it = out.find(id);
    if (it == out.end()) {
      out.emplace(id, t);
      continue;
    }
    auto m = glb(it->second, t);
    if (!m) return std::nullopt;
    it->second = *m;
  }
  return out;
}

Sigmas product(const Sigmas& a, const Sigmas& b) {
  Sigmas out;
  for (const auto& x : a)
    for (const auto& y : b)
      if (auto c = combine(x, y)) out.insert(*c);
  return out;
}

class Engine {
 public:
  Engine(const TypeUniverse& u, const StructConfig& cfg, bool linearArrow,
         std::vector<AnnotationSite>& sites)
      : universe_(u), cfg_(cfg), linearArrow_(linearArrow), sites_(sites) {}

  // -- shared ---------------------------------------------------------------

  // The candidates for an annotated position: the universe, intersected with
  // what is written there.
  std::vector<Type> annotated(const Node& n) {
    sites_.push_back({n.loc, *n.annot});
    std::vector<Type> out;
    if (inUniverse(*n.annot, universe_)) out.push_back(*n.annot);
    return out;
  }

  // Removes binder `b` from σ, yielding its type; an absent binder is typed
  // ⊤ when it may be discarded.
  std::optional<Type> take(Sigma& s, const scope::Binder& b) {
    auto it = s.find(b.id);
    if (it == s.end()) {
      if (!cfg_.structural(b.cls)) return std::nullopt;
      return Type::topOf(polarityOf(b.cls));
    }
    Type t = it->second;
    s.erase(it);
    return t;
  }

  // -- System L -------------------------------------------------------------

  Sigmas expr(const Node& n, const Type& a, const Env& x) {
    const auto& k = n.kids;
    Sigmas out;
    switch (n.kind) {
      case RawKind::Var:
        out.insert(Sigma{{n.varId, a}});
        break;
      case RawKind::MuPlus:
        out = command(*k[0], with(x, n.binders[0].id, a));
        break;
      case RawKind::UnitI:
        if (a.kind() == TypeKind::I) out.insert(Sigma{});
        break;
      case RawKind::Tuple:
        if (a.kind() == TypeKind::Tensor)
          out = product(expr(*k[0], a.lhs(), x), expr(*k[1], a.rhs(), x));
        break;
      case RawKind::InlE:
      case RawKind::InrE:
        if (a.kind() == TypeKind::Plus)
          out = expr(*k[0], n.kind == RawKind::InlE ? a.lhs() : a.rhs(), x);
        break;
      case RawKind::SimIntro:
        if (a.kind() == TypeKind::SimNeg) out = coexpr(*k[0], a.inner(), x);
        break;
      case RawKind::DownIntro:
        if (a.kind() == TypeKind::DownShift)
          for (const auto& [b, s] : copattern(*k[0], x))
            if (leq(a.inner(), b)) out.insert(s);
        break;
      case RawKind::MatchDDown:
        if (cfg_.allowDDown && a.kind() == TypeKind::DDown)
          for (Sigma s : command(*k[0], x))
            if (auto b = take(s, n.binders[0]); b && leq(a.inner(), *b)) out.insert(s);
        break;
      default:
        break;
    }
    return out;
  }

  Sigmas coexpr(const Node& n, const Type& a, const Env& x) {
    const auto& k = n.kids;
    Sigmas out;
    switch (n.kind) {
      case RawKind::Var:
        out.insert(Sigma{{n.varId, a}});
        break;
      case RawKind::MutMinus:
        out = command(*k[0], with(x, n.binders[0].id, a));
        break;
      case RawKind::CounitBot:
        if (a.kind() == TypeKind::Bot) out.insert(Sigma{});
        break;
      case RawKind::Cotuple:
        if (a.kind() == TypeKind::Par)
          out = product(coexpr(*k[0], a.lhs(), x), coexpr(*k[1], a.rhs(), x));
        break;
      case RawKind::Pi1E:
      case RawKind::Pi2E:
        if (a.kind() == TypeKind::With)
          out = coexpr(*k[0], n.kind == RawKind::Pi1E ? a.lhs() : a.rhs(), x);
        break;
      case RawKind::NotCointro:
        if (a.kind() == TypeKind::NotNeg) out = expr(*k[0], a.inner(), x);
        break;
      case RawKind::UpCointro:
        if (a.kind() == TypeKind::UpShift)
          for (const auto& [b, s] : pattern(*k[0], x))
            if (leq(b, a.inner())) out.insert(s);
        break;
      case RawKind::ComatchUUp:
        if (cfg_.allowUUp && a.kind() == TypeKind::UUp)
          for (Sigma s : command(*k[0], x))
            if (auto b = take(s, n.binders[0]); b && leq(*b, a.inner())) out.insert(s);
        break;
      default:
        break;
    }
    return out;
  }

  Typed pattern(const Node& n, const Env& x) {
    const auto& k = n.kids;
    Typed out;
    switch (n.kind) {
      case RawKind::Var:
        if (auto it = x.find(n.varId); it != x.end()) out.insert({it->second, {}});
        break;
      case RawKind::MutPlus:
        out = bindOne(n, command(*k[0], x), [](const Type& t) { return t; });
        break;
      case RawKind::MatchUnit:
        for (const auto& s : command(*k[0], x)) out.insert({Type::constant(TypeKind::I), s});
        break;
      case RawKind::MatchPair:
        out = bindTwo(n, command(*k[0], x), TypeKind::Tensor);
        break;
      case RawKind::MatchSum:
        out = branches(n, x, TypeKind::Plus);
        break;
      case RawKind::MatchEmpty:
        out.insert({Type::constant(TypeKind::ZeroP), {}});
        break;
      case RawKind::MatchSim:
        out = bindOne(n, command(*k[0], x),
                      [](const Type& t) { return Type::unary(TypeKind::SimNeg, t); });
        break;
      case RawKind::MatchDown:
        for (const auto& b : annotated(n))
          for (const auto& s : command(*k[0], with(x, n.binders[0].id, b)))
            out.insert({Type::unary(TypeKind::DownShift, b), s});
        break;
      case RawKind::DDownIntro:
        if (!cfg_.allowDDown) break;
        for (const auto& b : annotated(n))
          for (const auto& s : coexpr(*k[0], b, x)) out.insert({Type::unary(TypeKind::DDown, b), s});
        break;
      default:
        break;
    }
    return out;
  }

  Typed copattern(const Node& n, const Env& x) {
    const auto& k = n.kids;
    Typed out;
    switch (n.kind) {
      case RawKind::Var:
        if (auto it = x.find(n.varId); it != x.end()) out.insert({it->second, {}});
        break;
      case RawKind::MuMinus:
        out = bindOne(n, command(*k[0], x), [](const Type& t) { return t; });
        break;
      case RawKind::ComatchBot:
        for (const auto& s : command(*k[0], x)) out.insert({Type::constant(TypeKind::Bot), s});
        break;
      case RawKind::ComatchPar:
        out = bindTwo(n, command(*k[0], x), TypeKind::Par);
        break;
      case RawKind::ComatchWith:
        out = branches(n, x, TypeKind::With);
        break;
      case RawKind::ComatchEmpty:
        out.insert({Type::constant(TypeKind::One1), {}});
        break;
      case RawKind::ComatchNot:
        out = bindOne(n, command(*k[0], x),
                      [](const Type& t) { return Type::unary(TypeKind::NotNeg, t); });
        break;
      case RawKind::ComatchUp:
        for (const auto& b : annotated(n))
          for (const auto& s : command(*k[0], with(x, n.binders[0].id, b)))
            out.insert({Type::unary(TypeKind::UpShift, b), s});
        break;
      case RawKind::UUpIntro:
        if (!cfg_.allowUUp) break;
        for (const auto& b : annotated(n))
          for (const auto& s : expr(*k[0], b, x)) out.insert({Type::unary(TypeKind::UUp, b), s});
        break;
      default:
        break;
    }
    return out;
  }

  // A cut holds at every type the right-hand side can have.
  Sigmas command(const Node& n, const Env& x) {
    Sigmas out;
    if (n.kind != RawKind::Cut) return out;
    const bool pos = n.cutPolarity == Polarity::Positive;
    const Typed rhs = pos ? pattern(*n.kids[1], x) : copattern(*n.kids[1], x);
    for (const auto& [a, s] : rhs) {
      Sigmas lhs = pos ? expr(*n.kids[0], a, x) : coexpr(*n.kids[0], a, x);
      for (auto& r : product(lhs, {s})) out.insert(r);
    }
    return out;
  }

  // -- standard λ -----------------------------------------------------------

  bool chkStd(const Node& n, const Type& a, const Env& g) {
    const auto& k = n.kids;
    if (n.form == Form::Emb) {
      for (const auto& b : synStd(*k[0], g))
        if (leq(a, b)) return true;
      return false;
    }
    switch (n.kind) {
      case RawKind::Lam:
        return a.kind() == TypeKind::Arrow && chkStd(*k[0], a.rhs(), with(g, n.binders[0].id, a.lhs()));
      case RawKind::Unit:
        return a.kind() == TypeKind::Unit1;
      case RawKind::Pair:
        return a.kind() == TypeKind::Prod && chkStd(*k[0], a.lhs(), g) && chkStd(*k[1], a.rhs(), g);
      case RawKind::Inl:
      case RawKind::Inr:
        return a.kind() == TypeKind::Sum &&
               chkStd(*k[0], n.kind == RawKind::Inl ? a.lhs() : a.rhs(), g);
      case RawKind::Absurd:
        return chkStd(*k[0], Type::constant(TypeKind::Zero0), g);
      case RawKind::Case:
        for (const auto& s : synStd(*k[0], g)) {
          if (s.kind() != TypeKind::Sum) continue;
          const Node& l = *k[1];
          const Node& r = *k[2];
          if (chkStd(*l.kids[0], a, with(g, l.binders[0].id, s.lhs())) &&
              chkStd(*r.kids[0], a, with(g, r.binders[0].id, s.rhs())))
            return true;
        }
        return false;
      default:
        return false;
    }
  }

  std::set<Type> synStd(const Node& n, const Env& g) {
    const auto& k = n.kids;
    std::set<Type> out;
    switch (n.kind) {
      case RawKind::Var:
        if (auto it = g.find(n.varId); it != g.end()) out.insert(it->second);
        break;
      case RawKind::App:
        for (const auto& f : synStd(*k[0], g))
          if (f.kind() == TypeKind::Arrow && chkStd(*k[1], f.lhs(), g)) out.insert(f.rhs());
        break;
      case RawKind::Annot:
        for (const auto& b : annotated(n))
          if (chkStd(*k[0], b, g)) out.insert(b);
        break;
      case RawKind::Proj1:
      case RawKind::Proj2:
        for (const auto& p : synStd(*k[0], g))
          if (p.kind() == TypeKind::Prod) out.insert(n.kind == RawKind::Proj1 ? p.lhs() : p.rhs());
        break;
      default:
        break;
    }
    return out;
  }

  // -- cocontextual λ ------------------------------------------------------

  Sigmas chkCo(const Node& n, const Type& a) {
    const auto& k = n.kids;
    Sigmas out;
    if (n.form == Form::Emb) {
      for (const auto& [b, s] : synCo(*k[0]))
        if (leq(a, b)) out.insert(s);
      return out;
    }
    switch (n.kind) {
      case RawKind::Var:
        out.insert(Sigma{{n.varId, a}});
        break;
      case RawKind::App:
        for (const auto& [b, s] : synCo(*k[1]))
          for (auto& r : product(chkCo(*k[0], Type::binary(arrow(), b, a)), {s})) out.insert(r);
        break;
      default:
        break;
    }
    return out;
  }

  Typed synCo(const Node& n) {
    const auto& k = n.kids;
    Typed out;
    switch (n.kind) {
      case RawKind::Lam:
        for (auto [b, s] : synCo(*k[0]))
          if (auto dom = take(s, n.binders[0]))
            out.insert({Type::binary(arrow(), *dom, b), s});
        break;
      case RawKind::Annot:
        for (const auto& b : annotated(n))
          for (const auto& s : chkCo(*k[0], b)) out.insert({b, s});
        break;
      case RawKind::Unit:
        out.insert({Type::constant(TypeKind::Unit1), {}});
        break;
      case RawKind::Pair:
        for (const auto& [a, s] : synCo(*k[0]))
          for (const auto& [b, t] : synCo(*k[1]))
            if (auto c = combine(s, t)) out.insert({Type::binary(TypeKind::Prod, a, b), *c});
        break;
      case RawKind::LetUnit:
        for (const auto& [b, s] : synCo(*k[1]))
          for (auto& r : product(chkCo(*k[0], Type::constant(TypeKind::Unit1)), {s}))
            out.insert({b, r});
        break;
      case RawKind::LetPair: {
        const Node& br = *k[1];
        for (auto [b, s] : synCo(*br.kids[0])) {
          auto l = take(s, br.binders[0]);
          auto r = take(s, br.binders[1]);
          if (!l || !r) continue;
          for (auto& c : product(chkCo(*k[0], Type::binary(TypeKind::Prod, *l, *r)), {s}))
            out.insert({b, c});
        }
        break;
      }
      default:
        break;
    }
    return out;
  }

 private:
  TypeKind arrow() const { return linearArrow_ ? TypeKind::Lolli : TypeKind::Arrow; }

  static Env with(const Env& e, int id, const Type& t) {
    Env out = e;
    out[id] = t;
    return out;
  }

  template <class Wrap>
  Typed bindOne(const Node& n, const Sigmas& body, Wrap wrap) {
    Typed out;
    for (Sigma s : body)
      if (auto t = take(s, n.binders[0])) out.insert({wrap(*t), s});
    return out;
  }

  Typed bindTwo(const Node& n, const Sigmas& body, TypeKind k) {
    Typed out;
    for (Sigma s : body) {
      auto a = take(s, n.binders[0]);
      auto b = take(s, n.binders[1]);
      if (a && b) out.insert({Type::binary(k, *a, *b), s});
    }
    return out;
  }

  Typed branches(const Node& n, const Env& x, TypeKind k) {
    const Node& l = *n.kids[0];
    const Node& r = *n.kids[1];
    Typed out;
    for (Sigma s : command(*l.kids[0], x)) {
      auto a = take(s, l.binders[0]);
      if (!a) continue;
      for (Sigma t : command(*r.kids[0], x)) {
        auto b = take(t, r.binders[0]);
        if (!b) continue;
        if (auto c = combine(s, t)) out.insert({Type::binary(k, *a, *b), *c});
      }
    }
    return out;
  }

  const TypeUniverse& universe_;
  const StructConfig& cfg_;
  bool linearArrow_;
  std::vector<AnnotationSite>& sites_;
};

// Spreads σ over `entries`, typing unused structural entries with ⊤.
std::optional<TypedCtx> spread(const Sigma& s, const ScopedCtx& entries, const StructConfig& cfg) {
  TypedCtx out;
  std::size_t hit = 0;
  for (const auto& e : entries) {
    auto it = s.find(e.id);
    if (it != s.end()) {
      out.push_back({e.name, e.cls, it->second});
      ++hit;
    } else if (cfg.structural(e.cls)) {
      out.push_back({e.name, e.cls, Type::topOf(polarityOf(e.cls))});
    } else {
      return std::nullopt;
    }
  }
  if (hit != s.size()) return std::nullopt;
  return out;
}

}  // namespace

Derivations deriveAll(const ScopedQuery& q, const TypeUniverse& u, bool fixRootType) {
  Derivations out;
  std::map<int, VarClass> classes;
  for (const auto& e : q.entries) classes[e.id] = e.cls;
  const bool standard = q.calculus == Calculus::Stlc;
  if (!standard) {
    Usage usage(q.cfg, classes);
    Occ free = usage.walk(*q.root);
    for (const auto& e : q.entries)
      if (!free.count(e.id)) usage.require(e.cls);
    if (!usage.ok()) return out;
  }

  Engine eng(u, q.cfg, q.calculus == Calculus::Lin, out.annotations);
  const bool check = q.kind == QueryKind::LambdaCheck || q.kind == QueryKind::Expr ||
                     q.kind == QueryKind::Coexpr;
  std::vector<Type> roots;
  if (check) {
    if (fixRootType) {
      roots.push_back(*q.type);
    } else {
      const Polarity p = q.kind == QueryKind::Expr     ? Polarity::Positive
                         : q.kind == QueryKind::Coexpr ? Polarity::Negative
                                                       : Polarity::Unpolarised;
      roots = enumerateTypes(u, p);
    }
  }
  auto reportType = [&](const Type& t) {
    return fixRootType && check ? std::nullopt : std::optional<Type>(t);
  };
  auto add = [&](Judgement j) {
    if (std::find(out.judgements.begin(), out.judgements.end(), j) == out.judgements.end())
      out.judgements.push_back(std::move(j));
  };

  if (standard) {
    Env g;
    for (std::size_t i = 0; i < q.entries.size(); ++i) g[q.entries[i].id] = *q.types[i];
    if (check) {
      for (const auto& a : roots)
        if (eng.chkStd(*q.root, a, g)) add({reportType(a), {}});
    } else {
      for (const auto& t : eng.synStd(*q.root, g)) add({t, {}});
    }
    return out;
  }

  if (familyOf(q.calculus) == Family::Lambda) {
    auto emit = [&](std::optional<Type> t, const Sigma& s) {
      if (auto ctx = spread(s, q.entries, q.cfg)) add({std::move(t), std::move(*ctx)});
    };
    if (check) {
      for (const auto& a : roots)
        for (const auto& s : eng.chkCo(*q.root, a)) emit(reportType(a), s);
    } else {
      for (const auto& [t, s] : eng.synCo(*q.root)) emit(t, s);
    }
    return out;
  }

  Env x;
  ScopedCtx sigmaEntries;
  for (std::size_t i = 0; i < q.entries.size(); ++i) {
    if (isSynthesisable(q.entries[i].cls))
      sigmaEntries.push_back(q.entries[i]);
    else if (q.types[i])
      x[q.entries[i].id] = *q.types[i];
  }
  auto emit = [&](std::optional<Type> t, const Sigma& s) {
    if (auto ctx = spread(s, sigmaEntries, q.cfg)) add({std::move(t), std::move(*ctx)});
  };
  switch (q.kind) {
    case QueryKind::Expr:
    case QueryKind::Coexpr:
      for (const auto& a : roots)
        for (const auto& s : q.kind == QueryKind::Expr ? eng.expr(*q.root, a, x)
                                                       : eng.coexpr(*q.root, a, x))
          emit(reportType(a), s);
      break;
    case QueryKind::Pattern:
      for (const auto& [t, s] : eng.pattern(*q.root, x)) emit(t, s);
      break;
    case QueryKind::Copattern:
      for (const auto& [t, s] : eng.copattern(*q.root, x)) emit(t, s);
      break;
    default:
      for (const auto& s : eng.command(*q.root, x)) emit(std::nullopt, s);
      break;
  }
  return out;
}

bool agree(const Verdict& v, const Derivations& all, const ScopedQuery& q) {
  if (!v.ok()) return all.judgements.empty();
  Judgement j{v.type, v.ctx.value_or(TypedCtx{})};
  (void)q;
  return std::find(all.judgements.begin(), all.judgements.end(), j) != all.judgements.end();
}

}  // namespace polcheck::oracle
