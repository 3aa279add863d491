#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "polcheck/oracle.hpp"
#include "polcheck/systeml.hpp"

namespace polcheck::oracle {

using scope::Calculus;
using surface::Directive;
using surface::QueryKind;
using surface::RawKind;
using surface::RawPtr;
using surface::RawTerm;

std::string corpusPrelude(Calculus c) {
  if (familyOf(c) == Family::Lambda) return "atom P plain; atom Q plain;";
  return "atom P positive; atom Q positive; atom N negative; atom M negative;";
}

surface::AtomTable corpusAtoms(Calculus c) {
  if (familyOf(c) == Family::Lambda)
    return {{"P", Polarity::Unpolarised}, {"Q", Polarity::Unpolarised}};
  return {{"P", Polarity::Positive},
          {"Q", Polarity::Positive},
          {"N", Polarity::Negative},
          {"M", Polarity::Negative}};
}

std::string renderCorpus(const std::vector<Directive>& ds, Calculus c) {
  std::ostringstream out;
  out << corpusPrelude(c) << "\n";
  for (const auto& d : ds) out << surface::printDirective(d) << "\n";
  return out.str();
}

namespace {

RawPtr mk(RawKind k, std::vector<RawPtr> kids = {}, std::vector<std::string> binders = {}) {
  auto n = RawTerm::make(k);
  n->kids = std::move(kids);
  n->binderLocs.resize(binders.size());
  n->binders = std::move(binders);
  return n;
}

RawPtr var(const std::string& name) {
  auto n = RawTerm::make(RawKind::Var);
  n->name = name;
  return n;
}

Polarity flip(Polarity p) {
  return p == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
}

// A variable the term under construction must consume.
struct Obligation {
  std::string name;
  VarClass cls;
  Type type;
};
using Obligations = std::vector<Obligation>;

class Generator {
 public:
  explicit Generator(const CorpusSpec& s) : spec_(s), rng_(s.seed) {
    TypeUniverse u{corpusAtoms(s.calculus), s.typeDepth, s.calculus};
    for (Polarity p : {Polarity::Positive, Polarity::Negative, Polarity::Unpolarised})
      pools_[static_cast<int>(p)] = enumerateTypes(u, p);
  }

  std::optional<Directive> directive() {
    ctx_.clear();
    fresh_ = 0;
    invented_.clear();
    dual_ = false;
    branchDepth_ = 0;
    Directive d;
    d.kind = spec_.kind;
    const int b = spec_.sizeBound;
    switch (spec_.kind) {
      case QueryKind::Expr:
        d.type = pick(Polarity::Positive);
        d.term = expr(*d.type, {}, b);
        break;
      case QueryKind::Coexpr:
        d.type = pick(Polarity::Negative);
        d.term = coexpr(*d.type, {}, b);
        break;
      case QueryKind::Pattern:
        d.term = pattern(pick(Polarity::Positive), {}, b);
        break;
      case QueryKind::Copattern:
        d.term = copattern(pick(Polarity::Negative), {}, b);
        break;
      case QueryKind::Command:
        d.term = command({}, b);
        break;
      case QueryKind::LambdaCheck:
        d.type = pick(Polarity::Unpolarised);
        d.term = cocontextual() ? coChk(*d.type, {}, b) : stdChk(*d.type, {}, b);
        break;
      case QueryKind::LambdaSynth: {
        const Type t = pick(Polarity::Unpolarised);
        d.term = cocontextual() ? coSyn(t, {}, b) : stdSyn(t, {}, b);
        break;
      }
    }
    if (!d.term) return std::nullopt;
    d.ctx = ctx_;
    if (chance(spec_.noise)) perturb(d);
    return d;
  }

 private:
  // -- randomness -----------------------------------------------------------

  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }
  int below(int n) { return n <= 0 ? 0 : std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  // A pool type of the given polarity, seen from the current side.
  Type pick(Polarity p) {
    if (p == Polarity::Unpolarised) return pickFrom(pools_[2]);
    const Polarity real = dual_ ? flip(p) : p;
    const auto& pool = pools_[static_cast<int>(real)];
    if (pool.empty()) return Type::constant(p == Polarity::Positive ? TypeKind::I : TypeKind::Bot);
    Type t = pickFrom(pool);
    return dual_ ? systeml::dualize(t) : t;
  }
  Type pickFrom(const std::vector<Type>& pool) { return pool[below(static_cast<int>(pool.size()))]; }

  std::string freshName(char prefix) { return prefix + std::to_string(fresh_++); }

  bool allowedPolarity(Polarity p) const {
    const Polarity real = dual_ ? flip(p) : p;
    if (spec_.calculus == Calculus::Pos) return real == Polarity::Positive;
    if (spec_.calculus == Calculus::Neg) return real == Polarity::Negative;
    return true;
  }
  bool structural(VarClass c) const {
    return spec_.cfg.structural(dual_ ? systeml::dualize(c) : c);
  }
  bool lnlUp() const { return spec_.calculus == Calculus::Lnl && (dual_ ? spec_.cfg.allowDDown : spec_.cfg.allowUUp); }
  bool lnlDown() const { return spec_.calculus == Calculus::Lnl && (dual_ ? spec_.cfg.allowUUp : spec_.cfg.allowDDown); }
  bool cocontextual() const { return spec_.calculus != Calculus::Stlc; }

  void declare(const std::string& name, const Type& t) {
    surface::CtxEntry e;
    e.name = name;
    e.type = dual_ ? systeml::dualize(t) : t;
    ctx_.push_back(std::move(e));
  }

  // -- obligations ----------------------------------------------------------

  bool droppable(const Obligations& o) const {
    return std::all_of(o.begin(), o.end(), [&](const Obligation& x) { return structural(x.cls); });
  }

  // The single obligation a variable leaf of class `cls` at type `t` can
  // discharge, provided everything else may be dropped.
  std::optional<std::string> leafFor(const Obligations& o, VarClass cls, const Type& t) const {
    std::optional<std::string> hit;
    for (const auto& x : o) {
      if (!hit && x.cls == cls && x.type == t) {
        hit = x.name;
        continue;
      }
      if (!structural(x.cls)) return std::nullopt;
    }
    return hit;
  }

  // Splits obligations between two premises. The synthesised side of an
  // additive split goes to both; structural ones are sometimes shared.
  std::pair<Obligations, Obligations> split(const Obligations& o) {
    Obligations l, r;
    for (const auto& x : o) {
      if (structural(x.cls) && chance(0.2)) {
        l.push_back(x);
        r.push_back(x);
      } else {
        (chance(0.5) ? l : r).push_back(x);
      }
    }
    return {l, r};
  }

  Obligations with(Obligations o, Obligation x) {
    // Structural binders are occasionally left unused.
    if (structural(x.cls) && chance(0.1)) return o;
    o.push_back(std::move(x));
    return o;
  }

  bool mayInventSigma() const { return branchDepth_ == 0 || structural(VarClass::GammaPos); }

  // -- System L, positive side; the negative side is its dual ---------------

  RawPtr expr(const Type& a, const Obligations& o, int b) {
    std::vector<std::function<RawPtr()>> options;
    if (auto v = leafFor(o, VarClass::GammaPos, a)) return var(*v);
    if (o.empty() && mayInventSigma()) options.push_back([&] { return var(freshName('x')); });
    if (b >= 4 && allowedPolarity(Polarity::Positive)) {
      options.push_back([&, a] {
        const std::string k = freshName('a');
        auto c = command(with(o, {k, VarClass::DeltaPos, a}), b - 1);
        return c ? mk(RawKind::MuPlus, {c}, {k}) : nullptr;
      });
    }
    switch (a.kind()) {
      case TypeKind::I:
        if (b >= 1 && droppable(o)) options.push_back([] { return mk(RawKind::UnitI); });
        break;
      case TypeKind::Tensor:
        if (b >= 3)
          options.push_back([&, a] {
            auto [l, r] = split(o);
            const int lb = 1 + below(b - 2);
            auto x = expr(a.lhs(), l, lb);
            auto y = x ? expr(a.rhs(), r, b - 1 - lb) : nullptr;
            return y ? mk(RawKind::Tuple, {x, y}) : nullptr;
          });
        break;
      case TypeKind::Plus:
        if (b >= 2)
          options.push_back([&, a] {
            const bool left = chance(0.5);
            auto x = expr(left ? a.lhs() : a.rhs(), o, b - 1);
            return x ? mk(left ? RawKind::InlE : RawKind::InrE, {x}) : nullptr;
          });
        break;
      case TypeKind::SimNeg:
        if (b >= 2)
          options.push_back([&, a] {
            auto x = coexpr(a.inner(), o, b - 1);
            return x ? mk(RawKind::SimIntro, {x}) : nullptr;
          });
        break;
      case TypeKind::DownShift:
        if (b >= 2)
          options.push_back([&, a] {
            auto x = copattern(a.inner(), o, b - 1);
            return x ? mk(RawKind::DownIntro, {x}) : nullptr;
          });
        break;
      case TypeKind::DDown:
        if (b >= 4 && lnlDown())
          options.push_back([&, a] {
            const std::string y = freshName('y');
            auto c = command(with(o, {y, VarClass::DeltaNeg, a.inner()}), b - 1);
            return c ? mk(RawKind::MatchDDown, {c}, {y}) : nullptr;
          });
        break;
      default:
        break;
    }
    return tryOptions(options, b);
  }

  RawPtr pattern(const Type& a, const Obligations& o, int b) {
    std::vector<std::function<RawPtr()>> options;
    if (auto v = leafFor(o, VarClass::DeltaPos, a)) return var(*v);
    if (droppable(o))
      options.push_back([&, a] {
        const std::string k = freshName('k');
        declare(k, a);
        return var(k);
      });
    if (b >= 4 && allowedPolarity(Polarity::Positive)) {
      options.push_back([&, a] {
        const std::string z = freshName('z');
        auto c = command(with(o, {z, VarClass::GammaPos, a}), b - 1);
        return c ? mk(RawKind::MutPlus, {c}, {z}) : nullptr;
      });
    }
    switch (a.kind()) {
      case TypeKind::I:
        if (b >= 4)
          options.push_back([&] {
            auto c = command(o, b - 1);
            return c ? mk(RawKind::MatchUnit, {c}) : nullptr;
          });
        break;
      case TypeKind::Tensor:
        if (b >= 4)
          options.push_back([&, a] {
            const std::string x = freshName('x'), y = freshName('x');
            auto body = with(with(o, {x, VarClass::GammaPos, a.lhs()}), {y, VarClass::GammaPos, a.rhs()});
            auto c = command(body, b - 1);
            return c ? mk(RawKind::MatchPair, {c}, {x, y}) : nullptr;
          });
        break;
      case TypeKind::Plus:
        if (b >= 7)
          options.push_back([&, a] {
            Obligations shared, rest;
            for (const auto& x : o) (isSynthesisable(dual_ ? systeml::dualize(x.cls) : x.cls) ? shared : rest).push_back(x);
            auto [l, r] = split(rest);
            Obligations lo = shared, ro = shared;
            lo.insert(lo.end(), l.begin(), l.end());
            ro.insert(ro.end(), r.begin(), r.end());
            const std::string x = freshName('x'), y = freshName('x');
            ++branchDepth_;
            const int lb = 3 + below(b - 6);
            auto c1 = command(with(lo, {x, VarClass::GammaPos, a.lhs()}), lb);
            auto c2 = c1 ? command(with(ro, {y, VarClass::GammaPos, a.rhs()}), b - 1 - lb) : nullptr;
            --branchDepth_;
            return c2 ? mk(RawKind::MatchSum, {c1, c2}, {x, y}) : nullptr;
          });
        break;
      case TypeKind::ZeroP:
        if (b >= 1 && o.empty()) options.push_back([] { return mk(RawKind::MatchEmpty); });
        break;
      case TypeKind::SimNeg:
        if (b >= 4)
          options.push_back([&, a] {
            const std::string y = freshName('y');
            auto c = command(with(o, {y, VarClass::DeltaNeg, a.inner()}), b - 1);
            return c ? mk(RawKind::MatchSim, {c}, {y}) : nullptr;
          });
        break;
      case TypeKind::DownShift:
        if (b >= 4 && !spec_.annotationFree)
          options.push_back([&, a] {
            const std::string w = freshName('w');
            auto c = command(with(o, {w, VarClass::GammaNeg, a.inner()}), b - 1);
            if (!c) return RawPtr();
            auto n = mk(RawKind::MatchDown, {c}, {w});
            n->annot = a.inner();
            return n;
          });
        break;
      case TypeKind::DDown:
        if (b >= 2 && lnlDown() && !spec_.annotationFree)
          options.push_back([&, a] {
            auto x = coexpr(a.inner(), o, b - 1);
            if (!x) return RawPtr();
            auto n = mk(RawKind::DDownIntro, {x});
            n->annot = a.inner();
            return n;
          });
        break;
      default:
        break;
    }
    return tryOptions(options, b);
  }

  // Anchors the cut on an obligation when there is one.
  RawPtr command(const Obligations& o, int b) {
    if (b < 3) return nullptr;
    std::vector<std::function<RawPtr()>> options;
    for (std::size_t i = 0; i < o.size(); ++i) {
      Obligations rest = o;
      rest.erase(rest.begin() + static_cast<long>(i));
      const Obligation x = o[i];
      const bool positive = polarityOf(x.cls) == Polarity::Positive;
      if (!allowedPolarity(positive ? Polarity::Positive : Polarity::Negative)) continue;
      options.push_back([&, x, rest] {
        RawPtr other;
        switch (x.cls) {
          case VarClass::GammaPos: other = pattern(x.type, rest, b - 2); break;
          case VarClass::DeltaPos: other = expr(x.type, rest, b - 2); break;
          case VarClass::GammaNeg: other = coexpr(x.type, rest, b - 2); break;
          default: other = copattern(x.type, rest, b - 2); break;
        }
        if (!other) return RawPtr();
        const bool left = x.cls == VarClass::GammaPos || x.cls == VarClass::DeltaNeg;
        return left ? mk(RawKind::Cut, {var(x.name), other}) : mk(RawKind::Cut, {other, var(x.name)});
      });
    }
    if (options.empty() || chance(0.3)) {
      options.push_back([&] {
        Polarity p = chance(0.5) ? Polarity::Positive : Polarity::Negative;
        if (!allowedPolarity(p)) p = flip(p);
        const Type a = pick(p);
        auto [l, r] = split(o);
        const int lb = 1 + below(b - 2);
        RawPtr e = p == Polarity::Positive ? expr(a, l, lb) : coexpr(a, l, lb);
        RawPtr q = !e ? nullptr
                      : p == Polarity::Positive ? pattern(a, r, b - 1 - lb)
                                                : copattern(a, r, b - 1 - lb);
        return q ? mk(RawKind::Cut, {e, q}) : nullptr;
      });
    }
    return tryOptions(options, b);
  }

  // Negative judgements through the dualizer.
  template <class F>
  RawPtr dually(const Type& a, const Obligations& o, F gen) {
    Obligations d;
    for (const auto& x : o) d.push_back({x.name, systeml::dualize(x.cls), systeml::dualize(x.type)});
    dual_ = !dual_;
    RawPtr t = gen(systeml::dualize(a), d);
    dual_ = !dual_;
    return t ? systeml::dualize(*t) : nullptr;
  }
  RawPtr coexpr(const Type& a, const Obligations& o, int b) {
    return dually(a, o, [&](const Type& t, const Obligations& d) { return expr(t, d, b); });
  }
  RawPtr copattern(const Type& a, const Obligations& o, int b) {
    return dually(a, o, [&](const Type& t, const Obligations& d) { return pattern(t, d, b); });
  }

  // -- standard λ -----------------------------------------------------------

  struct Bound {
    std::string name;
    Type type;
  };
  using Scope = std::vector<Bound>;

  RawPtr stdChk(const Type& a, const Scope& s, int b) {
    std::vector<std::function<RawPtr()>> options;
    options.push_back([&, a] { return stdSyn(a, s, b); });
    switch (a.kind()) {
      case TypeKind::Arrow:
        if (b >= 2)
          options.push_back([&, a] {
            const std::string x = freshName('x');
            Scope inner = s;
            inner.push_back({x, a.lhs()});
            auto t = stdChk(a.rhs(), inner, b - 1);
            return t ? mk(RawKind::Lam, {t}, {x}) : nullptr;
          });
        break;
      case TypeKind::Unit1:
        if (b >= 1) options.push_back([] { return mk(RawKind::Unit); });
        break;
      case TypeKind::Prod:
        if (b >= 3)
          options.push_back([&, a] {
            const int lb = 1 + below(b - 2);
            auto x = stdChk(a.lhs(), s, lb);
            auto y = x ? stdChk(a.rhs(), s, b - 1 - lb) : nullptr;
            return y ? mk(RawKind::Pair, {x, y}) : nullptr;
          });
        break;
      case TypeKind::Sum:
        if (b >= 2)
          options.push_back([&, a] {
            const bool left = chance(0.5);
            auto x = stdChk(left ? a.lhs() : a.rhs(), s, b - 1);
            return x ? mk(left ? RawKind::Inl : RawKind::Inr, {x}) : nullptr;
          });
        break;
      default:
        break;
    }
    if (b >= 4)
      options.push_back([&, a] {
        const Type l = pick(Polarity::Unpolarised), r = pick(Polarity::Unpolarised);
        const std::string x = freshName('x'), y = freshName('x');
        const int sb = 1 + below(b - 3);
        auto scrut = stdSyn(Type::binary(TypeKind::Sum, l, r), s, sb);
        Scope ls = s, rs = s;
        ls.push_back({x, l});
        rs.push_back({y, r});
        const int lb = 1 + below(std::max(1, b - 2 - sb));
        auto t1 = scrut ? stdChk(a, ls, lb) : nullptr;
        auto t2 = t1 ? stdChk(a, rs, std::max(1, b - 1 - sb - lb)) : nullptr;
        return t2 ? mk(RawKind::Case, {scrut, t1, t2}, {x, y}) : nullptr;
      });
    if (b >= 2 && chance(0.2))
      options.push_back([&] {
        auto t = stdSyn(Type::constant(TypeKind::Zero0), s, b - 1);
        return t ? mk(RawKind::Absurd, {t}) : nullptr;
      });
    return tryOptions(options, b);
  }

  RawPtr stdSyn(const Type& a, const Scope& s, int b) {
    std::vector<std::function<RawPtr()>> options;
    std::vector<std::string> hits;
    for (const auto& x : s)
      if (x.type == a) hits.push_back(x.name);
    for (const auto& e : ctx_)
      if (*e.type == a) hits.push_back(e.name);
    if (!hits.empty()) options.push_back([&, hits] { return var(hits[below(static_cast<int>(hits.size()))]); });
    options.push_back([&, a] {
      const std::string k = freshName('g');
      declare(k, a);
      return var(k);
    });
    if (b >= 3 && !spec_.annotationFree)
      options.push_back([&, a] {
        auto t = stdChk(a, s, b - 1);
        if (!t || t->kind == RawKind::Var) return RawPtr();
        auto n = mk(RawKind::Annot, {t});
        n->annot = a;
        return n;
      });
    if (b >= 3)
      options.push_back([&, a] {
        const Type d = pick(Polarity::Unpolarised);
        const int fb = 1 + below(b - 2);
        auto f = stdSyn(Type::binary(TypeKind::Arrow, d, a), s, fb);
        auto x = f ? stdChk(d, s, b - 1 - fb) : nullptr;
        return x ? mk(RawKind::App, {f, x}) : nullptr;
      });
    if (b >= 2)
      options.push_back([&, a] {
        const bool left = chance(0.5);
        const Type o = pick(Polarity::Unpolarised);
        auto p = stdSyn(left ? Type::binary(TypeKind::Prod, a, o) : Type::binary(TypeKind::Prod, o, a), s, b - 1);
        return p ? mk(left ? RawKind::Proj1 : RawKind::Proj2, {p}) : nullptr;
      });
    return tryOptions(options, b);
  }

  // -- cocontextual λ -------------------------------------------------------

  TypeKind arrow() const { return spec_.calculus == Calculus::Lin ? TypeKind::Lolli : TypeKind::Arrow; }

  // Free variables invented so far. Under a structural context a later use
  // may repeat one, which makes the checker meet the two uses.
  RawPtr invent(const Type& a) {
    if (structural(VarClass::Lambda) && !invented_.empty() && chance(0.3)) {
      std::vector<std::string> same;
      for (const auto& [n, t] : invented_)
        if (t == a) same.push_back(n);
      if (!same.empty() && chance(0.8)) return var(same[below(static_cast<int>(same.size()))]);
      return var(invented_[below(static_cast<int>(invented_.size()))].first);
    }
    const std::string x = freshName('x');
    invented_.emplace_back(x, a);
    return var(x);
  }

  RawPtr coChk(const Type& a, const Obligations& o, int b) {
    std::vector<std::function<RawPtr()>> options;
    if (auto v = leafFor(o, VarClass::Lambda, a)) return var(*v);
    if (o.empty() && mayInventSigma()) options.push_back([&, a] { return invent(a); });
    options.push_back([&, a] { return coSyn(a, o, b); });
    if (b >= 3)
      options.push_back([&, a] {
        const Type d = pick(Polarity::Unpolarised);
        auto [l, r] = split(o);
        const int fb = 1 + below(b - 2);
        auto f = coChk(Type::binary(arrow(), d, a), l, fb);
        auto x = f ? coSyn(d, r, b - 1 - fb) : nullptr;
        return x ? mk(RawKind::App, {f, x}) : nullptr;
      });
    return tryOptions(options, b);
  }

  RawPtr coSyn(const Type& a, const Obligations& o, int b) {
    std::vector<std::function<RawPtr()>> options;
    if (b >= 2 && !spec_.annotationFree)
      options.push_back([&, a] {
        auto t = coChk(a, o, b - 1);
        if (!t) return RawPtr();
        auto n = mk(RawKind::Annot, {t});
        n->annot = a;
        return n;
      });
    if (a.kind() == arrow() && b >= 2)
      options.push_back([&, a] {
        const std::string x = freshName('x');
        auto t = coSyn(a.rhs(), with(o, {x, VarClass::Lambda, a.lhs()}), b - 1);
        return t ? mk(RawKind::Lam, {t}, {x}) : nullptr;
      });
    if (b >= 1 && a.kind() == TypeKind::Unit1 && droppable(o)) options.push_back([] { return mk(RawKind::Unit); });
    if (a.kind() == TypeKind::Prod && b >= 3)
      options.push_back([&, a] {
        auto [l, r] = split(o);
        const int lb = 1 + below(b - 2);
        auto x = coSyn(a.lhs(), l, lb);
        auto y = x ? coSyn(a.rhs(), r, b - 1 - lb) : nullptr;
        return y ? mk(RawKind::Pair, {x, y}) : nullptr;
      });
    if (b >= 3)
      options.push_back([&, a] {
        auto [l, r] = split(o);
        const int lb = 1 + below(b - 2);
        auto u = coChk(Type::constant(TypeKind::Unit1), l, lb);
        auto t = u ? coSyn(a, r, b - 1 - lb) : nullptr;
        return t ? mk(RawKind::LetUnit, {u, t}) : nullptr;
      });
    if (b >= 3)
      options.push_back([&, a] {
        const Type l = pick(Polarity::Unpolarised), r = pick(Polarity::Unpolarised);
        auto [lo, ro] = split(o);
        const std::string x = freshName('x'), y = freshName('x');
        const int lb = 1 + below(b - 2);
        auto s = coChk(Type::binary(TypeKind::Prod, l, r), lo, lb);
        auto t = s ? coSyn(a, with(with(ro, {x, VarClass::Lambda, l}), {y, VarClass::Lambda, r}),
                           b - 1 - lb)
                   : nullptr;
        return t ? mk(RawKind::LetPair, {s, t}, {x, y}) : nullptr;
      });
    return tryOptions(options, b);
  }

  // -- plumbing -------------------------------------------------------------

  // Leaves are set aside while budget remains, so terms grow towards the
  // bound; a set-aside leaf is rebuilt only when nothing larger fits.
  RawPtr tryOptions(std::vector<std::function<RawPtr()>>& options, int b) {
    std::function<RawPtr()> leaf;
    while (!options.empty()) {
      const int i = below(static_cast<int>(options.size()));
      const auto mark = ctx_.size();
      auto t = options[i]();
      if (t && !(b >= 3 && !leaf && options.size() > 1 && surface::termSize(*t) <= 1 && chance(0.85)))
        return t;
      ctx_.resize(mark);
      if (t) leaf = options[i];
      options.erase(options.begin() + i);
    }
    return leaf ? leaf() : nullptr;
  }


  // Replaces one type in the directive with another of the same polarity.
  void perturb(Directive& d) {
    std::vector<Type*> slots;
    for (auto& e : d.ctx)
      if (e.type) slots.push_back(&*e.type);
    if (d.type) slots.push_back(&*d.type);
    collectAnnotations(*d.term, slots);
    if (slots.empty()) return;
    Type* t = slots[below(static_cast<int>(slots.size()))];
    const bool saved = dual_;
    dual_ = false;
    *t = pick(polarityOf(*t));
    dual_ = saved;
  }

  static void collectAnnotations(RawTerm& t, std::vector<Type*>& out) {
    if (t.annot) out.push_back(&*t.annot);
    for (auto& k : t.kids) collectAnnotations(*k, out);
  }

  const CorpusSpec& spec_;
  std::mt19937_64 rng_;
  std::vector<Type> pools_[3];
  std::vector<surface::CtxEntry> ctx_;
  int fresh_ = 0;
  std::vector<std::pair<std::string, Type>> invented_;
  bool dual_ = false;
  int branchDepth_ = 0;
};

}  // namespace

std::vector<Directive> generateCorpus(const CorpusSpec& spec) {
  Generator g(spec);
  std::vector<Directive> out;
  // Bounded retries keep generation total when the size bound admits few terms.
  for (int tries = 0; static_cast<int>(out.size()) < spec.count && tries < spec.count * 50; ++tries)
    if (auto d = g.directive(); d && static_cast<int>(surface::termSize(*d->term)) <= std::max(1, spec.sizeBound))
      out.push_back(std::move(*d));
  return out;
}

}  // namespace polcheck::oracle
