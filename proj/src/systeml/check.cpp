#include "polcheck/systeml.hpp"

namespace polcheck::systeml {

using scope::Form;
using scope::Node;
using surface::RawKind;

RuleCounters& ruleCounters() {
  thread_local RuleCounters counters;
  return counters;
}

ScopedCtx synthesisable(const ScopedCtx& s) {
  ScopedCtx out;
  for (const auto& e : s)
    if (isSynthesisable(e.cls)) out.push_back(e);
  return out;
}

namespace {

std::string quote(const Type& t) { return "'" + printType(t) + "'"; }

[[noreturn]] void fail(const char* code, const std::string& msg, const Node& n) {
  throw TypeError(code, msg, n.loc);
}

struct Synth {
  Type type;
  TypedCtx ctx;
};

class Checker {
 public:
  Checker(const CheckableEnv& x, const StructConfig& cfg) : env_(x), cfg_(cfg) {}

  TypedCtx expr(const Node& n, const Type& want) {
    const auto& k = n.kids;
    switch (n.kind) {
      case RawKind::Var:
        return {{n.name, n.varClass, want}};
      case RawKind::MuPlus:
        env_[n.binders[0].id] = want;
        return command(*k[0]);
      case RawKind::UnitI:
        expect(n, want, TypeKind::I, "()");
        return {};
      case RawKind::Tuple: {
        expect(n, want, TypeKind::Tensor, "a tuple");
        TypedCtx l = expr(*k[0], want.lhs());
        TypedCtx r = expr(*k[1], want.rhs());
        return merge(n, l, r);
      }
      case RawKind::InlE:
      case RawKind::InrE:
        expect(n, want, TypeKind::Plus, "an injection");
        return expr(*k[0], n.kind == RawKind::InlE ? want.lhs() : want.rhs());
      case RawKind::SimIntro:
        expect(n, want, TypeKind::SimNeg, "a ~-introduction");
        return coexpr(*k[0], want.inner());
      case RawKind::DownIntro: {
        expect(n, want, TypeKind::DownShift, "a down-introduction");
        Synth s = copattern(*k[0]);
        requireSubtype(n, want.inner(), s.type);
        return s.ctx;
      }
      case RawKind::MatchDDown: {
        gate(n, cfg_.allowDDown, "Down");
        expect(n, want, TypeKind::DDown, "a Down-match");
        TypedCtx body = command(*k[0]);
        auto [bound, rest] = unbind(n, *k[0], body);
        requireSubtype(n, want.inner(), bound[0]);
        return rest;
      }
      default:
        fail("mode-error", "not an expression", n);
    }
  }

  Synth pattern(const Node& n) {
    const auto& k = n.kids;
    switch (n.kind) {
      case RawKind::Var:
        return {lookup(n), {}};
      case RawKind::MutPlus: {
        TypedCtx body = command(*k[0]);
        auto [bound, rest] = unbind(n, *k[0], body);
        return {bound[0], rest};
      }
      case RawKind::MatchUnit:
        return {Type::constant(TypeKind::I), command(*k[0])};
      case RawKind::MatchPair: {
        TypedCtx body = command(*k[0]);
        auto [bound, rest] = unbind(n, *k[0], body);
        return {Type::binary(TypeKind::Tensor, bound[0], bound[1]), rest};
      }
      case RawKind::MatchSum: {
        auto [l, r, ctx] = branches(n);
        return {Type::binary(TypeKind::Plus, l, r), ctx};
      }
      case RawKind::MatchEmpty:
        return {Type::constant(TypeKind::ZeroP), {}};
      case RawKind::MatchSim: {
        TypedCtx body = command(*k[0]);
        auto [bound, rest] = unbind(n, *k[0], body);
        return {Type::unary(TypeKind::SimNeg, bound[0]), rest};
      }
      case RawKind::MatchDown: {
        Type a = annotation(n);
        env_[n.binders[0].id] = a;
        return {Type::unary(TypeKind::DownShift, a), command(*k[0])};
      }
      case RawKind::DDownIntro: {
        gate(n, cfg_.allowDDown, "Down");
        Type a = annotation(n);
        return {Type::unary(TypeKind::DDown, a), coexpr(*k[0], a)};
      }
      default:
        fail("mode-error", "not a pattern", n);
    }
  }

  Synth copattern(const Node& n) {
    const auto& k = n.kids;
    switch (n.kind) {
      case RawKind::Var:
        return {lookup(n), {}};
      case RawKind::MuMinus: {
        TypedCtx body = command(*k[0]);
        auto [bound, rest] = unbind(n, *k[0], body);
        return {bound[0], rest};
      }
      case RawKind::ComatchBot:
        return {Type::constant(TypeKind::Bot), command(*k[0])};
      case RawKind::ComatchPar: {
        TypedCtx body = command(*k[0]);
        auto [bound, rest] = unbind(n, *k[0], body);
        return {Type::binary(TypeKind::Par, bound[0], bound[1]), rest};
      }
      case RawKind::ComatchWith: {
        auto [l, r, ctx] = branches(n);
        return {Type::binary(TypeKind::With, l, r), ctx};
      }
      case RawKind::ComatchEmpty:
        return {Type::constant(TypeKind::One1), {}};
      case RawKind::ComatchNot: {
        TypedCtx body = command(*k[0]);
        auto [bound, rest] = unbind(n, *k[0], body);
        return {Type::unary(TypeKind::NotNeg, bound[0]), rest};
      }
      case RawKind::ComatchUp: {
        Type a = annotation(n);
        env_[n.binders[0].id] = a;
        return {Type::unary(TypeKind::UpShift, a), command(*k[0])};
      }
      case RawKind::UUpIntro: {
        gate(n, cfg_.allowUUp, "Up");
        Type a = annotation(n);
        return {Type::unary(TypeKind::UUp, a), expr(*k[0], a)};
      }
      default:
        fail("mode-error", "not a copattern", n);
    }
  }

  TypedCtx coexpr(const Node& n, const Type& want) {
    const auto& k = n.kids;
    switch (n.kind) {
      case RawKind::Var:
        return {{n.name, n.varClass, want}};
      case RawKind::MutMinus:
        env_[n.binders[0].id] = want;
        return command(*k[0]);
      case RawKind::CounitBot:
        expect(n, want, TypeKind::Bot, "[]");
        return {};
      case RawKind::Cotuple: {
        expect(n, want, TypeKind::Par, "a cotuple");
        TypedCtx l = coexpr(*k[0], want.lhs());
        TypedCtx r = coexpr(*k[1], want.rhs());
        return merge(n, l, r);
      }
      case RawKind::Pi1E:
      case RawKind::Pi2E:
        expect(n, want, TypeKind::With, "a projection");
        return coexpr(*k[0], n.kind == RawKind::Pi1E ? want.lhs() : want.rhs());
      case RawKind::NotCointro:
        expect(n, want, TypeKind::NotNeg, "a not-cointroduction");
        return expr(*k[0], want.inner());
      case RawKind::UpCointro: {
        expect(n, want, TypeKind::UpShift, "an up-cointroduction");
        Synth s = pattern(*k[0]);
        requireSubtype(n, s.type, want.inner());
        return s.ctx;
      }
      case RawKind::ComatchUUp: {
        gate(n, cfg_.allowUUp, "Up");
        expect(n, want, TypeKind::UUp, "an Up-comatch");
        TypedCtx body = command(*k[0]);
        auto [bound, rest] = unbind(n, *k[0], body);
        requireSubtype(n, bound[0], want.inner());
        return rest;
      }
      default:
        fail("mode-error", "not a coexpression", n);
    }
  }

  TypedCtx command(const Node& n) {
    if (n.kind != RawKind::Cut) fail("mode-error", "not a command", n);
    const Node& l = *n.kids[0];
    const Node& r = *n.kids[1];
    TypedCtx left, right;
    if (n.cutPolarity == Polarity::Positive) {
      Synth p = pattern(r);
      left = expr(l, p.type);
      right = std::move(p.ctx);
    } else {
      Synth p = copattern(r);
      left = coexpr(l, p.type);
      right = std::move(p.ctx);
    }
    return merge(n, left, right);
  }

 private:
  static void expect(const Node& n, const Type& want, TypeKind k, const char* what) {
    if (want.kind() != k)
      fail("mismatch", std::string(what) + " cannot have type " + quote(want), n);
  }

  void gate(const Node& n, bool allowed, const char* conn) const {
    if (!allowed)
      fail("preset-violation",
           std::string("the ") + conn + " connective needs an LNL preset that enables it (preset " +
               presetName(cfg_.preset) + ")",
           n);
  }

  Type annotation(const Node& n) {
    ++ruleCounters().annotationReads[static_cast<std::size_t>(n.kind)];
    return *n.annot;
  }

  void requireSubtype(const Node& n, const Type& a, const Type& b) {
    auto& c = ruleCounters();
    ++c.subtypeChecks;
    if (a != b) ++c.unequalSubtypeChecks;
    if (!subtype(a, b))
      fail("subtype-failure", quote(a) + " is not a subtype of " + quote(b), n);
  }

  Type lookup(const Node& n) const {
    auto it = env_.find(n.varId);
    if (it == env_.end()) fail("unbound-variable", "no type for '" + n.name + "'", n);
    return it->second;
  }

  TypedCtx merge(const Node& n, const TypedCtx& l, const TypedCtx& r) {
    Cover c = scope::restrictCover(*n.cover, n.scope,
                                   [](const ScopedEntry& e) { return isSynthesisable(e.cls); });
    auto m = mergeTyped(c, l, r);
    if (!m.ok())
      fail("merge-conflict",
           "'" + m.conflict->name + "' is used at " + quote(m.conflict->left) + " and at " +
               quote(m.conflict->right),
           n);
    return std::move(*m.ctx);
  }

  // Takes the synthesisable binders of `n` out of the body's Σ; a binder the
  // thinning drops is typed with the top of its polarity.
  std::pair<std::vector<Type>, TypedCtx> unbind(const Node& n, const Node& body,
                                                const TypedCtx& ctx) {
    ScopedCtx bodySigma = synthesisable(body.scope);
    std::vector<Type> bound;
    std::vector<bool> taken(ctx.size(), false);
    for (std::size_t b = 0; b < n.binders.size(); ++b) {
      const auto& binder = n.binders[b];
      if ((*n.thinning)[b] == ThinStep::Drop) {
        if (!cfg_.structural(binder.cls))
          fail("structural-violation", "'" + binder.name + "' is discarded", n);
        bound.push_back(Type::topOf(polarityOf(binder.cls)));
        continue;
      }
      for (std::size_t i = 0; i < bodySigma.size(); ++i)
        if (bodySigma[i].id == binder.id) {
          bound.push_back(ctx[i].type);
          taken[i] = true;
        }
    }
    TypedCtx rest;
    for (std::size_t i = 0; i < ctx.size(); ++i)
      if (!taken[i]) rest.push_back(ctx[i]);
    return {std::move(bound), std::move(rest)};
  }

  // Two-branch (co)match: each branch binds one variable; Σ is shared and
  // combined pointwise by meet.
  std::tuple<Type, Type, TypedCtx> branches(const Node& n) {
    std::vector<Type> types;
    std::vector<TypedCtx> ctxs;
    for (const auto& br : n.kids) {
      TypedCtx body = command(*br->kids[0]);
      auto [bound, rest] = unbind(*br, *br->kids[0], body);
      types.push_back(bound[0]);
      ctxs.push_back(std::move(rest));
    }
    return {types[0], types[1], merge(n, ctxs[0], ctxs[1])};
  }

  CheckableEnv env_;
  StructConfig cfg_;
};

Verdict fromCtx(TypedCtx ctx) { return {std::nullopt, std::move(ctx), std::nullopt}; }
Verdict fromSynth(Synth s) { return {std::move(s.type), std::move(s.ctx), std::nullopt}; }

template <class F>
Verdict guarded(F&& f) {
  try {
    return f();
  } catch (const TypeError& e) {
    return Verdict::failure(e);
  }
}

}  // namespace

Verdict checkExpr(const CheckableEnv& x, const Type& ty, const Node& e, const StructConfig& cfg) {
  return guarded([&] { return fromCtx(Checker(x, cfg).expr(e, ty)); });
}

Verdict synthPattern(const CheckableEnv& x, const Node& p, const StructConfig& cfg) {
  return guarded([&] { return fromSynth(Checker(x, cfg).pattern(p)); });
}

Verdict synthCopattern(const CheckableEnv& x, const Node& p, const StructConfig& cfg) {
  return guarded([&] { return fromSynth(Checker(x, cfg).copattern(p)); });
}

Verdict checkCoexpr(const CheckableEnv& x, const Type& ty, const Node& e,
                    const StructConfig& cfg) {
  return guarded([&] { return fromCtx(Checker(x, cfg).coexpr(e, ty)); });
}

Verdict checkCommand(const CheckableEnv& x, const Node& c, const StructConfig& cfg) {
  return guarded([&] { return fromCtx(Checker(x, cfg).command(c)); });
}

}  // namespace polcheck::systeml
