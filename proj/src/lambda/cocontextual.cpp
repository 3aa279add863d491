#include "polcheck/lambda.hpp"

namespace polcheck::lambda {

using scope::Form;
using scope::Node;
using surface::RawKind;

namespace {

std::string quote(const Type& t) { return "'" + printType(t) + "'"; }

[[noreturn]] void fail(const char* code, const std::string& msg, const Node& n) {
  throw TypeError(code, msg, n.loc);
}

struct Synth {
  Type type;
  TypedCtx ctx;
};

class Cocontextual {
 public:
  Cocontextual(const StructConfig& cfg, bool linear) : cfg_(cfg), linear_(linear) {}

  TypedCtx check(const Node& n, const Type& want) {
    const auto& k = n.kids;
    if (n.form == Form::Emb) {
      Synth s = synth(*k[0]);
      if (!subtype(want, s.type))
        fail("mismatch", "expected " + quote(want) + " but found " + quote(s.type), n);
      return s.ctx;
    }
    switch (n.kind) {
      case RawKind::Var:
        return {{n.name, VarClass::Lambda, want}};
      case RawKind::App: {
        Synth arg = synth(*k[1]);
        TypedCtx fun = check(*k[0], Type::binary(arrow(), arg.type, want));
        return merge(n, fun, arg.ctx);
      }
      default:
        fail("mode-error", "not a checkable term", n);
    }
  }

  Synth synth(const Node& n) {
    const auto& k = n.kids;
    switch (n.kind) {
      case RawKind::Lam: {
        Synth body = synth(*k[0]);
        auto [bound, rest] = unbind(n, *k[0], body.ctx);
        return {Type::binary(arrow(), bound[0], body.type), std::move(rest)};
      }
      case RawKind::Annot:
        return {*n.annot, check(*k[0], *n.annot)};
      case RawKind::Unit:
        return {Type::constant(TypeKind::Unit1), {}};
      case RawKind::Pair: {
        Synth a = synth(*k[0]);
        Synth b = synth(*k[1]);
        return {Type::binary(TypeKind::Prod, a.type, b.type), merge(n, a.ctx, b.ctx)};
      }
      case RawKind::LetUnit: {
        TypedCtx unit = check(*k[0], Type::constant(TypeKind::Unit1));
        Synth body = synth(*k[1]);
        return {body.type, merge(n, unit, body.ctx)};
      }
      case RawKind::LetPair: {
        const Node& br = *k[1];
        Synth body = synth(*br.kids[0]);
        auto [bound, rest] = unbind(br, *br.kids[0], body.ctx);
        TypedCtx scrut = check(*k[0], Type::binary(TypeKind::Prod, bound[0], bound[1]));
        return {body.type, merge(n, scrut, rest)};
      }
      default:
        fail("mode-error", "not a synthesisable term", n);
    }
  }

 private:
  TypeKind arrow() const { return linear_ ? TypeKind::Lolli : TypeKind::Arrow; }

  TypedCtx merge(const Node& n, const TypedCtx& l, const TypedCtx& r) {
    if (!isLegal(*n.cover, n.scope, cfg_))
      fail("structural-violation", "cover shares a variable under a linear preset", n);
    auto m = mergeTyped(*n.cover, l, r);
    if (!m.ok())
      fail("merge-conflict",
           "'" + m.conflict->name + "' is used at " + quote(m.conflict->left) + " and at " +
               quote(m.conflict->right),
           n);
    return std::move(*m.ctx);
  }

  // Splits a body context into the binders' types (⊤ where the thinning
  // drops) and the remainder, which is aligned with the binder node's scope.
  std::pair<std::vector<Type>, TypedCtx> unbind(const Node& n, const Node& body,
                                                const TypedCtx& ctx) {
    std::vector<Type> bound;
    std::vector<bool> taken(ctx.size(), false);
    for (std::size_t b = 0; b < n.binders.size(); ++b) {
      if ((*n.thinning)[b] == ThinStep::Drop) {
        if (!cfg_.structural(VarClass::Lambda))
          fail("structural-violation", "'" + n.binders[b].name + "' is discarded", n);
        bound.push_back(Type::constant(TypeKind::Top));
        continue;
      }
      for (std::size_t i = 0; i < body.scope.size(); ++i)
        if (body.scope[i].id == n.binders[b].id) {
          bound.push_back(ctx[i].type);
          taken[i] = true;
        }
    }
    TypedCtx rest;
    for (std::size_t i = 0; i < ctx.size(); ++i)
      if (!taken[i]) rest.push_back(ctx[i]);
    return {std::move(bound), std::move(rest)};
  }

  StructConfig cfg_;
  bool linear_;
};

}  // namespace

Verdict checkCocontextual(const ScopedCtx& scoped, const Type& ty, const Node& t,
                          const StructConfig& cfg, bool linear) {
  try {
    TypedCtx ctx = Cocontextual(cfg, linear).check(t, ty);
    if (erase(ctx) != scoped) throw std::logic_error("synthesised context lost its scope");
    return {std::nullopt, std::move(ctx), std::nullopt};
  } catch (const TypeError& e) {
    return Verdict::failure(e);
  }
}

Verdict synthCocontextual(const ScopedCtx& scoped, const Node& t, const StructConfig& cfg,
                          bool linear) {
  try {
    auto s = Cocontextual(cfg, linear).synth(t);
    if (erase(s.ctx) != scoped) throw std::logic_error("synthesised context lost its scope");
    return {std::move(s.type), std::move(s.ctx), std::nullopt};
  } catch (const TypeError& e) {
    return Verdict::failure(e);
  }
}

}  // namespace polcheck::lambda
