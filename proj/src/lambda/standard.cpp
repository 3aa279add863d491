#include <unordered_map>

#include "polcheck/lambda.hpp"

namespace polcheck::lambda {

using scope::Form;
using scope::Node;
using surface::RawKind;

namespace {

std::string quote(const Type& t) { return "'" + printType(t) + "'"; }

class Standard {
 public:
  explicit Standard(const TypedCtx& ctx) {
    for (std::size_t i = 0; i < ctx.size(); ++i) env_[static_cast<int>(i)] = ctx[i].type;
  }

  void check(const Node& n, const Type& want) {
    const auto& k = n.kids;
    if (n.form == Form::Emb) {
      Type found = synth(*k[0]);
      if (!subtype(want, found))
        fail("mismatch", "expected " + quote(want) + " but found " + quote(found), n);
      return;
    }
    switch (n.kind) {
      case RawKind::Lam:
        if (want.kind() != TypeKind::Arrow)
          fail("not-a-function", "a λ-abstraction cannot have type " + quote(want), n);
        env_[n.binders[0].id] = want.lhs();
        check(*k[0], want.rhs());
        return;
      case RawKind::Unit:
        if (want.kind() != TypeKind::Unit1)
          fail("mismatch", "() has type 1, not " + quote(want), n);
        return;
      case RawKind::Pair:
        if (want.kind() != TypeKind::Prod)
          fail("mismatch", "a pair cannot have type " + quote(want), n);
        check(*k[0], want.lhs());
        check(*k[1], want.rhs());
        return;
      case RawKind::Inl:
      case RawKind::Inr:
        if (want.kind() != TypeKind::Sum)
          fail("mismatch", "an injection cannot have type " + quote(want), n);
        check(*k[0], n.kind == RawKind::Inl ? want.lhs() : want.rhs());
        return;
      case RawKind::Absurd:
        check(*k[0], Type::constant(TypeKind::Zero0));
        return;
      case RawKind::Case: {
        Type scrut = synth(*k[0]);
        if (scrut.kind() != TypeKind::Sum)
          fail("not-a-sum", "case analysis of a term of type " + quote(scrut), *k[0]);
        for (int i = 0; i < 2; ++i) {
          const Node& br = *k[i + 1];
          env_[br.binders[0].id] = i == 0 ? scrut.lhs() : scrut.rhs();
          check(*br.kids[0], want);
        }
        return;
      }
      default:
        fail("mode-error", "not a checkable term", n);
    }
  }

  Type synth(const Node& n) {
    const auto& k = n.kids;
    switch (n.kind) {
      case RawKind::Var: {
        auto it = env_.find(n.varId);
        if (it == env_.end()) fail("unbound-variable", "no type for '" + n.name + "'", n);
        return it->second;
      }
      case RawKind::App: {
        Type f = synth(*k[0]);
        if (f.kind() != TypeKind::Arrow)
          fail("not-a-function", "applying a term of type " + quote(f), *k[0]);
        check(*k[1], f.lhs());
        return f.rhs();
      }
      case RawKind::Annot:
        check(*k[0], *n.annot);
        return *n.annot;
      case RawKind::Proj1:
      case RawKind::Proj2: {
        Type p = synth(*k[0]);
        if (p.kind() != TypeKind::Prod)
          fail("not-a-product", "projecting from a term of type " + quote(p), *k[0]);
        return n.kind == RawKind::Proj1 ? p.lhs() : p.rhs();
      }
      default:
        fail("mode-error", "not a synthesisable term", n);
    }
  }

 private:
  [[noreturn]] static void fail(const char* code, const std::string& msg, const Node& n) {
    throw TypeError(code, msg, n.loc);
  }

  std::unordered_map<int, Type> env_;
};

}  // namespace

Verdict checkStandard(const TypedCtx& ctx, const Type& ty, const Node& t) {
  try {
    Standard(ctx).check(t, ty);
    return {};
  } catch (const TypeError& e) {
    return Verdict::failure(e);
  }
}

Verdict synthStandard(const TypedCtx& ctx, const Node& t) {
  try {
    return {Standard(ctx).synth(t), std::nullopt, std::nullopt};
  } catch (const TypeError& e) {
    return Verdict::failure(e);
  }
}

}  // namespace polcheck::lambda
