#pragma once

// Bidirectional checkers for the three λ-calculi: standard (contextual),
// cocontextual linear and cocontextual co-de Bruijn.

#include "polcheck/scope.hpp"
#include "polcheck/verdict.hpp"

namespace polcheck::lambda {

/// `ctx` lists the directive entries in order; entry i is binding id i.
Verdict checkStandard(const TypedCtx& ctx, const Type& ty, const scope::Node& t);
Verdict synthStandard(const TypedCtx& ctx, const scope::Node& t);

/// `scoped` is the root scope of `t`; the returned context is aligned with
/// it. `linear` selects ⊸ (lin) over → (cdb) for function types.
Verdict checkCocontextual(const ScopedCtx& scoped, const Type& ty, const scope::Node& t,
                          const StructConfig& cfg, bool linear);
Verdict synthCocontextual(const ScopedCtx& scoped, const scope::Node& t, const StructConfig& cfg,
                          bool linear);

}  // namespace polcheck::lambda
