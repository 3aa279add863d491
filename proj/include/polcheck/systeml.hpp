#pragma once

// Bicontextual checker for polarised System L and System LNL, and the
// syntactic dualizer.

#include <array>
#include <unordered_map>

#include "polcheck/scope.hpp"
#include "polcheck/verdict.hpp"

namespace polcheck::systeml {

/// Types of the checkable-side variables (Δ+ and Γ-), keyed by binding id.
using CheckableEnv = std::unordered_map<int, Type>;

/// Instrumentation, per thread. `annotationReads` is indexed by RawKind.
struct RuleCounters {
  std::array<std::uint64_t, 64> annotationReads{};
  std::uint64_t subtypeChecks = 0;
  std::uint64_t unequalSubtypeChecks = 0;  // subtype checks between distinct types
};
RuleCounters& ruleCounters();

// Each returns a Verdict whose `ctx` is the synthesised Σ, aligned with the
// synthesisable part of the node's scope; pattern and copattern verdicts
// also carry the synthesised type.
Verdict checkExpr(const CheckableEnv& x, const Type& ty, const scope::Node& e,
                  const StructConfig& cfg);
Verdict synthPattern(const CheckableEnv& x, const scope::Node& p, const StructConfig& cfg);
Verdict synthCopattern(const CheckableEnv& x, const scope::Node& p, const StructConfig& cfg);
Verdict checkCoexpr(const CheckableEnv& x, const Type& ty, const scope::Node& e,
                    const StructConfig& cfg);
Verdict checkCommand(const CheckableEnv& x, const scope::Node& c, const StructConfig& cfg);

/// The synthesisable entries of a scoped context, in order.
ScopedCtx synthesisable(const ScopedCtx& s);

// Dualizer: an involution on System L types, terms and directives.
Type dualize(const Type& t);
surface::RawPtr dualize(const surface::RawTerm& t);
surface::Directive dualize(const surface::Directive& d);
surface::Program dualize(const surface::Program& p);
/// Dual of a variable class: Γ+ ↔ Δ-, Δ+ ↔ Γ-.
VarClass dualize(VarClass c);

}  // namespace polcheck::systeml
