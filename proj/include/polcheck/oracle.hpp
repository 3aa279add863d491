#pragma once

// Declarative typing oracle by exhaustive search over a finite type
// universe, and deterministic corpus generators.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polcheck/scope.hpp"
#include "polcheck/verdict.hpp"

namespace polcheck::oracle {

/// Finite universe of types: the connectives of a calculus applied up to a
/// fixed depth over a set of atoms.
struct TypeUniverse {
  surface::AtomTable atoms;
  int depth = 0;
  scope::Calculus calculus = scope::Calculus::Pol;
};

/// All types of polarity `pol` (Unpolarised for λ) up to the universe depth,
/// shallower types first, duplicate-free, in a fixed order.
std::vector<Type> enumerateTypes(const TypeUniverse& u, Polarity pol);

/// Membership in the universe, without enumerating it.
bool inUniverse(const Type& t, const TypeUniverse& u);

/// The smallest universe of at least `minDepth` holding every type written in
/// the query.
TypeUniverse universeFor(const scope::ScopedQuery& q, surface::AtomTable atoms, int minDepth = 1);

/// A derivable judgement: `type` for synthesis queries, `ctx` for queries
/// whose context is an output (cocontextual λ and System L).
struct Judgement {
  std::optional<Type> type;
  TypedCtx ctx;

  friend bool operator==(const Judgement&, const Judgement&) = default;
};

struct AnnotationSite {
  surface::Loc loc;
  Type annotation;
};

struct Derivations {
  std::vector<Judgement> judgements;
  std::vector<AnnotationSite> annotations;  // every annotation the search met
};

/// Every judgement derivable for the query by the undirected rules. Types at
/// annotation sites range over the universe and are then intersected with the
/// written annotation. With `fixRootType` unset, a checked query's own type is
/// also drawn from the universe and reported in `Judgement::type`.
Derivations deriveAll(const scope::ScopedQuery& q, const TypeUniverse& u,
                      bool fixRootType = true);

/// Whether a checker verdict is consistent with the oracle: success must be a
/// member of `all`; failure must coincide with `all` being empty.
bool agree(const Verdict& v, const Derivations& all, const scope::ScopedQuery& q);

/// Deterministic pseudo-random well-scoped directives of the given query kind.
/// Generation is type-directed, so most directives check; `noise` is the
/// share perturbed afterwards (a context type, annotation or query type
/// replaced) to exercise failures. Terms stay within `sizeBound` AST nodes;
/// a bound of 0 yields variables only.
struct CorpusSpec {
  std::uint64_t seed = 1;
  int sizeBound = 8;
  surface::QueryKind kind = surface::QueryKind::Command;
  scope::Calculus calculus = scope::Calculus::Pol;
  StructConfig cfg;
  int count = 100;
  int typeDepth = 1;  // depth of generated context, cut and annotation types
  double noise = 0.2;
  bool annotationFree = false;  // avoid the annotated constructs entirely
};

/// Atom declarations used by generated programs.
std::string corpusPrelude(scope::Calculus c);
surface::AtomTable corpusAtoms(scope::Calculus c);

std::vector<surface::Directive> generateCorpus(const CorpusSpec& spec);

/// One directive per line, preceded by the atom prelude.
std::string renderCorpus(const std::vector<surface::Directive>& ds, scope::Calculus c);

/// One disagreement between checker and oracle.
struct Counterexample {
  std::string directive;  // printed, re-parsable
  std::string checker;    // verdict summary
  std::string oracle;     // judgement-set summary
};

struct AgreementReport {
  int generated = 0;
  int elaborated = 0;  // the rest were rejected by scope and are not compared
  int checkerOk = 0;
  int agreed = 0;
  std::vector<Counterexample> mismatches;
};

/// Generates a corpus and compares every elaborable directive's verdict with
/// `deriveAll` over the smallest universe of depth at least `minDepth`
/// holding the directive's types.
AgreementReport runAgreement(const CorpusSpec& spec, int minDepth = 2);

/// The query kinds a calculus admits, commands first for System L.
std::vector<surface::QueryKind> kindsOf(scope::Calculus c);

}  // namespace polcheck::oracle
