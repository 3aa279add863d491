#pragma once

// Type language, contexts, covers, thinnings and the order-theoretic
// operations shared by every checker.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polcheck {

enum class Polarity { Positive, Negative, Unpolarised };

const char* polarityName(Polarity p);

enum class TypeKind : std::uint8_t {
  // λ-calculus family
  LAtom,
  Unit1,
  Zero0,
  Arrow,
  Lolli,
  Prod,
  Sum,
  Top,
  // System L, positive
  PAtom,
  I,
  Tensor,
  ZeroP,
  Plus,
  SimNeg,
  DownShift,
  DDown,
  TopPos,
  // System L, negative
  NAtom,
  Bot,
  Par,
  One1,
  With,
  NotNeg,
  UpShift,
  UUp,
  TopNeg,
};

enum class Family { Lambda, SystemL };

int arity(TypeKind k);
Family familyOf(TypeKind k);
bool isTopKind(TypeKind k);
bool isAtomKind(TypeKind k);

/// Immutable, structurally compared type expression. Copies share nodes.
class Type {
 public:
  Type() = default;

  static Type atom(std::string name, Polarity pol);
  static Type constant(TypeKind k);
  static Type unary(TypeKind k, Type inner);
  static Type binary(TypeKind k, Type l, Type r);
  static Type topOf(Polarity pol);

  bool valid() const { return node_ != nullptr; }
  TypeKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const Type& lhs() const { return node_->kids[0]; }
  const Type& rhs() const { return node_->kids[1]; }
  const Type& inner() const { return node_->kids[0]; }
  std::size_t hash() const { return node_->hash; }
  int depth() const { return node_->depth; }
  bool containsTop() const { return node_->hasTop; }

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }
  friend bool operator<(const Type& a, const Type& b);

 private:
  struct Node {
    TypeKind kind;
    std::string name;
    std::vector<Type> kids;
    std::size_t hash = 0;
    int depth = 0;
    bool hasTop = false;
  };
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Type make(TypeKind k, std::string name, std::vector<Type> kids);

  std::shared_ptr<const Node> node_;
};

struct TypeHash {
  std::size_t operator()(const Type& t) const { return t.hash(); }
};

Polarity polarityOf(const Type& t);
Family familyOf(const Type& t);

/// Checks the polarity discipline of every subterm; throws std::invalid_argument.
void validatePolarity(const Type& t);

/// Printed form; binary and unary operands that are not nullary are
/// parenthesised, so the output re-parses to the same tree.
std::string printType(const Type& t);

class IllFormedQuery : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thread-local instrumentation for meet/join. Counters are per thread so the
/// operations stay safe to call concurrently.
struct OrderCounters {
  std::uint64_t meetCalls = 0;
  std::uint64_t meetTopContaining = 0;  // some argument contains a top anywhere
  std::uint64_t meetTopArgument = 0;    // some argument is itself a top
};
OrderCounters& orderCounters();

bool subtype(const Type& a, const Type& b);
std::optional<Type> meet(const Type& a, const Type& b);
std::optional<Type> join(const Type& a, const Type& b);

// ---------------------------------------------------------------------------
// Contexts

/// Which context a variable lives in. `Lambda` is the single context of the
/// λ-calculi; the four System L classes pair polarity with the logical side.
/// Γ⁺ and Δ⁻ are synthesisable (Σ); Γ⁻ and Δ⁺ are checkable (X).
enum class VarClass : std::uint8_t { Lambda, GammaPos, DeltaPos, GammaNeg, DeltaNeg };

Polarity polarityOf(VarClass c);
bool isSynthesisable(VarClass c);
const char* varClassName(VarClass c);

struct ScopedEntry {
  std::string name;
  VarClass cls = VarClass::Lambda;
  int id = -1;  // binding identity assigned by scope elaboration

  Polarity polarity() const { return polarityOf(cls); }
  friend bool operator==(const ScopedEntry& a, const ScopedEntry& b) {
    return a.name == b.name && a.cls == b.cls;
  }
};

using ScopedCtx = std::vector<ScopedEntry>;

struct TypedEntry {
  std::string name;
  VarClass cls = VarClass::Lambda;
  Type type;

  Polarity polarity() const { return polarityOf(cls); }
  friend bool operator==(const TypedEntry& a, const TypedEntry& b) {
    return a.name == b.name && a.cls == b.cls && a.type == b.type;
  }
};

using TypedCtx = std::vector<TypedEntry>;

ScopedCtx erase(const TypedCtx& ctx);
std::string printTypedCtx(const TypedCtx& ctx);
std::string printScopedCtx(const ScopedCtx& ctx);

// ---------------------------------------------------------------------------
// Covers and thinnings

enum class CoverStep : std::uint8_t { Left, Right, Both };
enum class ThinStep : std::uint8_t { Keep, Drop };

using Cover = std::vector<CoverStep>;
using Thinning = std::vector<ThinStep>;

std::string printCover(const Cover& c);
std::string printThinning(const Thinning& t);

class ArityMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::pair<ScopedCtx, ScopedCtx> splitScoped(const Cover& c, const ScopedCtx& g3);

/// Same as splitScoped, for the checkable (typed, input) side.
std::pair<TypedCtx, TypedCtx> splitTyped(const Cover& c, const TypedCtx& g3);

struct MergeConflict {
  std::string name;
  Type left;
  Type right;
};

struct MergeResult {
  std::optional<TypedCtx> ctx;
  std::optional<MergeConflict> conflict;

  bool ok() const { return ctx.has_value(); }
};

MergeResult mergeTyped(const Cover& c, const TypedCtx& g1, const TypedCtx& g2);

ScopedCtx restrictScoped(const Thinning& t, const ScopedCtx& g2);
TypedCtx restrictTyped(const Thinning& t, const TypedCtx& g2);
TypedCtx extendTyped(const Thinning& t, const TypedCtx& g1, const ScopedCtx& target);

// ---------------------------------------------------------------------------
// Structural configuration

enum class Preset { Linear, Cartesian, LnlBang, LnlFull };

struct StructConfig {
  Preset preset = Preset::Linear;
  bool lambdaCartesian = false;
  bool gammaPos = false;
  bool deltaPos = false;
  bool gammaNeg = false;
  bool deltaNeg = false;
  bool allowUUp = false;    // ⇑ connective and its rules
  bool allowDDown = false;  // ⇓ connective and its rules

  static StructConfig of(Preset p);
  static StructConfig linear() { return of(Preset::Linear); }
  static StructConfig cartesian() { return of(Preset::Cartesian); }

  /// Whether weakening/contraction is available for variables of `cls`.
  bool structural(VarClass cls) const;
};

const char* presetName(Preset p);
std::optional<Preset> presetFromName(const std::string& s);

bool isLegal(const Cover& c, const ScopedCtx& g3, const StructConfig& cfg);
bool isLegal(const Thinning& t, const ScopedCtx& g2, const StructConfig& cfg);

}  // namespace polcheck
