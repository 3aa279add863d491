#include "polcheck/kernel.hpp"

namespace polcheck {

OrderCounters& orderCounters() {
  thread_local OrderCounters counters;
  return counters;
}

namespace {

void requireComparable(const Type& a, const Type& b, const char* op) {
  if (familyOf(a) != familyOf(b) || polarityOf(a) != polarityOf(b))
    throw IllFormedQuery(std::string(op) + ": cannot compare " + printType(a) + " with " +
                         printType(b));
}

bool contravariantLeft(TypeKind k) { return k == TypeKind::Arrow || k == TypeKind::Lolli; }

bool subtypeImpl(const Type& a, const Type& b) {
  if (isTopKind(b.kind())) return true;
  if (a.kind() != b.kind()) return false;
  switch (arity(a.kind())) {
    case 0:
      return !isAtomKind(a.kind()) || a.name() == b.name();
    case 1:
      return subtypeImpl(a.inner(), b.inner());
    default:
      if (contravariantLeft(a.kind()))
        return subtypeImpl(b.lhs(), a.lhs()) && subtypeImpl(a.rhs(), b.rhs());
      return subtypeImpl(a.lhs(), b.lhs()) && subtypeImpl(a.rhs(), b.rhs());
  }
}

std::optional<Type> joinImpl(const Type& a, const Type& b);

std::optional<Type> meetImpl(const Type& a, const Type& b) {
  if (isTopKind(a.kind())) return b;
  if (isTopKind(b.kind())) return a;
  if (a.kind() != b.kind()) return std::nullopt;
  switch (arity(a.kind())) {
    case 0:
      if (isAtomKind(a.kind()) && a.name() != b.name()) return std::nullopt;
      return a;
    case 1: {
      auto in = meetImpl(a.inner(), b.inner());
      if (!in) return std::nullopt;
      return Type::unary(a.kind(), *in);
    }
    default: {
      auto l = contravariantLeft(a.kind()) ? joinImpl(a.lhs(), b.lhs())
                                           : meetImpl(a.lhs(), b.lhs());
      if (!l) return std::nullopt;
      auto r = meetImpl(a.rhs(), b.rhs());
      if (!r) return std::nullopt;
      return Type::binary(a.kind(), *l, *r);
    }
  }
}

std::optional<Type> joinImpl(const Type& a, const Type& b) {
  if (isTopKind(a.kind())) return a;
  if (isTopKind(b.kind())) return b;
  const Type top = Type::topOf(polarityOf(a));
  if (a.kind() != b.kind()) return top;
  switch (arity(a.kind())) {
    case 0:
      if (isAtomKind(a.kind()) && a.name() != b.name()) return top;
      return a;
    case 1:
      return Type::unary(a.kind(), *joinImpl(a.inner(), b.inner()));
    default: {
      auto l = contravariantLeft(a.kind()) ? meetImpl(a.lhs(), b.lhs())
                                           : joinImpl(a.lhs(), b.lhs());
      if (!l) return top;
      return Type::binary(a.kind(), *l, *joinImpl(a.rhs(), b.rhs()));
    }
  }
}

}  // namespace

bool subtype(const Type& a, const Type& b) {
  requireComparable(a, b, "subtype");
  return subtypeImpl(a, b);
}

std::optional<Type> meet(const Type& a, const Type& b) {
  requireComparable(a, b, "meet");
  auto& c = orderCounters();
  ++c.meetCalls;
  if (a.containsTop() || b.containsTop()) ++c.meetTopContaining;
  if (isTopKind(a.kind()) || isTopKind(b.kind())) ++c.meetTopArgument;
  return meetImpl(a, b);
}

std::optional<Type> join(const Type& a, const Type& b) {
  requireComparable(a, b, "join");
  return joinImpl(a, b);
}

}  // namespace polcheck
