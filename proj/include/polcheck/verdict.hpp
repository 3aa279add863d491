#pragma once

// Outcome of a single typechecking query, shared by the λ and System L
// checkers.

#include <optional>
#include <stdexcept>
#include <string>

#include "polcheck/kernel.hpp"
#include "polcheck/surface.hpp"

namespace polcheck {

struct Diagnostic {
  std::string code;
  std::string message;
  surface::Loc loc;
};

class TypeError : public std::runtime_error {
 public:
  TypeError(std::string code, const std::string& msg, surface::Loc loc)
      : std::runtime_error(msg), diag_{std::move(code), msg, loc} {}
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

/// `type` is set for synthesis queries; `ctx` for cocontextual and System L
/// queries, where the typed context is an output.
struct Verdict {
  std::optional<Type> type;
  std::optional<TypedCtx> ctx;
  std::optional<Diagnostic> error;

  bool ok() const { return !error.has_value(); }
  static Verdict failure(const TypeError& e) { return {std::nullopt, std::nullopt, e.diagnostic()}; }
};

}  // namespace polcheck
