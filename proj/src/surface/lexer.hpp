#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "polcheck/surface.hpp"

namespace polcheck::surface::detail {

enum class Tok { Ident, Number, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Loc loc;
};

/// Splits `.pl0` text into tokens. Compound words such as `mu+`, `Top-`
/// and `lambda-check` are single tokens; `--` starts a line comment.
std::vector<Token> lex(std::string_view src);

}  // namespace polcheck::surface::detail
