#include "lexer.hpp"

#include <cctype>

namespace polcheck::surface::detail {

namespace {

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skipSpace();
      Loc at{line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", at});
        return out;
      }
      char c = src_[pos_];
      if (identStart(c)) {
        out.push_back({Tok::Ident, word(), at});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
          num += advance();
        if (num != "0" && num != "1")
          throw ParseError("syntax-error", "unexpected number '" + num + "'", at);
        out.push_back({Tok::Number, num, at});
      } else {
        out.push_back({Tok::Sym, symbol(at), at});
      }
    }
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col_;
    }
    return c;
  }

  void skipSpace() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '-' && peek(1) == '-') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string word() {
    std::string w;
    while (pos_ < src_.size() && identChar(src_[pos_])) w += advance();
    if ((w == "mu" || w == "mut") && (peek() == '+' || peek() == '-')) {
      w += advance();
    } else if (w == "Top" && (peek() == '+' || (peek() == '-' && peek(1) != '>'))) {
      w += advance();
    } else if (w == "lambda" && peek() == '-') {
      std::string_view rest = src_.substr(pos_ + 1, 5);
      if ((rest == "check" || rest == "synth") && !identChar(peek(6))) w += take(6);
    }
    return w;
  }

  std::string symbol(Loc at) {
    char c = src_[pos_];
    auto two = [&](char next) { return peek(1) == next; };
    if (c == '=' && two('>')) return take(2);
    if (c == '-' && two('>')) return take(2);
    if (c == '-' && two('o') && !identChar(peek(2))) return take(2);
    static constexpr std::string_view singles = "()[]{}<>|,;:.\\*+&~!?=-";
    if (singles.find(c) != std::string_view::npos) return take(1);
    if ((static_cast<unsigned char>(c) & 0x80) != 0)
      throw ParseError("syntax-error", "non-ASCII character outside a comment", at);
    throw ParseError("syntax-error", std::string("unexpected character '") + c + "'", at);
  }

  std::string take(int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s += advance();
    return s;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> lex(std::string_view src) { return Lexer(src).run(); }

}  // namespace polcheck::surface::detail
