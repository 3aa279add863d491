#include <set>

#include "lexer.hpp"
#include "polcheck/surface.hpp"

namespace polcheck::surface {

namespace {

using detail::Tok;
using detail::Token;

const std::set<std::string, std::less<>>& reservedWords() {
  static const std::set<std::string, std::less<>> words = {
      "atom", "positive", "negative", "plain", "pi1", "pi2", "inl", "inr", "absurd", "case",
      "of", "let", "in", "mu+", "mu-", "mut+", "mut-", "not", "down", "up", "Down", "Up",
      "match", "comatch", "I", "bot", "par", "Top", "Top+", "Top-", "lambda-check",
      "lambda-synth", "expr", "pattern", "copattern", "coexpr", "command"};
  return words;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, AtomTable& atoms) : toks_(std::move(toks)), atoms_(atoms) {}

  Program program() {
    Program p;
    while (!at(Tok::End)) p.directives.push_back(directive());
    p.atoms = atoms_;
    return p;
  }

  Type wholeType(TypeParseOptions opts) {
    fam_ = opts.family;
    allowTops_ = opts.allowTops;
    Type t = type();
    if (!at(Tok::End)) fail("unexpected '" + cur().text + "' after type");
    return t;
  }

 private:
  // -- token plumbing -------------------------------------------------------

  const Token& cur() const { return toks_[pos_]; }
  const Token& next() const { return toks_[std::min(pos_ + 1, toks_.size() - 1)]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool atSym(std::string_view s) const { return cur().kind == Tok::Sym && cur().text == s; }
  bool atWord(std::string_view s) const { return cur().kind == Tok::Ident && cur().text == s; }
  bool atNum(std::string_view s) const { return cur().kind == Tok::Number && cur().text == s; }
  bool nextSym(std::string_view s) const {
    return next().kind == Tok::Sym && next().text == s;
  }

  Token take() {
    Token t = cur();
    if (!at(Tok::End)) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const { fail(msg, cur().loc); }
  [[noreturn]] static void fail(const std::string& msg, Loc loc) {
    throw ParseError("syntax-error", msg, loc);
  }

  std::string describe() const {
    return at(Tok::End) ? "end of input" : "'" + cur().text + "'";
  }

  void expectSym(std::string_view s) {
    if (!atSym(s)) fail("expected '" + std::string(s) + "' but found " + describe());
    take();
  }

  void expectWord(std::string_view s) {
    if (!atWord(s)) fail("expected '" + std::string(s) + "' but found " + describe());
    take();
  }

  Token ident(const char* what) {
    if (!at(Tok::Ident) || reservedWords().count(cur().text))
      fail(std::string("expected ") + what + " but found " + describe());
    return take();
  }

  // -- directives -----------------------------------------------------------

  Directive directive() {
    Directive d;
    d.loc = cur().loc;
    if (atWord("atom")) {
      take();
      Token name = ident("atom name");
      d.tag = Directive::Tag::Atom;
      d.atomName = name.text;
      if (atWord("positive")) d.atomPolarity = Polarity::Positive;
      else if (atWord("negative")) d.atomPolarity = Polarity::Negative;
      else if (atWord("plain")) d.atomPolarity = Polarity::Unpolarised;
      else fail("expected 'positive', 'negative' or 'plain' but found " + describe());
      take();
      expectSym(";");
      if (atoms_.count(d.atomName))
        throw ParseError("duplicate-atom", "atom '" + d.atomName + "' is already declared",
                         name.loc);
      atoms_[d.atomName] = d.atomPolarity;
      return d;
    }
    auto kind = at(Tok::Ident) ? queryKindFromName(cur().text) : std::nullopt;
    if (!kind) fail("expected a directive keyword but found " + describe());
    take();
    d.kind = *kind;
    fam_ = queryFamily(d.kind);
    if (atSym("[")) d.ctx = context();
    d.term = term();
    if (atSym(":")) {
      Loc colon = cur().loc;
      take();
      if (!queryNeedsType(d.kind))
        fail(std::string(queryKindName(d.kind)) + " queries do not take a type", colon);
      d.type = type();
    } else if (queryNeedsType(d.kind)) {
      fail(std::string(queryKindName(d.kind)) + " queries need ': type' before ';'");
    }
    expectSym(";");
    return d;
  }

  std::vector<CtxEntry> context() {
    std::vector<CtxEntry> out;
    expectSym("[");
    if (atSym("]")) {
      take();
      return out;
    }
    for (;;) {
      CtxEntry e;
      Token name = ident("context entry");
      e.name = name.text;
      e.loc = name.loc;
      if (atSym("+") || atSym("-")) {
        if (fam_ == Family::Lambda) fail("λ-calculus context entries carry no polarity");
        e.mark = take().text == "+" ? Polarity::Positive : Polarity::Negative;
      }
      if (atSym(":")) {
        take();
        Loc tloc = cur().loc;
        e.type = type();
        if (e.mark && polarityOf(*e.type) != *e.mark)
          throw ParseError("polarity-violation",
                           "entry '" + e.name + "' is marked " + polarityName(*e.mark) +
                               " but its type is " + polarityName(polarityOf(*e.type)),
                           tloc);
      }
      out.push_back(std::move(e));
      if (atSym("]")) break;
      expectSym(",");
    }
    take();
    return out;
  }

  // -- types ----------------------------------------------------------------

  Type type() {
    Loc start = cur().loc;
    Type t = arrowType();
    try {
      validatePolarity(t);
    } catch (const std::invalid_argument& e) {
      throw ParseError("polarity-violation", e.what(), start);
    }
    return t;
  }

  Type arrowType() {
    Type l = sumType();
    if (atSym("->") || atSym("-o")) {
      Token op = take();
      if (fam_ != Family::Lambda) fail("'" + op.text + "' is a λ-calculus connective", op.loc);
      Type r = arrowType();
      return Type::binary(op.text == "->" ? TypeKind::Arrow : TypeKind::Lolli, l, r);
    }
    return l;
  }

  Type sumType() {
    Type l = prodType();
    while (atSym("+")) {
      take();
      Type r = prodType();
      l = Type::binary(fam_ == Family::Lambda ? TypeKind::Sum : TypeKind::Plus, l, r);
    }
    return l;
  }

  Type prodType() {
    Type l = unaryType();
    for (;;) {
      TypeKind k;
      Loc loc = cur().loc;
      if (atSym("*")) k = fam_ == Family::Lambda ? TypeKind::Prod : TypeKind::Tensor;
      else if (atSym("&")) k = TypeKind::With;
      else if (atWord("par")) k = TypeKind::Par;
      else return l;
      if (fam_ == Family::Lambda && k != TypeKind::Prod)
        fail("'" + cur().text + "' is a System L connective", loc);
      take();
      l = Type::binary(k, l, unaryType());
    }
  }

  Type unaryType() {
    static const std::pair<std::string_view, TypeKind> unaries[] = {
        {"~", TypeKind::SimNeg},      {"not", TypeKind::NotNeg}, {"down", TypeKind::DownShift},
        {"up", TypeKind::UpShift},    {"Down", TypeKind::DDown}, {"Up", TypeKind::UUp}};
    for (const auto& [word, kind] : unaries) {
      if ((cur().kind == Tok::Sym || cur().kind == Tok::Ident) && cur().text == word) {
        Token op = take();
        requireL(op);
        return Type::unary(kind, unaryType());
      }
    }
    if (atSym("!") || atSym("?")) {
      Token op = take();
      requireL(op);
      Type in = unaryType();
      if (op.text == "!")
        return Type::unary(TypeKind::DownShift, Type::unary(TypeKind::UUp, in));
      return Type::unary(TypeKind::UpShift, Type::unary(TypeKind::DDown, in));
    }
    return atomType();
  }

  void requireL(const Token& op) const {
    if (fam_ == Family::Lambda) fail("'" + op.text + "' is a System L connective", op.loc);
  }

  Type atomType() {
    Token t = cur();
    if (atSym("(")) {
      take();
      Type inner = arrowType();
      expectSym(")");
      return inner;
    }
    const bool lam = fam_ == Family::Lambda;
    if (atNum("0")) {
      take();
      return Type::constant(lam ? TypeKind::Zero0 : TypeKind::ZeroP);
    }
    if (atNum("1")) {
      take();
      return Type::constant(lam ? TypeKind::Unit1 : TypeKind::One1);
    }
    if (atWord("I") || atWord("bot")) {
      requireL(t);
      take();
      return Type::constant(t.text == "I" ? TypeKind::I : TypeKind::Bot);
    }
    if (atWord("Top") || atWord("Top+") || atWord("Top-")) {
      if (!allowTops_)
        throw ParseError("reserved-type", "'" + t.text + "' is reserved for unused variables",
                         t.loc);
      take();
      if (t.text == "Top") {
        if (!lam) fail("'Top' is the λ-calculus top; use Top+ or Top-", t.loc);
        return Type::constant(TypeKind::Top);
      }
      requireL(t);
      return Type::constant(t.text == "Top+" ? TypeKind::TopPos : TypeKind::TopNeg);
    }
    if (at(Tok::Ident) && !reservedWords().count(t.text)) {
      take();
      auto it = atoms_.find(t.text);
      // λ atoms carry no polarity, so an undeclared one is unambiguous.
      if (it == atoms_.end() && lam) return Type::atom(t.text, Polarity::Unpolarised);
      if (it == atoms_.end())
        throw ParseError("unknown-atom", "unknown atom '" + t.text + "'", t.loc);
      if (lam != (it->second == Polarity::Unpolarised))
        throw ParseError("polarity-violation",
                         "atom '" + t.text + "' is " + polarityName(it->second) +
                             (lam ? "; λ-calculus types need plain atoms"
                                  : "; System L types need polarised atoms"),
                         t.loc);
      return Type::atom(t.text, it->second);
    }
    fail("expected a type but found " + describe());
  }

  // -- terms ----------------------------------------------------------------

  RawPtr term() { return fam_ == Family::Lambda ? lamTerm() : lTerm(); }

  RawPtr node(RawKind k, Loc loc) { return RawTerm::make(k, loc); }

  void bind(RawTerm& n, const Token& t) {
    n.binders.push_back(t.text);
    n.binderLocs.push_back(t.loc);
  }

  RawPtr lamTerm() {
    Loc loc = cur().loc;
    if (atSym("\\")) {
      take();
      auto n = node(RawKind::Lam, loc);
      bind(*n, ident("bound variable"));
      expectSym(".");
      n->kids.push_back(lamTerm());
      return n;
    }
    if (atWord("case")) {
      take();
      auto n = node(RawKind::Case, loc);
      n->kids.push_back(lamTerm());
      expectWord("of");
      expectSym("{");
      expectWord("inl");
      bind(*n, ident("bound variable"));
      expectSym("=>");
      n->kids.push_back(lamTerm());
      expectSym(";");
      expectWord("inr");
      bind(*n, ident("bound variable"));
      expectSym("=>");
      n->kids.push_back(lamTerm());
      expectSym("}");
      return n;
    }
    if (atWord("let")) {
      take();
      expectSym("(");
      RawPtr n;
      if (atSym(")")) {
        take();
        n = node(RawKind::LetUnit, loc);
      } else {
        n = node(RawKind::LetPair, loc);
        bind(*n, ident("bound variable"));
        expectSym(",");
        bind(*n, ident("bound variable"));
        expectSym(")");
      }
      expectSym("=");
      n->kids.push_back(lamTerm());
      expectWord("in");
      n->kids.push_back(lamTerm());
      return n;
    }
    return application();
  }

  bool startsArgument() const {
    if (atSym("(") || atSym("\\")) return true;
    if (!at(Tok::Ident)) return false;
    const auto& w = cur().text;
    return !reservedWords().count(w) || w == "pi1" || w == "pi2" || w == "inl" ||
           w == "inr" || w == "absurd";
  }

  RawPtr application() {
    RawPtr f = prefixTerm();
    while (startsArgument()) {
      auto n = node(RawKind::App, f->loc);
      n->kids.push_back(f);
      n->kids.push_back(atSym("\\") ? lamTerm() : prefixTerm());
      f = n;
    }
    return f;
  }

  RawPtr prefixTerm() {
    static const std::pair<std::string_view, RawKind> prefixes[] = {
        {"pi1", RawKind::Proj1}, {"pi2", RawKind::Proj2}, {"inl", RawKind::Inl},
        {"inr", RawKind::Inr},   {"absurd", RawKind::Absurd}};
    for (const auto& [word, kind] : prefixes) {
      if (atWord(word)) {
        auto n = node(kind, take().loc);
        n->kids.push_back(prefixTerm());
        return n;
      }
    }
    return lamAtom();
  }

  RawPtr lamAtom() {
    Loc loc = cur().loc;
    if (atSym("(")) {
      take();
      if (atSym(")")) {
        take();
        return node(RawKind::Unit, loc);
      }
      RawPtr inner = lamTerm();
      if (atSym(":")) {
        take();
        auto n = node(RawKind::Annot, loc);
        n->kids.push_back(inner);
        n->annot = type();
        expectSym(")");
        return n;
      }
      if (atSym(",")) {
        take();
        auto n = node(RawKind::Pair, loc);
        n->kids.push_back(inner);
        n->kids.push_back(lamTerm());
        expectSym(")");
        return n;
      }
      expectSym(")");
      return inner;
    }
    Token v = ident("a term");
    auto n = node(RawKind::Var, v.loc);
    n->name = v.text;
    return n;
  }

  RawPtr lTerm() {
    Loc loc = cur().loc;
    if (atSym("<")) {
      take();
      auto n = node(RawKind::Cut, loc);
      n->kids.push_back(lTerm());
      expectSym("|");
      n->kids.push_back(lTerm());
      expectSym(">");
      return n;
    }
    static const std::pair<std::string_view, RawKind> binders[] = {
        {"mu+", RawKind::MuPlus},
        {"mut+", RawKind::MutPlus},
        {"mu-", RawKind::MuMinus},
        {"mut-", RawKind::MutMinus}};
    for (const auto& [word, kind] : binders) {
      if (atWord(word)) {
        take();
        auto n = node(kind, loc);
        bind(*n, ident("bound variable"));
        expectSym(".");
        n->kids.push_back(lTerm());
        return n;
      }
    }
    static const std::pair<std::string_view, RawKind> prefixes[] = {
        {"inl", RawKind::InlE},  {"inr", RawKind::InrE},       {"pi1", RawKind::Pi1E},
        {"pi2", RawKind::Pi2E},  {"~", RawKind::SimIntro},     {"not", RawKind::NotCointro},
        {"down", RawKind::DownIntro}, {"up", RawKind::UpCointro}};
    for (const auto& [word, kind] : prefixes) {
      if ((at(Tok::Ident) || at(Tok::Sym)) && cur().text == word) {
        take();
        auto n = node(kind, loc);
        n->kids.push_back(lTerm());
        return n;
      }
    }
    if (atWord("Up") || atWord("Down")) {
      auto n = node(take().text == "Up" ? RawKind::UUpIntro : RawKind::DDownIntro, loc);
      expectSym("(");
      n->kids.push_back(lTerm());
      expectSym(":");
      n->annot = type();
      expectSym(")");
      return n;
    }
    if (atSym("(") || atSym("[")) {
      const bool round = take().text == "(";
      const char* close = round ? ")" : "]";
      if (atSym(close)) {
        take();
        return node(round ? RawKind::UnitI : RawKind::CounitBot, loc);
      }
      RawPtr first = lTerm();
      if (atSym(",")) {
        take();
        auto n = node(round ? RawKind::Tuple : RawKind::Cotuple, loc);
        n->kids.push_back(first);
        n->kids.push_back(lTerm());
        expectSym(close);
        return n;
      }
      if (!round) fail("expected ',' in cotuple but found " + describe());
      expectSym(")");
      return first;
    }
    if (atWord("match")) {
      take();
      return matchBody(loc);
    }
    if (atWord("comatch")) {
      take();
      return comatchBody(loc);
    }
    Token v = ident("a term");
    auto n = node(RawKind::Var, v.loc);
    n->name = v.text;
    return n;
  }

  RawPtr matchBody(Loc loc) {
    expectSym("{");
    RawPtr n;
    if (atSym("}")) {
      n = node(RawKind::MatchEmpty, loc);
    } else if (atSym("(")) {
      take();
      if (atSym(")")) {
        take();
        n = node(RawKind::MatchUnit, loc);
      } else {
        n = node(RawKind::MatchPair, loc);
        bind(*n, ident("bound variable"));
        expectSym(",");
        bind(*n, ident("bound variable"));
        expectSym(")");
      }
      expectSym("=>");
      n->kids.push_back(lTerm());
    } else if (atWord("inl")) {
      take();
      n = node(RawKind::MatchSum, loc);
      bind(*n, ident("bound variable"));
      expectSym("=>");
      n->kids.push_back(lTerm());
      expectSym(";");
      expectWord("inr");
      bind(*n, ident("bound variable"));
      expectSym("=>");
      n->kids.push_back(lTerm());
    } else if (atSym("~") || atWord("Down")) {
      n = node(take().text == "~" ? RawKind::MatchSim : RawKind::MatchDDown, loc);
      bind(*n, ident("bound variable"));
      expectSym("=>");
      n->kids.push_back(lTerm());
    } else if (atWord("down")) {
      take();
      n = node(RawKind::MatchDown, loc);
      if (!atSym("(")) fail("a down-match binder needs an annotation: down(x : A)");
      take();
      bind(*n, ident("bound variable"));
      if (!atSym(":")) fail("a down-match binder needs an annotation: down(x : A)");
      take();
      n->annot = type();
      expectSym(")");
      expectSym("=>");
      n->kids.push_back(lTerm());
    } else {
      fail("expected a match branch but found " + describe());
    }
    expectSym("}");
    return n;
  }

  RawPtr comatchBody(Loc loc) {
    expectSym("{");
    if (atSym("}")) {
      take();
      return node(RawKind::ComatchEmpty, loc);
    }
    RawPtr body = lTerm();
    expectSym("=>");
    RawPtr n;
    if (atSym("[")) {
      take();
      if (atSym("]")) {
        n = node(RawKind::ComatchBot, loc);
      } else {
        n = node(RawKind::ComatchPar, loc);
        bind(*n, ident("bound variable"));
        expectSym(",");
        bind(*n, ident("bound variable"));
      }
      expectSym("]");
      n->kids.push_back(body);
    } else if (atWord("pi1")) {
      take();
      n = node(RawKind::ComatchWith, loc);
      bind(*n, ident("bound variable"));
      n->kids.push_back(body);
      expectSym(";");
      n->kids.push_back(lTerm());
      expectSym("=>");
      expectWord("pi2");
      bind(*n, ident("bound variable"));
    } else if (atWord("not") || atWord("Up")) {
      n = node(take().text == "not" ? RawKind::ComatchNot : RawKind::ComatchUUp, loc);
      bind(*n, ident("bound variable"));
      n->kids.push_back(body);
    } else if (atWord("up")) {
      take();
      n = node(RawKind::ComatchUp, loc);
      if (!atSym("(")) fail("an up-comatch binder needs an annotation: up(x : A)");
      take();
      bind(*n, ident("bound variable"));
      if (!atSym(":")) fail("an up-comatch binder needs an annotation: up(x : A)");
      take();
      n->annot = type();
      expectSym(")");
      n->kids.push_back(body);
    } else {
      fail("expected a copattern binder after '=>' but found " + describe());
    }
    expectSym("}");
    return n;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  AtomTable& atoms_;
  Family fam_ = Family::SystemL;
  bool allowTops_ = false;
};

}  // namespace

Type parseType(std::string_view text, const AtomTable& atoms, TypeParseOptions opts) {
  AtomTable copy = atoms;
  return Parser(detail::lex(text), copy).wholeType(opts);
}

Program parseProgram(std::string_view text) {
  AtomTable atoms;
  return Parser(detail::lex(text), atoms).program();
}

}  // namespace polcheck::surface
