#include <doctest.h>

#include "polcheck/scope.hpp"

using namespace polcheck;
using namespace polcheck::scope;
using surface::parseProgram;

namespace {

const char* kAtoms = "atom P positive; atom N negative; atom A plain; atom B plain;\n";

ScopedQuery elab(const std::string& src, Calculus c, Preset p) {
  auto prog = parseProgram(kAtoms + src);
  return elaborate(prog.directives.back(), c, StructConfig::of(p));
}

std::string errorCode(const std::string& src, Calculus c, Preset p) {
  try {
    elab(src, c, p);
  } catch (const ScopeError& e) {
    return e.code();
  }
  return "ok";
}

}  // namespace

TEST_CASE("standard identity gets an embedding") {
  auto q = elab("lambda-check [] \\x. x : A -> A;", Calculus::Stlc, Preset::Cartesian);
  const auto& lam = *q.root;
  CHECK(lam.kind == RawKind::Lam);
  CHECK(lam.thinning == Thinning{ThinStep::Keep});
  REQUIRE(lam.kids.size() == 1);
  CHECK(lam.kids[0]->form == Form::Emb);
  CHECK(lam.kids[0]->kids[0]->kind == RawKind::Var);
  CHECK(modeOf(*lam.kids[0]->kids[0]) == Judgement::Syn);
  CHECK(printTree(q) ==
        "query lambda-check [] [thin: ]\n"
        "  lam x chk [thin: K]\n"
        "    emb chk\n"
        "      var x syn\n");
}

TEST_CASE("linear and cartesian discarding") {
  const std::string k = "lambda-synth [] \\x. \\y. (x : A);";
  CHECK(errorCode(k, Calculus::Lin, Preset::Linear) == "unused-variable");
  auto q = elab(k, Calculus::Cdb, Preset::Cartesian);
  const auto& inner = *q.root->kids[0];
  CHECK(inner.kind == RawKind::Lam);
  CHECK(inner.thinning == Thinning{ThinStep::Drop});
  CHECK(q.root->thinning == Thinning{ThinStep::Keep});
  CHECK(errorCode("lambda-synth [x] ((x : A), (x : A));", Calculus::Lin, Preset::Linear) ==
        "duplicated-variable");
  auto dup = elab("lambda-synth [x] ((x : A), (x : A));", Calculus::Cdb, Preset::Cartesian);
  CHECK(dup.root->cover == Cover{CoverStep::Both});
}

TEST_CASE("cut of a scoped variable against a declared covariable") {
  auto q = elab("command [k : P] < x | k >;", Calculus::Pol, Preset::Linear);
  CHECK(q.root->kind == RawKind::Cut);
  CHECK(q.root->cutPolarity == Polarity::Positive);
  CHECK(q.root->cover == Cover{CoverStep::Right, CoverStep::Left});
  REQUIRE(q.entries.size() == 2);
  CHECK(q.entries[0].cls == VarClass::DeltaPos);
  CHECK(q.entries[1].cls == VarClass::GammaPos);
  CHECK(printTree(q) ==
        "query command [k Δ+, x Γ+] [thin: KK]\n"
        "  cut+ command [cover: RL]\n"
        "    var x expr+ Γ+\n"
        "    var k pattern+ Δ+\n");
}

TEST_CASE("mode examples") {
  auto pair = elab("pattern [k : P * P] match { (x, y) => < (x, y) | k > };", Calculus::Pol,
                   Preset::Linear);
  CHECK(modeOf(*pair.root) == Judgement::Pattern);
  auto par = elab("copattern [w : N par N] comatch { < [x, y] | w > => [x, y] };", Calculus::Lnl,
                  Preset::LnlFull);
  CHECK(modeOf(*par.root) == Judgement::Copattern);
  auto down = elab("expr [] down comatch {} : down 1;", Calculus::Pol, Preset::Linear);
  CHECK(modeOf(*down.root) == Judgement::Expr);
}

TEST_CASE("mode table sweep") {
  struct Sample {
    Judgement cls;
    const char* text;
  };
  const std::vector<Sample> samples = {
      {Judgement::Expr, "mu+ a. < () | a >"},
      {Judgement::Expr, "()"},
      {Judgement::Expr, "((), ())"},
      {Judgement::Expr, "inl ()"},
      {Judgement::Expr, "inr ()"},
      {Judgement::Expr, "~ []"},
      {Judgement::Expr, "down comatch {}"},
      {Judgement::Expr, "match { Down y => < y | comatch {} > }"},
      {Judgement::Pattern, "mut+ z. < z | match {} >"},
      {Judgement::Pattern, "match { () => < () | match {} > }"},
      {Judgement::Pattern, "match { (a, b) => < (a, b) | match {} > }"},
      {Judgement::Pattern, "match { inl a => < a | match {} >; inr b => < b | match {} > }"},
      {Judgement::Pattern, "match {}"},
      {Judgement::Pattern, "match { ~y => < y | comatch {} > }"},
      {Judgement::Pattern, "match { down(x : N) => < [] | x > }"},
      {Judgement::Pattern, "Down([] : N)"},
      {Judgement::Copattern, "mu- a. < a | comatch {} >"},
      {Judgement::Copattern, "comatch { < () | match {} > => [] }"},
      {Judgement::Copattern, "comatch { < [a, b] | comatch {} > => [a, b] }"},
      {Judgement::Copattern,
       "comatch { < a | comatch {} > => pi1 a; < b | comatch {} > => pi2 b }"},
      {Judgement::Copattern, "comatch {}"},
      {Judgement::Copattern, "comatch { < x | match {} > => not x }"},
      {Judgement::Copattern, "comatch { < () | k > => up(k : P) }"},
      {Judgement::Copattern, "Up(() : I)"},
      {Judgement::Coexpr, "mut- q. < [] | q >"},
      {Judgement::Coexpr, "[]"},
      {Judgement::Coexpr, "[[], []]"},
      {Judgement::Coexpr, "pi1 []"},
      {Judgement::Coexpr, "pi2 []"},
      {Judgement::Coexpr, "not ()"},
      {Judgement::Coexpr, "up match {}"},
      {Judgement::Coexpr, "comatch { < x | match {} > => Up x }"},
      {Judgement::Command, "< () | match {} >"},
  };
  const std::vector<std::pair<Judgement, const char*>> queries = {
      {Judgement::Expr, "expr [] %s : I;"},
      {Judgement::Pattern, "pattern [] %s;"},
      {Judgement::Copattern, "copattern [] %s;"},
      {Judgement::Coexpr, "coexpr [] %s : N;"},
      {Judgement::Command, "command [] %s;"},
  };
  for (const auto& s : samples) {
    for (const auto& [cls, shape] : queries) {
      std::string src = shape;
      src.replace(src.find("%s"), 2, s.text);
      CAPTURE(src);
      std::string code = errorCode(src, Calculus::Lnl, Preset::Cartesian);
      if (cls == s.cls) {
        CHECK(code == "ok");
        CHECK(modeOf(*elab(src, Calculus::Lnl, Preset::Cartesian).root) == s.cls);
      } else {
        CHECK(code == "mode-error");
      }
    }
  }
}

TEST_CASE("lambda mode discipline") {
  CHECK(errorCode("lambda-synth [] \\x. x;", Calculus::Stlc, Preset::Cartesian) ==
        "mode-error");
  CHECK(errorCode("lambda-synth [f : A -> A] f (\\x. x);", Calculus::Stlc, Preset::Cartesian) ==
        "ok");
  CHECK(errorCode("lambda-check [f] (\\x. (x : A)) (f : A) : A;", Calculus::Cdb, Preset::Cartesian) == "ok");
  CHECK(errorCode("lambda-check [f] f (\\x. (x : A)) : A;", Calculus::Cdb, Preset::Cartesian) == "ok");
  CHECK(errorCode("lambda-check [] pi1 x : A;", Calculus::Lin, Preset::Linear) ==
        "calculus-restriction");
  CHECK(errorCode("lambda-check [] let () = () in () : 1;", Calculus::Stlc, Preset::Cartesian) ==
        "calculus-restriction");
  CHECK(errorCode("lambda-check [x] x : A;", Calculus::Stlc, Preset::Cartesian) ==
        "context-shape");
  CHECK(errorCode("lambda-check [x : A] x : A;", Calculus::Lin, Preset::Linear) ==
        "context-shape");
}

TEST_CASE("letPair binds after the scrutinee") {
  auto q = elab("lambda-synth [p] let (a, b) = p in ((b : A), (a : A));", Calculus::Lin, Preset::Linear);
  const auto& let = *q.root;
  CHECK(let.kind == RawKind::LetPair);
  CHECK(let.cover == Cover{CoverStep::Left});
  REQUIRE(let.kids.size() == 2);
  CHECK(let.kids[1]->form == Form::Branch);
  CHECK(let.kids[1]->thinning == Thinning{ThinStep::Keep, ThinStep::Keep});
  CHECK(let.kids[1]->kids[0]->cover == Cover{CoverStep::Right, CoverStep::Left});
}

TEST_CASE("scope errors") {
  const auto pol = Calculus::Pol;
  const auto lin = Preset::Linear;
  CHECK(errorCode("command [k] < () | k >;", pol, lin) == "wrong-context");
  CHECK(errorCode("command [k : P] < () | y >;", pol, lin) == "unbound-variable");
  CHECK(errorCode("command [k : P] < mut+ z. < z | k > | k >;", pol, lin) == "mode-error");
  CHECK(errorCode("command [k : P] < k | k >;", pol, lin) == "wrong-context");
  CHECK(errorCode("command [k : P, m : N] < k | m >;", pol, lin) == "polarity-mismatch");
  CHECK(errorCode("command [k : P] < [] | k >;", pol, lin) == "polarity-mismatch");
  CHECK(errorCode("command [] < x | y >;", pol, lin) == "ambiguous-cut");
  CHECK(errorCode("pattern [k : P] mut+ z. < z | j >;", pol, lin) == "unbound-variable");
  CHECK(errorCode("expr [k : P, x] mu+ a. < x | k > : P;", pol, lin) == "unused-variable");
  CHECK(errorCode("command [k : P, x+] < x | match { (a, b) => < a | k > } >;", pol, lin) ==
        "unused-variable");
  CHECK(errorCode("expr [x] (x, x) : P * P;", pol, lin) == "duplicated-variable");
  CHECK(errorCode("expr [x] (x, x) : P * P;", pol, Preset::Cartesian) == "ok");
  CHECK(errorCode("command [k : P, x : P, y] < y | k >;", pol, lin) == "unused-variable");
  CHECK(errorCode("command [k : P, k : P] < y | k >;", pol, lin) == "duplicate-entry");
  CHECK(errorCode("command [k : P, x-] < x | k >;", pol, lin) == "polarity-mismatch");
}

TEST_CASE("additive branches share the synthesised side") {
  const std::string src =
      "pattern [k : P, x] match { inl a => < (a, x) | k >; inr b => < (b, x) | k > };";
  CHECK(errorCode(src, Calculus::Pol, Preset::Linear) == "duplicated-variable");
  const std::string shared =
      "pattern [k : P, j : P, x] match { inl a => < (a, x) | k >; inr b => < (b, x) | j > };";
  auto q = elab(shared, Calculus::Pol, Preset::Linear);
  CHECK(q.root->additive);
  REQUIRE(q.root->cover.has_value());
  CHECK(printCover(*q.root->cover) == "LRB");
  const std::string oneSided =
      "pattern [k : P, j : P, x] match { inl a => < (a, x) | k >; inr b => < b | j > };";
  CHECK(errorCode(oneSided, Calculus::Pol, Preset::Linear) == "branch-usage");
  CHECK(errorCode(oneSided, Calculus::Pol, Preset::Cartesian) == "ok");
}

TEST_CASE("calculus restrictions") {
  CHECK(errorCode("expr [] ~ [] : ~N;", Calculus::Pos, Preset::Linear) ==
        "calculus-restriction");
  CHECK(errorCode("expr [] ((), ()) : I * I;", Calculus::Pos, Preset::Linear) == "ok");
  CHECK(errorCode("coexpr [] [[], []] : bot par bot;", Calculus::Neg, Preset::Linear) == "ok");
  CHECK(errorCode("expr [] () : I;", Calculus::Neg, Preset::Linear) == "calculus-restriction");
  CHECK(errorCode("copattern [] Up(() : I);", Calculus::Pol, Preset::Linear) ==
        "calculus-restriction");
  CHECK(errorCode("copattern [] Up(() : I);", Calculus::Lnl, Preset::Linear) == "ok");
  CHECK(errorCode("lambda-check [] () : 1;", Calculus::Pol, Preset::Linear) ==
        "calculus-restriction");
  CHECK(errorCode("expr [] () : I;", Calculus::Stlc, Preset::Cartesian) == "calculus-restriction");
  CHECK(errorCode("lambda-check [] \\x. () : A -> 1;", Calculus::Lin, Preset::Linear) ==
        "calculus-restriction");
  CHECK(errorCode("lambda-synth [] (\\x. (x : A) : A -o A);", Calculus::Lin, Preset::Linear) == "ok");
}

TEST_CASE("canonical covers mark Both exactly on shared variables") {
  auto q = elab("lambda-synth [f, x, y] (((f : A), (x : A)), ((f : A), (y : A)));", Calculus::Cdb, Preset::Cartesian);
  CHECK(printCover(*q.root->cover) == "BLR");
  CHECK(printCover(*q.root->kids[0]->cover) == "LR");
}
