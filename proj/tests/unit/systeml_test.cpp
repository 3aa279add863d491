#include <doctest.h>

#include "polcheck/driver.hpp"
#include "polcheck/systeml.hpp"

using namespace polcheck;
using scope::Calculus;

namespace {

const char* kAtoms =
    "atom P positive; atom Q positive; atom N negative; atom M negative;\n";

driver::QueryRecord run(const std::string& src, Calculus c = Calculus::Pol,
                        Preset p = Preset::Linear) {
  auto rep = driver::checkSource(kAtoms + src, {c, StructConfig::of(p)}, false);
  REQUIRE(rep.queries.size() == 1);
  return rep.queries[0];
}

std::string code(const driver::QueryRecord& r) { return r.error ? r.error->code : "ok"; }
std::string ctx(const driver::QueryRecord& r) { return r.context.value_or("-"); }
std::string ty(const driver::QueryRecord& r) { return r.type.value_or("-"); }

}  // namespace

TEST_CASE("expressions") {
  CHECK(ctx(run("expr [] (a, b) : P * Q;")) == "[a : P, b : Q]");
  CHECK(ctx(run("expr [] () : I;")) == "[]");
  CHECK(ctx(run("expr [] inl a : P + Q;")) == "[a : P]");
  CHECK(ctx(run("expr [] inr a : P + Q;")) == "[a : Q]");
  CHECK(code(run("expr [] () : P;")) == "mismatch");
  CHECK(code(run("expr [] (a, b) : P + Q;")) == "mismatch");
  CHECK(ctx(run("expr [] mu+ a. < x | a > : P;")) == "[x : P]");
  CHECK(ctx(run("expr [] ~ x : ~N;")) == "[x : N]");
  CHECK(ctx(run("expr [k : I] down(comatch { < () | k > => [] }) : down bot;")) == "[]");
  CHECK(code(run("expr [k : I] down(comatch { < () | k > => [] }) : down N;")) ==
        "subtype-failure");
}

TEST_CASE("patterns") {
  auto k = run("pattern [k : P] k;");
  CHECK(ty(k) == "P");
  CHECK(ctx(k) == "[]");
  auto mut = run("pattern [k : P] mut+ x. < x | k >;");
  CHECK(ty(mut) == "P");
  CHECK(ctx(mut) == "[]");
  auto down = run("pattern [] match { down(x : bot) => < [] | x > };");
  CHECK(ty(down) == "down bot");
  CHECK(ctx(down) == "[]");
  auto pair = run("pattern [k : P * Q] match { (x, y) => < (x, y) | k > };");
  CHECK(ty(pair) == "P * Q");
  auto sum = run("pattern [k : P, j : Q] match { inl a => < a | k >; inr b => < b | j > };");
  CHECK(ty(sum) == "P + Q");
  CHECK(ty(run("pattern [] match {};")) == "0");
  CHECK(ty(run("pattern [k : I] match { () => < () | k > };")) == "I");
  CHECK(ty(run("pattern [j : M] match { ~ y => < y | j > };")) == "~M");
}

TEST_CASE("copatterns") {
  auto x = run("copattern [x : N] x;");
  CHECK(ty(x) == "N");
  CHECK(ctx(x) == "[]");
  auto upp = run("copattern [] Up((a) : P);", Calculus::Lnl, Preset::LnlFull);
  CHECK(ty(upp) == "Up P");
  CHECK(ctx(upp) == "[a : P]");
  auto up = run("copattern [] comatch { < () | k > => up(k : I) };");
  CHECK(ty(up) == "up I");
  CHECK(ctx(up) == "[]");
  CHECK(ty(run("copattern [] comatch {};")) == "1");
  CHECK(ty(run("copattern [k : I] comatch { < () | match { () => < () | k > } > => [] };")) ==
        "bot");
  CHECK(ty(run("copattern [w : N par M] comatch { < [x, y] | w > => [x, y] };")) ==
        "N par M");
  CHECK(ty(run("copattern [j : P] comatch { < x | j > => not x };")) == "not P");
}

TEST_CASE("coexpressions") {
  CHECK(ctx(run("coexpr [] [] : bot;")) == "[]");
  CHECK(ctx(run("coexpr [] pi1 x : N & M;")) == "[x : N]");
  CHECK(ctx(run("coexpr [] pi2 x : N & M;")) == "[x : M]");
  CHECK(ctx(run("coexpr [] [x, y] : N par M;")) == "[x : N, y : M]");
  CHECK(ctx(run("coexpr [] not a : not P;")) == "[a : P]");
  CHECK(code(run("coexpr [] [] : N;")) == "mismatch");
  CHECK(ctx(run("coexpr [k : I] up(match { () => < () | k > }) : up I;")) == "[]");
}

TEST_CASE("commands") {
  CHECK(ctx(run("command [k : P] < x | k >;")) == "[x : P]");
  CHECK(ctx(run("command [y : N] < x | y >;")) == "[x : N]");
  CHECK(code(run("command [k : P] < () | k >;")) == "mismatch");
  CHECK(ctx(run("command [k : P * Q] < (a, b) | k >;")) == "[a : P, b : Q]");
  // Unused checkable entries are fine; unused synthesisable ones are padded with ⊤.
  CHECK(ctx(run("command [k : P, x+] < x | k >;")) == "[x : P]");
  CHECK(ctx(run("command [k : P, z+] < () | match { () => < x | k > } >;", Calculus::Pol,
                Preset::Cartesian)) == "[z : Top+, x : P]");
}

TEST_CASE("additive branches meet their Σ") {
  auto r = run(
      "pattern [k : P, j : P] match { inl a => < (a, x) | m >; inr b => < (b, x) | m > };");
  CHECK(code(r) == "unbound-variable");
  auto ok = run(
      "command [k : P * Q, j : P * Q] < v | match { inl a => < (a, x) | k >; inr b => < (b, x) | j > } >;");
  CHECK(code(ok) == "ok");
  CHECK(ctx(ok) == "[v : P + P, x : Q]");
}

TEST_CASE("cartesian drop gives top") {
  auto r = run("pattern [k : I] match { (x, y) => < () | k > };", Calculus::Pol,
               Preset::Cartesian);
  CHECK(ty(r) == "Top+ * Top+");
  CHECK(code(run("pattern [k : I] match { (x, y) => < () | k > };")) == "unused-variable");
}

TEST_CASE("preset gating") {
  const std::string bang = "copattern [] Up((a) : P);";
  CHECK(code(run(bang, Calculus::Lnl, Preset::LnlFull)) == "ok");
  CHECK(code(run(bang, Calculus::Lnl, Preset::LnlBang)) == "ok");
  CHECK(code(run(bang, Calculus::Lnl, Preset::Linear)) == "preset-violation");
  CHECK(code(run(bang, Calculus::Lnl, Preset::Cartesian)) == "preset-violation");
  const std::string dd = "pattern [] Down((x) : N);";
  CHECK(code(run(dd, Calculus::Lnl, Preset::LnlFull)) == "ok");
  CHECK(code(run(dd, Calculus::Lnl, Preset::Linear)) == "preset-violation");
}

TEST_CASE("sugar round trip") {
  auto prog = surface::parseProgram(std::string(kAtoms) + "expr [] x : !P; coexpr [] y : ?N;");
  CHECK(printType(*prog.directives[4].type) == "down (Up P)");
  CHECK(printType(*prog.directives[5].type) == "up (Down N)");
}

TEST_CASE("query type polarity") {
  CHECK(code(run("expr [] x : N;")) == "polarity-mismatch");
  CHECK(code(run("coexpr [] x : P;")) == "polarity-mismatch");
}

TEST_CASE("dualize") {
  const surface::AtomTable atoms{{"P", Polarity::Positive}, {"N", Polarity::Negative}};
  auto t = surface::parseType("P * ~(N & N)", atoms);
  CHECK(printType(systeml::dualize(t)) == "P par (not (N + N))");
  CHECK(systeml::dualize(systeml::dualize(t)) == t);
  CHECK(polarityOf(systeml::dualize(t)) == Polarity::Negative);

  const std::string src = std::string(kAtoms) +
                          "pattern [k : P * Q] match { (x, y) => < (x, y) | k > };\n"
                          "expr [] down(comatch { < () | k > => [] }) : down bot;\n";
  auto prog = surface::parseProgram(src);
  auto once = systeml::dualize(prog);
  CHECK(once.directives[4].kind == surface::QueryKind::Copattern);
  CHECK(surface::printTerm(*once.directives[4].term, Family::SystemL) ==
        "comatch { < [x, y] | k > => [x, y] }");
  auto twice = systeml::dualize(once);
  for (std::size_t i = 0; i < prog.directives.size(); ++i)
    CHECK(surface::sameDirective(prog.directives[i], twice.directives[i]));

  CHECK(systeml::dualize(VarClass::GammaPos) == VarClass::DeltaNeg);
  CHECK(systeml::dualize(VarClass::DeltaPos) == VarClass::GammaNeg);
}

TEST_CASE("duality transports verdicts") {
  const char* cases[] = {
      "command [k : P] < x | k >;",
      "pattern [k : P * Q] match { (x, y) => < (x, y) | k > };",
      "expr [] (a, b) : P * Q;",
      "copattern [] comatch { < () | k > => up(k : I) };",
      "command [k : P] < () | k >;",
  };
  for (const char* c : cases) {
    const std::string src = std::string(kAtoms) + c;
    auto a = driver::checkSource(src, {Calculus::Pol, StructConfig::linear()}, false);
    auto b = driver::checkSource(driver::dualizeSource(src),
                                 {Calculus::Pol, StructConfig::linear()}, false);
    CAPTURE(c);
    CHECK(a.ok() == b.ok());
    if (a.ok() && a.queries[0].type) {
      auto ta = surface::parseType(*a.queries[0].type, {{"P", Polarity::Positive},
                                                         {"Q", Polarity::Positive}});
      CHECK(printType(systeml::dualize(ta)) == *b.queries[0].type);
    }
  }
}

TEST_CASE("instrumentation") {
  auto& rc = systeml::ruleCounters();
  rc = {};
  run("pattern [] match { down(x : bot) => < [] | x > };");
  CHECK(rc.annotationReads[static_cast<int>(surface::RawKind::MatchDown)] == 1);
  rc = {};
  run("command [k : P * Q] < (a, b) | k >;");
  std::uint64_t total = 0;
  for (auto n : rc.annotationReads) total += n;
  CHECK(total == 0);
  CHECK(rc.unequalSubtypeChecks == 0);
}
