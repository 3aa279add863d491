#include <doctest.h>

#include "polcheck/lambda.hpp"

using namespace polcheck;
using namespace polcheck::scope;

namespace {

const char* kAtoms = "atom P plain; atom Q plain;\n";

struct Run {
  ScopedQuery q;
  Verdict v;
};

Run run(const std::string& src, Calculus c, Preset p = Preset::Cartesian) {
  auto prog = surface::parseProgram(kAtoms + src);
  auto q = elaborate(prog.directives.back(), c, StructConfig::of(p));
  Verdict v;
  const bool check = q.kind == surface::QueryKind::LambdaCheck;
  if (c == Calculus::Stlc) {
    TypedCtx ctx;
    for (std::size_t i = 0; i < q.entries.size(); ++i)
      ctx.push_back({q.entries[i].name, VarClass::Lambda, *q.types[i]});
    v = check ? lambda::checkStandard(ctx, *q.type, *q.root) : lambda::synthStandard(ctx, *q.root);
  } else {
    const bool lin = c == Calculus::Lin;
    v = check ? lambda::checkCocontextual(q.root->scope, *q.type, *q.root, q.cfg, lin)
              : lambda::synthCocontextual(q.root->scope, *q.root, q.cfg, lin);
  }
  return {std::move(q), std::move(v)};
}

std::string code(const Verdict& v) { return v.ok() ? "ok" : v.error->code; }

}  // namespace

TEST_CASE("standard checking") {
  CHECK(run("lambda-check [] \\x. x : P -> P;", Calculus::Stlc).v.ok());
  CHECK(run("lambda-check [] \\x. \\y. x : P -> Q -> P;", Calculus::Stlc).v.ok());
  CHECK(code(run("lambda-check [] \\x. x : P;", Calculus::Stlc).v) == "not-a-function");
  CHECK(code(run("lambda-check [] \\x. \\y. y : P -> Q -> P;", Calculus::Stlc).v) == "mismatch");
  CHECK(run("lambda-check [s : P + Q] case s of { inl a => inr a; inr b => inl b } : Q + P;",
            Calculus::Stlc)
            .v.ok());
  CHECK(run("lambda-check [z : 0] absurd z : P * Q;", Calculus::Stlc).v.ok());
  CHECK(run("lambda-check [] ((), \\x. x) : 1 * (P -> P);", Calculus::Stlc).v.ok());
  CHECK(code(run("lambda-check [p : P] case p of { inl a => a; inr b => b } : P;",
                 Calculus::Stlc)
                 .v) == "not-a-sum");
}

TEST_CASE("standard synthesis") {
  auto x = run("lambda-synth [x : P] x;", Calculus::Stlc);
  CHECK(printType(*x.v.type) == "P");
  auto app = run("lambda-synth [f : P -> Q, x : P] f x;", Calculus::Stlc);
  CHECK(printType(*app.v.type) == "Q");
  auto pi = run("lambda-synth [p : P * Q] pi2 p;", Calculus::Stlc);
  CHECK(printType(*pi.v.type) == "Q");
  CHECK(code(run("lambda-synth [p : P] pi1 p;", Calculus::Stlc).v) == "not-a-product");
  CHECK(code(run("lambda-synth [p : P] p p;", Calculus::Stlc).v) == "not-a-function");
  auto ann = run("lambda-synth [] (\\x. x : P -> P);", Calculus::Stlc);
  CHECK(printType(*ann.v.type) == "P -> P");
}

TEST_CASE("cocontextual linear") {
  auto var = run("lambda-check [x] x : P;", Calculus::Lin, Preset::Linear);
  REQUIRE(var.v.ok());
  CHECK(printTypedCtx(*var.v.ctx) == "[x : P]");
  auto app = run("lambda-check [f, x] f (x : P) : Q;", Calculus::Lin, Preset::Linear);
  REQUIRE(app.v.ok());
  CHECK(printTypedCtx(*app.v.ctx) == "[f : P -o Q, x : P]");
  auto id = run("lambda-synth [] \\x. (x : P);", Calculus::Lin, Preset::Linear);
  CHECK(printType(*id.v.type) == "P -o P");
  CHECK(id.v.ctx->empty());
  auto pair = run("lambda-synth [a, b] ((a : P), (b : Q));", Calculus::Lin, Preset::Linear);
  CHECK(printType(*pair.v.type) == "P * Q");
  CHECK(printTypedCtx(*pair.v.ctx) == "[a : P, b : Q]");
  auto swap = run("lambda-synth [p] let (a, b) = p in ((b : Q), (a : P));", Calculus::Lin,
                  Preset::Linear);
  REQUIRE(swap.v.ok());
  CHECK(printType(*swap.v.type) == "Q * P");
  CHECK(printTypedCtx(*swap.v.ctx) == "[p : P * Q]");
  auto unit = run("lambda-synth [u] let () = u in ();", Calculus::Lin, Preset::Linear);
  CHECK(printTypedCtx(*unit.v.ctx) == "[u : 1]");
}

TEST_CASE("co-de Bruijn discarding and sharing") {
  auto k = run("lambda-synth [] \\x. \\y. (x : P);", Calculus::Cdb);
  REQUIRE(k.v.ok());
  CHECK(printType(*k.v.type) == "P -> (Top -> P)");
  auto conflict = run("lambda-synth [x] ((x : P), (x : Q));", Calculus::Cdb);
  CHECK(code(conflict.v) == "merge-conflict");
  auto shared = run("lambda-synth [x] ((x : P), (x : P));", Calculus::Cdb);
  REQUIRE(shared.v.ok());
  CHECK(printTypedCtx(*shared.v.ctx) == "[x : P]");
  auto mism = run("lambda-check [] \\x. (x : P) : Q -> Q;", Calculus::Cdb);
  CHECK(code(mism.v) == "mismatch");
}

TEST_CASE("sharing meets types that involve top") {
  auto& oc = orderCounters();
  oc = {};
  auto same = run("lambda-synth [] ((x (\\z. (y : P)) : Q), (x (\\w. (y : P)) : Q));", Calculus::Cdb);
  REQUIRE(same.v.ok());
  CHECK(printTypedCtx(*same.v.ctx) == "[x : (Top -> P) -> Q, y : P]");
  CHECK(oc.meetTopContaining > 0);
  CHECK(oc.meetTopArgument == 0);

  // The two uses disagree, so merging needs the meet rather than equality.
  auto mixed = run("lambda-synth [] ((x (\\z. (y : P)) : Q), (x (q : Q -> P) : Q));", Calculus::Cdb);
  REQUIRE(mixed.v.ok());
  CHECK(printTypedCtx(*mixed.v.ctx) == "[x : (Q -> P) -> Q, y : P, q : Q -> P]");
}
