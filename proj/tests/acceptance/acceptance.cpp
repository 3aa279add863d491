// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.
//   usage: acceptance <source root> <polcheck executable>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "polcheck/driver.hpp"
#include "polcheck/oracle.hpp"
#include "polcheck/systeml.hpp"

using namespace polcheck;
using scope::Calculus;
using surface::QueryKind;
using surface::RawKind;

namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double secondsSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double v, int digits = 2) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

// Checks one directive under the given setting; nullopt when scope rejects it.
std::optional<Verdict> verdictOf(const surface::Directive& d, Calculus c, const StructConfig& cfg) {
  try {
    return driver::runQuery(scope::elaborate(d, c, cfg));
  } catch (const scope::ScopeError&) {
    return std::nullopt;
  }
}

std::vector<surface::Directive> generated(Calculus c, Preset p, QueryKind k, std::uint64_t seed,
                                          int count, int size = 8, int typeDepth = 2) {
  oracle::CorpusSpec spec;
  spec.seed = seed;
  spec.sizeBound = size;
  spec.kind = k;
  spec.calculus = c;
  spec.cfg = StructConfig::of(p);
  spec.count = count;
  spec.typeDepth = typeDepth;
  return oracle::generateCorpus(spec);
}

// Scope elaboration only: "ok" or the scope error code.
std::string scopeCode(const std::string& src, Calculus c, Preset p) {
  auto prog = surface::parseProgram(src);
  for (const auto& d : prog.directives) {
    if (d.tag != surface::Directive::Tag::Query) continue;
    try {
      scope::elaborate(d, c, StructConfig::of(p));
    } catch (const scope::ScopeError& e) {
      return e.code();
    }
  }
  return "ok";
}

std::string errorCode(const std::string& src, Calculus c, Preset p) {
  auto rep = driver::checkSource(src, {c, StructConfig::of(p)}, false);
  if (rep.queries.size() != 1) return "query-count";
  return rep.queries[0].error ? rep.queries[0].error->code : "ok";
}

// Criteria 1 and 2 share the sampled agreement run.
Outcome agreement(const std::vector<std::pair<Calculus, std::vector<QueryKind>>>& targets,
                  int perKind) {
  const auto t0 = std::chrono::steady_clock::now();
  int compared = 0, mismatches = 0;
  std::string first;
  for (const auto& [calc, kinds] : targets)
    for (auto kind : kinds)
      for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        oracle::CorpusSpec spec;
        spec.seed = seed * 7919 + static_cast<std::uint64_t>(kind);
        spec.sizeBound = 8;
        spec.kind = kind;
        spec.calculus = calc;
        spec.cfg = StructConfig::of(scope::defaultPreset(calc));
        spec.count = perKind / 4;
        spec.typeDepth = 2;
        auto rep = oracle::runAgreement(spec, 2);
        compared += rep.elaborated;
        mismatches += static_cast<int>(rep.mismatches.size());
        if (first.empty() && !rep.mismatches.empty()) first = rep.mismatches[0].directive;
      }
  const double secs = secondsSince(t0);
  Outcome o;
  o.pass = mismatches == 0 && compared > 0 && secs <= 120;
  o.detail = std::to_string(compared) + " directives compared, " + std::to_string(mismatches) +
             " mismatches, " + fixed(secs) + " s";
  if (!first.empty()) o.detail += "; first: " + first;
  return o;
}

Outcome zeroAnnotation(const fs::path& root) {
  Outcome o{true, ""};
  for (auto [file, calc] : {std::pair{"zero_annotation_pos.pl0", Calculus::Pos},
                            std::pair{"zero_annotation_neg.pl0", Calculus::Neg}}) {
    const std::string src = slurp(root / "corpus" / file);
    auto prog = surface::parseProgram(src);
    int queries = 0;
    std::size_t annotations = 0;
    for (const auto& d : prog.directives)
      if (d.tag == surface::Directive::Tag::Query) {
        ++queries;
        annotations += surface::countAnnotations(*d.term);
      }
    auto rep = driver::checkSource(src, {calc, StructConfig::linear()}, false);
    o.pass = o.pass && queries >= 20 && annotations == 0 && rep.ok();
    o.detail += std::string(o.detail.empty() ? "" : "; ") + file + ": " + std::to_string(queries) +
                " programs, " + std::to_string(annotations) + " annotations, " +
                (rep.ok() ? "all check" : "some fail");
  }
  return o;
}

Outcome annotationLocality(const fs::path& root) {
  auto& rc = systeml::ruleCounters();
  rc = {};
  int checked = 0;
  for (Calculus c : {Calculus::Pos, Calculus::Neg, Calculus::Pol, Calculus::Lnl})
    for (Preset p : {Preset::Linear, Preset::Cartesian, Preset::LnlBang, Preset::LnlFull}) {
      if (!scope::presetAllowed(c, p)) continue;
      for (auto k : oracle::kindsOf(c))
        for (const auto& d : generated(c, p, k, 101 + static_cast<int>(k), 400)) {
          verdictOf(d, c, StructConfig::of(p));
          ++checked;
        }
    }
  // The recorded generated corpus files, under the setting named in the file.
  for (const auto& entry : fs::directory_iterator(root / "corpus")) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("gen_", 0) != 0) continue;
    std::istringstream parts(name.substr(4));
    std::string calc, preset;
    std::getline(parts, calc, '_');
    std::getline(parts, preset, '_');
    auto c = scope::calculusFromName(calc);
    auto p = presetFromName(preset);
    if (!c || !p || familyOf(*c) != Family::SystemL) continue;
    for (const auto& d : surface::parseProgram(slurp(entry.path())).directives)
      if (d.tag == surface::Directive::Tag::Query) {
        verdictOf(d, *c, StructConfig::of(*p));
        ++checked;
      }
  }
  const std::array<RawKind, 4> sites = {RawKind::MatchDown, RawKind::ComatchUp, RawKind::UUpIntro,
                                        RawKind::DDownIntro};
  std::uint64_t inside = 0, outside = 0;
  bool everySiteRead = true;
  for (std::size_t i = 0; i < rc.annotationReads.size(); ++i) {
    const bool site = std::find(sites.begin(), sites.end(), static_cast<RawKind>(i)) != sites.end();
    (site ? inside : outside) += rc.annotationReads[i];
    if (site && rc.annotationReads[i] == 0) everySiteRead = false;
  }
  Outcome o;
  o.pass = outside == 0 && everySiteRead;
  o.detail = std::to_string(checked) + " directives, " + std::to_string(inside) +
             " reads in the four handlers (each > 0: " + (everySiteRead ? "yes" : "no") + "), " +
             std::to_string(outside) + " elsewhere";
  return o;
}

TypedCtx dualCtx(TypedCtx ctx) {
  for (auto& e : ctx) {
    e.cls = systeml::dualize(e.cls);
    e.type = systeml::dualize(e.type);
  }
  return ctx;
}

TypedCtx byName(TypedCtx ctx) {
  std::sort(ctx.begin(), ctx.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return ctx;
}

Outcome duality() {
  int directives = 0, violations = 0;
  std::string first;
  for (auto k : oracle::kindsOf(Calculus::Pol))
    for (const auto& d : generated(Calculus::Pol, Preset::Linear, k, 500 + static_cast<int>(k), 300)) {
      ++directives;
      const auto dual = systeml::dualize(d);
      bool good = surface::sameDirective(systeml::dualize(dual), d);
      const auto a = verdictOf(d, Calculus::Pol, StructConfig::linear());
      const auto b = verdictOf(dual, Calculus::Pol, StructConfig::linear());
      good = good && a.has_value() == b.has_value();
      if (good && a) {
        good = a->ok() == b->ok();
        if (good && a->ok()) {
          good = a->type.has_value() == b->type.has_value() &&
                 (!a->type || systeml::dualize(*a->type) == *b->type) &&
                 a->ctx.has_value() == b->ctx.has_value() &&
                 (!a->ctx || byName(dualCtx(*a->ctx)) == byName(*b->ctx));
        }
      }
      if (!good) {
        ++violations;
        if (first.empty()) first = surface::printDirective(d);
      }
    }
  Outcome o;
  o.pass = directives >= 1000 && violations == 0;
  o.detail = std::to_string(directives) + " directives, " + std::to_string(violations) +
             " violations";
  if (!first.empty()) o.detail += "; first: " + first;
  return o;
}

Outcome modeTable() {
  using scope::Judgement;
  struct Sample {
    Judgement cls;
    RawKind kind;
    const char* text;
  };
  const std::vector<Sample> samples = {
      {Judgement::Expr, RawKind::MuPlus, "mu+ a. < () | a >"},
      {Judgement::Expr, RawKind::UnitI, "()"},
      {Judgement::Expr, RawKind::Tuple, "((), ())"},
      {Judgement::Expr, RawKind::InlE, "inl ()"},
      {Judgement::Expr, RawKind::InrE, "inr ()"},
      {Judgement::Expr, RawKind::SimIntro, "~ []"},
      {Judgement::Expr, RawKind::DownIntro, "down comatch {}"},
      {Judgement::Expr, RawKind::MatchDDown, "match { Down y => < y | comatch {} > }"},
      {Judgement::Pattern, RawKind::MutPlus, "mut+ z. < z | match {} >"},
      {Judgement::Pattern, RawKind::MatchUnit, "match { () => < () | match {} > }"},
      {Judgement::Pattern, RawKind::MatchPair, "match { (a, b) => < (a, b) | match {} > }"},
      {Judgement::Pattern, RawKind::MatchSum,
       "match { inl a => < a | match {} >; inr b => < b | match {} > }"},
      {Judgement::Pattern, RawKind::MatchEmpty, "match {}"},
      {Judgement::Pattern, RawKind::MatchSim, "match { ~y => < y | comatch {} > }"},
      {Judgement::Pattern, RawKind::MatchDown, "match { down(x : N) => < [] | x > }"},
      {Judgement::Pattern, RawKind::DDownIntro, "Down([] : N)"},
      {Judgement::Copattern, RawKind::MuMinus, "mu- a. < a | comatch {} >"},
      {Judgement::Copattern, RawKind::ComatchBot, "comatch { < () | match {} > => [] }"},
      {Judgement::Copattern, RawKind::ComatchPar, "comatch { < [a, b] | comatch {} > => [a, b] }"},
      {Judgement::Copattern, RawKind::ComatchWith,
       "comatch { < a | comatch {} > => pi1 a; < b | comatch {} > => pi2 b }"},
      {Judgement::Copattern, RawKind::ComatchEmpty, "comatch {}"},
      {Judgement::Copattern, RawKind::ComatchNot, "comatch { < x | match {} > => not x }"},
      {Judgement::Copattern, RawKind::ComatchUp, "comatch { < () | k > => up(k : P) }"},
      {Judgement::Copattern, RawKind::UUpIntro, "Up(() : I)"},
      {Judgement::Coexpr, RawKind::MutMinus, "mut- q. < [] | q >"},
      {Judgement::Coexpr, RawKind::CounitBot, "[]"},
      {Judgement::Coexpr, RawKind::Cotuple, "[[], []]"},
      {Judgement::Coexpr, RawKind::Pi1E, "pi1 []"},
      {Judgement::Coexpr, RawKind::Pi2E, "pi2 []"},
      {Judgement::Coexpr, RawKind::NotCointro, "not ()"},
      {Judgement::Coexpr, RawKind::UpCointro, "up match {}"},
      {Judgement::Coexpr, RawKind::ComatchUUp, "comatch { < x | match {} > => Up x }"},
      {Judgement::Command, RawKind::Cut, "< () | match {} >"},
  };
  const std::vector<std::pair<Judgement, const char*>> shapes = {
      {Judgement::Expr, "expr [] %s : I;"},
      {Judgement::Pattern, "pattern [] %s;"},
      {Judgement::Copattern, "copattern [] %s;"},
      {Judgement::Coexpr, "coexpr [] %s : N;"},
      {Judgement::Command, "command [] %s;"},
  };
  const std::string atoms = "atom P positive; atom N negative;\n";
  int cells = 0, wrong = 0;
  std::string first;
  for (const auto& s : samples) {
    if (scope::constructClass(s.kind) != s.cls) {
      ++wrong;
      if (first.empty()) first = surface::rawKindName(s.kind);
    }
    for (const auto& [cls, shape] : shapes) {
      std::string src = shape;
      src.replace(src.find("%s"), 2, s.text);
      const std::string code = scopeCode(atoms + src, Calculus::Lnl, Preset::Cartesian);
      ++cells;
      if ((cls == s.cls) != (code == "ok") || (cls != s.cls && code != "mode-error")) {
        ++wrong;
        if (first.empty()) first = src + " -> " + code;
      }
    }
  }
  // Every System L constructor must be swept.
  int missing = 0;
  for (int k = static_cast<int>(RawKind::Cut); k <= static_cast<int>(RawKind::ComatchUUp); ++k)
    if (std::none_of(samples.begin(), samples.end(),
                     [&](const Sample& s) { return static_cast<int>(s.kind) == k; }))
      ++missing;
  Outcome o;
  o.pass = wrong == 0 && missing == 0;
  o.detail = std::to_string(samples.size()) + " constructors x 5 positions = " +
             std::to_string(cells) + " cells, " + std::to_string(wrong) + " wrong, " +
             std::to_string(missing) + " constructors unswept";
  if (!first.empty()) o.detail += "; first: " + first;
  return o;
}

Outcome truthTable() {
  const std::string atoms = "atom P positive; atom N negative;\n";
  struct Row {
    const char* label;
    const char* program;
    std::array<bool, 4> accepted;  // linear, cartesian, lnl-bang, lnl-full
  };
  const std::vector<Row> rows = {
      {"used twice", "command [k : P * P] < (x, x) | k >;", {false, true, false, false}},
      {"unused", "expr [k : I] mu+ a. < () | k > : P;", {false, true, false, true}},
      {"negative duplication", "command [y : N] < mut- a. < z | y > | y >;",
       {false, true, true, true}},
  };
  const std::array<Preset, 4> presets = {Preset::Linear, Preset::Cartesian, Preset::LnlBang,
                                         Preset::LnlFull};
  int matched = 0;
  std::string table;
  for (const auto& r : rows) {
    table += std::string(table.empty() ? "" : ", ") + r.label + " ";
    for (std::size_t i = 0; i < presets.size(); ++i) {
      const bool ok = errorCode(atoms + r.program, Calculus::Lnl, presets[i]) == "ok";
      table += ok ? '+' : '-';
      if (ok == r.accepted[i]) ++matched;
    }
  }
  Outcome o;
  o.pass = matched == 12;
  o.detail = std::to_string(matched) + "/12 cells match (" + table + ")";
  return o;
}

Outcome topMeet() {
  auto& oc = orderCounters();
  oc = {};
  int terms = 0;
  for (auto k : {QueryKind::LambdaSynth, QueryKind::LambdaCheck})
    for (const auto& d : generated(Calculus::Cdb, Preset::Cartesian, k, 900 + static_cast<int>(k),
                                   6000)) {
      verdictOf(d, Calculus::Cdb, StructConfig::cartesian());
      ++terms;
    }
  Outcome o;
  // Gated on arguments that involve top anywhere; the narrower count of
  // arguments that are top themselves is reported alongside.
  o.pass = terms >= 10000 && oc.meetCalls > 0 && oc.meetTopContaining == 0;
  o.detail = std::to_string(terms) + " terms, " + std::to_string(oc.meetCalls) + " meets, " +
             std::to_string(oc.meetTopContaining) + " with an argument involving top, " +
             std::to_string(oc.meetTopArgument) + " with an argument that is top";
  return o;
}

Outcome arrowDrop() {
  auto rep = driver::checkSource("lambda-synth [] \\x. \\y. (x : P);",
                                 {Calculus::Cdb, StructConfig::cartesian()}, false);
  const std::string got =
      rep.queries.size() == 1 && rep.queries[0].type ? *rep.queries[0].type : "(none)";
  return {got == "P -> (Top -> P)", "synthesised '" + got + "'"};
}

Outcome lnlSugar() {
  const std::string atoms = "atom P positive; atom N negative;\n";
  auto prog = surface::parseProgram(atoms + "expr [] x : !P; coexpr [] y : ?N;");
  const std::string bang = printType(*prog.directives[2].type);
  const std::string quest = printType(*prog.directives[3].type);
  bool pass = bang == "down (Up P)" && quest == "up (Down N)";

  struct Program {
    const char* text;
    bool needsDown;  // lnl-bang enables only Up
  };
  const std::vector<Program> programs = {
      {"copattern [] Up((a) : P);", false},
      {"expr [] down(Up((a) : P)) : !P;", false},
      {"pattern [] Down((x) : N);", true},
      {"coexpr [] up(Down((x) : N)) : ?N;", true},
      {"expr [j : I] match { Down y => < y | comatch { < () | j > => [] } > } : Down bot;", true},
      {"coexpr [k : P] comatch { < x | k > => Up x } : Up P;", false},
  };
  int good = 0;
  for (const auto& p : programs) {
    const std::string src = atoms + p.text;
    const bool full = errorCode(src, Calculus::Lnl, Preset::LnlFull) == "ok";
    const bool bangOk = errorCode(src, Calculus::Lnl, Preset::LnlBang) == "ok";
    const bool linear = errorCode(src, Calculus::Lnl, Preset::Linear) == "preset-violation";
    const bool cart = errorCode(src, Calculus::Lnl, Preset::Cartesian) == "preset-violation";
    if (full && bangOk == !p.needsDown && linear && cart) ++good;
  }
  pass = pass && good == static_cast<int>(programs.size());
  return {pass, "!P -> '" + bang + "', ?N -> '" + quest + "', " + std::to_string(good) + "/" +
                    std::to_string(programs.size()) +
                    " programs check only under LNL presets and hit preset-violation otherwise"};
}

struct Captured {
  std::string out;
  int code = -1;
};

Captured run(const std::string& command) {
  Captured c;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return c;
  std::array<char, 4096> buf;
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) c.out.append(buf.data(), n);
  const int status = pclose(pipe);
  c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

Outcome golden(const fs::path& root, const std::string& cli) {
  std::ifstream cases(root / "tests" / "golden" / "cases.txt");
  int total = 0, stable = 0;
  std::string first;
  for (std::string line; std::getline(cases, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string name, code, args;
    std::getline(fields, name, '|');
    std::getline(fields, code, '|');
    std::getline(fields, args);
    name = trim(name);
    ++total;
    const std::string command = "cd '" + root.string() + "' && '" + cli + "' " + trim(args);
    const auto a = run(command);
    const auto b = run(command);
    const std::string expected = slurp(root / "tests" / "golden" / "expected" / (name + ".json"));
    if (a.out == b.out && a.out == expected && a.code == b.code && a.code == std::stoi(trim(code)))
      ++stable;
    else if (first.empty())
      first = name;
  }
  Outcome o;
  o.pass = total >= 30 && stable == total;
  o.detail = std::to_string(stable) + "/" + std::to_string(total) +
             " reports byte-identical across two runs and to the recording";
  if (!first.empty()) o.detail += "; first failure: " + first;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <source root> <polcheck executable>\n";
    return 2;
  }
  const fs::path root = argv[1];
  const std::string cli = argv[2];

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"oracle agreement, standard and linear lambda",
       [] {
         return agreement({{Calculus::Stlc, {QueryKind::LambdaCheck, QueryKind::LambdaSynth}},
                           {Calculus::Lin, {QueryKind::LambdaCheck, QueryKind::LambdaSynth}}},
                          20000);
       }},
      {"oracle agreement, positive and negative commands",
       [] {
         return agreement({{Calculus::Pos, {QueryKind::Command}},
                           {Calculus::Neg, {QueryKind::Command}}},
                          20000);
       }},
      {"zero-annotation fragments", [&] { return zeroAnnotation(root); }},
      {"annotation locality", [&] { return annotationLocality(root); }},
      {"duality", duality},
      {"mode table", modeTable},
      {"linear/cartesian truth table", truthTable},
      {"no meet over types involving top", topMeet},
      {"arrow introduction drops to Top", arrowDrop},
      {"LNL sugar", lnlSugar},
      {"golden CLI reports", [&] { return golden(root, cli); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << " (" << criteria[i].first
              << "): " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
