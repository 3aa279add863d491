#include <algorithm>
#include <sstream>

#include "polcheck/driver.hpp"
#include "polcheck/oracle.hpp"

namespace polcheck::oracle {

using surface::QueryKind;

namespace {

std::string summary(const Verdict& v) {
  if (!v.ok()) return "error " + v.error->code;
  std::string out = "ok";
  if (v.type) out += " type " + printType(*v.type);
  if (v.ctx) out += " context " + printTypedCtx(*v.ctx);
  return out;
}

std::string summary(const Derivations& d) {
  std::ostringstream out;
  out << d.judgements.size() << " judgement(s)";
  const std::size_t shown = std::min<std::size_t>(d.judgements.size(), 3);
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& j = d.judgements[i];
    out << (i == 0 ? ": " : "; ") << (j.type ? printType(*j.type) : "-") << " "
        << printTypedCtx(j.ctx);
  }
  return out.str();
}

}  // namespace

std::vector<QueryKind> kindsOf(scope::Calculus c) {
  switch (c) {
    case scope::Calculus::Stlc:
    case scope::Calculus::Lin:
    case scope::Calculus::Cdb:
      return {QueryKind::LambdaCheck, QueryKind::LambdaSynth};
    case scope::Calculus::Pos:
      return {QueryKind::Command, QueryKind::Expr, QueryKind::Pattern};
    case scope::Calculus::Neg:
      return {QueryKind::Command, QueryKind::Coexpr, QueryKind::Copattern};
    default:
      return {QueryKind::Command, QueryKind::Expr, QueryKind::Pattern, QueryKind::Coexpr,
              QueryKind::Copattern};
  }
}

AgreementReport runAgreement(const CorpusSpec& spec, int minDepth) {
  AgreementReport rep;
  const auto atoms = corpusAtoms(spec.calculus);
  for (const auto& d : generateCorpus(spec)) {
    ++rep.generated;
    scope::ScopedQuery q;
    try {
      q = scope::elaborate(d, spec.calculus, spec.cfg);
    } catch (const scope::ScopeError&) {
      continue;
    }
    ++rep.elaborated;
    const Verdict v = driver::runQuery(q);
    const Derivations all = deriveAll(q, universeFor(q, atoms, minDepth));
    if (v.ok()) ++rep.checkerOk;
    if (agree(v, all, q))
      ++rep.agreed;
    else
      rep.mismatches.push_back({surface::printDirective(d), summary(v), summary(all)});
  }
  return rep;
}

}  // namespace polcheck::oracle
