#include "polcheck/polcheck.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "polcheck/driver.hpp"
#include "polcheck/oracle.hpp"

struct pc_report {
  polcheck::driver::Report report;
  std::string json;
  std::string text;
};

namespace {

using namespace polcheck;

thread_local std::string lastError;

pc_status fail(pc_status s, std::string msg) {
  lastError = std::move(msg);
  return s;
}

char* copy(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string where(const surface::ParseError& e) {
  return std::to_string(e.loc().line) + ":" + std::to_string(e.loc().column) + " " + e.code() +
         ": " + e.what();
}

// Resolves names to a setting; a null preset selects the calculus default.
pc_status resolve(const char* calculus, const char* preset, driver::Setting& out) {
  if (!calculus) return fail(PC_EINVAL, "calculus is required");
  auto c = scope::calculusFromName(calculus);
  if (!c) return fail(PC_EINVAL, std::string("unknown calculus '") + calculus + "'");
  Preset p = scope::defaultPreset(*c);
  if (preset) {
    auto named = presetFromName(preset);
    if (!named) return fail(PC_EINVAL, std::string("unknown preset '") + preset + "'");
    p = *named;
  }
  if (!scope::presetAllowed(*c, p))
    return fail(PC_EPRESET, std::string("preset '") + presetName(p) +
                                "' is not available for calculus '" + calculus + "'");
  out = {*c, StructConfig::of(p)};
  return PC_OK;
}

template <class F>
pc_status guarded(F&& body) {
  try {
    lastError.clear();
    return body();
  } catch (const surface::ParseError& e) {
    return fail(PC_EPARSE, where(e));
  } catch (const std::exception& e) {
    return fail(PC_EINTERNAL, e.what());
  } catch (...) {
    return fail(PC_EINTERNAL, "unknown failure");
  }
}

std::string oracleText(const driver::Setting& s, int maxSize, std::uint64_t seed, int count,
                       int& mismatches) {
  std::ostringstream out;
  out << "oracle " << scope::calculusName(s.calculus) << " " << presetName(s.cfg.preset)
      << " seed " << seed << " max-size " << maxSize << "\n";
  mismatches = 0;
  std::ostringstream examples;
  for (auto kind : oracle::kindsOf(s.calculus)) {
    oracle::CorpusSpec spec;
    spec.seed = seed;
    spec.sizeBound = maxSize;
    spec.kind = kind;
    spec.calculus = s.calculus;
    spec.cfg = s.cfg;
    spec.count = count;
    spec.typeDepth = 2;
    const auto rep = oracle::runAgreement(spec);
    out << "  " << surface::queryKindName(kind) << ": " << rep.generated << " generated, "
        << rep.elaborated << " elaborated, " << rep.checkerOk << " ok, "
        << rep.mismatches.size() << " mismatches\n";
    mismatches += static_cast<int>(rep.mismatches.size());
    for (const auto& m : rep.mismatches)
      examples << "counterexample: " << m.directive << "\n  checker: " << m.checker
               << "\n  oracle: " << m.oracle << "\n";
  }
  out << examples.str() << "status: " << (mismatches == 0 ? "agree" : "disagree") << "\n";
  return out.str();
}

}  // namespace

extern "C" {

const char* pc_version(void) { return "0.1.0"; }

const char* pc_last_error(void) { return lastError.c_str(); }

const char* pc_status_name(pc_status s) {
  switch (s) {
    case PC_OK: return "ok";
    case PC_EINVAL: return "invalid-argument";
    case PC_EPRESET: return "preset-mismatch";
    case PC_EPARSE: return "parse-error";
    case PC_EINTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* pc_default_preset(const char* calculus) {
  if (!calculus) return nullptr;
  auto c = scope::calculusFromName(calculus);
  return c ? presetName(scope::defaultPreset(*c)) : nullptr;
}

pc_status pc_check_source(const char* source, const char* calculus, const char* preset,
                          int timing, pc_report** out) {
  if (!source || !out) return fail(PC_EINVAL, "null argument");
  *out = nullptr;
  return guarded([&] {
    driver::Setting s;
    if (auto st = resolve(calculus, preset, s); st != PC_OK) return st;
    auto* r = new pc_report{driver::checkSource(source, s, timing != 0), {}, {}};
    r->json = r->report.json();
    r->text = r->report.text();
    *out = r;
    return PC_OK;
  });
}

const char* pc_report_json(const pc_report* r) { return r ? r->json.c_str() : ""; }
const char* pc_report_text(const pc_report* r) { return r ? r->text.c_str() : ""; }
int pc_report_exit_code(const pc_report* r) { return r ? r->report.exitCode() : 2; }
int pc_report_query_count(const pc_report* r) {
  return r ? static_cast<int>(r->report.queries.size()) : 0;
}
void pc_report_free(pc_report* r) { delete r; }

pc_status pc_elaborate_source(const char* source, const char* calculus, const char* preset,
                              char** out) {
  if (!source || !out) return fail(PC_EINVAL, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::optional<driver::Setting> s;
    if (calculus) {
      s.emplace();
      if (auto st = resolve(calculus, preset, *s); st != PC_OK) return st;
    } else if (preset) {
      return fail(PC_EINVAL, "a preset needs a calculus");
    }
    *out = copy(driver::elaborateSource(source, s));
    return PC_OK;
  });
}

pc_status pc_dualize_source(const char* source, char** out) {
  if (!source || !out) return fail(PC_EINVAL, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = copy(driver::dualizeSource(source));
    return PC_OK;
  });
}

pc_status pc_oracle_run(const char* calculus, const char* preset, int max_size, uint64_t seed,
                        int count, char** out, int* mismatches) {
  if (!out) return fail(PC_EINVAL, "null argument");
  *out = nullptr;
  if (max_size < 0) return fail(PC_EINVAL, "max-size must be non-negative");
  if (count < 0) return fail(PC_EINVAL, "count must be non-negative");
  return guarded([&] {
    driver::Setting s;
    if (auto st = resolve(calculus, preset, s); st != PC_OK) return st;
    int bad = 0;
    *out = copy(oracleText(s, max_size, seed, count, bad));
    if (mismatches) *mismatches = bad;
    return PC_OK;
  });
}

pc_status pc_generate_corpus(const char* calculus, const char* preset, const char* kind,
                             uint64_t seed, int max_size, int count, double noise,
                             int annotation_free, char** out) {
  if (!out || !kind) return fail(PC_EINVAL, "null argument");
  *out = nullptr;
  if (max_size < 0 || count < 0) return fail(PC_EINVAL, "sizes must be non-negative");
  if (!(noise >= 0 && noise <= 1)) return fail(PC_EINVAL, "noise must lie in [0, 1]");
  return guarded([&] {
    driver::Setting s;
    if (auto st = resolve(calculus, preset, s); st != PC_OK) return st;
    auto k = surface::queryKindFromName(kind);
    if (!k) return fail(PC_EINVAL, std::string("unknown query kind '") + kind + "'");
    const auto kinds = oracle::kindsOf(s.calculus);
    if (std::find(kinds.begin(), kinds.end(), *k) == kinds.end())
      return fail(PC_EINVAL, std::string("calculus '") + calculus + "' has no " + kind + " queries");
    oracle::CorpusSpec spec;
    spec.seed = seed;
    spec.sizeBound = max_size;
    spec.kind = *k;
    spec.calculus = s.calculus;
    spec.cfg = s.cfg;
    spec.count = count;
    spec.noise = noise;
    spec.annotationFree = annotation_free != 0;
    *out = copy(oracle::renderCorpus(oracle::generateCorpus(spec), s.calculus));
    return PC_OK;
  });
}

void pc_string_free(char* s) { std::free(s); }

}  // extern "C"
