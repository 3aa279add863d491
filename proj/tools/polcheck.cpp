// Command-line driver over the C interface.

#include <unistd.h>

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "polcheck/polcheck.h"

namespace {

constexpr int kUsage = 2;

struct Owned {
  char* p = nullptr;
  ~Owned() { pc_string_free(p); }
};

struct ReportHandle {
  pc_report* p = nullptr;
  ~ReportHandle() { pc_report_free(p); }
};

bool useColor() {
  const char* env = std::getenv("POLCHECK_COLOR");
  const std::string mode = env ? env : "auto";
  if (mode == "always") return true;
  if (mode == "never") return false;
  if (mode != "auto")
    std::cerr << "polcheck: ignoring POLCHECK_COLOR='" << mode
              << "' (expected auto, never or always)\n";
  return isatty(fileno(stdout)) != 0 && std::getenv("NO_COLOR") == nullptr;
}

// Highlights verdict lines of a text report.
std::string paint(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  for (std::string line; std::getline(in, line);) {
    const bool bad = line.find(": error") != std::string::npos || line == "status: error" ||
                     line == "status: disagree" || line.rfind("counterexample", 0) == 0;
    const bool good = line == "status: ok" || line == "status: agree";
    if (bad)
      out << "\x1b[31m" << line << "\x1b[0m\n";
    else if (good)
      out << "\x1b[32m" << line << "\x1b[0m\n";
    else
      out << line << "\n";
  }
  return out.str();
}

void emit(const std::string& text, bool color) { std::cout << (color ? paint(text) : text); }

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int failed(pc_status s) {
  std::cerr << "polcheck: " << pc_status_name(s) << ": " << pc_last_error() << "\n";
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bidirectional typechecker workbench for polarised calculi", "polcheck"};
  app.set_version_flag("--version", std::string(pc_version()));
  app.require_subcommand(1);

  const std::vector<std::string> calculi = {"stlc", "lin", "cdb", "pos", "neg", "pol", "lnl"};
  const std::vector<std::string> presets = {"linear", "cartesian", "lnl-bang", "lnl-full"};

  std::string calculus, preset, file;
  bool json = false, timing = false;
  int maxSize = 8, count = 200;
  std::uint64_t seed = 1;

  auto* check = app.add_subcommand("check", "Typecheck every query of a program");
  check->add_option("--calculus", calculus, "Calculus")->required()->check(CLI::IsMember(calculi));
  check->add_option("--preset", preset, "Structural preset")->check(CLI::IsMember(presets));
  check->add_flag("--json", json, "Emit the JSON report");
  check->add_flag("--timing", timing, "Record per-query times");
  check->add_option("FILE", file, "Program file")->required();

  auto* elaborate = app.add_subcommand("elaborate", "Print the scoped tree of every query");
  elaborate->add_option("--calculus", calculus, "Calculus")->check(CLI::IsMember(calculi));
  elaborate->add_option("--preset", preset, "Structural preset")->check(CLI::IsMember(presets));
  elaborate->add_option("FILE", file, "Program file")->required();

  auto* oracle = app.add_subcommand("oracle", "Compare the checker with the exhaustive oracle");
  oracle->add_option("--max-size", maxSize, "Term size bound")->required()->check(CLI::NonNegativeNumber);
  oracle->add_option("--seed", seed, "Generator seed")->required();
  oracle->add_option("--calculus", calculus, "Calculus")->required()->check(CLI::IsMember(calculi));
  oracle->add_option("--preset", preset, "Structural preset")->check(CLI::IsMember(presets));
  oracle->add_option("--count", count, "Directives per query kind")->check(CLI::NonNegativeNumber);

  std::string kind;
  double noise = 0.2;
  bool annotationFree = false;
  auto* generate = app.add_subcommand("generate", "Print a deterministic generated corpus");
  generate->add_option("--calculus", calculus, "Calculus")->required()->check(CLI::IsMember(calculi));
  generate->add_option("--preset", preset, "Structural preset")->check(CLI::IsMember(presets));
  generate->add_option("--kind", kind, "Query kind")->required();
  generate->add_option("--seed", seed, "Generator seed")->required();
  generate->add_option("--max-size", maxSize, "Term size bound")->required()->check(CLI::NonNegativeNumber);
  generate->add_option("--count", count, "Number of directives")->check(CLI::NonNegativeNumber);
  generate->add_option("--noise", noise, "Share of perturbed directives")->check(CLI::Range(0.0, 1.0));
  generate->add_flag("--annotation-free", annotationFree, "Avoid annotated constructs");

  auto* dualize = app.add_subcommand("dualize", "Print the dual program");
  dualize->add_option("FILE", file, "Program file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  const char* presetArg = preset.empty() ? nullptr : preset.c_str();
  const bool color = useColor();

  if (*oracle) {
    Owned out;
    int mismatches = 0;
    if (auto s = pc_oracle_run(calculus.c_str(), presetArg, maxSize, seed, count, &out.p, &mismatches);
        s != PC_OK)
      return failed(s);
    emit(out.p, color);
    return mismatches == 0 ? 0 : 1;
  }

  if (*generate) {
    Owned out;
    if (auto s = pc_generate_corpus(calculus.c_str(), presetArg, kind.c_str(), seed, maxSize, count,
                                    noise, annotationFree ? 1 : 0, &out.p);
        s != PC_OK)
      return failed(s);
    std::cout << out.p;
    return 0;
  }

  const auto source = slurp(file);
  if (!source) {
    std::cerr << "polcheck: cannot read '" << file << "'\n";
    return kUsage;
  }

  if (*check) {
    ReportHandle r;
    if (auto s = pc_check_source(source->c_str(), calculus.c_str(), presetArg, timing ? 1 : 0, &r.p);
        s != PC_OK)
      return failed(s);
    if (json)
      std::cout << pc_report_json(r.p);
    else
      emit(pc_report_text(r.p), color);
    return pc_report_exit_code(r.p);
  }

  Owned out;
  pc_status s = *elaborate
                    ? pc_elaborate_source(source->c_str(), calculus.empty() ? nullptr : calculus.c_str(),
                                          presetArg, &out.p)
                    : pc_dualize_source(source->c_str(), &out.p);
  if (s != PC_OK) return failed(s);
  std::cout << out.p;
  return 0;
}
