#include "polcheck/kernel.hpp"

#include <algorithm>

namespace polcheck {

Polarity polarityOf(VarClass c) {
  switch (c) {
    case VarClass::GammaPos:
    case VarClass::DeltaPos:
      return Polarity::Positive;
    case VarClass::GammaNeg:
    case VarClass::DeltaNeg:
      return Polarity::Negative;
    case VarClass::Lambda:
      return Polarity::Unpolarised;
  }
  return Polarity::Unpolarised;
}

bool isSynthesisable(VarClass c) {
  return c == VarClass::Lambda || c == VarClass::GammaPos || c == VarClass::DeltaNeg;
}

const char* varClassName(VarClass c) {
  switch (c) {
    case VarClass::Lambda: return "Γ";
    case VarClass::GammaPos: return "Γ+";
    case VarClass::DeltaPos: return "Δ+";
    case VarClass::GammaNeg: return "Γ-";
    case VarClass::DeltaNeg: return "Δ-";
  }
  return "?";
}

ScopedCtx erase(const TypedCtx& ctx) {
  ScopedCtx out;
  out.reserve(ctx.size());
  for (const auto& e : ctx) out.push_back({e.name, e.cls, -1});
  return out;
}

std::string printTypedCtx(const TypedCtx& ctx) {
  std::string s = "[";
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i) s += ", ";
    s += ctx[i].name + " : " + printType(ctx[i].type);
  }
  return s + "]";
}

std::string printScopedCtx(const ScopedCtx& ctx) {
  std::string s = "[";
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i) s += ", ";
    s += ctx[i].name;
  }
  return s + "]";
}

std::string printCover(const Cover& c) {
  std::string s;
  for (auto step : c) s += step == CoverStep::Left ? 'L' : step == CoverStep::Right ? 'R' : 'B';
  return s;
}

std::string printThinning(const Thinning& t) {
  std::string s;
  for (auto step : t) s += step == ThinStep::Keep ? 'K' : 'D';
  return s;
}

namespace {

template <class Ctx>
std::pair<Ctx, Ctx> splitAlong(const Cover& c, const Ctx& g3) {
  if (c.size() != g3.size())
    throw ArityMismatch("cover has " + std::to_string(c.size()) + " steps but context has " +
                        std::to_string(g3.size()) + " entries");
  Ctx left, right;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] != CoverStep::Right) left.push_back(g3[i]);
    if (c[i] != CoverStep::Left) right.push_back(g3[i]);
  }
  return {std::move(left), std::move(right)};
}

}  // namespace

std::pair<ScopedCtx, ScopedCtx> splitScoped(const Cover& c, const ScopedCtx& g3) {
  return splitAlong(c, g3);
}

std::pair<TypedCtx, TypedCtx> splitTyped(const Cover& c, const TypedCtx& g3) {
  return splitAlong(c, g3);
}

MergeResult mergeTyped(const Cover& c, const TypedCtx& g1, const TypedCtx& g2) {
  TypedCtx out;
  out.reserve(c.size());
  std::size_t i1 = 0, i2 = 0;
  for (auto step : c) {
    if (step == CoverStep::Left) {
      if (i1 >= g1.size()) throw ArityMismatch("cover consumes more left entries than given");
      out.push_back(g1[i1++]);
    } else if (step == CoverStep::Right) {
      if (i2 >= g2.size()) throw ArityMismatch("cover consumes more right entries than given");
      out.push_back(g2[i2++]);
    } else {
      if (i1 >= g1.size() || i2 >= g2.size())
        throw ArityMismatch("cover shares an entry missing from one side");
      const auto& a = g1[i1++];
      const auto& b = g2[i2++];
      if (a.name != b.name) throw ArityMismatch("shared entries " + a.name + "/" + b.name);
      auto m = meet(a.type, b.type);
      if (!m) return {std::nullopt, MergeConflict{a.name, a.type, b.type}};
      out.push_back({a.name, a.cls, *m});
    }
  }
  if (i1 != g1.size() || i2 != g2.size())
    throw ArityMismatch("cover does not consume every merged entry");
  return {std::move(out), std::nullopt};
}

ScopedCtx restrictScoped(const Thinning& t, const ScopedCtx& g2) {
  if (t.size() != g2.size())
    throw ArityMismatch("thinning has " + std::to_string(t.size()) + " steps but context has " +
                        std::to_string(g2.size()) + " entries");
  ScopedCtx out;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] == ThinStep::Keep) out.push_back(g2[i]);
  return out;
}

TypedCtx restrictTyped(const Thinning& t, const TypedCtx& g2) {
  if (t.size() != g2.size()) throw ArityMismatch("thinning/context length mismatch");
  TypedCtx out;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] == ThinStep::Keep) out.push_back(g2[i]);
  return out;
}

TypedCtx extendTyped(const Thinning& t, const TypedCtx& g1, const ScopedCtx& target) {
  if (t.size() != target.size()) throw ArityMismatch("thinning/target length mismatch");
  const auto keeps = static_cast<std::size_t>(std::count(t.begin(), t.end(), ThinStep::Keep));
  if (keeps != g1.size())
    throw ArityMismatch("thinning keeps " + std::to_string(keeps) + " entries but " +
                        std::to_string(g1.size()) + " were synthesised");
  TypedCtx out;
  out.reserve(t.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == ThinStep::Keep) {
      out.push_back(g1[j++]);
    } else {
      out.push_back({target[i].name, target[i].cls, Type::topOf(polarityOf(target[i].cls))});
    }
  }
  return out;
}

StructConfig StructConfig::of(Preset p) {
  StructConfig c;
  c.preset = p;
  switch (p) {
    case Preset::Linear:
      break;
    case Preset::Cartesian:
      c.lambdaCartesian = c.gammaPos = c.deltaPos = c.gammaNeg = c.deltaNeg = true;
      break;
    case Preset::LnlBang:
      c.gammaNeg = true;
      c.allowUUp = true;
      break;
    case Preset::LnlFull:
      c.gammaNeg = c.deltaPos = true;
      c.allowUUp = c.allowDDown = true;
      break;
  }
  return c;
}

bool StructConfig::structural(VarClass cls) const {
  switch (cls) {
    case VarClass::Lambda: return lambdaCartesian;
    case VarClass::GammaPos: return gammaPos;
    case VarClass::DeltaPos: return deltaPos;
    case VarClass::GammaNeg: return gammaNeg;
    case VarClass::DeltaNeg: return deltaNeg;
  }
  return false;
}

const char* presetName(Preset p) {
  switch (p) {
    case Preset::Linear: return "linear";
    case Preset::Cartesian: return "cartesian";
    case Preset::LnlBang: return "lnl-bang";
    case Preset::LnlFull: return "lnl-full";
  }
  return "?";
}

std::optional<Preset> presetFromName(const std::string& s) {
  if (s == "linear") return Preset::Linear;
  if (s == "cartesian") return Preset::Cartesian;
  if (s == "lnl-bang") return Preset::LnlBang;
  if (s == "lnl-full") return Preset::LnlFull;
  return std::nullopt;
}

bool isLegal(const Cover& c, const ScopedCtx& g3, const StructConfig& cfg) {
  if (c.size() != g3.size()) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] == CoverStep::Both && !cfg.structural(g3[i].cls)) return false;
  return true;
}

bool isLegal(const Thinning& t, const ScopedCtx& g2, const StructConfig& cfg) {
  if (t.size() != g2.size()) return false;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] == ThinStep::Drop && !cfg.structural(g2[i].cls)) return false;
  return true;
}

}  // namespace polcheck
