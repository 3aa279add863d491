#include <algorithm>
#include <set>

#include "polcheck/scope.hpp"

namespace polcheck::scope {

using surface::Directive;
using surface::QueryKind;
using surface::RawTerm;

namespace {

[[noreturn]] void fail(const char* code, const std::string& msg, Loc loc) {
  throw ScopeError(code, msg, loc);
}

VarClass classFor(bool synthSide, Polarity p) {
  if (p == Polarity::Positive) return synthSide ? VarClass::GammaPos : VarClass::DeltaPos;
  return synthSide ? VarClass::DeltaNeg : VarClass::GammaNeg;
}

const char* roleName(VarClass c) {
  switch (c) {
    case VarClass::Lambda: return "variable";
    case VarClass::GammaPos: return "positive variable (Γ+)";
    case VarClass::DeltaPos: return "positive covariable (Δ+)";
    case VarClass::GammaNeg: return "negative variable (Γ-)";
    case VarClass::DeltaNeg: return "negative covariable (Δ-)";
  }
  return "?";
}

bool typeAllowed(TypeKind k, Calculus c) {
  switch (c) {
    case Calculus::Stlc:
      return k == TypeKind::LAtom || k == TypeKind::Unit1 || k == TypeKind::Zero0 ||
             k == TypeKind::Arrow || k == TypeKind::Prod || k == TypeKind::Sum;
    case Calculus::Lin:
      return k == TypeKind::LAtom || k == TypeKind::Unit1 || k == TypeKind::Lolli ||
             k == TypeKind::Prod;
    case Calculus::Cdb:
      return k == TypeKind::LAtom || k == TypeKind::Unit1 || k == TypeKind::Arrow ||
             k == TypeKind::Prod;
    case Calculus::Pos:
      return k == TypeKind::PAtom || k == TypeKind::I || k == TypeKind::Tensor ||
             k == TypeKind::ZeroP || k == TypeKind::Plus;
    case Calculus::Neg:
      return k == TypeKind::NAtom || k == TypeKind::Bot || k == TypeKind::Par ||
             k == TypeKind::One1 || k == TypeKind::With;
    case Calculus::Pol:
      return familyOf(k) == Family::SystemL && !isTopKind(k) && k != TypeKind::UUp &&
             k != TypeKind::DDown;
    case Calculus::Lnl:
      return familyOf(k) == Family::SystemL && !isTopKind(k);
  }
  return false;
}

bool constructAllowed(RawKind k, Calculus c) {
  switch (c) {
    case Calculus::Stlc:
    case Calculus::Lin:
    case Calculus::Cdb:
      return lambdaMode(k, isCocontextual(c)).has_value();
    case Calculus::Pos:
      return k == RawKind::Var || k == RawKind::Cut ||
             (constructClass(k) && polarityOf(*constructClass(k)) == Polarity::Positive);
    case Calculus::Neg:
      return k == RawKind::Var || k == RawKind::Cut ||
             (constructClass(k) && polarityOf(*constructClass(k)) == Polarity::Negative);
    case Calculus::Pol:
      if (k == RawKind::UUpIntro || k == RawKind::DDownIntro || k == RawKind::MatchDDown ||
          k == RawKind::ComatchUUp)
        return false;
      return !surface::isLambdaKind(k) || k == RawKind::Var;
    case Calculus::Lnl:
      return !surface::isLambdaKind(k) || k == RawKind::Var;
  }
  return false;
}

std::string describeType(const Type& t) { return "'" + printType(t) + "'"; }

void checkTypeAllowed(const Type& t, Calculus c, Loc loc) {
  if (!typeAllowed(t.kind(), c))
    fail("calculus-restriction",
         "type " + describeType(t) + " uses a connective outside the " + calculusName(c) +
             " calculus",
         loc);
  for (int i = 0; i < arity(t.kind()); ++i)
    checkTypeAllowed(i == 0 ? t.lhs() : t.rhs(), c, loc);
}

bool isBinaryKind(RawKind k) {
  switch (k) {
    case RawKind::App:
    case RawKind::Pair:
    case RawKind::LetUnit:
    case RawKind::LetPair:
    case RawKind::Cut:
    case RawKind::Tuple:
    case RawKind::Cotuple:
    case RawKind::MatchSum:
    case RawKind::ComatchWith:
      return true;
    default:
      return false;
  }
}

class Elaborator {
 public:
  Elaborator(Calculus calc, const StructConfig& cfg) : calc_(calc), cfg_(cfg) {}

  ScopedQuery run(const Directive& d) {
    ScopedQuery q;
    q.kind = d.kind;
    q.calculus = calc_;
    q.cfg = cfg_;
    q.type = d.type;
    q.loc = d.loc;
    const Family fam = familyOf(calc_);
    if (surface::queryFamily(d.kind) != fam)
      fail("calculus-restriction",
           std::string(surface::queryKindName(d.kind)) + " queries are not part of the " +
               calculusName(calc_) + " calculus",
           d.loc);
    if (calc_ == Calculus::Pos &&
        (d.kind == QueryKind::Copattern || d.kind == QueryKind::Coexpr))
      fail("calculus-restriction", "negative queries are outside the positive fragment", d.loc);
    if (calc_ == Calculus::Neg && (d.kind == QueryKind::Pattern || d.kind == QueryKind::Expr))
      fail("calculus-restriction", "positive queries are outside the negative fragment", d.loc);
    if (d.type) checkTypeAllowed(*d.type, calc_, d.loc);
    if (d.type && (d.kind == QueryKind::Expr || d.kind == QueryKind::Coexpr) &&
        polarityOf(*d.type) != polarityOf(queryJudgement(d.kind)))
      fail("polarity-mismatch",
           std::string(surface::queryKindName(d.kind)) + " queries need a " +
               polarityName(polarityOf(queryJudgement(d.kind))) + " type, not '" +
               printType(*d.type) + "'",
           d.loc);

    declareEntries(d);
    Judgement want = queryJudgement(d.kind);
    if (want == Judgement::Expr || want == Judgement::Pattern || want == Judgement::Copattern ||
        want == Judgement::Coexpr || want == Judgement::Command) {
      q.root = elabL(*d.term, want);
    } else {
      q.root = elabLambda(*d.term, want);
    }

    // Entries left unresolved were never used; they default to Γ+.
    for (auto& b : table_)
      if (!b.cls) b.cls = fam == Family::Lambda ? VarClass::Lambda : VarClass::GammaPos;

    finalize(*q.root);
    for (std::size_t i = 0; i < d.ctx.size(); ++i) {
      q.entries.push_back(entryOf(static_cast<int>(i)));
      q.types.push_back(d.ctx[i].type);
    }
    std::sort(implicit_.begin(), implicit_.end());
    for (int id : implicit_) {
      q.entries.push_back(entryOf(id));
      q.types.emplace_back();
    }
    for (std::size_t i = 0; i < q.entries.size(); ++i) {
      const int id = q.entries[i].id;
      const bool used = std::any_of(q.root->scope.begin(), q.root->scope.end(),
                                    [&](const ScopedEntry& e) { return e.id == id; });
      q.rootThinning.push_back(used ? ThinStep::Keep : ThinStep::Drop);
      if (!used && enforce() && !cfg_.structural(q.entries[i].cls))
        fail("unused-variable",
             "context entry '" + q.entries[i].name + "' is never used (linear " +
                 roleName(q.entries[i].cls) + ")",
             table_[id].loc);
    }
    checkLegality(*q.root);
    return q;
  }

 private:
  struct Binding {
    std::string name;
    std::optional<VarClass> cls;  // unresolved only for unmarked Σ directive entries
    Loc loc;
  };

  bool enforce() const { return calc_ != Calculus::Stlc; }

  void declareEntries(const Directive& d) {
    const Family fam = familyOf(calc_);
    std::set<std::pair<std::string, int>> seen;
    for (const auto& e : d.ctx) {
      Binding b{e.name, std::nullopt, e.loc};
      if (fam == Family::Lambda) {
        if (calc_ == Calculus::Stlc && !e.type)
          fail("context-shape",
               "the standard λ-calculus needs a type for context entry '" + e.name + "'",
               e.loc);
        if (calc_ != Calculus::Stlc && e.type)
          fail("context-shape",
               "cocontextual calculi synthesise context types; drop the type of '" + e.name +
                   "'",
               e.loc);
        if (e.type) checkTypeAllowed(*e.type, calc_, e.loc);
        b.cls = VarClass::Lambda;
      } else if (e.type) {
        checkTypeAllowed(*e.type, calc_, e.loc);
        b.cls = classFor(false, polarityOf(*e.type));
      } else if (e.mark) {
        b.cls = classFor(true, *e.mark);
        if ((calc_ == Calculus::Pos && *e.mark == Polarity::Negative) ||
            (calc_ == Calculus::Neg && *e.mark == Polarity::Positive))
          fail("calculus-restriction",
               "entry '" + e.name + "' has a polarity outside the " + calculusName(calc_) +
                   " fragment",
               e.loc);
      } else if (calc_ == Calculus::Pos) {
        b.cls = VarClass::GammaPos;
      } else if (calc_ == Calculus::Neg) {
        b.cls = VarClass::DeltaNeg;
      }
      int pol = b.cls ? static_cast<int>(polarityOf(*b.cls)) : -1;
      if (!seen.insert({e.name, pol}).second)
        fail("duplicate-entry", "context entry '" + e.name + "' is listed twice", e.loc);
      env_.push_back(static_cast<int>(table_.size()));
      table_.push_back(std::move(b));
    }
  }

  NodePtr make(Form form, RawKind k, Judgement j, Loc loc) {
    auto n = std::make_shared<Node>();
    n->form = form;
    n->kind = k;
    n->judgement = j;
    n->loc = loc;
    return n;
  }

  // During construction `scope` holds entries whose only meaningful field is
  // the id; names and classes are filled in by `finalize`.
  static void setScope(Node& n, const std::vector<int>& ids) {
    n.scope.clear();
    for (int id : ids) n.scope.push_back({"", VarClass::Lambda, id});
  }

  static std::vector<int> idsOf(const Node& n) {
    std::vector<int> out;
    for (const auto& e : n.scope) out.push_back(e.id);
    return out;
  }

  void scopeFromKids(Node& n) {
    std::vector<int> ids;
    for (const auto& k : n.kids) {
      auto kidIds = idsOf(*k);
      std::vector<int> merged;
      std::set_union(ids.begin(), ids.end(), kidIds.begin(), kidIds.end(),
                     std::back_inserter(merged));
      ids = std::move(merged);
    }
    for (const auto& b : n.binders) ids.erase(std::remove(ids.begin(), ids.end(), b.id), ids.end());
    setScope(n, ids);
  }

  int bind(const std::string& name, VarClass cls, Loc loc) {
    int id = static_cast<int>(table_.size());
    table_.push_back({name, cls, loc});
    env_.push_back(id);
    return id;
  }

  void unbind(std::size_t count) { env_.resize(env_.size() - count); }

  // -- λ-calculi -------------------------------------------------------------

  NodePtr elabLambda(const RawTerm& t, Judgement want) {
    if (!surface::isLambdaKind(t.kind))
      fail("calculus-restriction", "System L syntax inside a λ-calculus query", t.loc);
    const bool coco = isCocontextual(calc_);
    auto mode = lambdaMode(t.kind, coco);
    if (!mode)
      fail("calculus-restriction",
           std::string("'") + surface::rawKindName(t.kind) + "' is not part of the " +
               calculusName(calc_) + " calculus",
           t.loc);
    if (want == Judgement::Syn && *mode == Judgement::Chk)
      fail("mode-error",
           std::string("checkable term '") + surface::rawKindName(t.kind) +
               "' in synthesising position requires annotation",
           t.loc);
    NodePtr n = lambdaNode(t, *mode, coco);
    if (want == Judgement::Chk && *mode == Judgement::Syn) {
      auto e = make(Form::Emb, t.kind, Judgement::Chk, t.loc);
      e->kids.push_back(n);
      scopeFromKids(*e);
      return e;
    }
    return n;
  }

  NodePtr lambdaNode(const RawTerm& t, Judgement mode, bool coco) {
    auto n = make(Form::Plain, t.kind, mode, t.loc);
    const auto chk = Judgement::Chk;
    const auto syn = Judgement::Syn;
    switch (t.kind) {
      case RawKind::Var: {
        n->name = t.name;
        n->varId = lookupLambda(t.name, t.loc);
        n->varClass = VarClass::Lambda;
        setScope(*n, {n->varId});
        return n;
      }
      case RawKind::Lam: {
        int id = bind(t.binders[0], VarClass::Lambda, t.binderLocs[0]);
        n->binders.push_back({t.binders[0], VarClass::Lambda, id, t.binderLocs[0]});
        n->kids.push_back(elabLambda(*t.kids[0], coco ? syn : chk));
        unbind(1);
        break;
      }
      case RawKind::App:
        n->kids.push_back(elabLambda(*t.kids[0], coco ? chk : syn));
        n->kids.push_back(elabLambda(*t.kids[1], coco ? syn : chk));
        break;
      case RawKind::Annot:
        checkTypeAllowed(*t.annot, calc_, t.loc);
        n->annot = t.annot;
        n->kids.push_back(elabLambda(*t.kids[0], chk));
        break;
      case RawKind::Unit:
        break;
      case RawKind::Pair:
        n->kids.push_back(elabLambda(*t.kids[0], coco ? syn : chk));
        n->kids.push_back(elabLambda(*t.kids[1], coco ? syn : chk));
        break;
      case RawKind::Proj1:
      case RawKind::Proj2:
        n->kids.push_back(elabLambda(*t.kids[0], syn));
        break;
      case RawKind::Inl:
      case RawKind::Inr:
      case RawKind::Absurd:
        n->kids.push_back(elabLambda(*t.kids[0], chk));
        break;
      case RawKind::Case:
        n->kids.push_back(elabLambda(*t.kids[0], syn));
        for (int i = 0; i < 2; ++i)
          n->kids.push_back(lambdaBranch({t.binders[i]}, {t.binderLocs[i]}, *t.kids[i + 1], chk));
        break;
      case RawKind::LetUnit:
        n->kids.push_back(elabLambda(*t.kids[0], chk));
        n->kids.push_back(elabLambda(*t.kids[1], syn));
        break;
      case RawKind::LetPair:
        n->kids.push_back(elabLambda(*t.kids[0], chk));
        n->kids.push_back(lambdaBranch(t.binders, t.binderLocs, *t.kids[1], syn));
        break;
      default:
        fail("calculus-restriction", "unexpected construct", t.loc);
    }
    scopeFromKids(*n);
    return n;
  }

  NodePtr lambdaBranch(const std::vector<std::string>& names, const std::vector<Loc>& locs,
                       const RawTerm& body, Judgement want) {
    auto br = make(Form::Branch, body.kind, want, body.loc);
    for (std::size_t i = 0; i < names.size(); ++i) {
      int id = bind(names[i], VarClass::Lambda, locs[i]);
      br->binders.push_back({names[i], VarClass::Lambda, id, locs[i]});
    }
    br->kids.push_back(elabLambda(body, want));
    unbind(names.size());
    scopeFromKids(*br);
    return br;
  }

  int lookupLambda(const std::string& name, Loc loc) {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (table_[*it].name == name) return *it;
    if (calc_ == Calculus::Stlc)
      fail("unbound-variable", "unbound variable '" + name + "'", loc);
    return implicitEntry(name, VarClass::Lambda, loc);
  }

  // A free variable in a synthesised position that the directive does not
  // list joins the synthesised context, visible to every later use.
  int implicitEntry(const std::string& name, VarClass cls, Loc loc) {
    int id = static_cast<int>(table_.size());
    table_.push_back({name, cls, loc});
    env_.insert(env_.begin(), id);
    implicit_.push_back(id);
    return id;
  }

  // -- System L --------------------------------------------------------------

  std::optional<Polarity> headPolarity(const RawTerm& t) const {
    if (t.kind == RawKind::Var) {
      for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
        const auto& b = table_[*it];
        if (b.name == t.name) {
          if (b.cls) return polarityOf(*b.cls);
          return std::nullopt;
        }
      }
      return std::nullopt;
    }
    if (auto c = constructClass(t.kind)) {
      if (*c == Judgement::Command) return std::nullopt;
      return polarityOf(*c);
    }
    return std::nullopt;
  }

  int lookupL(const std::string& name, Judgement pos, Loc loc) {
    const Polarity want = polarityOf(pos);
    const bool synthSide = usesSynthesisedVars(pos);
    const VarClass cls = classFor(synthSide, want);
    std::optional<int> other;
    for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
      auto& b = table_[*it];
      if (b.name != name) continue;
      if (!b.cls) {
        if (!synthSide)
          fail("wrong-context",
               "'" + name + "' has no declared type but is used as a " + roleName(cls) +
                   ", whose type must be given in the context",
               loc);
        b.cls = cls;
        return *it;
      }
      if (polarityOf(*b.cls) != want) {
        if (!other) other = *it;
        continue;
      }
      if (*b.cls != cls)
        fail("wrong-context",
             "'" + name + "' is bound as a " + roleName(*b.cls) + " but used as a " +
                 roleName(cls),
             loc);
      return *it;
    }
    if (other)
      fail("polarity-mismatch",
           "'" + name + "' is " + polarityName(polarityOf(*table_[*other].cls)) +
               " but used in a " + polarityName(want) + " position",
           loc);
    if (synthSide) return implicitEntry(name, cls, loc);
    fail("unbound-variable", "unbound variable '" + name + "'", loc);
  }

  NodePtr elabL(const RawTerm& t, Judgement want) {
    if (surface::isLambdaKind(t.kind) && t.kind != RawKind::Var)
      fail("calculus-restriction", "λ-calculus syntax inside a System L query", t.loc);
    if (!constructAllowed(t.kind, calc_))
      fail("calculus-restriction",
           std::string("'") + surface::rawKindName(t.kind) + "' is outside the " +
               calculusName(calc_) + " calculus",
           t.loc);
    if (t.annot) checkTypeAllowed(*t.annot, calc_, t.loc);
    if (t.kind == RawKind::Var) {
      if (want == Judgement::Command)
        fail("mode-error", "a variable is not a command", t.loc);
      auto n = make(Form::Plain, t.kind, want, t.loc);
      n->name = t.name;
      n->varId = lookupL(t.name, want, t.loc);
      n->varClass = *table_[n->varId].cls;
      setScope(*n, {n->varId});
      return n;
    }
    const Judgement cls = *constructClass(t.kind);
    if (cls != want)
      fail("mode-error",
           std::string("'") + surface::rawKindName(t.kind) + "' is a " + judgementName(cls) +
               " but a " + judgementName(want) + " is required here",
           t.loc);
    auto n = make(Form::Plain, t.kind, cls, t.loc);
    n->annot = t.annot;
    using J = Judgement;
    auto kid = [&](std::size_t i, J j) { n->kids.push_back(elabL(*t.kids[i], j)); };
    auto binderNode = [&](std::initializer_list<VarClass> classes, J body) {
      std::size_t i = 0;
      for (VarClass c : classes) {
        int id = bind(t.binders[i], c, t.binderLocs[i]);
        n->binders.push_back({t.binders[i], c, id, t.binderLocs[i]});
        ++i;
      }
      kid(0, body);
      unbind(classes.size());
    };
    auto branches = [&](VarClass c) {
      n->additive = true;
      for (std::size_t i = 0; i < 2; ++i) {
        auto br = make(Form::Branch, t.kind, J::Command, t.kids[i]->loc);
        int id = bind(t.binders[i], c, t.binderLocs[i]);
        br->binders.push_back({t.binders[i], c, id, t.binderLocs[i]});
        br->kids.push_back(elabL(*t.kids[i], J::Command));
        unbind(1);
        scopeFromKids(*br);
        n->kids.push_back(br);
      }
    };
    switch (t.kind) {
      case RawKind::Cut: {
        auto l = headPolarity(*t.kids[0]);
        auto r = headPolarity(*t.kids[1]);
        if (l && r && *l != *r)
          fail("polarity-mismatch",
               std::string("cut between a ") + polarityName(*l) + " left side and a " +
                   polarityName(*r) + " right side",
               t.loc);
        auto pol = l ? l : r;
        if (!pol)
          fail("ambiguous-cut", "cannot determine the polarity of this cut", t.loc);
        if ((calc_ == Calculus::Pos && *pol == Polarity::Negative) ||
            (calc_ == Calculus::Neg && *pol == Polarity::Positive))
          fail("calculus-restriction",
               std::string(polarityName(*pol)) + " cut outside the " + calculusName(calc_) +
                   " fragment",
               t.loc);
        n->cutPolarity = *pol;
        const bool positive = *pol == Polarity::Positive;
        kid(0, positive ? J::Expr : J::Coexpr);
        kid(1, positive ? J::Pattern : J::Copattern);
        break;
      }
      case RawKind::MuPlus: binderNode({VarClass::DeltaPos}, J::Command); break;
      case RawKind::MutPlus: binderNode({VarClass::GammaPos}, J::Command); break;
      case RawKind::MuMinus: binderNode({VarClass::DeltaNeg}, J::Command); break;
      case RawKind::MutMinus: binderNode({VarClass::GammaNeg}, J::Command); break;
      case RawKind::Tuple: kid(0, J::Expr); kid(1, J::Expr); break;
      case RawKind::Cotuple: kid(0, J::Coexpr); kid(1, J::Coexpr); break;
      case RawKind::UnitI:
      case RawKind::CounitBot:
      case RawKind::MatchEmpty:
      case RawKind::ComatchEmpty:
        break;
      case RawKind::InlE:
      case RawKind::InrE:
      case RawKind::NotCointro:
      case RawKind::UUpIntro:
        kid(0, J::Expr);
        break;
      case RawKind::Pi1E:
      case RawKind::Pi2E:
      case RawKind::SimIntro:
      case RawKind::DDownIntro:
        kid(0, J::Coexpr);
        break;
      case RawKind::DownIntro: kid(0, J::Copattern); break;
      case RawKind::UpCointro: kid(0, J::Pattern); break;
      case RawKind::MatchUnit:
      case RawKind::ComatchBot:
        kid(0, J::Command);
        break;
      case RawKind::MatchPair: binderNode({VarClass::GammaPos, VarClass::GammaPos}, J::Command); break;
      case RawKind::ComatchPar: binderNode({VarClass::DeltaNeg, VarClass::DeltaNeg}, J::Command); break;
      case RawKind::MatchSum: branches(VarClass::GammaPos); break;
      case RawKind::ComatchWith: branches(VarClass::DeltaNeg); break;
      case RawKind::MatchSim: binderNode({VarClass::DeltaNeg}, J::Command); break;
      case RawKind::ComatchNot: binderNode({VarClass::GammaPos}, J::Command); break;
      case RawKind::MatchDown: binderNode({VarClass::GammaNeg}, J::Command); break;
      case RawKind::ComatchUp: binderNode({VarClass::DeltaPos}, J::Command); break;
      case RawKind::MatchDDown: binderNode({VarClass::DeltaNeg}, J::Command); break;
      case RawKind::ComatchUUp: binderNode({VarClass::GammaPos}, J::Command); break;
      default:
        fail("calculus-restriction", "unexpected construct", t.loc);
    }
    scopeFromKids(*n);
    return n;
  }

  // -- covers, thinnings, legality -------------------------------------------

  ScopedEntry entryOf(int id) const { return {table_[id].name, *table_[id].cls, id}; }

  void finalize(Node& n) {
    for (auto& k : n.kids) finalize(*k);
    for (auto& e : n.scope) e = entryOf(e.id);
    if (n.kind == RawKind::Var && n.form == Form::Plain) n.varClass = *table_[n.varId].cls;
    if (n.form == Form::Plain && isBinaryKind(n.kind) && calc_ != Calculus::Stlc) {
      Cover c;
      const auto& l = n.kids[0]->scope;
      const auto& r = n.kids[1]->scope;
      for (const auto& e : n.scope) {
        auto has = [&](const ScopedCtx& s) {
          return std::any_of(s.begin(), s.end(), [&](const ScopedEntry& x) { return x.id == e.id; });
        };
        const bool inL = has(l), inR = has(r);
        c.push_back(inL && inR ? CoverStep::Both : inL ? CoverStep::Left : CoverStep::Right);
      }
      n.cover = std::move(c);
    }
    if (!n.binders.empty()) {
      Thinning th;
      const auto& body = n.kids.back()->scope;
      for (const auto& b : n.binders) {
        const bool used = std::any_of(body.begin(), body.end(),
                                      [&](const ScopedEntry& x) { return x.id == b.id; });
        th.push_back(used ? ThinStep::Keep : ThinStep::Drop);
      }
      n.thinning = std::move(th);
    }
  }

  void checkLegality(const Node& n) {
    if (!enforce()) return;
    if (n.cover) {
      for (std::size_t i = 0; i < n.cover->size(); ++i) {
        const auto& e = n.scope[i];
        const auto step = (*n.cover)[i];
        const bool structural = cfg_.structural(e.cls);
        if (n.additive && isSynthesisable(e.cls)) {
          if (step != CoverStep::Both && !structural)
            fail("branch-usage",
                 "linear " + std::string(roleName(e.cls)) + " '" + e.name +
                     "' must be used in both branches",
                 n.loc);
        } else if (step == CoverStep::Both && !structural) {
          fail("duplicated-variable",
               "linear " + std::string(roleName(e.cls)) + " '" + e.name + "' is used more than once",
               n.loc);
        }
      }
    }
    if (n.thinning) {
      for (std::size_t i = 0; i < n.binders.size(); ++i) {
        const auto& b = n.binders[i];
        if ((*n.thinning)[i] == ThinStep::Drop && !cfg_.structural(b.cls))
          fail("unused-variable",
               "linear " + std::string(roleName(b.cls)) + " '" + b.name + "' is never used",
               b.loc);
      }
    }
    for (const auto& k : n.kids) checkLegality(*k);
  }

  Calculus calc_;
  StructConfig cfg_;
  std::vector<Binding> table_;
  std::vector<int> env_;
  std::vector<int> implicit_;
};

}  // namespace

ScopedQuery elaborate(const Directive& d, Calculus calc, const StructConfig& cfg) {
  if (d.tag != Directive::Tag::Query)
    throw std::invalid_argument("elaborate expects a query directive");
  return Elaborator(calc, cfg).run(d);
}

}  // namespace polcheck::scope
