#include "tl/interp.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "tl/charform.hpp"
#include "tl/error.hpp"
#include "tl/prop.hpp"

namespace tl {

std::string_view mode_name(InterpMode m) { return m == InterpMode::Exact ? "exact" : "bounded"; }

bool InterpReport::all_pass() const {
  return std::none_of(checks.begin(), checks.end(), [](const InterpCheck& c) { return c.verdict == "fail"; });
}

std::string InterpReport::to_json() const {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["mode"] = std::string(mode_name(mode));
  doc["input"] = render(input);
  doc["kept"] = kept;
  doc["result"] = render(result);
  ordered_json checks_json = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json entry;
    entry["clause"] = c.clause;
    entry["verdict"] = c.verdict;
    entry["bound"] = c.bound;
    if (c.witness) entry["witness"] = *c.witness;
    checks_json.push_back(entry);
  }
  doc["checks"] = checks_json;
  doc["stats"] = {{"depth", stats.depth},
                  {"types", stats.types},
                  {"team_classes", stats.team_classes},
                  {"models", stats.models},
                  {"satisfying", stats.satisfying}};
  return doc.dump(2);
}

// ---------------------------------------------------------------------------
// Model enumeration

namespace {

constexpr std::size_t kModelCountGuard = std::size_t{1} << 22;

void require_world_bound(std::size_t max_worlds) {
  if (max_worlds > Limits::kMaxWorldsCeiling)
    throw ResourceError("max worlds", Limits::kMaxWorldsCeiling, max_worlds,
                        "bounded enumeration is doubly exponential in the world count");
}

}  // namespace

std::size_t model_count(std::size_t props, std::size_t max_worlds) {
  std::size_t total = 0;
  for (std::size_t n = 1; n <= max_worlds; ++n) {
    const std::size_t bits = n * n + n * props;
    if (bits >= 62) return std::numeric_limits<std::size_t>::max();
    total += std::size_t{1} << bits;
  }
  return total;
}

void for_each_model(const PropSet& props, std::size_t max_worlds, const std::function<bool(const KripkeModel&)>& fn) {
  require_world_bound(max_worlds);
  const std::size_t count = model_count(props.size(), max_worlds);
  if (count > kModelCountGuard)
    throw ResourceError("bounded model count", kModelCountGuard, count,
                        "lower TL_MAX_WORLDS / --max-worlds or use fewer propositions");
  for (std::size_t n = 1; n <= max_worlds; ++n) {
    const std::uint64_t edge_sets = std::uint64_t{1} << (n * n);
    const std::uint64_t label_sets = std::uint64_t{1} << (n * props.size());
    for (std::uint64_t e = 0; e < edge_sets; ++e)
      for (std::uint64_t l = 0; l < label_sets; ++l) {
        KripkeModel m;
        for (std::size_t w = 0; w < n; ++w) {
          PropSet label;
          for (std::size_t j = 0; j < props.size(); ++j)
            if (l >> (w * props.size() + j) & 1) label.push_back(props[j]);
          m.add_world("w" + std::to_string(w), std::move(label));
        }
        for (std::size_t i = 0; i < n * n; ++i)
          if (e >> i & 1) m.add_edge(i / n, i % n);
        if (!fn(m)) return;
      }
  }
}

// ---------------------------------------------------------------------------
// Quantifier elimination

Formula bisim_quantifier_ml(const Formula& a, const std::string& p, std::optional<std::size_t> k,
                            const Limits& limits) {
  if (!a.is_classical()) throw InvalidArgument("expected a classical modal formula, got: " + render(a));
  const PropSet language = props_of(a);
  if (!props_contain(language, p)) return a;
  const std::size_t depth = k.value_or(modal_depth(a));
  const PropSet keep = props_difference(language, {p});
  std::set<TypeTree> projected;
  for (const auto& t : enumerate_types(language, depth, limits.type_cap)) {
    const UniversalModel real = realize_types({t});
    const Frame fr = real.model.frame();
    TeamEvaluator eval(fr, limits.successor_cap);
    if (eval.holds_at(a, real.roots[0])) projected.insert(project_type(t, keep));
  }
  CharFormulaCache cache;
  std::vector<Formula> parts;
  for (const auto& t : projected) parts.push_back(cache.chi(t));
  return Formula::split_all(parts, Formula::bottom());
}

namespace {

using TypeSet = std::vector<TypeTree>;

TypeSet canonical_set(TypeSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

TypeSet project_set(const TypeSet& s, const PropSet& keep) {
  TypeSet out;
  for (const auto& t : s) out.push_back(project_type(t, keep));
  return canonical_set(std::move(out));
}

Formula disjunction_of_sets(const std::set<TypeSet>& sets) {
  CharFormulaCache cache;
  std::vector<Formula> parts;
  for (const auto& s : sets) parts.push_back(cache.team_formula(s));
  return Formula::disj_all(parts, Formula::conj(Formula::bottom(), Formula::non_empty()));
}

}  // namespace

Elimination bisim_quantifier_team(const Formula& f, const std::string& p, InterpMode mode, const Limits& limits) {
  if (!f.is_quantifier_free())
    throw InvalidArgument("eliminate inner quantifiers first: " + render(f));
  const PropSet language = props_of(f);
  InterpStats stats;
  stats.depth = modal_depth(f);
  if (!props_contain(language, p)) return {f, mode, stats};
  const PropSet keep = props_difference(language, {p});
  const std::size_t k = stats.depth;
  std::set<TypeSet> satisfying;

  if (mode == InterpMode::Exact) {
    const std::size_t n = type_count(language.size(), k);
    if (n > limits.exact_type_cap)
      throw ResourceError("exact type cap", limits.exact_type_cap, n,
                          "exact elimination evaluates 2^types teams; use bounded mode (--mode bounded)");
    const UniversalModel u = universal_model(language, k, limits.type_cap);
    const Frame fr = u.model.frame();
    TeamEvaluator eval(fr, limits.successor_cap);
    stats.types = n;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
      Mask team = 0;
      TypeSet set;
      for (std::uint64_t m = s; m; m &= m - 1) {
        team |= Mask{1} << u.roots[std::countr_zero(m)];
        set.push_back(u.types[std::countr_zero(m)]);
      }
      ++stats.team_classes;
      if (eval.holds(f, team)) {
        ++stats.satisfying;
        satisfying.insert(project_set(set, keep));
      }
    }
  } else {
    std::map<TypeSet, bool> seen;
    for_each_model(language, limits.max_worlds, [&](const KripkeModel& m) {
      ++stats.models;
      const auto types = types_of_all(m, language, k);
      std::optional<Frame> fr;
      std::optional<TeamEvaluator> eval;
      for (Mask team = 0; team <= m.all(); ++team) {
        TypeSet set;
        for (Mask x = team; x; x &= x - 1) set.push_back(types[std::countr_zero(x)]);
        set = canonical_set(std::move(set));
        if (seen.count(set)) continue;
        if (!eval) {
          fr.emplace(m.frame());
          eval.emplace(*fr, limits.successor_cap);
        }
        const bool v = eval->holds(f, team);
        seen.emplace(set, v);
        if (v) {
          ++stats.satisfying;
          satisfying.insert(project_set(set, keep));
        }
      }
      return true;
    });
    stats.team_classes = seen.size();
  }
  return {disjunction_of_sets(satisfying), mode, stats};
}

Formula eliminate_quantifiers(const Formula& f, InterpMode mode, const Limits& limits) {
  if (f.is_quantifier_free()) return f;
  switch (f.kind()) {
    case Kind::Exists:
      return bisim_quantifier_team(eliminate_quantifiers(f.body(), mode, limits), f.name(), mode, limits).result;
    case Kind::Dia: return Formula::dia(eliminate_quantifiers(f.body(), mode, limits));
    case Kind::Box: return Formula::box(eliminate_quantifiers(f.body(), mode, limits));
    case Kind::And:
      return Formula::conj(eliminate_quantifiers(f.left(), mode, limits), eliminate_quantifiers(f.right(), mode, limits));
    case Kind::Split:
      return Formula::split(eliminate_quantifiers(f.left(), mode, limits), eliminate_quantifiers(f.right(), mode, limits));
    case Kind::NeSplit:
      return Formula::nesplit(eliminate_quantifiers(f.left(), mode, limits),
                              eliminate_quantifiers(f.right(), mode, limits));
    case Kind::Or:
      return Formula::disj(eliminate_quantifiers(f.left(), mode, limits), eliminate_quantifiers(f.right(), mode, limits));
    default:
      return f;  // team atoms take classical, hence quantifier-free, arguments
  }
}

// ---------------------------------------------------------------------------
// Entailment and verification

ModalEntailment bounded_entails_modal(const Formula& f, const Formula& g, std::size_t max_worlds,
                                      const Limits& limits) {
  const PropSet props = props_union(props_of(f), props_of(g));
  ModalEntailment out;
  out.max_worlds = max_worlds;
  for_each_model(props, max_worlds, [&](const KripkeModel& m) {
    ++out.models;
    const Frame fr = m.frame();
    TeamEvaluator eval(fr, limits.successor_cap);
    for (Mask team = 0; team <= m.all(); ++team)
      if (eval.holds(f, team) && !eval.holds(g, team)) {
        out.holds = false;
        out.counterexample = TeamModel{m, team};
        return false;
      }
    return true;
  });
  return out;
}

EntailmentVerdict check_entailment(const Formula& f, const Formula& g, const Limits& limits) {
  const PropSet props = props_union(props_of(f), props_of(g));
  const bool propositional = f.is_modality_free() && g.is_modality_free() && f.is_quantifier_free() &&
                             g.is_quantifier_free() && props.size() <= std::min(limits.max_props, Limits::kMaxPropsCeiling);
  if (propositional) {
    const Entailment e = entails_prop(f, g, limits);
    EntailmentVerdict v{e.holds, "all teams over " + props_to_string(props), std::nullopt};
    if (e.counterexample) v.witness = e.counterexample->to_string();
    return v;
  }
  const ModalEntailment e = bounded_entails_modal(f, g, limits.max_worlds, limits);
  EntailmentVerdict v{e.holds, "all team models with <= " + std::to_string(limits.max_worlds) + " worlds", std::nullopt};
  if (e.counterexample) v.witness = model_to_json(e.counterexample->model, e.counterexample->team);
  return v;
}

namespace {

InterpCheck language_check(const Formula& theta, const PropSet& keep) {
  const PropSet extra = props_difference(language_of(theta).free, keep);
  InterpCheck c{"language within " + props_to_string(keep), extra.empty() ? "pass" : "fail", "syntactic", std::nullopt};
  if (!extra.empty()) c.witness = props_to_string(extra);
  return c;
}

InterpCheck entailment_check(const std::string& clause, const Formula& f, const Formula& g, const Limits& limits) {
  const EntailmentVerdict v = check_entailment(f, g, limits);
  return {clause, v.holds ? "pass" : "fail", v.bound, v.witness};
}

}  // namespace

InterpReport uniform_interpolant_modal(const Formula& f, const PropSet& keep, InterpMode mode, const Limits& limits) {
  const Formula g = eliminate_quantifiers(f, mode, limits);
  const PropSet language = props_of(g);
  if (!props_subset(keep, language))
    throw InvalidArgument("kept language " + props_to_string(keep) + " must be a subset of " + props_to_string(language));
  Formula cur = g;
  InterpStats stats;
  stats.depth = modal_depth(g);
  for (const auto& p : props_difference(language, keep)) {
    const Elimination e = bisim_quantifier_team(cur, p, mode, limits);
    cur = e.result;
    stats.types = std::max(stats.types, e.stats.types);
    stats.team_classes += e.stats.team_classes;
    stats.models += e.stats.models;
    stats.satisfying += e.stats.satisfying;
  }
  InterpReport rep{f, keep, cur, mode, {}, stats};
  rep.checks.push_back(language_check(cur, keep));
  rep.checks.push_back(entailment_check("f |= result", g, cur, limits));
  return rep;
}

InterpReport check_interpolant(const Formula& f, const Formula& theta, const PropSet& keep,
                               const std::vector<Formula>& consequences, const Limits& limits) {
  InterpReport rep{f, keep, theta, InterpMode::Bounded, {}, {}};
  rep.checks.push_back(language_check(theta, keep));
  rep.checks.push_back(entailment_check("f |= theta", f, theta, limits));
  const PropSet lf = props_of(f);
  for (const auto& psi : consequences) {
    const std::string clause = "theta |= " + render(psi);
    const PropSet overlap = props_intersection(lf, props_of(psi));
    if (!props_subset(overlap, keep)) {
      rep.checks.push_back({clause, "skipped", "shared language " + props_to_string(overlap) + " not within " +
                                                   props_to_string(keep), std::nullopt});
      continue;
    }
    const EntailmentVerdict premise = check_entailment(f, psi, limits);
    if (!premise.holds) {
      rep.checks.push_back({clause, "skipped", "f does not entail it (" + premise.bound + ")", premise.witness});
      continue;
    }
    rep.checks.push_back(entailment_check(clause, theta, psi, limits));
  }
  return rep;
}

Formula simplify(const Formula& f) {
  switch (f.kind()) {
    case Kind::And: {
      Formula l = simplify(f.left()), r = simplify(f.right());
      if (l.kind() == Kind::Top) return r;
      if (r.kind() == Kind::Top) return l;
      return Formula::conj(l, r);
    }
    case Kind::Split: {
      Formula l = simplify(f.left()), r = simplify(f.right());
      if (l.kind() == Kind::Bottom) return r;
      if (r.kind() == Kind::Bottom) return l;
      return Formula::split(l, r);
    }
    case Kind::NeSplit: return Formula::nesplit(simplify(f.left()), simplify(f.right()));
    case Kind::Or: {
      Formula l = simplify(f.left()), r = simplify(f.right());
      if (l == r) return l;
      // (a & NE) || bot and bot || (a & NE) are a for classical a.
      auto classical_ne = [](const Formula& x) {
        return x.kind() == Kind::And && x.right().kind() == Kind::NonEmpty && x.left().is_classical();
      };
      if (r.kind() == Kind::Bottom && classical_ne(l)) return l.left();
      if (l.kind() == Kind::Bottom && classical_ne(r)) return r.left();
      return Formula::disj(l, r);
    }
    case Kind::Dia: return Formula::dia(simplify(f.body()));
    case Kind::Box: {
      Formula b = simplify(f.body());
      if (b.kind() == Kind::Top) return b;
      return Formula::box(b);
    }
    case Kind::Exists: return Formula::exists(f.name(), simplify(f.body()));
    default: return f;
  }
}

}  // namespace tl
