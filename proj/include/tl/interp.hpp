#ifndef TL_INTERP_HPP
#define TL_INTERP_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tl/kripke.hpp"
#include "tl/limits.hpp"
#include "tl/syntax.hpp"

namespace tl {

enum class InterpMode { Exact, Bounded };

std::string_view mode_name(InterpMode m);

struct InterpStats {
  std::size_t depth = 0;         // k = md(f)
  std::size_t types = 0;         // k-types over the formula's language (exact mode)
  std::size_t team_classes = 0;  // type sets evaluated
  std::size_t models = 0;        // models enumerated (bounded mode)
  std::size_t satisfying = 0;    // satisfying type sets
};

struct InterpCheck {
  std::string clause;
  std::string verdict;  // "pass", "fail" or "skipped"
  std::string bound;
  std::optional<std::string> witness;
};

struct InterpReport {
  Formula input;
  PropSet kept;
  Formula result;
  InterpMode mode = InterpMode::Exact;
  std::vector<InterpCheck> checks;
  InterpStats stats;

  bool all_pass() const;
  std::string to_json() const;
};

// Every Kripke model with 1..max_worlds worlds labelled over props: world
// count ascending, then edge sets, then label assignments (both as binary
// counters). Stops early when fn returns false. Throws ResourceError past
// 2^22 models or the world ceiling.
void for_each_model(const PropSet& props, std::size_t max_worlds, const std::function<bool(const KripkeModel&)>& fn);
std::size_t model_count(std::size_t props, std::size_t max_worlds);

// ∃̃p a for classical a, through k-types (k defaults to md(a)).
Formula bisim_quantifier_ml(const Formula& a, const std::string& p, std::optional<std::size_t> k = std::nullopt,
                            const Limits& limits = {});

struct Elimination {
  Formula result;
  InterpMode mode;
  InterpStats stats;
};

// ∃̃p f for a quantifier-free team formula. Exact mode evaluates f on every
// team of root worlds of the universal model for k = md(f); bounded mode on
// every team model with at most limits.max_worlds worlds.
Elimination bisim_quantifier_team(const Formula& f, const std::string& p, InterpMode mode,
                                  const Limits& limits = {});

// Replaces every quantifier, innermost first.
Formula eliminate_quantifiers(const Formula& f, InterpMode mode, const Limits& limits = {});

// Forgets 𝓛(f) \ keep in lexicographic order; the report carries the
// language clause and f |= result checked at the active bound.
InterpReport uniform_interpolant_modal(const Formula& f, const PropSet& keep, InterpMode mode,
                                       const Limits& limits = {});

struct ModalEntailment {
  bool holds = true;
  std::optional<TeamModel> counterexample;  // least in enumeration order
  std::size_t max_worlds = 0;
  std::size_t models = 0;
};

// f |= g on every team model with at most max_worlds worlds.
ModalEntailment bounded_entails_modal(const Formula& f, const Formula& g, std::size_t max_worlds,
                                      const Limits& limits = {});

// Entailment through the propositional engine when both formulas are
// modality- and quantifier-free, the bounded modal one otherwise.
struct EntailmentVerdict {
  bool holds = true;
  std::string bound;
  std::optional<std::string> witness;
};

EntailmentVerdict check_entailment(const Formula& f, const Formula& g, const Limits& limits = {});

// Verifies the interpolant clauses for theta: language inside keep, f |= theta,
// and theta |= psi for every psi with f |= psi and 𝓛(f) ∩ 𝓛(psi) ⊆ keep.
InterpReport check_interpolant(const Formula& f, const Formula& theta, const PropSet& keep,
                               const std::vector<Formula>& consequences, const Limits& limits = {});

// Cheap equivalence-preserving rewrites: top & a -> a, [] top -> top,
// bot \/ a -> a, a || a -> a, (a & NE) || bot -> a for classical a.
Formula simplify(const Formula& f);

}  // namespace tl

#endif
