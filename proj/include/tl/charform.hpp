#ifndef TL_CHARFORM_HPP
#define TL_CHARFORM_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tl/kripke.hpp"
#include "tl/limits.hpp"
#include "tl/syntax.hpp"

namespace tl {

// Canonical k-type over a proposition set: the label of a world restricted to
// the set, plus the sorted, duplicate-free (k-1)-types of its successors.
// Depth-0 types have no children.
struct TypeTree {
  std::size_t depth = 0;
  std::uint64_t label = 0;  // bit j = props[j]
  std::vector<TypeTree> children;
  PropSet props;

  // Canonical order: depth, then label, then children lexicographically.
  friend std::strong_ordering operator<=>(const TypeTree& a, const TypeTree& b);
  friend bool operator==(const TypeTree& a, const TypeTree& b);
};

TypeTree type_of(const KripkeModel& m, std::size_t w, const PropSet& props, std::size_t k);
// k-types of every world of m, computed bottom-up in one pass.
std::vector<TypeTree> types_of_all(const KripkeModel& m, const PropSet& props, std::size_t k);

// Number of k-types over n propositions, saturating at SIZE_MAX.
std::size_t type_count(std::size_t n, std::size_t k);

// Every canonical k-type over props, in canonical order. Throws ResourceError
// when the count exceeds `cap`.
std::vector<TypeTree> enumerate_types(const PropSet& props, std::size_t k, std::size_t cap);

// Relabels by label ∩ keep and re-canonicalizes (children may merge).
TypeTree project_type(const TypeTree& t, const PropSet& keep);

// "({p,q})" for depth 0, "({p} -> [t1, t2])" otherwise.
std::string type_to_string(const TypeTree& t);

// Characteristic formula: literal conjunction & <>chi(c)... & [](chi(c1) \/ ...),
// with []bot when there are no children and top for an empty conjunction.
Formula char_formula(const TypeTree& t);

// Shares formula nodes between equal types, so evaluators memoizing by node
// identity reuse work across formulas built from the same cache.
class CharFormulaCache {
 public:
  const Formula& chi(const TypeTree& t);
  // chi(t) & NE
  const Formula& chi_ne(const TypeTree& t);
  // \/ of chi_ne over a set of types (sorted, deduplicated); bot for none.
  Formula team_formula(std::vector<TypeTree> types);

 private:
  std::map<TypeTree, Formula> chi_;
  std::map<TypeTree, Formula> chi_ne_;
};

// Characteristic formula of a team model modulo k-bisimulation on props.
Formula team_char_formula(const TeamModel& tm, const PropSet& props, std::size_t k);

// One world per j-type for j <= k, with edges from each type to its children.
// roots[i] is the world realizing enumerate_types(props, k)[i].
struct UniversalModel {
  KripkeModel model;
  std::vector<TypeTree> types;       // k-types, canonical order
  std::vector<std::size_t> roots;
};

UniversalModel universal_model(const PropSet& props, std::size_t k, std::size_t cap);

// Smallest model realizing the given types: one world per distinct subtype,
// edges to children. roots[i] realizes types[i] (types keep their order).
UniversalModel realize_types(const std::vector<TypeTree>& types);

}  // namespace tl

#endif
