#ifndef TL_SYNTAX_HPP
#define TL_SYNTAX_HPP

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tl {

// Finite, sorted, duplicate-free set of proposition names.
using PropSet = std::vector<std::string>;

PropSet make_props(std::vector<std::string> names);
bool props_contain(const PropSet& set, std::string_view p);
bool props_subset(const PropSet& sub, const PropSet& super);
PropSet props_union(const PropSet& a, const PropSet& b);
PropSet props_intersection(const PropSet& a, const PropSet& b);
PropSet props_difference(const PropSet& a, const PropSet& b);
std::string props_to_string(const PropSet& set);  // "{p,q}"

enum class Kind : unsigned char {
  Prop,      // p
  NegProp,   // ~p
  Bottom,    // bot
  Top,       // top
  NonEmpty,  // NE
  Dep,       // =(a1,...,ah ; g)
  Inc,       // inc(a1,...,ah ; b1,...,bh)
  Ind,       // ind(a1,...,ah ; b1,...,bk)
  And,       // &
  Split,     // \/   (splitjunction)
  NeSplit,   // \/+  (non-empty splitjunction)
  Or,        // ||   (classical disjunction)
  Dia,       // <>
  Box,       // []
  Exists,    // E p.  (bisimulation quantifier)
};

// Immutable formula tree with shared subterms. Copies are cheap.
//
// Construction goes through the factories, which enforce the structural
// invariants: negation only on propositions, classical arguments inside
// team atoms, equal arity for inclusion atoms.
class Formula {
 public:
  static Formula prop(std::string name);
  static Formula neg_prop(std::string name);
  static Formula bottom();
  static Formula top();
  static Formula non_empty();
  static Formula dep(std::vector<Formula> args, Formula target);
  static Formula inc(std::vector<Formula> left, std::vector<Formula> right);
  static Formula ind(std::vector<Formula> left, std::vector<Formula> right);
  static Formula conj(Formula l, Formula r);
  static Formula split(Formula l, Formula r);
  static Formula nesplit(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula dia(Formula f);
  static Formula box(Formula f);
  static Formula exists(std::string name, Formula body);

  // Left folds; an empty list yields `empty`.
  static Formula conj_all(const std::vector<Formula>& parts, const Formula& empty);
  static Formula split_all(const std::vector<Formula>& parts, const Formula& empty);
  static Formula disj_all(const std::vector<Formula>& parts, const Formula& empty);

  Kind kind() const;
  // Proposition name for Prop/NegProp, bound variable for Exists.
  const std::string& name() const;
  // Binary connectives.
  const Formula& left() const;
  const Formula& right() const;
  // Dia, Box, Exists.
  const Formula& body() const;
  // Team atoms: dep arguments / inc, ind left list.
  std::span<const Formula> atom_left() const;
  // Team atoms: dep target (single element) / inc, ind right list.
  std::span<const Formula> atom_right() const;
  const Formula& dep_target() const;

  bool is_binary() const;
  bool is_team_atom() const;
  // ML / PL formula: literals, bot, top, &, \/, <>, [] only.
  bool is_classical() const;
  // No <>, [] anywhere (including inside atom arguments).
  bool is_modality_free() const;
  // No bisimulation quantifier anywhere.
  bool is_quantifier_free() const;
  std::size_t size() const;

  // Identity of the shared node; stable while any copy is alive.
  const void* id() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Kind kind, std::string name, std::vector<Formula> kids,
                      std::vector<Formula> lhs, std::vector<Formula> rhs);

  std::shared_ptr<const Node> node_;
};

// Fragments CPL..FMTL plus EXT for formulas using the bisimulation quantifier.
enum class Fragment { CPL, PDEP, PINC, PIND, FPTL, ML, MDEP, MINC, MIND, FMTL, EXT };

std::string_view fragment_name(Fragment f);

// Least row of the fragment table covering the formula's node kinds.
// \/+ is attributed to FPTL/FMTL. Formulas mixing several atom families, or
// atoms with NE / || / \/+, are covered by no atom row and land in the full
// logic FPTL/FMTL.
Fragment classify(const Formula& f);

// Human-readable notes on how classify attributed constructs outside the fragment table.
std::vector<std::string> classification_notes(const Formula& f);

struct Language {
  PropSet all;    // every proposition occurring, bound ones included
  PropSet free;   // Free(f): bound variables removed under their quantifier
  PropSet bound;  // variables bound by some quantifier
};

Language language_of(const Formula& f);
// Shorthand for language_of(f).all.
PropSet props_of(const Formula& f);

// Maximal nesting of <> and []. A team atom has the depth of its deepest
// classical argument.
std::size_t modal_depth(const Formula& f);

// f[p|top] (value = true) or f[p|bot] (value = false), applied inside team
// atom arguments as well. Occurrences bound by a quantifier on p are left alone.
Formula substitute_const(const Formula& f, const std::string& p, bool value);

// Concrete syntax. Minimal parentheses; parse(render(f)) == f.
std::string render(const Formula& f);
Formula parse(std::string_view text);

}  // namespace tl

#endif
