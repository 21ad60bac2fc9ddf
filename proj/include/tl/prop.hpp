#ifndef TL_PROP_HPP
#define TL_PROP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tl/limits.hpp"
#include "tl/syntax.hpp"

namespace tl {

// A valuation over an explicit domain: bit j of `bits` is the value of domain[j].
struct Valuation {
  PropSet domain;
  std::uint32_t bits = 0;

  bool value(std::string_view p) const;
};

// A set of valuations sharing one domain. Members are kept sorted and unique
// as bit patterns (bit j = value of domain()[j]).
class Team {
 public:
  Team() = default;
  Team(PropSet domain, std::vector<std::uint32_t> members);

  // Builds a team from a bitmask over valuation indices (bit i set iff the
  // valuation with bit pattern i is a member).
  static Team from_code(PropSet domain, std::uint64_t code);

  const PropSet& domain() const { return domain_; }
  const std::vector<std::uint32_t>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  Valuation valuation(std::size_t i) const { return {domain_, members_.at(i)}; }

  // Bitmask over valuation indices; requires |domain| <= 6.
  std::uint64_t code() const;

  // X[p|top] / X[p|bot]: every member gets p set to `value`.
  Team with_constant(const std::string& p, bool value) const;

  // "{p=1 q=1; p=0 q=1}", "{}" for the empty team.
  std::string to_string() const;
  // Domain is read from the assignments; `{}` takes `empty_domain`.
  static Team parse(std::string_view text, const PropSet& empty_domain = {});

  friend bool operator==(const Team&, const Team&) = default;
  friend auto operator<=>(const Team&, const Team&) = default;

 private:
  PropSet domain_;
  std::vector<std::uint32_t> members_;
};

// Extensional set of teams over one domain, stored as sorted team codes.
struct TeamProperty {
  PropSet domain;
  std::vector<std::uint64_t> codes;

  bool contains(const Team& t) const;
  bool contains_code(std::uint64_t code) const;
  std::size_t size() const { return codes.size(); }
  std::vector<Team> teams() const;

  // Line format: "props: p q" header, then one team per line; '#' starts a comment.
  std::string to_text() const;
  static TeamProperty parse(std::string_view text);

  friend bool operator==(const TeamProperty&, const TeamProperty&) = default;
};

// Propositional team semantics. The formula must be modality- and
// quantifier-free and the team domain must contain every proposition of f.
bool eval_prop(const Formula& f, const Team& team, const Limits& limits = {});

// ||f|| over the domain P (P must contain the propositions of f).
TeamProperty models_of(const Formula& f, const PropSet& domain, const Limits& limits = {});

struct ClosureFlag {
  bool holds = true;
  // Failing pair: (X, Y) for downward / local, (X1, X2) for union,
  // (empty, empty) for the empty-team property.
  std::optional<std::pair<Team, Team>> witness;
};

struct ClosureReport {
  PropSet domain;
  ClosureFlag downward;
  ClosureFlag union_closed;
  ClosureFlag empty_team;
  ClosureFlag local;
};

// Brute-force closure analysis over every team on `domain` (defaults to the
// formula's propositions). Locality is checked against one extra fresh
// proposition when the proposition cap allows it. Witnesses are the least
// failing pairs in team-code order.
ClosureReport closure_report(const Formula& f, const PropSet& domain = {}, const Limits& limits = {});

// {s restricted to Q : s in X}.
Team project_team(const Team& team, const PropSet& keep);

// Formula whose team property over y.domain is exactly y: a || of
// (a_s & NE) \/ ... \/ (a_t & NE) per member team, with bot for the empty
// team and bot & NE for the empty property.
Formula synthesize_fptl(const TeamProperty& y);

// Semantic uniform interpolant: synthesize_fptl of the projections onto
// `keep` of all models of f over its own language.
Formula uniform_interpolant_prop(const Formula& f, const PropSet& keep, const Limits& limits = {});

struct Entailment {
  bool holds = true;
  std::optional<Team> counterexample;  // least team with f true and g false
};

// f |= g, decided over the union of both languages.
Entailment entails_prop(const Formula& f, const Formula& g, const Limits& limits = {});

}  // namespace tl

#endif
