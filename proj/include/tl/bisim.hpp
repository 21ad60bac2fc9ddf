#ifndef TL_BISIM_HPP
#define TL_BISIM_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tl/kripke.hpp"

namespace tl {

// Relation between the worlds of two fixed models M and N: rows[w] is the
// set of N-worlds related to M-world w.
struct Relation {
  std::vector<Mask> rows;

  bool contains(std::size_t w, std::size_t v) const { return rows.at(w) >> v & 1; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;  // lexicographic

  friend bool operator==(const Relation&, const Relation&) = default;
};

// B_0 ⊇ B_1 ⊇ ... ⊇ B_k, the greatest family of P-restricted k-bisimulations.
struct BisimFamily {
  PropSet props;
  std::vector<Relation> layers;  // layers[i] = B_i

  const Relation& top() const { return layers.back(); }
};

BisimFamily bounded_bisim(const KripkeModel& m, const KripkeModel& n, const PropSet& props, std::size_t k);

// Greatest P-bisimulation, by refining B_0 until it stabilizes. `rounds`
// receives the stabilization index.
Relation max_bisim(const KripkeModel& m, const KripkeModel& n, const PropSet& props,
                   std::size_t* rounds = nullptr);

// Independent check of the bisimulation conditions (P-label agreement, forth,
// back). On failure `why` names the least offending pair.
bool is_bisimulation(const KripkeModel& m, const KripkeModel& n, const PropSet& props, const Relation& rel,
                     std::string* why = nullptr);

struct TeamBisimulation {
  bool holds = false;
  // On success: least partner for every member of X (forth) and of Y (back).
  std::vector<std::pair<std::size_t, std::size_t>> forth;
  std::vector<std::pair<std::size_t, std::size_t>> back;
  // On failure: least member without a partner; `blocking_in_m` says whether
  // it belongs to X (true) or Y (false).
  std::optional<std::size_t> blocking;
  bool blocking_in_m = true;
};

// (M,X) and (N,Y) P-bisimilar, or k-bisimilar when k is given.
TeamBisimulation team_bisimilar(const TeamModel& a, const TeamModel& b, const PropSet& props,
                                std::optional<std::size_t> k = std::nullopt);

struct Amalgam {
  KripkeModel model;                                  // worlds = pairs of B
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // world i of model is pairs[i]
  Relation to_m;                                      // K -> M, first projection
  Relation to_n;                                      // K -> N, second projection
};

// Amalgamation along a nonempty (P∩Q)-bisimulation B between M and N.
// Labels on P come from M, labels on Q \ P from N. World ids are "(w,v)".
Amalgam amalgamate(const KripkeModel& m, const KripkeModel& n, const Relation& b, const PropSet& p,
                   const PropSet& q);

struct TeamAmalgam {
  TeamModel result;  // (K, Z) with Z = (X × Y) ∩ B
  Amalgam amalgam;
};

// Requires (M,X) and (N,Y) to be (P∩Q)-bisimilar; throws InvalidArgument
// naming the blocking world otherwise. With X = Y = ∅ and no bisimilar pair
// at all, (M, ∅) is returned.
TeamAmalgam team_amalgamate(const TeamModel& a, const PropSet& p, const TeamModel& b, const PropSet& q);

// "props: p q" header followed by one "w <-> v" line per pair.
std::string relation_dump(const KripkeModel& m, const KripkeModel& n, const PropSet& props, const Relation& rel);

struct RelationFile {
  PropSet props;
  Relation relation;
};

RelationFile parse_relation_dump(const KripkeModel& m, const KripkeModel& n, std::string_view text);

}  // namespace tl

#endif
