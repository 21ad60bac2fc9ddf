#ifndef TL_KRIPKE_HPP
#define TL_KRIPKE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tl/frame.hpp"
#include "tl/limits.hpp"
#include "tl/syntax.hpp"

namespace tl {

// Finite Kripke model (W, R, V) with at most 64 worlds. Worlds are indexed in
// insertion order; ids are unique strings. Propositions missing from a label
// are false there.
class KripkeModel {
 public:
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  std::size_t add_world(std::string id, PropSet label = {});
  void add_edge(std::size_t from, std::size_t to);
  void set_label(std::size_t w, PropSet label);

  const std::string& id(std::size_t w) const { return ids_.at(w); }
  const std::vector<std::string>& ids() const { return ids_; }
  std::size_t index_of(std::string_view id) const;  // throws on unknown ids
  std::optional<std::size_t> find(std::string_view id) const;

  Mask successors(std::size_t w) const { return succ_.at(w); }
  bool has_edge(std::size_t from, std::size_t to) const { return succ_.at(from) >> to & 1; }
  const PropSet& label(std::size_t w) const { return labels_.at(w); }
  bool holds(std::size_t w, std::string_view p) const { return props_contain(labels_.at(w), p); }
  // Union of all labels.
  PropSet props() const;
  Mask all() const { return full_mask(size()); }

  // Evaluation frame: same points, successor masks and one extension per
  // proposition occurring in some label.
  Frame frame() const;

  // Bit j of entry w is set iff props[j] holds at w (|props| <= 64).
  std::vector<std::uint64_t> label_masks(const PropSet& props) const;

  Mask team_of(const std::vector<std::string>& ids) const;
  std::vector<std::string> team_ids(Mask team) const;

  friend bool operator==(const KripkeModel&, const KripkeModel&) = default;

 private:
  std::vector<std::string> ids_;
  std::vector<Mask> succ_;
  std::vector<PropSet> labels_;
};

struct TeamModel {
  KripkeModel model;
  Mask team = 0;
};

// Model file: {"worlds":[...],"edges":[[a,b],...],"val":{"w":["p"],...},"team":[...]}.
// "val" entries may be omitted (empty label); "team" is optional.
struct ModelFile {
  KripkeModel model;
  std::optional<Mask> team;
};

ModelFile parse_model_json(std::string_view text);
std::string model_to_json(const KripkeModel& m, std::optional<Mask> team = std::nullopt);

// M, w |= a for a classical formula (\/ read classically).
bool eval_singleton(const Formula& a, const KripkeModel& m, std::size_t w);

struct SuccessorCover {
  Mask successors = 0;  // R(X)
  bool covers = false;  // X R Y
};

SuccessorCover successors_and_cover(const KripkeModel& m, Mask x, Mask y);

// Modal team semantics. f must be quantifier-free.
bool eval_team_modal(const Formula& f, const TeamModel& tm, const Limits& limits = {});

// Worlds of a get the id prefix "0:", worlds of b the prefix "1:"; a's worlds
// come first, so a team X of a keeps its mask and a team Y of b is shifted by
// a.size().
KripkeModel disjoint_union(const KripkeModel& a, const KripkeModel& b);

}  // namespace tl

#endif
