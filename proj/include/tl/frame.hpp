#ifndef TL_FRAME_HPP
#define TL_FRAME_HPP

// Shared evaluation core. Both propositional teams (sets of valuations) and
// modal teams (sets of worlds) are evaluated over a Frame: a finite set of
// points, a successor relation and one extension per proposition. Teams are
// bitmasks over the points.

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tl/syntax.hpp"

namespace tl {

using Mask = std::uint64_t;

inline constexpr std::size_t kMaxFramePoints = 64;

inline Mask full_mask(std::size_t n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }
inline std::size_t popcount(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }

struct Frame {
  std::size_t size = 0;
  std::vector<Mask> successors;  // one mask per point
  std::map<std::string, Mask, std::less<>> extension;

  // Points where p holds; propositions absent from the map hold nowhere.
  Mask extension_of(std::string_view p) const;
  Mask all() const { return full_mask(size); }
  // R(X): successors of the points of X.
  Mask image(Mask team) const;
  // XRY: every x in X has a successor in Y, every y in Y has a predecessor in X.
  bool covers(Mask x, Mask y) const;
};

// Evaluates team formulas on subteams of a frame, memoizing per
// (subformula, team). Splitjunctions use the exhaustive cover search: every
// member goes left, right or both. Diamonds search all Y within R(X).
//
// Not thread-safe; one evaluator per thread.
class TeamEvaluator {
 public:
  TeamEvaluator(const Frame& frame, std::size_t successor_cap);

  bool holds(const Formula& f, Mask team);
  // Singleton semantics M_s(a) for a classical formula.
  bool holds_at(const Formula& classical, std::size_t point);

  const Frame& frame() const { return frame_; }

 private:
  struct Key {
    const void* node;
    Mask team;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return std::hash<const void*>()(k.node) ^ (std::hash<Mask>()(k.team) * 0x9e3779b97f4a7c15ULL);
    }
  };

  void pin(const Formula& f);
  bool compute(const Formula& f, Mask team);
  bool team_atom(const Formula& f, Mask team);
  std::uint64_t arg_key(std::span<const Formula> args, std::size_t point);

  const Frame& frame_;
  std::size_t successor_cap_;
  std::unordered_map<Key, bool, KeyHash> team_memo_;
  std::unordered_map<Key, bool, KeyHash> point_memo_;
  std::unordered_set<const void*> pinned_ids_;
  std::vector<Formula> pinned_;
};

// Truth value of a formula on every subteam of a frame with at most
// kMaxTableFrame points: entry Z is 1 iff the subteam with mask Z satisfies it.
// Splitjunctions are computed as union products through zeta/Moebius
// transforms, so whole team properties come out in O(n 2^n) per connective.
using SubteamTable = std::vector<std::uint8_t>;

inline constexpr std::size_t kMaxTableFrame = 16;

SubteamTable subteam_table(const Formula& f, const Frame& frame, std::size_t successor_cap);

// {A ∪ B : a[A], b[B]} over subsets of an n-element universe.
SubteamTable union_product(const SubteamTable& a, const SubteamTable& b, std::size_t n);

}  // namespace tl

#endif
