#ifndef TL_LIMITS_HPP
#define TL_LIMITS_HPP

#include <cstddef>

namespace tl {

// Enumeration guards. Exceeding any of them raises ResourceError; nothing is
// ever silently truncated.
struct Limits {
  // Propositions allowed when enumerating every team over a domain.
  // 4 propositions = 16 valuations = 65,536 teams. Hard ceiling: kMaxPropsCeiling.
  std::size_t max_props = 4;
  // Number of canonical k-types enumerate_types may produce.
  std::size_t type_cap = 4096;
  // Number of k-types for exact bisimulation-quantifier elimination
  // (2^types team classes are evaluated).
  std::size_t exact_type_cap = 16;
  // Worlds per model for bounded model enumeration.
  std::size_t max_worlds = 3;
  // |R(X)| for the diamond search in modal team evaluation.
  std::size_t successor_cap = 16;

  static constexpr std::size_t kMaxPropsCeiling = 4;
  static constexpr std::size_t kMaxWorldsCeiling = 4;

  // Defaults overridden by TL_MAX_PROPS, TL_TYPE_CAP and TL_MAX_WORLDS.
  static Limits from_env();
};

}  // namespace tl

#endif
