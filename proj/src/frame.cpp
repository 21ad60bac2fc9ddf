#include "tl/frame.hpp"

#include <set>
#include <utility>

#include "tl/error.hpp"

namespace tl {

Mask Frame::extension_of(std::string_view p) const {
  auto it = extension.find(p);
  return it == extension.end() ? Mask{0} : it->second;
}

Mask Frame::image(Mask team) const {
  Mask out = 0;
  for (Mask m = team; m; m &= m - 1) out |= successors[std::countr_zero(m)];
  return out;
}

bool Frame::covers(Mask x, Mask y) const {
  if ((y & ~image(x)) != 0) return false;
  for (Mask m = x; m; m &= m - 1)
    if ((successors[std::countr_zero(m)] & y) == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Lazy evaluator

TeamEvaluator::TeamEvaluator(const Frame& frame, std::size_t successor_cap)
    : frame_(frame), successor_cap_(successor_cap) {
  if (frame.size > kMaxFramePoints)
    throw ResourceError("frame points", kMaxFramePoints, frame.size, "teams are 64-bit masks");
}

void TeamEvaluator::pin(const Formula& f) {
  if (pinned_ids_.insert(f.id()).second) pinned_.push_back(f);
}

bool TeamEvaluator::holds(const Formula& f, Mask team) {
  pin(f);
  return compute(f, team);
}

bool TeamEvaluator::holds_at(const Formula& a, std::size_t point) {
  pin(a);
  const Key key{a.id(), Mask{1} << point};
  if (auto it = point_memo_.find(key); it != point_memo_.end()) return it->second;
  bool v = false;
  switch (a.kind()) {
    case Kind::Prop: v = (frame_.extension_of(a.name()) >> point) & 1; break;
    case Kind::NegProp: v = !((frame_.extension_of(a.name()) >> point) & 1); break;
    case Kind::Bottom: v = false; break;
    case Kind::Top: v = true; break;
    case Kind::And: v = holds_at(a.left(), point) && holds_at(a.right(), point); break;
    case Kind::Split: v = holds_at(a.left(), point) || holds_at(a.right(), point); break;
    case Kind::Dia:
      for (Mask m = frame_.successors[point]; m && !v; m &= m - 1) v = holds_at(a.body(), std::countr_zero(m));
      break;
    case Kind::Box:
      v = true;
      for (Mask m = frame_.successors[point]; m && v; m &= m - 1) v = holds_at(a.body(), std::countr_zero(m));
      break;
    default:
      throw InvalidArgument("singleton semantics needs a classical formula, got: " + render(a));
  }
  point_memo_.emplace(key, v);
  return v;
}

std::uint64_t TeamEvaluator::arg_key(std::span<const Formula> args, std::size_t point) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < args.size(); ++i)
    if (holds_at(args[i], point)) key |= std::uint64_t{1} << i;
  return key;
}

bool TeamEvaluator::team_atom(const Formula& f, Mask team) {
  if (f.atom_left().size() > 64 || f.atom_right().size() > 64)
    throw ResourceError("team atom arity", 64, std::max(f.atom_left().size(), f.atom_right().size()), "");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
  for (Mask m = team; m; m &= m - 1) {
    const std::size_t s = std::countr_zero(m);
    rows.emplace_back(arg_key(f.atom_left(), s), arg_key(f.atom_right(), s));
  }
  switch (f.kind()) {
    case Kind::Dep: {
      std::map<std::uint64_t, std::uint64_t> fn;
      for (const auto& [args, target] : rows) {
        auto [it, fresh] = fn.emplace(args, target);
        if (!fresh && it->second != target) return false;
      }
      return true;
    }
    case Kind::Inc: {
      std::set<std::uint64_t> right;
      for (const auto& r : rows) right.insert(r.second);
      for (const auto& r : rows)
        if (!right.count(r.first)) return false;
      return true;
    }
    case Kind::Ind: {
      std::set<std::uint64_t> left, right;
      std::set<std::pair<std::uint64_t, std::uint64_t>> pairs(rows.begin(), rows.end());
      for (const auto& r : rows) {
        left.insert(r.first);
        right.insert(r.second);
      }
      return pairs.size() == left.size() * right.size();
    }
    default:
      break;
  }
  return false;
}

bool TeamEvaluator::compute(const Formula& f, Mask team) {
  const Key key{f.id(), team};
  if (auto it = team_memo_.find(key); it != team_memo_.end()) return it->second;
  bool v = false;
  switch (f.kind()) {
    case Kind::Prop: v = (team & ~frame_.extension_of(f.name())) == 0; break;
    case Kind::NegProp: v = (team & frame_.extension_of(f.name())) == 0; break;
    case Kind::Bottom: v = team == 0; break;
    case Kind::Top: v = true; break;
    case Kind::NonEmpty: v = team != 0; break;
    case Kind::Dep:
    case Kind::Inc:
    case Kind::Ind: v = team_atom(f, team); break;
    case Kind::And: v = compute(f.left(), team) && compute(f.right(), team); break;
    case Kind::Or: v = compute(f.left(), team) || compute(f.right(), team); break;
    case Kind::Split:
    case Kind::NeSplit: {
      const bool nonempty_parts = f.kind() == Kind::NeSplit;
      if (nonempty_parts && team == 0) {
        v = true;
        break;
      }
      // Left part Z1 ranges over subsets of the team; the right part must
      // contain team \ Z1 and may re-cover any member of Z1.
      for (Mask z1 = team;; z1 = (z1 - 1) & team) {
        if (!(nonempty_parts && z1 == 0) && compute(f.left(), z1)) {
          const Mask rest = team & ~z1;
          for (Mask extra = z1;; extra = (extra - 1) & z1) {
            const Mask z2 = rest | extra;
            if (!(nonempty_parts && z2 == 0) && compute(f.right(), z2)) {
              v = true;
              break;
            }
            if (extra == 0) break;
          }
          if (v) break;
        }
        if (z1 == 0) break;
      }
      break;
    }
    case Kind::Box: v = compute(f.body(), frame_.image(team)); break;
    case Kind::Dia: {
      const Mask img = frame_.image(team);
      if (popcount(img) > successor_cap_)
        throw ResourceError("successor cap", successor_cap_, popcount(img),
                            "the diamond search enumerates every subset of R(X)");
      for (Mask y = img;; y = (y - 1) & img) {
        if (frame_.covers(team, y) && compute(f.body(), y)) {
          v = true;
          break;
        }
        if (y == 0) break;
      }
      break;
    }
    case Kind::Exists:
      throw InvalidArgument("the bisimulation quantifier must be eliminated before evaluation: " + render(f));
  }
  team_memo_.emplace(key, v);
  return v;
}

// ---------------------------------------------------------------------------
// Whole-table evaluation

namespace {

void zeta(std::vector<std::int64_t>& v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t z = 0; z < v.size(); ++z)
      if (z >> i & 1) v[z] += v[z ^ (std::size_t{1} << i)];
}

void moebius(std::vector<std::int64_t>& v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t z = 0; z < v.size(); ++z)
      if (z >> i & 1) v[z] -= v[z ^ (std::size_t{1} << i)];
}

class TableBuilder {
 public:
  TableBuilder(const Frame& frame, std::size_t successor_cap)
      : frame_(frame), eval_(frame, successor_cap), successor_cap_(successor_cap), entries_(std::size_t{1} << frame.size) {}

  const SubteamTable& table(const Formula& f) {
    if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second;
    pinned_.push_back(f);
    return memo_.emplace(f.id(), build(f)).first->second;
  }

 private:
  SubteamTable build(const Formula& f) {
    SubteamTable t(entries_, 0);
    switch (f.kind()) {
      case Kind::Prop: {
        const Mask ext = frame_.extension_of(f.name());
        for (std::size_t z = 0; z < entries_; ++z) t[z] = (z & ~ext) == 0;
        break;
      }
      case Kind::NegProp: {
        const Mask ext = frame_.extension_of(f.name());
        for (std::size_t z = 0; z < entries_; ++z) t[z] = (z & ext) == 0;
        break;
      }
      case Kind::Bottom: t[0] = 1; break;
      case Kind::Top: std::fill(t.begin(), t.end(), 1); break;
      case Kind::NonEmpty:
        std::fill(t.begin(), t.end(), 1);
        t[0] = 0;
        break;
      case Kind::Dep:
      case Kind::Inc:
      case Kind::Ind:
        // The lazy evaluator's atom check is a direct reading of the atom
        // clauses; reuse it per subteam.
        for (std::size_t z = 0; z < entries_; ++z) t[z] = eval_.holds(f, z);
        break;
      case Kind::And: {
        const auto& a = table(f.left());
        const auto& b = table(f.right());
        for (std::size_t z = 0; z < entries_; ++z) t[z] = a[z] && b[z];
        break;
      }
      case Kind::Or: {
        const auto& a = table(f.left());
        const auto& b = table(f.right());
        for (std::size_t z = 0; z < entries_; ++z) t[z] = a[z] || b[z];
        break;
      }
      case Kind::Split: t = union_product(table(f.left()), table(f.right()), frame_.size); break;
      case Kind::NeSplit: {
        SubteamTable a = table(f.left());
        SubteamTable b = table(f.right());
        a[0] = 0;
        b[0] = 0;
        t = union_product(a, b, frame_.size);
        t[0] = 1;
        break;
      }
      case Kind::Box: {
        const auto& a = table(f.body());
        for (std::size_t z = 0; z < entries_; ++z) t[z] = a[frame_.image(z)];
        break;
      }
      case Kind::Dia: {
        const auto& a = table(f.body());
        for (std::size_t z = 0; z < entries_; ++z) {
          const Mask img = frame_.image(z);
          if (popcount(img) > successor_cap_)
            throw ResourceError("successor cap", successor_cap_, popcount(img),
                                "the diamond search enumerates every subset of R(X)");
          for (Mask y = img;; y = (y - 1) & img) {
            if (a[y] && frame_.covers(z, y)) {
              t[z] = 1;
              break;
            }
            if (y == 0) break;
          }
        }
        break;
      }
      case Kind::Exists:
        throw InvalidArgument("the bisimulation quantifier must be eliminated before evaluation: " + render(f));
    }
    return t;
  }

  const Frame& frame_;
  TeamEvaluator eval_;
  std::size_t successor_cap_;
  std::size_t entries_;
  std::unordered_map<const void*, SubteamTable> memo_;
  std::vector<Formula> pinned_;
};

}  // namespace

SubteamTable union_product(const SubteamTable& a, const SubteamTable& b, std::size_t n) {
  std::vector<std::int64_t> za(a.begin(), a.end()), zb(b.begin(), b.end());
  zeta(za, n);
  zeta(zb, n);
  for (std::size_t z = 0; z < za.size(); ++z) za[z] *= zb[z];
  moebius(za, n);
  SubteamTable out(za.size());
  for (std::size_t z = 0; z < za.size(); ++z) out[z] = za[z] > 0;
  return out;
}

SubteamTable subteam_table(const Formula& f, const Frame& frame, std::size_t successor_cap) {
  if (frame.size > kMaxTableFrame)
    throw ResourceError("table frame points", kMaxTableFrame, frame.size, "whole-table evaluation is 2^n per connective");
  TableBuilder builder(frame, successor_cap);
  return builder.table(f);
}

}  // namespace tl
