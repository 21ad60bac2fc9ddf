#include "tl/charform.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "tl/error.hpp"

namespace tl {

std::strong_ordering operator<=>(const TypeTree& a, const TypeTree& b) {
  if (auto c = a.depth <=> b.depth; c != 0) return c;
  if (auto c = a.label <=> b.label; c != 0) return c;
  if (auto c = std::lexicographical_compare_three_way(a.children.begin(), a.children.end(), b.children.begin(),
                                                      b.children.end());
      c != 0)
    return c;
  return a.props <=> b.props;
}

bool operator==(const TypeTree& a, const TypeTree& b) { return (a <=> b) == 0; }

namespace {

void canonicalize(std::vector<TypeTree>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

PropSet label_props(const PropSet& props, std::uint64_t label) {
  PropSet out;
  for (std::size_t j = 0; j < props.size(); ++j)
    if (label >> j & 1) out.push_back(props[j]);
  return out;
}

}  // namespace

std::vector<TypeTree> types_of_all(const KripkeModel& m, const PropSet& props, std::size_t k) {
  const auto labels = m.label_masks(props);
  std::vector<TypeTree> layer(m.size());
  for (std::size_t w = 0; w < m.size(); ++w) layer[w] = TypeTree{0, labels[w], {}, props};
  for (std::size_t i = 1; i <= k; ++i) {
    std::vector<TypeTree> next(m.size());
    for (std::size_t w = 0; w < m.size(); ++w) {
      next[w] = TypeTree{i, labels[w], {}, props};
      for (Mask s = m.successors(w); s; s &= s - 1) next[w].children.push_back(layer[std::countr_zero(s)]);
      canonicalize(next[w].children);
    }
    layer = std::move(next);
  }
  return layer;
}

TypeTree type_of(const KripkeModel& m, std::size_t w, const PropSet& props, std::size_t k) {
  if (w >= m.size()) throw InvalidArgument("unknown world index " + std::to_string(w));
  return types_of_all(m, props, k)[w];
}

std::size_t type_count(std::size_t n, std::size_t k) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  if (n >= 63) return kMax;
  const std::size_t labels = std::size_t{1} << n;
  std::size_t t = labels;
  for (std::size_t i = 0; i < k; ++i) {
    if (t >= 63) return kMax;
    const std::size_t subsets = std::size_t{1} << t;
    if (subsets > kMax / labels) return kMax;
    t = labels * subsets;
  }
  return t;
}

std::vector<TypeTree> enumerate_types(const PropSet& props, std::size_t k, std::size_t cap) {
  const std::size_t total = type_count(props.size(), k);
  if (total > cap)
    throw ResourceError("type cap", cap, total, "raise TL_TYPE_CAP / --type-cap or lower the depth");
  const std::uint64_t labels = std::uint64_t{1} << props.size();
  std::vector<TypeTree> layer;
  for (std::uint64_t l = 0; l < labels; ++l) layer.push_back(TypeTree{0, l, {}, props});
  for (std::size_t i = 1; i <= k; ++i) {
    std::vector<TypeTree> next;
    next.reserve(total);
    for (std::uint64_t l = 0; l < labels; ++l)
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << layer.size()); ++s) {
        TypeTree t{i, l, {}, props};
        for (std::uint64_t m = s; m; m &= m - 1) t.children.push_back(layer[std::countr_zero(m)]);
        next.push_back(std::move(t));
      }
    std::sort(next.begin(), next.end());
    layer = std::move(next);
  }
  return layer;
}

TypeTree project_type(const TypeTree& t, const PropSet& keep) {
  if (!props_subset(keep, t.props))
    throw InvalidArgument("projection set " + props_to_string(keep) + " is not a subset of " + props_to_string(t.props));
  std::uint64_t label = 0;
  for (std::size_t j = 0; j < keep.size(); ++j)
    if (t.label >> (std::lower_bound(t.props.begin(), t.props.end(), keep[j]) - t.props.begin()) & 1)
      label |= std::uint64_t{1} << j;
  TypeTree out{t.depth, label, {}, keep};
  for (const auto& c : t.children) out.children.push_back(project_type(c, keep));
  canonicalize(out.children);
  return out;
}

std::string type_to_string(const TypeTree& t) {
  std::string out = "(" + props_to_string(label_props(t.props, t.label));
  if (t.depth > 0) {
    out += " -> [";
    for (std::size_t i = 0; i < t.children.size(); ++i) out += (i ? ", " : "") + type_to_string(t.children[i]);
    out += "]";
  }
  return out + ")";
}

namespace {

Formula build_chi(const TypeTree& t, const std::function<Formula(const TypeTree&)>& child) {
  std::vector<Formula> parts;
  for (std::size_t j = 0; j < t.props.size(); ++j)
    parts.push_back(t.label >> j & 1 ? Formula::prop(t.props[j]) : Formula::neg_prop(t.props[j]));
  if (t.depth > 0) {
    std::vector<Formula> kids;
    for (const auto& c : t.children) kids.push_back(child(c));
    for (const auto& c : kids) parts.push_back(Formula::dia(c));
    parts.push_back(Formula::box(Formula::split_all(kids, Formula::bottom())));
  }
  return Formula::conj_all(parts, Formula::top());
}

}  // namespace

Formula char_formula(const TypeTree& t) {
  return build_chi(t, [](const TypeTree& c) { return char_formula(c); });
}

const Formula& CharFormulaCache::chi(const TypeTree& t) {
  if (auto it = chi_.find(t); it != chi_.end()) return it->second;
  Formula f = build_chi(t, [this](const TypeTree& c) { return chi(c); });
  return chi_.emplace(t, std::move(f)).first->second;
}

const Formula& CharFormulaCache::chi_ne(const TypeTree& t) {
  if (auto it = chi_ne_.find(t); it != chi_ne_.end()) return it->second;
  Formula f = Formula::conj(chi(t), Formula::non_empty());
  return chi_ne_.emplace(t, std::move(f)).first->second;
}

Formula CharFormulaCache::team_formula(std::vector<TypeTree> types) {
  canonicalize(types);
  std::vector<Formula> parts;
  for (const auto& t : types) parts.push_back(chi_ne(t));
  return Formula::split_all(parts, Formula::bottom());
}

Formula team_char_formula(const TeamModel& tm, const PropSet& props, std::size_t k) {
  const auto types = types_of_all(tm.model, props, k);
  std::vector<TypeTree> chosen;
  for (Mask x = tm.team; x; x &= x - 1) chosen.push_back(types[std::countr_zero(x)]);
  CharFormulaCache cache;
  return cache.team_formula(std::move(chosen));
}

UniversalModel universal_model(const PropSet& props, std::size_t k, std::size_t cap) {
  std::size_t worlds = 0;
  for (std::size_t j = 0; j <= k; ++j) {
    const std::size_t c = type_count(props.size(), j);
    if (c > cap) throw ResourceError("type cap", cap, c, "raise TL_TYPE_CAP / --type-cap or lower the depth");
    worlds += c;
  }
  if (worlds > kMaxFramePoints)
    throw ResourceError("model worlds", kMaxFramePoints, worlds, "the universal model has one world per j-type, j <= k");
  UniversalModel out;
  std::map<TypeTree, std::size_t> index;
  for (std::size_t j = 0; j <= k; ++j) {
    auto layer = enumerate_types(props, j, cap);
    for (std::size_t i = 0; i < layer.size(); ++i) {
      const auto& t = layer[i];
      const std::size_t w = out.model.add_world("t" + std::to_string(j) + "." + std::to_string(i), label_props(props, t.label));
      for (const auto& c : t.children) out.model.add_edge(w, index.at(c));
      index.emplace(t, w);
      if (j == k) out.roots.push_back(w);
    }
    if (j == k) out.types = std::move(layer);
  }
  return out;
}

namespace {

std::size_t realize(const TypeTree& t, KripkeModel& model, std::map<TypeTree, std::size_t>& index) {
  if (auto it = index.find(t); it != index.end()) return it->second;
  std::vector<std::size_t> kids;
  for (const auto& c : t.children) kids.push_back(realize(c, model, index));
  const std::size_t w = model.add_world("r" + std::to_string(model.size()), label_props(t.props, t.label));
  for (auto c : kids) model.add_edge(w, c);
  index.emplace(t, w);
  return w;
}

}  // namespace

UniversalModel realize_types(const std::vector<TypeTree>& types) {
  UniversalModel out;
  std::map<TypeTree, std::size_t> index;
  for (const auto& t : types) out.roots.push_back(realize(t, out.model, index));
  out.types = types;
  return out;
}

}  // namespace tl
