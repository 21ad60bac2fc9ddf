#include "tl/bisim.hpp"

#include <sstream>

#include "tl/error.hpp"

namespace tl {

std::size_t Relation::size() const {
  std::size_t n = 0;
  for (auto r : rows) n += popcount(r);
  return n;
}

std::vector<std::pair<std::size_t, std::size_t>> Relation::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t w = 0; w < rows.size(); ++w)
    for (Mask m = rows[w]; m; m &= m - 1) out.emplace_back(w, std::countr_zero(m));
  return out;
}

namespace {

Relation label_agreement(const KripkeModel& m, const KripkeModel& n, const PropSet& props) {
  const auto lm = m.label_masks(props);
  const auto ln = n.label_masks(props);
  Relation r{std::vector<Mask>(m.size(), 0)};
  for (std::size_t w = 0; w < m.size(); ++w)
    for (std::size_t v = 0; v < n.size(); ++v)
      if (lm[w] == ln[v]) r.rows[w] |= Mask{1} << v;
  return r;
}

// Pairs of `base` whose successors are matched back and forth inside `prev`.
Relation refine(const KripkeModel& m, const KripkeModel& n, const Relation& base, const Relation& prev) {
  // prev_cols[v] = M-worlds related to v.
  std::vector<Mask> prev_cols(n.size(), 0);
  for (std::size_t w = 0; w < m.size(); ++w)
    for (Mask s = prev.rows[w]; s; s &= s - 1) prev_cols[std::countr_zero(s)] |= Mask{1} << w;
  Relation out{std::vector<Mask>(m.size(), 0)};
  for (std::size_t w = 0; w < m.size(); ++w) {
    for (Mask cand = base.rows[w]; cand; cand &= cand - 1) {
      const std::size_t v = std::countr_zero(cand);
      bool ok = true;
      for (Mask s = m.successors(w); s && ok; s &= s - 1) ok = (prev.rows[std::countr_zero(s)] & n.successors(v)) != 0;
      for (Mask s = n.successors(v); s && ok; s &= s - 1) ok = (prev_cols[std::countr_zero(s)] & m.successors(w)) != 0;
      if (ok) out.rows[w] |= Mask{1} << v;
    }
  }
  return out;
}

std::string pair_name(const KripkeModel& m, const KripkeModel& n, std::size_t w, std::size_t v) {
  return "(" + m.id(w) + ", " + n.id(v) + ")";
}

}  // namespace

BisimFamily bounded_bisim(const KripkeModel& m, const KripkeModel& n, const PropSet& props, std::size_t k) {
  BisimFamily fam{props, {label_agreement(m, n, props)}};
  for (std::size_t i = 0; i < k; ++i) fam.layers.push_back(refine(m, n, fam.layers.front(), fam.layers.back()));
  return fam;
}

Relation max_bisim(const KripkeModel& m, const KripkeModel& n, const PropSet& props, std::size_t* rounds) {
  const Relation base = label_agreement(m, n, props);
  Relation cur = base;
  std::size_t i = 0;
  for (;; ++i) {
    Relation next = refine(m, n, base, cur);
    if (next == cur) break;
    cur = std::move(next);
  }
  if (rounds) *rounds = i;
  return cur;
}

bool is_bisimulation(const KripkeModel& m, const KripkeModel& n, const PropSet& props, const Relation& rel,
                     std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (rel.rows.size() != m.size()) return fail("relation has " + std::to_string(rel.rows.size()) + " rows for " +
                                               std::to_string(m.size()) + " worlds");
  for (std::size_t w = 0; w < m.size(); ++w) {
    if (rel.rows[w] & ~n.all()) return fail("relation mentions worlds outside the second model");
    for (Mask s = rel.rows[w]; s; s &= s - 1) {
      const std::size_t v = std::countr_zero(s);
      for (const auto& p : props)
        if (m.holds(w, p) != n.holds(v, p)) return fail(pair_name(m, n, w, v) + " disagrees on " + p);
      for (std::size_t w2 = 0; w2 < m.size(); ++w2) {
        if (!m.has_edge(w, w2)) continue;
        bool found = false;
        for (std::size_t v2 = 0; v2 < n.size() && !found; ++v2) found = n.has_edge(v, v2) && rel.contains(w2, v2);
        if (!found) return fail(pair_name(m, n, w, v) + " fails forth for " + m.id(w2));
      }
      for (std::size_t v2 = 0; v2 < n.size(); ++v2) {
        if (!n.has_edge(v, v2)) continue;
        bool found = false;
        for (std::size_t w2 = 0; w2 < m.size() && !found; ++w2) found = m.has_edge(w, w2) && rel.contains(w2, v2);
        if (!found) return fail(pair_name(m, n, w, v) + " fails back for " + n.id(v2));
      }
    }
  }
  return true;
}

TeamBisimulation team_bisimilar(const TeamModel& a, const TeamModel& b, const PropSet& props,
                                std::optional<std::size_t> k) {
  const Relation rel = k ? bounded_bisim(a.model, b.model, props, *k).top() : max_bisim(a.model, b.model, props);
  TeamBisimulation out;
  for (Mask x = a.team; x; x &= x - 1) {
    const std::size_t w = std::countr_zero(x);
    const Mask partners = rel.rows[w] & b.team;
    if (!partners) {
      out.blocking = w;
      out.blocking_in_m = true;
      out.forth.clear();
      return out;
    }
    out.forth.emplace_back(w, std::countr_zero(partners));
  }
  for (Mask y = b.team; y; y &= y - 1) {
    const std::size_t v = std::countr_zero(y);
    std::optional<std::size_t> partner;
    for (Mask x = a.team; x && !partner; x &= x - 1)
      if (rel.contains(std::countr_zero(x), v)) partner = std::countr_zero(x);
    if (!partner) {
      out.blocking = v;
      out.blocking_in_m = false;
      out.forth.clear();
      out.back.clear();
      return out;
    }
    out.back.emplace_back(v, *partner);
  }
  out.holds = true;
  return out;
}

Amalgam amalgamate(const KripkeModel& m, const KripkeModel& n, const Relation& b, const PropSet& p,
                   const PropSet& q) {
  const PropSet shared = props_intersection(p, q);
  if (b.rows.size() != m.size() || b.empty()) throw InvalidArgument("amalgamation needs a nonempty relation");
  std::string why;
  if (!is_bisimulation(m, n, shared, b, &why))
    throw InvalidArgument("relation is not a " + props_to_string(shared) + "-bisimulation: " + why);

  Amalgam out;
  out.pairs = b.pairs();
  if (out.pairs.size() > kMaxFramePoints)
    throw ResourceError("model worlds", kMaxFramePoints, out.pairs.size(), "the amalgam has one world per related pair");
  const PropSet q_only = props_difference(q, p);
  for (const auto& [w, v] : out.pairs) {
    PropSet label;
    for (const auto& r : p)
      if (m.holds(w, r)) label.push_back(r);
    for (const auto& r : q_only)
      if (n.holds(v, r)) label.push_back(r);
    out.model.add_world("(" + m.id(w) + "," + n.id(v) + ")", make_props(label));
  }
  for (std::size_t i = 0; i < out.pairs.size(); ++i)
    for (std::size_t j = 0; j < out.pairs.size(); ++j)
      if (m.has_edge(out.pairs[i].first, out.pairs[j].first) && n.has_edge(out.pairs[i].second, out.pairs[j].second))
        out.model.add_edge(i, j);
  out.to_m.rows.assign(out.pairs.size(), 0);
  out.to_n.rows.assign(out.pairs.size(), 0);
  for (std::size_t i = 0; i < out.pairs.size(); ++i) {
    out.to_m.rows[i] = Mask{1} << out.pairs[i].first;
    out.to_n.rows[i] = Mask{1} << out.pairs[i].second;
  }
  return out;
}

TeamAmalgam team_amalgamate(const TeamModel& a, const PropSet& p, const TeamModel& b, const PropSet& q) {
  const PropSet shared = props_intersection(p, q);
  const auto check = team_bisimilar(a, b, shared);
  if (!check.holds) {
    const auto& model = check.blocking_in_m ? a.model : b.model;
    throw InvalidArgument("teams are not " + props_to_string(shared) + "-bisimilar: world '" +
                          model.id(*check.blocking) + "' has no partner");
  }
  const Relation rel = max_bisim(a.model, b.model, shared);
  if (rel.empty()) return TeamAmalgam{TeamModel{a.model, 0}, Amalgam{a.model, {}, {}, {}}};
  TeamAmalgam out{{}, amalgamate(a.model, b.model, rel, p, q)};
  out.result.model = out.amalgam.model;
  for (std::size_t i = 0; i < out.amalgam.pairs.size(); ++i) {
    const auto [w, v] = out.amalgam.pairs[i];
    if ((a.team >> w & 1) && (b.team >> v & 1)) out.result.team |= Mask{1} << i;
  }
  return out;
}

std::string relation_dump(const KripkeModel& m, const KripkeModel& n, const PropSet& props, const Relation& rel) {
  std::string out = "props:";
  for (const auto& p : props) out += " " + p;
  out += "\n";
  for (const auto& [w, v] : rel.pairs()) out += m.id(w) + " <-> " + n.id(v) + "\n";
  return out;
}

RelationFile parse_relation_dump(const KripkeModel& m, const KripkeModel& n, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::optional<PropSet> props;
  Relation rel{std::vector<Mask>(m.size(), 0)};
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    line = line.substr(first);
    if (!props) {
      if (line.rfind("props:", 0) != 0) throw ParseError("expected 'props:' header", lineno, 1);
      std::istringstream names(line.substr(6));
      std::vector<std::string> ps;
      for (std::string p; names >> p;) ps.push_back(p);
      props = make_props(ps);
      continue;
    }
    std::istringstream fields(line);
    std::string w, arrow, v, extra;
    if (!(fields >> w >> arrow >> v) || arrow != "<->" || (fields >> extra))
      throw ParseError("expected 'w <-> v'", lineno, 1);
    const auto wi = m.find(w);
    const auto vi = n.find(v);
    if (!wi) throw ParseError("unknown world '" + w + "' in the first model", lineno, 1);
    if (!vi) throw ParseError("unknown world '" + v + "' in the second model", lineno, 1);
    rel.rows[*wi] |= Mask{1} << *vi;
  }
  if (!props) throw ParseError("missing 'props:' header", lineno + 1, 1);
  return {*props, rel};
}

}  // namespace tl
