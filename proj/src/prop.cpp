#include "tl/prop.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "tl/error.hpp"
#include "tl/frame.hpp"

namespace tl {

// ---------------------------------------------------------------------------
// Valuations and teams

namespace {

std::size_t domain_index(const PropSet& domain, std::string_view p) {
  auto it = std::lower_bound(domain.begin(), domain.end(), p,
                             [](const std::string& a, std::string_view b) { return std::string_view(a) < b; });
  if (it == domain.end() || *it != p) throw InvalidArgument("proposition '" + std::string(p) + "' is not in the domain " + props_to_string(domain));
  return static_cast<std::size_t>(it - domain.begin());
}

void require_codeable(const PropSet& domain) {
  if (domain.size() > 6)
    throw ResourceError("team code domain", 6, domain.size(), "team codes index at most 64 valuations");
}

void require_prop_cap(std::size_t n, const Limits& limits) {
  const std::size_t cap = std::min(limits.max_props, Limits::kMaxPropsCeiling);
  if (n > cap)
    throw ResourceError("max propositions", cap, n,
                        "raise TL_MAX_PROPS / --max-props; hard ceiling " + std::to_string(Limits::kMaxPropsCeiling));
}

// One point per valuation over `domain`; point i is the valuation with bit pattern i.
Frame valuation_frame(const PropSet& domain) {
  Frame fr;
  fr.size = std::size_t{1} << domain.size();
  fr.successors.assign(fr.size, 0);
  for (std::size_t j = 0; j < domain.size(); ++j) {
    Mask ext = 0;
    for (std::size_t i = 0; i < fr.size; ++i)
      if (i >> j & 1) ext |= Mask{1} << i;
    fr.extension[domain[j]] = ext;
  }
  return fr;
}

void require_propositional(const Formula& f) {
  if (!f.is_modality_free()) throw InvalidArgument("propositional semantics cannot evaluate modalities: " + render(f));
  if (!f.is_quantifier_free())
    throw InvalidArgument("propositional semantics cannot evaluate the bisimulation quantifier: " + render(f));
}

SubteamTable property_table(const Formula& f, const PropSet& domain, const Limits& limits) {
  require_propositional(f);
  if (!props_subset(props_of(f), domain))
    throw InvalidArgument("domain " + props_to_string(domain) + " misses propositions of " + render(f));
  require_prop_cap(domain.size(), limits);
  return subteam_table(f, valuation_frame(domain), limits.successor_cap);
}

// Maps each valuation index over `domain` to its index over `keep`.
std::vector<std::uint32_t> projection_map(const PropSet& domain, const PropSet& keep) {
  std::vector<std::size_t> where;
  for (const auto& q : keep) where.push_back(domain_index(domain, q));
  std::vector<std::uint32_t> out(std::size_t{1} << domain.size());
  for (std::uint32_t i = 0; i < out.size(); ++i) {
    std::uint32_t j = 0;
    for (std::size_t b = 0; b < where.size(); ++b)
      if (i >> where[b] & 1) j |= 1u << b;
    out[i] = j;
  }
  return out;
}

std::uint64_t project_code(std::uint64_t code, const std::vector<std::uint32_t>& map) {
  std::uint64_t out = 0;
  for (std::uint64_t m = code; m; m &= m - 1) out |= std::uint64_t{1} << map[std::countr_zero(m)];
  return out;
}

}  // namespace

bool Valuation::value(std::string_view p) const { return bits >> domain_index(domain, p) & 1; }

Team::Team(PropSet domain, std::vector<std::uint32_t> members)
    : domain_(std::move(domain)), members_(std::move(members)) {
  if (!std::is_sorted(domain_.begin(), domain_.end()) ||
      std::adjacent_find(domain_.begin(), domain_.end()) != domain_.end())
    domain_ = make_props(std::move(domain_));
  if (domain_.size() > 31) throw ResourceError("team domain", 31, domain_.size(), "valuations are 32-bit patterns");
  const std::uint32_t limit = domain_.size() == 32 ? 0 : (1u << domain_.size());
  for (auto m : members_)
    if (m >= limit) throw InvalidArgument("valuation bit pattern outside the team domain");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

Team Team::from_code(PropSet domain, std::uint64_t code) {
  require_codeable(domain);
  std::vector<std::uint32_t> members;
  for (std::uint64_t m = code; m; m &= m - 1) members.push_back(static_cast<std::uint32_t>(std::countr_zero(m)));
  return Team(std::move(domain), std::move(members));
}

std::uint64_t Team::code() const {
  require_codeable(domain_);
  std::uint64_t c = 0;
  for (auto m : members_) c |= std::uint64_t{1} << m;
  return c;
}

Team Team::with_constant(const std::string& p, bool value) const {
  const std::size_t j = domain_index(domain_, p);
  std::vector<std::uint32_t> out;
  for (auto m : members_) out.push_back(value ? (m | 1u << j) : (m & ~(1u << j)));
  return Team(domain_, std::move(out));
}

std::string Team::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < domain_.size(); ++j) {
      if (j) out += ' ';
      out += domain_[j] + "=" + ((members_[i] >> j & 1) ? "1" : "0");
    }
  }
  return out + "}";
}

Team Team::parse(std::string_view text, const PropSet& empty_domain) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> void { throw ParseError(msg, 1, pos + 1); };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (pos >= text.size() || text[pos] != '{') fail("team must start with '{'");
  ++pos;
  std::vector<std::map<std::string, bool>> rows;
  std::map<std::string, bool> row;
  for (;;) {
    skip();
    if (pos >= text.size()) fail("unterminated team, expected '}'");
    const char c = text[pos];
    if (c == '}' || c == ';') {
      if (c == ';' && row.empty()) fail("empty valuation");
      if (!row.empty()) rows.push_back(std::move(row));
      row.clear();
      ++pos;
      if (c == '}') break;
      continue;
    }
    if (!std::islower(static_cast<unsigned char>(c))) fail(std::string("unexpected '") + c + "' in team");
    std::size_t start = pos;
    while (pos < text.size() && (std::islower(static_cast<unsigned char>(text[pos])) ||
                                 std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    std::string name(text.substr(start, pos - start));
    skip();
    if (pos >= text.size() || text[pos] != '=') fail("expected '=' after '" + name + "'");
    ++pos;
    skip();
    if (pos >= text.size() || (text[pos] != '0' && text[pos] != '1')) fail("expected 0 or 1");
    if (!row.emplace(name, text[pos] == '1').second) fail("proposition '" + name + "' assigned twice");
    ++pos;
  }
  skip();
  if (pos != text.size()) fail("trailing input after team");
  if (rows.empty()) return Team(empty_domain, {});
  std::vector<std::string> names;
  for (const auto& [name, v] : rows.front()) names.push_back(name);
  PropSet domain = make_props(names);
  std::vector<std::uint32_t> members;
  for (const auto& r : rows) {
    if (r.size() != domain.size())
      throw ParseError("all valuations of a team must assign the same propositions", 1, 1);
    std::uint32_t bits = 0;
    for (const auto& [name, v] : r) {
      auto it = std::lower_bound(domain.begin(), domain.end(), name);
      if (it == domain.end() || *it != name)
        throw ParseError("all valuations of a team must assign the same propositions", 1, 1);
      if (v) bits |= 1u << (it - domain.begin());
    }
    members.push_back(bits);
  }
  return Team(std::move(domain), std::move(members));
}

// ---------------------------------------------------------------------------
// Team properties

bool TeamProperty::contains_code(std::uint64_t code) const {
  return std::binary_search(codes.begin(), codes.end(), code);
}

bool TeamProperty::contains(const Team& t) const {
  if (t.domain() != domain) throw InvalidArgument("team domain differs from the property domain");
  return contains_code(t.code());
}

std::vector<Team> TeamProperty::teams() const {
  std::vector<Team> out;
  out.reserve(codes.size());
  for (auto c : codes) out.push_back(Team::from_code(domain, c));
  return out;
}

std::string TeamProperty::to_text() const {
  std::string out = "props:";
  for (const auto& p : domain) out += " " + p;
  out += "\n";
  for (auto c : codes) out += Team::from_code(domain, c).to_string() + "\n";
  return out;
}

TeamProperty TeamProperty::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::optional<PropSet> domain;
  std::vector<std::uint64_t> codes;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first);
    if (!domain) {
      if (line.rfind("props:", 0) != 0) throw ParseError("expected 'props:' header", lineno, 1);
      std::istringstream names(line.substr(6));
      std::vector<std::string> ps;
      for (std::string p; names >> p;) ps.push_back(p);
      domain = make_props(ps);
      require_codeable(*domain);
      continue;
    }
    Team t;
    try {
      t = Team::parse(line, *domain);
    } catch (const ParseError& e) {
      throw ParseError(e.detail(), lineno, e.column());
    }
    if (t.domain() != *domain) throw ParseError("team domain differs from the 'props:' header", lineno, 1);
    codes.push_back(t.code());
  }
  if (!domain) throw ParseError("missing 'props:' header", lineno + 1, 1);
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  return TeamProperty{*domain, std::move(codes)};
}

// ---------------------------------------------------------------------------
// Semantics

bool eval_prop(const Formula& f, const Team& team, const Limits& limits) {
  require_propositional(f);
  if (!props_subset(props_of(f), team.domain()))
    throw InvalidArgument("team domain " + props_to_string(team.domain()) + " misses propositions of " + render(f));
  if (team.size() > kMaxFramePoints)
    throw ResourceError("team size", kMaxFramePoints, team.size(), "teams are evaluated as 64-bit masks");
  Frame fr;
  fr.size = team.size();
  fr.successors.assign(fr.size, 0);
  for (std::size_t j = 0; j < team.domain().size(); ++j) {
    Mask ext = 0;
    for (std::size_t i = 0; i < team.size(); ++i)
      if (team.members()[i] >> j & 1) ext |= Mask{1} << i;
    fr.extension[team.domain()[j]] = ext;
  }
  TeamEvaluator eval(fr, limits.successor_cap);
  return eval.holds(f, fr.all());
}

TeamProperty models_of(const Formula& f, const PropSet& domain, const Limits& limits) {
  const SubteamTable table = property_table(f, domain, limits);
  TeamProperty out{domain, {}};
  for (std::uint64_t z = 0; z < table.size(); ++z)
    if (table[z]) out.codes.push_back(z);
  return out;
}

namespace {

std::string fresh_name(const PropSet& taken) {
  for (const char* c : {"x", "y", "z", "w"})
    if (!props_contain(taken, c)) return c;
  for (int i = 0;; ++i) {
    std::string n = "fresh" + std::to_string(i);
    if (!props_contain(taken, n)) return n;
  }
}

}  // namespace

ClosureReport closure_report(const Formula& f, const PropSet& domain_in, const Limits& limits) {
  const PropSet language = props_of(f);
  const PropSet domain = domain_in.empty() ? language : domain_in;
  const SubteamTable table = property_table(f, domain, limits);
  const std::size_t n = std::size_t{1} << domain.size();
  auto team = [&](std::uint64_t code) { return Team::from_code(domain, code); };

  ClosureReport rep;
  rep.domain = domain;

  if (!table[0]) {
    rep.empty_team.holds = false;
    rep.empty_team.witness.emplace(team(0), team(0));
  }

  // Downward closure holds iff every model stays a model after dropping one member.
  for (std::uint64_t x = 0; x < table.size() && rep.downward.holds; ++x) {
    if (!table[x]) continue;
    for (std::uint64_t m = x; m; m &= m - 1) {
      if (table[x & ~(m & -m)]) continue;
      rep.downward.holds = false;
      for (std::uint64_t y = 0; y < x; ++y)
        if ((y & ~x) == 0 && !table[y]) {
          rep.downward.witness.emplace(team(x), team(y));
          break;
        }
      break;
    }
  }

  // Union closure: unions of two models are exactly the union product.
  const SubteamTable unions = union_product(table, table, n);
  for (std::uint64_t z = 0; z < table.size(); ++z) {
    if (!unions[z] || table[z]) continue;
    rep.union_closed.holds = false;
    for (std::uint64_t x1 = 0; x1 <= z && !rep.union_closed.witness; ++x1) {
      if ((x1 & ~z) || !table[x1]) continue;
      for (std::uint64_t x2 = x1; x2 <= z; ++x2)
        if ((x2 & ~z) == 0 && (x1 | x2) == z && table[x2]) {
          rep.union_closed.witness.emplace(team(x1), team(x2));
          break;
        }
    }
    break;
  }

  // Locality: teams agreeing on the formula's language agree on the formula.
  // An extra fresh proposition makes the check non-trivial when domain = language.
  PropSet extended = domain;
  if (domain.size() < std::min(limits.max_props, Limits::kMaxPropsCeiling))
    extended = props_union(domain, {fresh_name(domain)});
  const SubteamTable ext_table = extended == domain ? table : property_table(f, extended, limits);
  const auto map = projection_map(extended, language);
  std::map<std::uint64_t, std::pair<std::optional<std::uint64_t>, std::optional<std::uint64_t>>> classes;
  for (std::uint64_t z = 0; z < ext_table.size(); ++z) {
    auto& [yes, no] = classes[project_code(z, map)];
    (ext_table[z] ? yes : no) = (ext_table[z] ? yes : no).value_or(z);
  }
  for (const auto& [proj, cls] : classes) {
    if (cls.first && cls.second) {
      rep.local.holds = false;
      rep.local.witness.emplace(Team::from_code(extended, *cls.first), Team::from_code(extended, *cls.second));
      break;
    }
  }
  return rep;
}

Team project_team(const Team& team, const PropSet& keep) {
  if (!props_subset(keep, team.domain()))
    throw InvalidArgument("projection set " + props_to_string(keep) + " is not a subset of the team domain " +
                          props_to_string(team.domain()));
  std::vector<std::size_t> where;
  for (const auto& q : keep) where.push_back(domain_index(team.domain(), q));
  std::vector<std::uint32_t> out;
  for (auto m : team.members()) {
    std::uint32_t j = 0;
    for (std::size_t b = 0; b < where.size(); ++b)
      if (m >> where[b] & 1) j |= 1u << b;
    out.push_back(j);
  }
  return Team(keep, std::move(out));
}

Formula synthesize_fptl(const TeamProperty& y) {
  require_codeable(y.domain);
  const std::size_t valuations = std::size_t{1} << y.domain.size();
  if (valuations < 64 && y.codes.size() == (std::size_t{1} << valuations)) return Formula::top();

  auto literal_conj = [&](std::uint32_t bits) {
    std::vector<Formula> lits;
    for (std::size_t j = 0; j < y.domain.size(); ++j)
      lits.push_back(bits >> j & 1 ? Formula::prop(y.domain[j]) : Formula::neg_prop(y.domain[j]));
    return Formula::conj_all(lits, Formula::top());
  };
  std::vector<Formula> disjuncts;
  for (auto code : y.codes) {
    std::vector<Formula> parts;
    for (std::uint64_t m = code; m; m &= m - 1)
      parts.push_back(Formula::conj(literal_conj(static_cast<std::uint32_t>(std::countr_zero(m))), Formula::non_empty()));
    disjuncts.push_back(Formula::split_all(parts, Formula::bottom()));
  }
  return Formula::disj_all(disjuncts, Formula::conj(Formula::bottom(), Formula::non_empty()));
}

Formula uniform_interpolant_prop(const Formula& f, const PropSet& keep, const Limits& limits) {
  const PropSet language = props_of(f);
  if (!props_subset(keep, language))
    throw InvalidArgument("kept language " + props_to_string(keep) + " must be a subset of " + props_to_string(language));
  const TeamProperty models = models_of(f, language, limits);
  const auto map = projection_map(language, keep);
  TeamProperty projected{keep, {}};
  for (auto c : models.codes) projected.codes.push_back(project_code(c, map));
  std::sort(projected.codes.begin(), projected.codes.end());
  projected.codes.erase(std::unique(projected.codes.begin(), projected.codes.end()), projected.codes.end());
  return synthesize_fptl(projected);
}

Entailment entails_prop(const Formula& f, const Formula& g, const Limits& limits) {
  const PropSet domain = props_union(props_of(f), props_of(g));
  require_prop_cap(domain.size(), limits);
  const SubteamTable tf = property_table(f, domain, limits);
  const SubteamTable tg = property_table(g, domain, limits);
  for (std::uint64_t z = 0; z < tf.size(); ++z)
    if (tf[z] && !tg[z]) return Entailment{false, Team::from_code(domain, z)};
  return Entailment{true, std::nullopt};
}

}  // namespace tl
