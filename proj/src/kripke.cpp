#include "tl/kripke.hpp"

#include <json.hpp>

#include "tl/error.hpp"

namespace tl {

std::size_t KripkeModel::add_world(std::string id, PropSet label) {
  if (size() >= kMaxFramePoints)
    throw ResourceError("model worlds", kMaxFramePoints, size() + 1, "worlds are indexed by 64-bit masks");
  if (find(id)) throw InvalidArgument("duplicate world id '" + id + "'");
  ids_.push_back(std::move(id));
  succ_.push_back(0);
  labels_.push_back(make_props(std::move(label)));
  return size() - 1;
}

void KripkeModel::add_edge(std::size_t from, std::size_t to) {
  if (from >= size() || to >= size()) throw InvalidArgument("edge endpoint outside the model");
  succ_[from] |= Mask{1} << to;
}

void KripkeModel::set_label(std::size_t w, PropSet label) { labels_.at(w) = make_props(std::move(label)); }

std::optional<std::size_t> KripkeModel::find(std::string_view id) const {
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (ids_[i] == id) return i;
  return std::nullopt;
}

std::size_t KripkeModel::index_of(std::string_view id) const {
  if (auto w = find(id)) return *w;
  throw InvalidArgument("unknown world '" + std::string(id) + "'");
}

PropSet KripkeModel::props() const {
  PropSet out;
  for (const auto& l : labels_) out = props_union(out, l);
  return out;
}

Frame KripkeModel::frame() const {
  Frame fr;
  fr.size = size();
  fr.successors = succ_;
  for (std::size_t w = 0; w < size(); ++w)
    for (const auto& p : labels_[w]) fr.extension[p] |= Mask{1} << w;
  return fr;
}

std::vector<std::uint64_t> KripkeModel::label_masks(const PropSet& props) const {
  if (props.size() > 64) throw ResourceError("label propositions", 64, props.size(), "");
  std::vector<std::uint64_t> out(size(), 0);
  for (std::size_t w = 0; w < size(); ++w)
    for (std::size_t j = 0; j < props.size(); ++j)
      if (props_contain(labels_[w], props[j])) out[w] |= std::uint64_t{1} << j;
  return out;
}

Mask KripkeModel::team_of(const std::vector<std::string>& ids) const {
  Mask team = 0;
  for (const auto& id : ids) team |= Mask{1} << index_of(id);
  return team;
}

std::vector<std::string> KripkeModel::team_ids(Mask team) const {
  std::vector<std::string> out;
  for (Mask m = team; m; m &= m - 1) out.push_back(ids_.at(std::countr_zero(m)));
  return out;
}

// ---------------------------------------------------------------------------
// JSON

ModelFile parse_model_json(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model file: ") + e.what(), 1, e.byte);
  }
  auto fail = [](const std::string& msg) -> void { throw ParseError("model file: " + msg, 1, 1); };
  if (!doc.is_object()) fail("expected a JSON object");
  if (!doc.contains("worlds") || !doc["worlds"].is_array()) fail("missing \"worlds\" array");
  ModelFile out;
  auto& m = out.model;
  try {
    for (const auto& w : doc["worlds"]) {
      if (!w.is_string()) fail("world ids must be strings");
      m.add_world(w.get<std::string>());
    }
    if (doc.contains("edges")) {
      if (!doc["edges"].is_array()) fail("\"edges\" must be an array");
      for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
          fail("edges must be [from, to] pairs of world ids");
        m.add_edge(m.index_of(e[0].get<std::string>()), m.index_of(e[1].get<std::string>()));
      }
    }
    if (doc.contains("val")) {
      if (!doc["val"].is_object()) fail("\"val\" must map world ids to proposition lists");
      for (const auto& [id, props] : doc["val"].items()) {
        if (!props.is_array()) fail("label of '" + id + "' must be an array");
        std::vector<std::string> names;
        for (const auto& p : props) {
          if (!p.is_string()) fail("propositions must be strings");
          names.push_back(p.get<std::string>());
        }
        m.set_label(m.index_of(id), make_props(names));
      }
    }
    if (doc.contains("team")) {
      if (!doc["team"].is_array()) fail("\"team\" must be an array of world ids");
      std::vector<std::string> ids;
      for (const auto& w : doc["team"]) {
        if (!w.is_string()) fail("team members must be world ids");
        ids.push_back(w.get<std::string>());
      }
      out.team = m.team_of(ids);
    }
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("model file: ") + e.what(), 1, 1);
  }
  return out;
}

std::string model_to_json(const KripkeModel& m, std::optional<Mask> team) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["worlds"] = m.ids();
  ordered_json edges = ordered_json::array();
  for (std::size_t w = 0; w < m.size(); ++w)
    for (Mask s = m.successors(w); s; s &= s - 1) edges.push_back({m.id(w), m.id(std::countr_zero(s))});
  doc["edges"] = edges;
  ordered_json val = ordered_json::object();
  for (std::size_t w = 0; w < m.size(); ++w) val[m.id(w)] = m.label(w);
  doc["val"] = val;
  if (team) doc["team"] = m.team_ids(*team);
  return doc.dump();
}

// ---------------------------------------------------------------------------
// Semantics

bool eval_singleton(const Formula& a, const KripkeModel& m, std::size_t w) {
  if (w >= m.size()) throw InvalidArgument("unknown world index " + std::to_string(w));
  if (!a.is_classical()) throw InvalidArgument("singleton semantics needs a classical formula, got: " + render(a));
  const Frame fr = m.frame();
  TeamEvaluator eval(fr, Limits{}.successor_cap);
  return eval.holds_at(a, w);
}

SuccessorCover successors_and_cover(const KripkeModel& m, Mask x, Mask y) {
  if ((x | y) & ~m.all()) throw InvalidArgument("team contains worlds outside the model");
  const Frame fr = m.frame();
  return {fr.image(x), fr.covers(x, y)};
}

bool eval_team_modal(const Formula& f, const TeamModel& tm, const Limits& limits) {
  if (tm.team & ~tm.model.all()) throw InvalidArgument("team contains worlds outside the model");
  const Frame fr = tm.model.frame();
  TeamEvaluator eval(fr, limits.successor_cap);
  return eval.holds(f, tm.team);
}

KripkeModel disjoint_union(const KripkeModel& a, const KripkeModel& b) {
  KripkeModel out;
  for (std::size_t w = 0; w < a.size(); ++w) out.add_world("0:" + a.id(w), a.label(w));
  for (std::size_t w = 0; w < b.size(); ++w) out.add_world("1:" + b.id(w), b.label(w));
  for (std::size_t w = 0; w < a.size(); ++w)
    for (Mask s = a.successors(w); s; s &= s - 1) out.add_edge(w, std::countr_zero(s));
  for (std::size_t w = 0; w < b.size(); ++w)
    for (Mask s = b.successors(w); s; s &= s - 1) out.add_edge(a.size() + w, a.size() + std::countr_zero(s));
  return out;
}

}  // namespace tl
