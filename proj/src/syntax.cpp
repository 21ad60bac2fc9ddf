#include "tl/syntax.hpp"

#include <algorithm>
#include <functional>
#include <iterator>

#include "tl/error.hpp"

namespace tl {

// ---------------------------------------------------------------------------
// Proposition sets

PropSet make_props(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

bool props_contain(const PropSet& set, std::string_view p) {
  return std::binary_search(set.begin(), set.end(), p,
                            [](const auto& a, const auto& b) { return std::string_view(a) < std::string_view(b); });
}

bool props_subset(const PropSet& sub, const PropSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

PropSet props_union(const PropSet& a, const PropSet& b) {
  PropSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PropSet props_intersection(const PropSet& a, const PropSet& b) {
  PropSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PropSet props_difference(const PropSet& a, const PropSet& b) {
  PropSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string props_to_string(const PropSet& set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ",";
    out += set[i];
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Formula nodes

struct Formula::Node {
  Kind kind;
  std::string name;
  std::vector<Formula> kids;  // binary: {l, r}; unary: {body}
  std::vector<Formula> lhs;   // team atom lists
  std::vector<Formula> rhs;
  std::size_t size;
};

Formula Formula::make(Kind kind, std::string name, std::vector<Formula> kids, std::vector<Formula> lhs,
                      std::vector<Formula> rhs) {
  std::size_t size = 1;
  for (const auto* list : {&kids, &lhs, &rhs})
    for (const auto& f : *list) size += f.size();
  return Formula(std::make_shared<const Node>(
      Node{kind, std::move(name), std::move(kids), std::move(lhs), std::move(rhs), size}));
}

namespace {

void require_classical_args(const std::vector<Formula>& args, const char* atom) {
  for (const auto& a : args) {
    if (!a.is_classical())
      throw InvalidArgument(std::string("arguments of ") + atom +
                            " must be classical formulas (team atoms cannot be nested)");
  }
}

}  // namespace

Formula Formula::prop(std::string name) { return make(Kind::Prop, std::move(name), {}, {}, {}); }
Formula Formula::neg_prop(std::string name) { return make(Kind::NegProp, std::move(name), {}, {}, {}); }
Formula Formula::bottom() { return make(Kind::Bottom, {}, {}, {}, {}); }
Formula Formula::top() { return make(Kind::Top, {}, {}, {}, {}); }
Formula Formula::non_empty() { return make(Kind::NonEmpty, {}, {}, {}, {}); }

Formula Formula::dep(std::vector<Formula> args, Formula target) {
  require_classical_args(args, "a dependence atom");
  require_classical_args({target}, "a dependence atom");
  return make(Kind::Dep, {}, {}, std::move(args), {std::move(target)});
}

Formula Formula::inc(std::vector<Formula> left, std::vector<Formula> right) {
  require_classical_args(left, "an inclusion atom");
  require_classical_args(right, "an inclusion atom");
  if (left.size() != right.size())
    throw InvalidArgument("inclusion atom sides must have equal length (got " + std::to_string(left.size()) +
                          " and " + std::to_string(right.size()) + ")");
  return make(Kind::Inc, {}, {}, std::move(left), std::move(right));
}

Formula Formula::ind(std::vector<Formula> left, std::vector<Formula> right) {
  require_classical_args(left, "an independence atom");
  require_classical_args(right, "an independence atom");
  return make(Kind::Ind, {}, {}, std::move(left), std::move(right));
}

Formula Formula::conj(Formula l, Formula r) { return make(Kind::And, {}, {std::move(l), std::move(r)}, {}, {}); }
Formula Formula::split(Formula l, Formula r) { return make(Kind::Split, {}, {std::move(l), std::move(r)}, {}, {}); }
Formula Formula::nesplit(Formula l, Formula r) {
  return make(Kind::NeSplit, {}, {std::move(l), std::move(r)}, {}, {});
}
Formula Formula::disj(Formula l, Formula r) { return make(Kind::Or, {}, {std::move(l), std::move(r)}, {}, {}); }
Formula Formula::dia(Formula f) { return make(Kind::Dia, {}, {std::move(f)}, {}, {}); }
Formula Formula::box(Formula f) { return make(Kind::Box, {}, {std::move(f)}, {}, {}); }
Formula Formula::exists(std::string name, Formula body) {
  return make(Kind::Exists, std::move(name), {std::move(body)}, {}, {});
}

namespace {

Formula fold(const std::vector<Formula>& parts, const Formula& empty, Formula (*op)(Formula, Formula)) {
  if (parts.empty()) return empty;
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = op(acc, parts[i]);
  return acc;
}

}  // namespace

Formula Formula::conj_all(const std::vector<Formula>& parts, const Formula& empty) {
  return fold(parts, empty, &Formula::conj);
}
Formula Formula::split_all(const std::vector<Formula>& parts, const Formula& empty) {
  return fold(parts, empty, &Formula::split);
}
Formula Formula::disj_all(const std::vector<Formula>& parts, const Formula& empty) {
  return fold(parts, empty, &Formula::disj);
}

Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::left() const { return node_->kids.at(0); }
const Formula& Formula::right() const { return node_->kids.at(1); }
const Formula& Formula::body() const { return node_->kids.at(0); }
std::span<const Formula> Formula::atom_left() const { return node_->lhs; }
std::span<const Formula> Formula::atom_right() const { return node_->rhs; }
const Formula& Formula::dep_target() const { return node_->rhs.at(0); }
std::size_t Formula::size() const { return node_->size; }

bool Formula::is_binary() const {
  switch (kind()) {
    case Kind::And:
    case Kind::Split:
    case Kind::NeSplit:
    case Kind::Or:
      return true;
    default:
      return false;
  }
}

bool Formula::is_team_atom() const {
  return kind() == Kind::Dep || kind() == Kind::Inc || kind() == Kind::Ind;
}

bool Formula::is_classical() const {
  switch (kind()) {
    case Kind::Prop:
    case Kind::NegProp:
    case Kind::Bottom:
    case Kind::Top:
      return true;
    case Kind::And:
    case Kind::Split:
      return left().is_classical() && right().is_classical();
    case Kind::Dia:
    case Kind::Box:
      return body().is_classical();
    default:
      return false;
  }
}

namespace {

// True if `pred` holds at some node of f, atom arguments included.
bool any_node(const Formula& f, const std::function<bool(const Formula&)>& pred) {
  if (pred(f)) return true;
  switch (f.kind()) {
    case Kind::And:
    case Kind::Split:
    case Kind::NeSplit:
    case Kind::Or:
      return any_node(f.left(), pred) || any_node(f.right(), pred);
    case Kind::Dia:
    case Kind::Box:
    case Kind::Exists:
      return any_node(f.body(), pred);
    case Kind::Dep:
    case Kind::Inc:
    case Kind::Ind:
      for (const auto& a : f.atom_left())
        if (any_node(a, pred)) return true;
      for (const auto& a : f.atom_right())
        if (any_node(a, pred)) return true;
      return false;
    default:
      return false;
  }
}

}  // namespace

bool Formula::is_modality_free() const {
  return !any_node(*this, [](const Formula& g) { return g.kind() == Kind::Dia || g.kind() == Kind::Box; });
}

bool Formula::is_quantifier_free() const {
  return !any_node(*this, [](const Formula& g) { return g.kind() == Kind::Exists; });
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (auto c = x.kids <=> y.kids; c != 0) return c;
  if (auto c = x.lhs <=> y.lhs; c != 0) return c;
  return x.rhs <=> y.rhs;
}

bool operator==(const Formula& a, const Formula& b) { return (a <=> b) == 0; }

// ---------------------------------------------------------------------------
// Fragments

std::string_view fragment_name(Fragment f) {
  switch (f) {
    case Fragment::CPL: return "CPL";
    case Fragment::PDEP: return "PDEP";
    case Fragment::PINC: return "PINC";
    case Fragment::PIND: return "PIND";
    case Fragment::FPTL: return "FPTL";
    case Fragment::ML: return "ML";
    case Fragment::MDEP: return "MDEP";
    case Fragment::MINC: return "MINC";
    case Fragment::MIND: return "MIND";
    case Fragment::FMTL: return "FMTL";
    case Fragment::EXT: return "EXT";
  }
  return "?";
}

namespace {

struct Features {
  bool modal = false;
  bool dep = false;
  bool inc = false;
  bool ind = false;
  bool non_empty = false;
  bool classical_or = false;
  bool nesplit = false;
  bool quantifier = false;
};

Features features_of(const Formula& f) {
  Features ft;
  any_node(f, [&](const Formula& g) {
    switch (g.kind()) {
      case Kind::Dia:
      case Kind::Box: ft.modal = true; break;
      case Kind::Dep: ft.dep = true; break;
      case Kind::Inc: ft.inc = true; break;
      case Kind::Ind: ft.ind = true; break;
      case Kind::NonEmpty: ft.non_empty = true; break;
      case Kind::Or: ft.classical_or = true; break;
      case Kind::NeSplit: ft.nesplit = true; break;
      case Kind::Exists: ft.quantifier = true; break;
      default: break;
    }
    return false;
  });
  return ft;
}

}  // namespace

Fragment classify(const Formula& f) {
  const Features ft = features_of(f);
  if (ft.quantifier) return Fragment::EXT;
  const int families = int(ft.dep) + int(ft.inc) + int(ft.ind);
  const bool full = ft.non_empty || ft.classical_or || ft.nesplit || families > 1;
  if (full) return ft.modal ? Fragment::FMTL : Fragment::FPTL;
  if (ft.dep) return ft.modal ? Fragment::MDEP : Fragment::PDEP;
  if (ft.inc) return ft.modal ? Fragment::MINC : Fragment::PINC;
  if (ft.ind) return ft.modal ? Fragment::MIND : Fragment::PIND;
  return ft.modal ? Fragment::ML : Fragment::CPL;
}

std::vector<std::string> classification_notes(const Formula& f) {
  const Features ft = features_of(f);
  std::vector<std::string> notes;
  if (ft.quantifier) notes.emplace_back("uses the bisimulation quantifier E p. (outside the fragment table)");
  if (ft.nesplit) notes.emplace_back("\\/+ is not listed in any fragment row; attributed to the full logic");
  if (int(ft.dep) + int(ft.inc) + int(ft.ind) > 1)
    notes.emplace_back("mixes several team atom families; only the full logic covers it");
  else if ((ft.dep || ft.inc || ft.ind) && (ft.non_empty || ft.classical_or || ft.nesplit))
    notes.emplace_back("combines a team atom with NE, || or \\/+; only the full logic covers it");
  return notes;
}

// ---------------------------------------------------------------------------
// Language and depth

namespace {

void collect_language(const Formula& f, std::vector<std::string>& bound_stack, std::vector<std::string>& all,
                      std::vector<std::string>& free, std::vector<std::string>& bound) {
  switch (f.kind()) {
    case Kind::Prop:
    case Kind::NegProp:
      all.push_back(f.name());
      if (std::find(bound_stack.begin(), bound_stack.end(), f.name()) == bound_stack.end())
        free.push_back(f.name());
      return;
    case Kind::Exists:
      bound.push_back(f.name());
      all.push_back(f.name());
      bound_stack.push_back(f.name());
      collect_language(f.body(), bound_stack, all, free, bound);
      bound_stack.pop_back();
      return;
    case Kind::Dia:
    case Kind::Box:
      collect_language(f.body(), bound_stack, all, free, bound);
      return;
    default:
      break;
  }
  if (f.is_binary()) {
    collect_language(f.left(), bound_stack, all, free, bound);
    collect_language(f.right(), bound_stack, all, free, bound);
  } else if (f.is_team_atom()) {
    for (const auto& a : f.atom_left()) collect_language(a, bound_stack, all, free, bound);
    for (const auto& a : f.atom_right()) collect_language(a, bound_stack, all, free, bound);
  }
}

}  // namespace

Language language_of(const Formula& f) {
  std::vector<std::string> stack, all, free, bound;
  collect_language(f, stack, all, free, bound);
  return Language{make_props(std::move(all)), make_props(std::move(free)), make_props(std::move(bound))};
}

PropSet props_of(const Formula& f) { return language_of(f).all; }

std::size_t modal_depth(const Formula& f) {
  switch (f.kind()) {
    case Kind::Dia:
    case Kind::Box:
      return 1 + modal_depth(f.body());
    case Kind::Exists:
      return modal_depth(f.body());
    default:
      break;
  }
  std::size_t d = 0;
  if (f.is_binary()) {
    d = std::max(modal_depth(f.left()), modal_depth(f.right()));
  } else if (f.is_team_atom()) {
    for (const auto& a : f.atom_left()) d = std::max(d, modal_depth(a));
    for (const auto& a : f.atom_right()) d = std::max(d, modal_depth(a));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Constant substitution

namespace {

std::vector<Formula> substitute_list(std::span<const Formula> list, const std::string& p, bool value) {
  std::vector<Formula> out;
  out.reserve(list.size());
  for (const auto& a : list) out.push_back(substitute_const(a, p, value));
  return out;
}

}  // namespace

Formula substitute_const(const Formula& f, const std::string& p, bool value) {
  switch (f.kind()) {
    case Kind::Prop:
      if (f.name() == p) return value ? Formula::top() : Formula::bottom();
      return f;
    case Kind::NegProp:
      if (f.name() == p) return value ? Formula::bottom() : Formula::top();
      return f;
    case Kind::Bottom:
    case Kind::Top:
    case Kind::NonEmpty:
      return f;
    case Kind::Dep:
      return Formula::dep(substitute_list(f.atom_left(), p, value), substitute_const(f.dep_target(), p, value));
    case Kind::Inc:
      return Formula::inc(substitute_list(f.atom_left(), p, value), substitute_list(f.atom_right(), p, value));
    case Kind::Ind:
      return Formula::ind(substitute_list(f.atom_left(), p, value), substitute_list(f.atom_right(), p, value));
    case Kind::And:
      return Formula::conj(substitute_const(f.left(), p, value), substitute_const(f.right(), p, value));
    case Kind::Split:
      return Formula::split(substitute_const(f.left(), p, value), substitute_const(f.right(), p, value));
    case Kind::NeSplit:
      return Formula::nesplit(substitute_const(f.left(), p, value), substitute_const(f.right(), p, value));
    case Kind::Or:
      return Formula::disj(substitute_const(f.left(), p, value), substitute_const(f.right(), p, value));
    case Kind::Dia:
      return Formula::dia(substitute_const(f.body(), p, value));
    case Kind::Box:
      return Formula::box(substitute_const(f.body(), p, value));
    case Kind::Exists:
      if (f.name() == p) return f;
      return Formula::exists(f.name(), substitute_const(f.body(), p, value));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

// Binding strength: || < {\/, \/+} < & < unary < atomic.
int precedence(const Formula& f) {
  switch (f.kind()) {
    case Kind::Or: return 1;
    case Kind::Split:
    case Kind::NeSplit: return 2;
    case Kind::And: return 3;
    case Kind::Dia:
    case Kind::Box:
    case Kind::Exists: return 4;
    default: return 5;
  }
}

void render_into(const Formula& f, std::string& out);

void render_operand(const Formula& f, int min_prec, std::string& out) {
  if (precedence(f) < min_prec) {
    out += '(';
    render_into(f, out);
    out += ')';
  } else {
    render_into(f, out);
  }
}

void render_list(std::span<const Formula> list, std::string& out) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) out += ", ";
    render_into(list[i], out);
  }
}

void render_atom(const char* head, const Formula& f, std::string& out) {
  out += head;
  out += '(';
  render_list(f.atom_left(), out);
  out += " ; ";
  render_list(f.atom_right(), out);
  out += ')';
}

void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::Prop: out += f.name(); return;
    case Kind::NegProp: out += "~" + f.name(); return;
    case Kind::Bottom: out += "bot"; return;
    case Kind::Top: out += "top"; return;
    case Kind::NonEmpty: out += "NE"; return;
    case Kind::Dep: render_atom("=", f, out); return;
    case Kind::Inc: render_atom("inc", f, out); return;
    case Kind::Ind: render_atom("ind", f, out); return;
    case Kind::Dia:
      out += "<> ";
      render_operand(f.body(), 4, out);
      return;
    case Kind::Box:
      out += "[] ";
      render_operand(f.body(), 4, out);
      return;
    case Kind::Exists:
      out += "E " + f.name() + ". ";
      render_operand(f.body(), 4, out);
      return;
    default:
      break;
  }
  const char* op = f.kind() == Kind::And       ? " & "
                   : f.kind() == Kind::Split   ? " \\/ "
                   : f.kind() == Kind::NeSplit ? " \\/+ "
                                               : " || ";
  const int prec = precedence(f);
  render_operand(f.left(), prec, out);
  out += op;
  render_operand(f.right(), prec + 1, out);
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

}  // namespace tl
