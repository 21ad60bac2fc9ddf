#include "tl/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "tl/bisim.hpp"
#include "tl/charform.hpp"
#include "tl/error.hpp"
#include "tl/interp.hpp"
#include "tl/kripke.hpp"
#include "tl/limits.hpp"
#include "tl/prop.hpp"
#include "tl/syntax.hpp"

namespace tl::cli {
namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Options shared by every subcommand.
struct Common {
  bool json = false;
  std::optional<std::size_t> max_props, type_cap, max_worlds;

  void attach(CLI::App* app) {
    app->add_flag("--json", json, "Print the JSON report format");
    app->add_option("--max-props", max_props, "Propositions allowed when enumerating teams (env TL_MAX_PROPS)");
    app->add_option("--type-cap", type_cap, "Cap on enumerated k-types (env TL_TYPE_CAP)");
    app->add_option("--max-worlds", max_worlds, "World bound for model enumeration (env TL_MAX_WORLDS)");
  }

  Limits limits() const {
    Limits l = Limits::from_env();
    if (max_props) l.max_props = *max_props;
    if (type_cap) l.type_cap = *type_cap;
    if (max_worlds) l.max_worlds = *max_worlds;
    return l;
  }
};

struct FormulaInput {
  std::string text, file;

  void attach(CLI::App* app, const std::string& name = "--formula", const std::string& file_name = "--formula-file") {
    auto* a = app->add_option(name, text, "Formula in ASCII syntax");
    auto* b = app->add_option(file_name, file, "File holding the formula");
    a->excludes(b);
    b->excludes(a);
  }

  bool given() const { return !text.empty() || !file.empty(); }

  Formula get() const {
    if (!file.empty()) return parse(read_file(file));
    if (text.empty()) throw InvalidArgument("a formula is required (--formula or --formula-file)");
    return parse(text);
  }
};

std::string yes_no(const ClosureFlag& f) {
  std::string s = f.holds ? "yes" : "no";
  if (f.witness) s += " " + f.witness->first.to_string() + " " + f.witness->second.to_string();
  return s;
}

json closure_json(const ClosureFlag& f) {
  json j{{"holds", f.holds}};
  if (f.witness) j["witness"] = {f.witness->first.to_string(), f.witness->second.to_string()};
  return j;
}

PropSet props_arg(const std::vector<std::string>& v) {
  std::vector<std::string> names;
  for (const auto& p : v)
    if (!p.empty()) names.push_back(p);
  return make_props(names);
}

bool propositional(const Formula& f) { return f.is_modality_free() && f.is_quantifier_free(); }

// D-L2: report "equivalent to" only when the checker proves it at the active bound.
std::string present(const Formula& f, const Limits& limits) {
  const Formula s = simplify(f);
  if (s == f) return render(f);
  const bool equivalent = check_entailment(f, s, limits).holds && check_entailment(s, f, limits).holds;
  return equivalent ? "equivalent to " + render(s) : render(f);
}

TeamModel load_team_model(const std::string& path, const std::vector<std::string>& team_ids, bool need_team) {
  ModelFile mf = parse_model_json(read_file(path));
  TeamModel tm{mf.model, 0};
  if (!team_ids.empty()) tm.team = tm.model.team_of(team_ids);
  else if (mf.team) tm.team = *mf.team;
  else if (need_team) throw InvalidArgument("no team given for '" + path + "' (add \"team\" to the file or pass --team)");
  return tm;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Team logic workbench", "tl"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  common.attach(&app);

  int code = kOk;
  std::function<void()> action;

  // eval
  FormulaInput ev_f;
  std::string ev_team, ev_team_file;
  auto* ev = app.add_subcommand("eval", "Evaluate a propositional formula on a team");
  ev_f.attach(ev);
  ev->add_option("--team", ev_team, "Team, e.g. \"{p=1 q=0; p=0 q=0}\"");
  ev->add_option("--team-file", ev_team_file, "Team property file; every team is evaluated");
  ev->callback([&] {
    action = [&] {
      const Formula f = ev_f.get();
      const Limits limits = common.limits();
      std::vector<Team> teams;
      if (!ev_team_file.empty()) teams = TeamProperty::parse(read_file(ev_team_file)).teams();
      else if (!ev_team.empty()) teams.push_back(Team::parse(ev_team, props_of(f)));
      else throw InvalidArgument("eval needs --team or --team-file");
      json results = json::array();
      bool all = true;
      for (const auto& t : teams) {
        const bool v = eval_prop(f, t, limits);
        all = all && v;
        if (common.json) results.push_back({{"team", t.to_string()}, {"holds", v}});
        else if (teams.size() == 1) out << (v ? "true" : "false") << "\n";
        else out << t.to_string() << ": " << (v ? "true" : "false") << "\n";
      }
      if (common.json) out << json{{"formula", render(f)}, {"results", results}}.dump(2) << "\n";
      code = all ? kOk : kRefuted;
    };
  });

  // eval-modal
  FormulaInput em_f;
  std::string em_model;
  std::vector<std::string> em_team;
  auto* em = app.add_subcommand("eval-modal", "Evaluate a formula on a team of a Kripke model");
  em_f.attach(em);
  em->add_option("--model", em_model, "Model file (JSON)")->required();
  em->add_option("--team", em_team, "Team as world ids (overrides the file's team)")->delimiter(',');
  em->callback([&] {
    action = [&] {
      const Formula f = eliminate_quantifiers(em_f.get(), InterpMode::Exact, common.limits());
      const TeamModel tm = load_team_model(em_model, em_team, true);
      const bool v = eval_team_modal(f, tm, common.limits());
      if (common.json)
        out << json{{"formula", render(f)}, {"team", tm.model.team_ids(tm.team)}, {"holds", v}}.dump(2) << "\n";
      else
        out << (v ? "true" : "false") << "\n";
      code = v ? kOk : kRefuted;
    };
  });

  // models
  FormulaInput mo_f;
  std::vector<std::string> mo_props;
  auto* mo = app.add_subcommand("models", "List every team satisfying a propositional formula");
  mo_f.attach(mo);
  mo->add_option("--props", mo_props, "Domain (defaults to the formula's propositions)")->delimiter(',');
  mo->callback([&] {
    action = [&] {
      const Formula f = mo_f.get();
      const PropSet domain = mo_props.empty() ? props_of(f) : props_arg(mo_props);
      const TeamProperty y = models_of(f, domain, common.limits());
      if (common.json) {
        json teams = json::array();
        for (const auto& t : y.teams()) teams.push_back(t.to_string());
        out << json{{"formula", render(f)}, {"domain", y.domain}, {"count", y.size()}, {"teams", teams}}.dump(2)
            << "\n";
      } else {
        out << y.to_text();
      }
    };
  });

  // closure
  FormulaInput cl_f;
  std::vector<std::string> cl_props;
  auto* cl = app.add_subcommand("closure", "Closure properties of a propositional formula");
  cl_f.attach(cl);
  cl->add_option("--props", cl_props, "Domain (defaults to the formula's propositions)")->delimiter(',');
  cl->callback([&] {
    action = [&] {
      const Formula f = cl_f.get();
      const ClosureReport r = closure_report(f, props_arg(cl_props), common.limits());
      if (common.json) {
        out << json{{"formula", render(f)},
                    {"domain", r.domain},
                    {"downward", closure_json(r.downward)},
                    {"union", closure_json(r.union_closed)},
                    {"empty_team", closure_json(r.empty_team)},
                    {"local", closure_json(r.local)}}
                   .dump(2)
            << "\n";
      } else {
        out << "domain: " << props_to_string(r.domain) << "\n"
            << "downward: " << yes_no(r.downward) << "\n"
            << "union: " << yes_no(r.union_closed) << "\n"
            << "empty-team: " << yes_no(r.empty_team) << "\n"
            << "local: " << yes_no(r.local) << "\n";
      }
    };
  });

  // classify
  FormulaInput cf_f;
  auto* cf = app.add_subcommand("classify", "Least fragment containing a formula");
  cf_f.attach(cf);
  cf->callback([&] {
    action = [&] {
      const Formula f = cf_f.get();
      const auto notes = classification_notes(f);
      const Language lang = language_of(f);
      if (common.json) {
        out << json{{"formula", render(f)},
                    {"fragment", std::string(fragment_name(classify(f)))},
                    {"props", lang.all},
                    {"free", lang.free},
                    {"modal_depth", modal_depth(f)},
                    {"notes", notes}}
                   .dump(2)
            << "\n";
      } else {
        out << fragment_name(classify(f)) << "\n";
        for (const auto& n : notes) out << "note: " << n << "\n";
      }
    };
  });

  // subst
  FormulaInput su_f;
  std::string su_prop, su_value;
  auto* su = app.add_subcommand("subst", "Replace a proposition by top or bot");
  su_f.attach(su);
  su->add_option("--prop", su_prop, "Proposition to replace")->required();
  su->add_option("--value", su_value, "top|bot (or 1|0)")->required()->check(CLI::IsMember({"top", "bot", "1", "0"}));
  su->callback([&] {
    action = [&] {
      const Formula f = su_f.get();
      const Formula g = substitute_const(f, su_prop, su_value == "top" || su_value == "1");
      if (common.json) out << json{{"formula", render(f)}, {"result", render(g)}}.dump(2) << "\n";
      else out << render(g) << "\n";
    };
  });

  // interp
  FormulaInput in_f;
  std::vector<std::string> in_keep, in_checks;
  std::string in_mode = "exact";
  auto* in = app.add_subcommand("interp", "Uniform interpolant over a kept language");
  in_f.attach(in);
  in->add_option("--keep", in_keep, "Kept propositions (may be empty)")->delimiter(',');
  in->add_option("--mode", in_mode, "exact|bounded (modal formulas)")->check(CLI::IsMember({"exact", "bounded"}));
  in->add_option("--check", in_checks, "Consequence psi to verify theta |= psi against (repeatable)");
  in->callback([&] {
    action = [&] {
      const Formula f = in_f.get();
      const Limits limits = common.limits();
      const PropSet keep = props_arg(in_keep);
      const InterpMode mode = in_mode == "exact" ? InterpMode::Exact : InterpMode::Bounded;
      InterpReport rep = [&] {
        if (!propositional(f)) return uniform_interpolant_modal(f, keep, mode, limits);
        const Formula theta = uniform_interpolant_prop(f, keep, limits);
        return InterpReport{f, keep, theta, InterpMode::Exact, {}, {}};
      }();
      if (!in_checks.empty() || propositional(f)) {
        std::vector<Formula> psis;
        for (const auto& c : in_checks) psis.push_back(parse(c));
        const InterpMode m = rep.mode;
        const InterpStats stats = rep.stats;
        rep = check_interpolant(propositional(f) ? f : eliminate_quantifiers(f, mode, limits), rep.result, keep, psis,
                                limits);
        rep.input = f;
        rep.mode = m;
        rep.stats = stats;
      }
      if (common.json) {
        out << rep.to_json() << "\n";
      } else {
        out << present(rep.result, limits) << "\n";
        for (const auto& c : rep.checks) {
          out << c.verdict << ": " << c.clause << " [" << c.bound << "]";
          if (c.witness) out << " witness " << *c.witness;
          out << "\n";
        }
      }
      code = rep.all_pass() ? kOk : kRefuted;
    };
  });

  // bisim
  std::string bi_a, bi_b;
  std::vector<std::string> bi_props;
  std::optional<std::size_t> bi_k;
  auto* bi = app.add_subcommand("bisim", "Maximal or k-bounded bisimulation between two models");
  bi->add_option("--model-a", bi_a, "First model file")->required();
  bi->add_option("--model-b", bi_b, "Second model file")->required();
  bi->add_option("--props", bi_props, "Propositions to respect")->delimiter(',');
  bi->add_option("--k", bi_k, "Depth bound");
  bi->callback([&] {
    action = [&] {
      const ModelFile a = parse_model_json(read_file(bi_a));
      const ModelFile b = parse_model_json(read_file(bi_b));
      const PropSet props = props_arg(bi_props);
      const Relation rel = bi_k ? bounded_bisim(a.model, b.model, props, *bi_k).top() : max_bisim(a.model, b.model, props);
      std::optional<TeamBisimulation> tb;
      if (a.team && b.team) tb = team_bisimilar({a.model, *a.team}, {b.model, *b.team}, props, bi_k);
      const bool ok = tb ? tb->holds : !rel.empty();
      if (common.json) {
        json pairs = json::array();
        for (const auto& [w, v] : rel.pairs()) pairs.push_back({a.model.id(w), b.model.id(v)});
        json doc{{"props", props}, {"pairs", pairs}};
        if (bi_k) doc["k"] = *bi_k;
        if (tb) {
          doc["team_bisimilar"] = tb->holds;
          if (tb->blocking)
            doc["blocking"] = (tb->blocking_in_m ? a.model : b.model).id(*tb->blocking);
        }
        out << doc.dump(2) << "\n";
      } else {
        out << relation_dump(a.model, b.model, props, rel);
        if (tb) {
          out << "# teams " << (tb->holds ? "bisimilar" : "not bisimilar");
          if (tb->blocking)
            out << ": '" << (tb->blocking_in_m ? a.model : b.model).id(*tb->blocking) << "' has no partner";
          out << "\n";
        }
      }
      code = ok ? kOk : kRefuted;
    };
  });

  // charform
  std::string ch_model, ch_world;
  std::vector<std::string> ch_props, ch_team;
  std::size_t ch_k = 0;
  bool ch_show_type = false;
  auto* ch = app.add_subcommand("charform", "Characteristic formula of a pointed or team model");
  ch->add_option("--model", ch_model, "Model file")->required();
  ch->add_option("--props", ch_props, "Propositions")->delimiter(',');
  ch->add_option("--k", ch_k, "Depth")->required();
  auto* ch_w = ch->add_option("--world", ch_world, "Pointed model at this world");
  ch->add_option("--team", ch_team, "Team as world ids (defaults to the file's team)")->delimiter(',')->excludes(ch_w);
  ch->add_flag("--show-type", ch_show_type, "Also print the canonical type encodings");
  ch->callback([&] {
    action = [&] {
      const PropSet props = props_arg(ch_props);
      std::vector<std::string> types;
      Formula f = Formula::top();
      if (!ch_world.empty()) {
        const KripkeModel m = parse_model_json(read_file(ch_model)).model;
        const TypeTree t = type_of(m, m.index_of(ch_world), props, ch_k);
        f = char_formula(t);
        types.push_back(type_to_string(t));
      } else {
        const TeamModel tm = load_team_model(ch_model, ch_team, true);
        f = team_char_formula(tm, props, ch_k);
        std::set<TypeTree> distinct;
        const auto all = types_of_all(tm.model, props, ch_k);
        for (Mask x = tm.team; x; x &= x - 1) distinct.insert(all[std::countr_zero(x)]);
        for (const auto& t : distinct) types.push_back(type_to_string(t));
      }
      if (common.json) {
        out << json{{"formula", render(f)}, {"types", types}}.dump(2) << "\n";
      } else {
        out << render(f) << "\n";
        if (ch_show_type)
          for (const auto& t : types) out << "type: " << t << "\n";
      }
    };
  });

  // amalgamate
  std::string am_a, am_b, am_rel;
  std::vector<std::string> am_pa, am_pb;
  auto* am = app.add_subcommand("amalgamate", "Glue two models along a bisimulation on shared propositions");
  am->add_option("--model-a", am_a, "First model file (language --props-a)")->required();
  am->add_option("--model-b", am_b, "Second model file (language --props-b)")->required();
  am->add_option("--props-a", am_pa, "Language P of the first model")->delimiter(',');
  am->add_option("--props-b", am_pb, "Language Q of the second model")->delimiter(',');
  am->add_option("--relation", am_rel, "Bisimulation dump to glue along (default: teams, maximal bisimulation)");
  am->callback([&] {
    action = [&] {
      const PropSet p = props_arg(am_pa), q = props_arg(am_pb);
      const ModelFile a = parse_model_json(read_file(am_a));
      const ModelFile b = parse_model_json(read_file(am_b));
      if (!am_rel.empty()) {
        const RelationFile rf = parse_relation_dump(a.model, b.model, read_file(am_rel));
        const Amalgam k = amalgamate(a.model, b.model, rf.relation, p, q);
        out << model_to_json(k.model) << "\n";
        return;
      }
      const TeamModel ta{a.model, a.team.value_or(0)}, tb{b.model, b.team.value_or(0)};
      const auto check = team_bisimilar(ta, tb, props_intersection(p, q));
      if (!check.holds) {
        out << "not bisimilar on " << props_to_string(props_intersection(p, q)) << ": '"
            << (check.blocking_in_m ? a.model : b.model).id(*check.blocking) << "' has no partner\n";
        code = kRefuted;
        return;
      }
      const TeamAmalgam r = team_amalgamate(ta, p, tb, q);
      out << model_to_json(r.result.model, r.result.team) << "\n";
    };
  });

  // entails
  FormulaInput en_f, en_g;
  auto* en = app.add_subcommand("entails", "Check f |= g (exhaustive for propositional, bounded for modal)");
  en_f.attach(en);
  en_g.attach(en, "--conclusion", "--conclusion-file");
  en->callback([&] {
    action = [&] {
      const Limits limits = common.limits();
      const Formula f = eliminate_quantifiers(en_f.get(), InterpMode::Exact, limits);
      const Formula g = eliminate_quantifiers(en_g.get(), InterpMode::Exact, limits);
      const EntailmentVerdict v = check_entailment(f, g, limits);
      if (common.json) {
        json doc{{"premise", render(f)}, {"conclusion", render(g)}, {"holds", v.holds}, {"bound", v.bound}};
        if (v.witness) doc["witness"] = *v.witness;
        out << doc.dump(2) << "\n";
      } else {
        out << (v.holds ? "holds" : "fails") << " [" << v.bound << "]\n";
        if (v.witness) out << "counterexample: " << *v.witness << "\n";
      }
      code = v.holds ? kOk : kRefuted;
    };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }
  try {
    if (action) action();
    return code;
  } catch (const ResourceError& e) {
    err << "tl: " << e.what() << "\n";
    return kResource;
  } catch (const ParseError& e) {
    err << "tl: parse error at " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "tl: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace tl::cli
