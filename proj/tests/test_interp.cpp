#include <doctest.h>

#include "support/oracle.hpp"
#include "tl/charform.hpp"
#include "tl/error.hpp"
#include "tl/interp.hpp"

using namespace tl;

namespace {

// ∃̃p a at (M,w) by the game oracle over the k-types of 𝓛(a).
bool forgets_at(const Formula& a, const std::string& p, const KripkeModel& m, std::size_t w) {
  const PropSet lang = props_union(props_of(a), {p});
  const PropSet keep = props_difference(lang, {p});
  const std::size_t k = modal_depth(a);
  for (const auto& t : enumerate_types(lang, k, 4096)) {
    const KripkeModel tree = oracle::tree_of(t);
    if (eval_singleton(a, tree, 0) && oracle::compatible(t, m, w, keep)) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("interp") {

TEST_CASE("model enumeration order and counts") {
  CHECK(model_count(1, 1) == 4);
  CHECK(model_count(1, 2) == 4 + 16 * 4);
  std::size_t seen = 0, first_two = 0;
  for_each_model({"p"}, 2, [&](const KripkeModel& m) {
    if (seen == 0) CHECK(m.size() == 1);
    if (m.size() == 2 && !first_two++) CHECK(m.successors(0) == 0);
    ++seen;
    return true;
  });
  CHECK(seen == model_count(1, 2));
  std::size_t stopped = 0;
  for_each_model({"p"}, 2, [&](const KripkeModel&) { return ++stopped < 3; });
  CHECK(stopped == 3);
  CHECK_THROWS_AS(for_each_model({"p"}, 9, [](const KripkeModel&) { return true; }), ResourceError);
}

TEST_CASE("forgetting in basic modal logic") {
  CHECK(eval_singleton(bisim_quantifier_ml(parse("p & ~p"), "p"),
                       parse_model_json(R"({"worlds":["w"]})").model, 0) == false);
  oracle::GenOptions opt;
  opt.props = {"p", "q"};
  opt.modal = true;
  oracle::RandomFormulas gen(12, opt);
  const auto models = oracle::models_up_to_iso(2, {"q"});
  for (int i = 0; i < 25; ++i) {
    const Formula a = gen.classical(1);
    const Formula e = bisim_quantifier_ml(a, "p");
    CAPTURE(render(a));
    REQUIRE_FALSE(props_contain(props_of(e), "p"));
    for (const auto& m : models)
      for (std::size_t w = 0; w < m.size(); ++w) REQUIRE(eval_singleton(e, m, w) == forgets_at(a, "p", m, w));
  }
}

TEST_CASE("team elimination on small examples") {
  const Elimination d = bisim_quantifier_team(parse("<> p"), "p", InterpMode::Exact);
  CHECK(d.mode == InterpMode::Exact);
  CHECK(d.stats.depth == 1);
  CHECK(d.stats.types == 8);
  CHECK_FALSE(props_contain(props_of(d.result), "p"));
  const auto models = oracle::models_up_to_iso(2, {});
  for (const auto& m : models)
    for (Mask x = 0; x <= m.all(); ++x) {
      const bool every_has_successor = [&] {
        for (Mask y = x; y; y &= y - 1)
          if (!m.successors(std::countr_zero(y))) return false;
        return true;
      }();
      REQUIRE(eval_team_modal(d.result, {m, x}) == every_has_successor);
    }
  const Elimination c = bisim_quantifier_team(parse("p & q & NE"), "p", InterpMode::Exact);
  CHECK(check_entailment(c.result, parse("q & NE")).holds);
  CHECK(check_entailment(parse("q & NE"), c.result).holds);
  CHECK_THROWS_AS(bisim_quantifier_team(parse("<> p & q"), "p", InterpMode::Exact), ResourceError);
}

TEST_CASE("exact and bounded modes agree where both run") {
  Limits lim;
  lim.max_worlds = 2;
  for (const char* s : {"<> p", "p \\/ ~p", "=( ; p)", "[] p \\/ [] ~p", "p & NE || ~p"}) {
    CAPTURE(s);
    const Formula f = parse(s);
    const Formula e = bisim_quantifier_team(f, "p", InterpMode::Exact, lim).result;
    const Formula b = bisim_quantifier_team(f, "p", InterpMode::Bounded, lim).result;
    CHECK(bounded_entails_modal(e, b, 2).holds);
    CHECK(bounded_entails_modal(b, e, 2).holds);
  }
}

TEST_CASE("quantifier elimination is innermost first") {
  const Formula f = parse("E p. (p & <> E q. q)");
  const Formula g = eliminate_quantifiers(f, InterpMode::Exact);
  CHECK(render(g).find("E ") == std::string::npos);
  CHECK(props_of(g).empty());
}

TEST_CASE("modal interpolants pass their own checks") {
  const InterpReport r = uniform_interpolant_modal(parse("<> p & [] q"), {"q"}, InterpMode::Bounded);
  CHECK(r.all_pass());
  CHECK(props_subset(props_of(r.result), {"q"}));
  CHECK(r.checks.size() == 2);
  const auto j = r.to_json();
  CHECK(j.find("\"mode\": \"bounded\"") != std::string::npos);
}

TEST_CASE("entailment verdicts") {
  const EntailmentVerdict prop = check_entailment(parse("p & q"), parse("p"));
  CHECK(prop.holds);
  CHECK(prop.bound == "all teams over {p,q}");
  const EntailmentVerdict modal = check_entailment(parse("[] p"), parse("<> p"));
  CHECK_FALSE(modal.holds);
  REQUIRE(modal.witness);
  CHECK(modal.bound.find("worlds") != std::string::npos);
  CHECK(check_entailment(parse("<> (p & q)"), parse("<> p")).holds);
}

TEST_CASE("interpolant checks with extra consequences") {
  const Formula f = parse("p & q");
  const InterpReport ok = check_interpolant(f, parse("q"), {"q"}, {parse("q \\/ r"), parse("p")});
  CHECK(ok.all_pass());
  CHECK(ok.checks.size() == 4);
  CHECK(ok.checks[3].verdict == "skipped");
  const InterpReport bad = check_interpolant(f, parse("top"), {"q"}, {parse("q")});
  CHECK_FALSE(bad.all_pass());
  const InterpReport lang = check_interpolant(f, parse("p"), {"q"}, {});
  CHECK(lang.checks[0].verdict == "fail");
}

TEST_CASE("simplify preserves meaning") {
  CHECK(render(simplify(parse("top & p"))) == "p");
  CHECK(render(simplify(parse("[] top & q"))) == "q");
  CHECK(render(simplify(parse("bot \\/ p"))) == "p");
  CHECK(render(simplify(parse("p || p"))) == "p");
  CHECK(render(simplify(parse("p & NE || bot"))) == "p");
  oracle::GenOptions opt;
  opt.props = {"p"};
  opt.modal = true;
  oracle::RandomFormulas gen(99, opt);
  for (int i = 0; i < 60; ++i) {
    const Formula f = gen.next(3);
    CAPTURE(render(f));
    const Formula s = simplify(f);
    REQUIRE(bounded_entails_modal(f, s, 2).holds);
    REQUIRE(bounded_entails_modal(s, f, 2).holds);
  }
}

}  // TEST_SUITE
