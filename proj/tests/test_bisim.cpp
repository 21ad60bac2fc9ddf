#include <doctest.h>

#include "support/oracle.hpp"
#include "tl/bisim.hpp"
#include "tl/error.hpp"

using namespace tl;

namespace {

KripkeModel model(const char* json) { return parse_model_json(json).model; }

const char* kChain = R"({"worlds":["w","v"],"edges":[["w","v"]],"val":{"w":["p"],"v":["p"]}})";
const char* kLoop = R"({"worlds":["u"],"edges":[["u","u"]],"val":{"u":["p"]}})";

}  // namespace

TEST_SUITE("bisim") {

TEST_CASE("chain against a reflexive point") {
  const KripkeModel chain = model(kChain), loop = model(kLoop);
  const BisimFamily fam = bounded_bisim(chain, loop, {"p"}, 2);
  CHECK(fam.layers[1].contains(0, 0));
  CHECK_FALSE(fam.layers[2].contains(0, 0));
  std::size_t rounds = 0;
  const Relation max = max_bisim(chain, loop, {"p"}, &rounds);
  CHECK_FALSE(max.contains(0, 0));
  CHECK(rounds == 2);
  CHECK(team_bisimilar({chain, 1}, {loop, 1}, {"p"}, 1).holds);
  const TeamBisimulation two = team_bisimilar({chain, 1}, {loop, 1}, {"p"}, 2);
  CHECK_FALSE(two.holds);
  REQUIRE(two.blocking);
  CHECK(*two.blocking == 0);
  CHECK(two.blocking_in_m);
}

TEST_CASE("identity and vacuous restrictions") {
  const KripkeModel m = model(R"({"worlds":["a","b"],"edges":[["a","b"],["b","b"]],"val":{"a":["p"]}})");
  const Relation r = max_bisim(m, m, {"p"});
  for (std::size_t w = 0; w < m.size(); ++w) CHECK(r.contains(w, w));
  const KripkeModel n = model(R"({"worlds":["x","y"],"edges":[["x","y"],["y","y"]],"val":{"y":["p"]}})");
  for (std::size_t k = 0; k < 4; ++k) CHECK(bounded_bisim(m, n, {}, k).top().size() == 4);
  CHECK(team_bisimilar({m, 0}, {n, 0}, {"p"}).holds);
  CHECK_FALSE(team_bisimilar({m, 0}, {n, 1}, {"p"}).holds);
  CHECK(team_bisimilar({m, 3}, {m, 3}, {"p"}).holds);
}

TEST_CASE("layers agree with the recursive definition") {
  const auto models = oracle::models_with(2, {"p"});
  for (std::size_t i = 0; i < models.size(); i += 3)
    for (std::size_t j = 0; j < models.size(); j += 5) {
      const auto& m = models[i];
      const auto& n = models[j];
      const BisimFamily fam = bounded_bisim(m, n, {"p"}, 3);
      for (std::size_t k = 0; k <= 3; ++k)
        for (std::size_t w = 0; w < m.size(); ++w)
          for (std::size_t v = 0; v < n.size(); ++v)
            REQUIRE(fam.layers[k].contains(w, v) == oracle::k_bisimilar(m, w, n, v, {"p"}, k));
      for (std::size_t k = 1; k <= 3; ++k)
        for (std::size_t w = 0; w < m.size(); ++w) REQUIRE((fam.layers[k].rows[w] & ~fam.layers[k - 1].rows[w]) == 0);
      const Relation max = max_bisim(m, n, {"p"});
      CHECK(is_bisimulation(m, n, {"p"}, max));
      // With at most 2 x 2 worlds the refinement is stable after 4 rounds.
      CHECK(max == bounded_bisim(m, n, {"p"}, 4).top());
    }
}

TEST_CASE("anti-monotonicity in the restriction set") {
  const auto models = oracle::models_with(2, {"p", "q"});
  for (std::size_t i = 0; i < models.size(); i += 7)
    for (std::size_t j = 0; j < models.size(); j += 11) {
      const Relation big = max_bisim(models[i], models[j], {"p", "q"});
      const Relation small = max_bisim(models[i], models[j], {"p"});
      const Relation none = max_bisim(models[i], models[j], {});
      for (std::size_t w = 0; w < models[i].size(); ++w) {
        REQUIRE((big.rows[w] & ~small.rows[w]) == 0);
        REQUIRE((small.rows[w] & ~none.rows[w]) == 0);
      }
    }
}

TEST_CASE("the independent checker rejects broken relations") {
  const KripkeModel chain = model(kChain), loop = model(kLoop);
  std::string why;
  CHECK_FALSE(is_bisimulation(chain, loop, {"p"}, Relation{{1, 1}}, &why));
  CHECK(why.find("fails") != std::string::npos);
  const KripkeModel q = model(R"({"worlds":["z"],"edges":[["z","z"]],"val":{"z":["q"]}})");
  CHECK_FALSE(is_bisimulation(loop, q, {"q"}, Relation{{1}}, &why));
  CHECK(is_bisimulation(loop, q, {"p"}, Relation{{0}}));
  CHECK(is_bisimulation(loop, loop, {"p"}, Relation{{1}}));
}

TEST_CASE("amalgamation examples") {
  const KripkeModel m = model(R"({"worlds":["a","b"],"edges":[["a","b"]],"val":{"a":["p"],"b":["p","q"]}})");
  const Relation id{{1, 2}};
  const Amalgam same = amalgamate(m, m, id, {"p", "q"}, {"p", "q"});
  CHECK(same.model.size() == 2);
  CHECK(same.model.has_edge(0, 1));
  CHECK(same.model.label(1) == PropSet{"p", "q"});

  const KripkeModel pq = model(R"({"worlds":["m"],"val":{"m":["p","q"]}})");
  const KripkeModel qr = model(R"({"worlds":["n"],"val":{"n":["q","r"]}})");
  const TeamAmalgam t = team_amalgamate({pq, 1}, {"p", "q"}, {qr, 1}, {"q", "r"});
  CHECK(t.result.model.size() == 1);
  CHECK(t.result.model.label(0) == PropSet{"p", "q", "r"});
  CHECK(t.result.team == 1);

  const KripkeModel q_only = model(R"({"worlds":["n"],"val":{"n":["q"]}})");
  const Amalgam k = amalgamate(pq, q_only, Relation{{1}}, {"p", "q"}, {"q"});
  CHECK(k.model.label(0) == PropSet{"p", "q"});

  CHECK_THROWS_AS(amalgamate(pq, q_only, Relation{{0}}, {"p", "q"}, {"q"}), InvalidArgument);
  const KripkeModel not_q = model(R"({"worlds":["n"]})");
  CHECK_THROWS_AS(amalgamate(pq, not_q, Relation{{1}}, {"p", "q"}, {"q"}), InvalidArgument);
  CHECK_THROWS_AS(team_amalgamate({pq, 1}, {"p", "q"}, {not_q, 1}, {"q"}), InvalidArgument);
  const TeamAmalgam empty = team_amalgamate({pq, 0}, {"p", "q"}, {not_q, 0}, {"q"});
  CHECK(empty.result.team == 0);
}

TEST_CASE("amalgams project bisimilarly onto both inputs") {
  const auto models = oracle::models_with(2, {"p", "q"});
  const PropSet p{"p", "q"}, q{"q", "r"};
  std::size_t checked = 0;
  for (std::size_t i = 0; i < models.size(); i += 13)
    for (std::size_t j = 1; j < models.size(); j += 17) {
      KripkeModel n = models[j];
      // Rename p to r on the second side so the languages overlap in q only.
      KripkeModel renamed;
      for (std::size_t w = 0; w < n.size(); ++w) {
        PropSet label;
        for (const auto& x : n.label(w)) label.push_back(x == "p" ? "r" : x);
        renamed.add_world(n.id(w), label);
      }
      for (std::size_t w = 0; w < n.size(); ++w)
        for (Mask s = n.successors(w); s; s &= s - 1) renamed.add_edge(w, std::countr_zero(s));
      const Relation b = max_bisim(models[i], renamed, {"q"});
      if (b.empty()) continue;
      const Amalgam k = amalgamate(models[i], renamed, b, p, q);
      REQUIRE(is_bisimulation(k.model, models[i], p, k.to_m));
      REQUIRE(is_bisimulation(k.model, renamed, q, k.to_n));
      ++checked;
    }
  CHECK(checked > 20);
}

TEST_CASE("relation dump round trip") {
  const KripkeModel chain = model(kChain), loop = model(kLoop);
  const Relation r = bounded_bisim(chain, loop, {"p"}, 1).top();
  const std::string dump = relation_dump(chain, loop, {"p"}, r);
  // v has no successor, so only w is 1-bisimilar to the loop.
  CHECK(dump == "props: p\nw <-> u\n");
  const RelationFile back = parse_relation_dump(chain, loop, dump);
  CHECK(back.props == PropSet{"p"});
  CHECK(back.relation == r);
  CHECK_THROWS_AS(parse_relation_dump(chain, loop, "w <-> u\n"), ParseError);
  CHECK_THROWS_AS(parse_relation_dump(chain, loop, "props: p\nw -> u\n"), ParseError);
  CHECK_THROWS_AS(parse_relation_dump(chain, loop, "props: p\nw <-> x\n"), ParseError);
}

}  // TEST_SUITE
