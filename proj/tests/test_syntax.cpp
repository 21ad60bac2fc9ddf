#include <doctest.h>

#include "support/oracle.hpp"
#include "tl/error.hpp"
#include "tl/syntax.hpp"

using namespace tl;

TEST_SUITE("syntax") {

TEST_CASE("render uses minimal parentheses and round-trips") {
  const char* cases[] = {
      "p & q",
      "~p",
      "=( ; q)",
      "=(p ; q)",
      "=(p, <> q ; [] r)",
      "inc(p, q ; q, p)",
      "ind(p ; q, r)",
      "<> p",
      "[] p",
      "E p. <> p",
      "p \\/ q & r",
      "(p \\/ q) & r",
      "p || q \\/ r",
      "(p || q) \\/ r",
      "p \\/ (q \\/ r)",
      "p \\/ q \\/ r",
      "p \\/+ q",
      "<> (p & q)",
      "bot & NE || top",
      "E p. E q. p & q",
  };
  for (const char* text : cases) {
    CAPTURE(text);
    const Formula f = parse(text);
    CHECK(render(f) == text);
    CHECK(parse(render(f)) == f);
  }
}

TEST_CASE("render round-trips on generated formulas") {
  oracle::GenOptions opt;
  opt.modal = true;
  oracle::RandomFormulas gen(7, opt);
  for (int i = 0; i < 2000; ++i) {
    const Formula f = gen.next(4);
    CAPTURE(render(f));
    CHECK(parse(render(f)) == f);
  }
}

TEST_CASE("parse errors carry positions") {
  auto error_at = [](const char* text) {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return std::pair{e.line(), e.column()};
    }
    FAIL("expected a parse error for " << text);
    return std::pair<std::size_t, std::size_t>{0, 0};
  };
  CHECK(error_at("p &") == std::pair<std::size_t, std::size_t>{1, 4});
  CHECK(error_at("~(p & q)") == std::pair<std::size_t, std::size_t>{1, 2});
  CHECK(error_at("inc(p, q ; r)") == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(error_at("=(NE ; p)") == std::pair<std::size_t, std::size_t>{1, 3});
  CHECK(error_at("=(=(p;q) ; p)") == std::pair<std::size_t, std::size_t>{1, 3});
  CHECK(error_at("p q") == std::pair<std::size_t, std::size_t>{1, 3});
  CHECK(error_at("p\n  & $") == std::pair<std::size_t, std::size_t>{2, 5});
  CHECK_THROWS_AS(parse("=(p)"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
}

TEST_CASE("factories reject malformed atoms") {
  CHECK_THROWS_AS(Formula::inc({Formula::prop("p")}, {}), InvalidArgument);
  CHECK_THROWS_AS(Formula::dep({Formula::non_empty()}, Formula::prop("p")), InvalidArgument);
  CHECK_NOTHROW(Formula::ind({}, {}));
}

TEST_CASE("classify picks the least fragment") {
  auto frag = [](const char* s) { return std::string(fragment_name(classify(parse(s)))); };
  CHECK(frag("p & ~q \\/ top") == "CPL");
  CHECK(frag("=(p ; q) & p") == "PDEP");
  CHECK(frag("inc(p ; q)") == "PINC");
  CHECK(frag("ind(p ; q) \\/ r") == "PIND");
  CHECK(frag("p & NE") == "FPTL");
  CHECK(frag("p || q") == "FPTL");
  CHECK(frag("p \\/+ q") == "FPTL");
  CHECK(frag("=(p ; q) & inc(p ; q)") == "FPTL");
  CHECK(frag("<> p") == "ML");
  CHECK(frag("[] =(p ; q)") == "MDEP");
  CHECK(frag("<> inc(p ; q)") == "MINC");
  CHECK(frag("ind(<> p ; q)") == "MIND");
  CHECK(frag("<> (p & NE)") == "FMTL");
  CHECK(frag("E p. p") == "EXT");
  CHECK(classification_notes(parse("p \\/+ q")).size() == 1);
  CHECK(classification_notes(parse("p & q")).empty());
}

TEST_CASE("languages and modal depth") {
  const Formula f = parse("E p. (p & <> q) \\/ =(r ; <> [] s)");
  const Language l = language_of(f);
  CHECK(l.all == PropSet{"p", "q", "r", "s"});
  CHECK(l.free == PropSet{"q", "r", "s"});
  CHECK(l.bound == PropSet{"p"});
  CHECK(modal_depth(f) == 2);
  CHECK(modal_depth(parse("p & q")) == 0);
  CHECK(modal_depth(parse("<> [] p \\/ <> q")) == 2);
}

TEST_CASE("constant substitution") {
  CHECK(render(substitute_const(parse("p & ~p \\/ q"), "p", true)) == "top & bot \\/ q");
  CHECK(render(substitute_const(parse("=(p ; q)"), "p", false)) == "=(bot ; q)");
  CHECK(render(substitute_const(parse("inc(~q ; p)"), "q", true)) == "inc(bot ; p)");
  // Occurrences bound by a quantifier on the same proposition stay put.
  CHECK(render(substitute_const(parse("p & E p. <> p"), "p", true)) == "top & E p. <> p");
}

TEST_CASE("prop set helpers") {
  const PropSet a = make_props({"q", "p", "q"});
  CHECK(a == PropSet{"p", "q"});
  CHECK(props_union(a, {"r"}) == PropSet{"p", "q", "r"});
  CHECK(props_intersection(a, {"q", "r"}) == PropSet{"q"});
  CHECK(props_difference(a, {"q"}) == PropSet{"p"});
  CHECK(props_subset({"p"}, a));
  CHECK_FALSE(props_subset({"r"}, a));
  CHECK(props_to_string(a) == "{p,q}");
  CHECK(props_to_string({}) == "{}");
}

}  // TEST_SUITE
