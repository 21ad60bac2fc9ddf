#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tl/cli.hpp"
#include "tl/interp.hpp"
#include "tl/prop.hpp"

using namespace tl;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome tl_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("tl_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("eval reports the dependence failure") {
  const Outcome r = tl_run({"eval", "--formula", "=(p;q) & =(;p)", "--team", "{p=1 q=1; p=1 q=0}"});
  CHECK(r.code == cli::kRefuted);
  CHECK(r.out == "false\n");
  CHECK(tl_run({"eval", "--formula", "=(p;q)", "--team", "{p=1 q=1; p=0 q=0}"}).code == cli::kOk);
}

TEST_CASE("interp reproduces the constancy interpolant") {
  const Outcome r = tl_run({"interp", "--formula", "=(p;q) & =(;p)", "--keep", "q"});
  CHECK(r.code == cli::kOk);
  const std::string first = r.out.substr(0, r.out.find('\n'));
  REQUIRE(first.rfind("equivalent to ", 0) == 0);
  const Formula theta = parse(first.substr(14));
  CHECK(entails_prop(theta, parse("=(;q)")).holds);
  CHECK(entails_prop(parse("=(;q)"), theta).holds);
  const Outcome j = tl_run({"--json", "interp", "--formula", "=(p;q) & =(;p)", "--keep", "q"});
  CHECK(j.out.find("\"checks\"") != std::string::npos);
  CHECK(j.out.find("\"kept\"") != std::string::npos);
}

TEST_CASE("output matches the library byte for byte") {
  const Formula f = parse("p & q \\/ ~p");
  CHECK(tl_run({"subst", "--formula", "p & q \\/ ~p", "--prop", "p", "--value", "bot"}).out ==
        render(substitute_const(f, "p", false)) + "\n");
  CHECK(tl_run({"classify", "--formula", "p || q"}).out.rfind("FPTL", 0) == 0);
  const Outcome a = tl_run({"models", "--formula", "=(;p)"});
  CHECK(a.out == tl_run({"models", "--formula", "=(;p)"}).out);
}

TEST_CASE("bisim, charform and amalgamate on files") {
  const std::string a =
      write_temp("a.json", R"({"worlds":["w","v"],"edges":[["w","v"]],"val":{"w":["p"],"v":["p"]},"team":["w"]})");
  const std::string b = write_temp("b.json", R"({"worlds":["u"],"edges":[["u","u"]],"val":{"u":["p"]},"team":["u"]})");
  const Outcome one = tl_run({"bisim", "--model-a", a, "--model-b", b, "--k", "1", "--props", "p"});
  CHECK(one.code == cli::kOk);
  CHECK(one.out.rfind("props: p\n", 0) == 0);
  const Outcome two = tl_run({"bisim", "--model-a", a, "--model-b", b, "--k", "2", "--props", "p"});
  CHECK(two.code == cli::kRefuted);

  const Outcome c = tl_run({"charform", "--model", b, "--props", "p", "--k", "1", "--world", "u"});
  CHECK(c.code == cli::kOk);
  CHECK(c.out.find("<>") != std::string::npos);

  const std::string c2 =
      write_temp("c.json", R"({"worlds":["x","y"],"edges":[["x","y"]],"val":{"x":["p","q"],"y":["p"]},"team":["x"]})");
  const Outcome full = tl_run({"bisim", "--model-a", a, "--model-b", c2, "--props", "p"});
  CHECK(full.code == cli::kOk);
  const std::string rel = write_temp("rel.txt", full.out);
  const Outcome m = tl_run({"amalgamate", "--model-a", a, "--model-b", c2, "--props-a", "p", "--props-b", "p,q",
                            "--relation", rel});
  CAPTURE(m.err);
  CHECK(m.code == cli::kOk);
  CHECK(m.out.find("\"worlds\"") != std::string::npos);
}

TEST_CASE("exit codes for errors and guards") {
  const Outcome parse_err = tl_run({"eval", "--formula", "p &", "--team", "{p=1}"});
  CHECK(parse_err.code == cli::kUsage);
  CHECK(parse_err.err.find("parse error at 1:4") != std::string::npos);
  CHECK(tl_run({"nonsense"}).code == cli::kUsage);
  CHECK(tl_run({"eval", "--team", "{p=1}"}).code == cli::kUsage);
  CHECK(tl_run({"--help"}).code == cli::kOk);
  const Outcome guard = tl_run({"interp", "--formula", "<> p & q", "--keep", "q", "--mode", "exact"});
  CHECK(guard.code == cli::kResource);
  CHECK(guard.err.find("--mode bounded") != std::string::npos);
  const Outcome props = tl_run({"models", "--formula", "p & q & r & s & t"});
  CHECK(props.code == cli::kResource);
  CHECK(props.err.find("max propositions") != std::string::npos);
}

TEST_CASE("entails") {
  CHECK(tl_run({"entails", "--formula", "p & q", "--conclusion", "p"}).code == cli::kOk);
  const Outcome no = tl_run({"entails", "--formula", "p \\/ q", "--conclusion", "p"});
  CHECK(no.code == cli::kRefuted);
  CHECK_FALSE(no.out.empty());
}

}  // TEST_SUITE
