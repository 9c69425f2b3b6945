#include <doctest.h>

#include <sstream>

#include "corpus.hpp"
#include "ssg/cli.hpp"
#include "ssg/io.hpp"

using namespace ssg;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

ParseError parse_error(std::string_view text) {
  try {
    parse_automaton(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no parse error for: " << text);
  return ParseError(0, 0, "");
}

}  // namespace

TEST_CASE("automaton files parse") {
  const auto odo = parse_automaton("alphabet 2\na = (0 1) (1, a)");
  CHECK(odo.num_states() == 1);
  const auto grig = parse_automaton(corpus::read("grigorchuk"));
  CHECK(grig.num_states() == 4);
  const auto img = parse_automaton("# comment\nalphabet 3  # three\nc = perm [1 2 0] (1, c, 1)\n");
  CHECK(img.perm(0)[0] == 1);
  CHECK(cycle_notation(img.perm(0)) == "(0 1 2)");
  CHECK(cycle_notation(grig.perm(1)) == "e");
}

TEST_CASE("parse errors carry positions") {
  const auto unknown = parse_error("alphabet 2\na = (0 1) (1, z)");
  CHECK(unknown.line() == 2);
  CHECK(unknown.column() == 15);
  CHECK(unknown.message() == "unknown state z");
  CHECK(parse_error("alphabet 2\na = (0 1) (1, a)\na = e (1, 1)").line() == 3);
  CHECK(parse_error("alphabet 2\na = (0 2) (1, a)").line() == 2);
  CHECK(parse_error("alphabet 2\na = (0 0) (1, a)").line() == 2);
  CHECK(parse_error("alphabet 2\na = (0 1) (1, a, a)").line() == 2);
  CHECK(parse_error("alphabet 1\n").line() == 1);
  CHECK(parse_error("a = (0 1) (1, a)\n").line() == 1);
}

TEST_CASE("element expressions") {
  auto a = corpus::load("grigorchuk");
  CHECK(parse_element("a^2", a).word() == Word{0, 0});
  CHECK(parse_element("a*b^-1", a).word() == Word{0, 3});
  CHECK(parse_element("(a*b)^-1", a).word() == Word{3, 1});
  CHECK(parse_element("a*b*b^-1", a).word() == Word{0});
  CHECK(parse_element("1", a).word().empty());
  CHECK(parse_element("(a*b)^2*c", a).to_string() == "a*b*a*b*c");
  CHECK_THROWS_AS(parse_element("a*z", a), ParseError);
  CHECK_THROWS_AS(parse_element("a^", a), ParseError);
  CHECK_THROWS_AS(parse_element("(a*b", a), ParseError);
}

TEST_CASE("serialization round trip") {
  for (const auto& name : corpus::names()) {
    const auto a = parse_automaton(corpus::read(name));
    const std::string text = serialize_automaton(a);
    const auto b = parse_automaton(text);
    CHECK(a == b);
    CHECK(serialize_automaton(b) == text);
    CHECK(a.content_hash() == b.content_hash());
  }
}

TEST_CASE("command examples") {
  const auto ends = run_cli({"ends", corpus::path("odometer"), "--element", "a"});
  CHECK(ends.code == kExitOk);
  CHECK(ends.out == "NoEnds, certificate k=1\n");
  const auto sub = run_cli({"subindep", corpus::path("grigorchuk"), "-n", "1", "-m", "1"});
  CHECK(sub.code == kExitOk);
  CHECK(sub.out.rfind("0 violations / ", 0) == 0);
  const auto broken = run_cli({"prop4", corpus::path("broken")});
  CHECK(broken.code == kExitFails);
  CHECK(broken.out.find("witness: ") != std::string::npos);
  CHECK(broken.err.empty());
}

TEST_CASE("exit codes") {
  CHECK(run_cli({}).code == kExitDiagnostic);
  CHECK(run_cli({"nucleus"}).code == kExitDiagnostic);
  CHECK(run_cli({"nucleus", "/nonexistent.ssg"}).code == kExitDiagnostic);
  CHECK(run_cli({"ends", corpus::path("odometer"), "-e", "q"}).code == kExitDiagnostic);
  CHECK(run_cli({"martingale", corpus::path("odometer"), "-n", "1", "-m", "1", "-r", "0"}).code ==
        kExitFails);
  CHECK(run_cli({"--budget-elements", "100", "quotient", corpus::path("grigorchuk"), "-n", "4"})
            .code == kExitBudget);
  CHECK(run_cli({"--budget-nucleus", "3", "nucleus",
                 corpus::path("grigorchuk")}).code == kExitBudget);
  CHECK(run_cli({"quotient", corpus::path("basilica"), "-n", "3"}).code == kExitOk);
}

TEST_CASE("json output is deterministic for a seed") {
  const std::vector<std::string> args = {"--json", "--seed", "9", "fpp", corpus::path("basilica"),
                                         "--max-level", "3", "--samples", "500"};
  const auto first = run_cli(args);
  CHECK(first.code == kExitOk);
  CHECK(first.out == run_cli(args).out);
  CHECK(first.out.find("\"schema\": \"ssg-report\"") != std::string::npos);
}
