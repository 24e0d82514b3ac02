#include <doctest.h>

#include <fstream>
#include <sstream>

#include "veq/commands.hpp"
#include "veq/error.hpp"

using namespace veq;
using nlohmann::json;

namespace {

Workspace corpus(const std::string& family) {
  std::ifstream in(std::string(VEQ_CORPUS_DIR) + "/" + family + ".veq");
  std::stringstream ss;
  ss << in.rdbuf();
  Workspace ws;
  ws.load(ss.str(), family + ".veq");
  return ws;
}

CommandRecord run(const Workspace& ws, const std::string& verb, std::vector<std::string> args,
                  CommandOptions opts = {}) {
  return run_command(ws, verb, args, opts);
}

int failing_exit(const Workspace& ws, const std::string& verb, std::vector<std::string> args) {
  try {
    run(ws, verb, std::move(args));
  } catch (const Error& e) {
    return exit_code(e, false);
  }
  return 0;
}

}  // namespace

TEST_SUITE("commands") {
  TEST_CASE("finite set verbs") {
    auto ws = corpus("finset");
    auto s = run(ws, "solve", {"E"});
    CHECK(s.status == "Solved");
    CHECK(s.payload["carrier"] == json::array({"a", "c"}));
    CHECK(exit_code(s) == 0);

    CHECK(run(ws, "solve", {"K"}).payload["carrier"] == json::array({"a"}));
    CHECK(run(ws, "cosolve", {"C"}).status == "Cosolved");
    CHECK(run(ws, "check-solution", {"E", "pick_a"}).status == "Solution");
    auto bad = run(ws, "check-solution", {"E", "pick_b"});
    CHECK(bad.status == "NotSolution");
    CHECK(exit_code(bad) == 1);
    CHECK(run(ws, "implies", {"K", "E"}).status == "Implies");
    CHECK(run(ws, "implies", {"E", "K"}).negative);
  }

  TEST_CASE("term and theory verbs") {
    Workspace empty;
    auto u = run(empty, "unify", {"f(x,b)", "f(a,y)"});
    CHECK(u.status == "Unifiable");
    CHECK(u.payload["mgu"] == "{x->a, y->b}");
    CHECK(run(empty, "unify", {"x", "f(x)"}).negative);

    auto ws = corpus("theories");
    auto d = run(ws, "decide", {"CMon", "mul(mul(x,y),z)", "mul(y,mul(x,z))"});
    CHECK(d.status == "Provable");
    CHECK(run(ws, "decide", {"Mon", "mul(x,y)", "mul(y,x)"}, CommandOptions{500, {}}).status == "Unknown");
    CHECK(run(ws, "cosolve-theories", {"P", "Q"}).status == "Cosolved");
    CHECK(failing_exit(ws, "decide", {"Nope", "x", "x"}) == 2);
  }

  TEST_CASE("group and variety verbs") {
    auto groups = corpus("groups");
    auto c = run(groups, "centralizer", {"S3", "(12)"});
    CHECK(c.payload["carrier"] == json::array({"e", "(12)"}));
    CHECK(run(groups, "abelianize", {"Q8"}).payload["order"] == 4);
    CHECK(failing_exit(groups, "centralizer", {"S3", "bogus"}) == 2);

    auto b = corpus("birkhoff");
    auto yes = run(b, "hsp", {"Chain3", "SL"});
    CHECK(yes.status == "Member");
    CHECK(yes.payload["k_searched"] == 2);
    CHECK(run(b, "hsp", {"Xor", "SL"}).negative);
  }

  TEST_CASE("inserter and series verbs") {
    auto ins = corpus("inserters");
    auto i = run(ins, "inserter", {"Id", "Up"});
    CHECK(i.payload["object_count"] == 4);
    CHECK(run(ins, "verify-forgetful", {"Id", "Up"}).status == "Verified");
    CHECK(run(ins, "shift", {"Id", "Up", "DU"}).status == "Isomorphic");

    auto ser = corpus("series");
    auto two = run(ser, "recurrence", {"fib", "order", "2"});
    CHECK(two.status == "ZeroWithinPrecision");
    REQUIRE(two.precision);
    CHECK(exit_code(two) == 0);
    auto one = run(ser, "recurrence", {"fib", "order", "1"});
    CHECK(one.status == "Nonzero");
    CHECK(exit_code(one) == 1);
    CommandOptions wide;
    wide.prec = 100;
    CHECK(run(ser, "recurrence", {"fib", "order", "2"}, wide).precision == two.precision.value() + 36);
    CHECK_THROWS_AS(run(ser, "recurrence", {"sq", "order", "1"}, wide), Error);
  }

  TEST_CASE("rendering is stable") {
    auto ws = corpus("finset");
    auto r = run(ws, "solve", {"E"});
    const auto line = render_json(r);
    CHECK(line.find('\n') == std::string::npos);
    CHECK(line.rfind("{\"payload\":", 0) == 0);
    CHECK(line == render_json(run(ws, "solve", {"E"})));
    CHECK(render_human(r).rfind("solve: Solved", 0) == 0);

    const Error e(ErrorKind::ResolutionError, "no system named 'Z'");
    auto err = json::parse(render_error_json("solve", e));
    CHECK(err["status"] == "Error");
    CHECK(err["payload"]["kind"] == "ResolutionError");
    CHECK(exit_code(e, true) == 2);
    CHECK(exit_code(Error(ErrorKind::InvariantError, "x"), false) == 3);
    CHECK(exit_code(Error(ErrorKind::InvariantError, "x"), true) == 2);
  }

  TEST_CASE("unknown verbs are rejected") {
    Workspace ws;
    CHECK_THROWS_AS(run(ws, "frobnicate", {}), Error);
    CHECK(command_verbs().size() >= 23);
    CHECK(run(ws, "check", {}).status == "Valid");
  }
}
