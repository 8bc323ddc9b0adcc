#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "json.hpp"

using Json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run_cmd(const std::string& cmd) {
  std::array<char, 4096> buf;
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

std::string data(const std::string& name) { return quoted(std::string(SEMIK_DATA_DIR) + "/" + name); }

std::string bin() { return std::string(SEMIK_BIN_PATH); }

Json run_json(const std::string& args) {
  Run r = run_cmd(bin() + " " + args + " 2>/dev/null");
  CAPTURE(args);
  CAPTURE(r.out);
  REQUIRE(r.code == 0);
  return Json::parse(r.out);
}

int run_code(const std::string& args, std::string* err = nullptr) {
  Run r = run_cmd(bin() + " " + args + " 2>&1 1>/dev/null");
  if (err) *err = r.out;
  return r.code;
}

}  // namespace

TEST_CASE("module analysis") {
  Json j = run_json("bmod analyze " + data("proj_notfree.json"));
  CHECK(j["subcommand"] == "bmod analyze");
  CHECK(j["version"] == "0.1.0");
  CHECK(j["inputs"]["file"]["digest"].get<std::string>().size() == 16);
  CHECK(j["payload"]["cardinality"] == 3);
  CHECK(j["payload"]["projective"] == true);
  CHECK(j["payload"]["free_rank"].is_null());
  CHECK(j["payload"]["weak_dimension"] == 2);

  j = run_json("bmod analyze " + data("free4.json"));
  CHECK(j["payload"]["cardinality"] == 4);
  CHECK(j["payload"]["free_rank"] == 2);
  CHECK(j["payload"]["projective"] == true);
}

TEST_CASE("tropical spans") {
  Json j = run_json("trop span " + data("span_notfree.json"));
  CHECK(j["payload"]["freeness"] == "NOT_FREE");
  CHECK(j["payload"]["dim_w"] == 2);
  REQUIRE(j["payload"].contains("witness"));
  CHECK(j["payload"]["witness"]["lhs"].is_array());
  CHECK(j["payload"]["witness"]["rhs"].is_array());
  CHECK(j["payload"]["extremals"].size() == 2);
  CHECK(j["inputs"]["probe_depth"] == 6);

  j = run_json("trop span " + data("span_free.json"));
  CHECK(j["payload"]["freeness"] == "FREE");
  CHECK(j["payload"]["rank"] == 2);
}

TEST_CASE("diagram k-theory and isomorphism") {
  Json j = run_json("bratteli sk0 " + data("m23.json"));
  CHECK(j["payload"]["stages"] == 1);
  CHECK(j["payload"]["k0"]["units"] == Json::parse("[[2,3]]"));

  j = run_json("bratteli iso " + data("dyadic2.json") + " " + data("dyadic4.json") + " --depth 3");
  CHECK(j["payload"]["verdict"] == "ISO");
  CHECK(j["payload"]["validated"] == true);
  CHECK(j["payload"]["witness"]["alphas"].is_array());

  j = run_json("bratteli iso " + data("dyadic2.json") + " " + data("triadic.json"));
  CHECK(j["payload"]["verdict"] == "NOT_ISO");
  CHECK(j["payload"]["certificate"]["kind"] == "supernatural");
  CHECK(j["payload"]["certificate"]["lhs"] == "2^inf");
  CHECK(j["payload"]["certificate"]["rhs"] == "3^inf");
}

TEST_CASE("limit decisions") {
  Json j = run_json("limit eq " + data("dyadic_sys.json") + " 0:1 1:2");
  CHECK(j["payload"]["verdict"] == "EQUAL");
  CHECK(j["payload"]["stage"] == 1);

  j = run_json("limit eq " + data("dyadic_sys.json") + " 0:1 0:2");
  CHECK(j["payload"]["verdict"] == "DISTINCT");

  j = run_json("limit pos " + data("dyadic_sys.json") + " 0:1");
  CHECK(j["payload"]["verdict"] == "POSITIVE");
  CHECK(j["payload"]["stage"] == 0);

  j = run_json("limit pos " + data("dyadic_sys.json") + " 0:-1 --depth 8");
  CHECK(j["payload"]["verdict"] == "NOT_WITHIN_DEPTH");
}

TEST_CASE("semiring classification") {
  Json j = run_json("semiring classify " + data("z4.json"));
  CHECK(j["payload"]["order"] == 4);
  CHECK(j["payload"]["weakly_cancellative"] == true);
  CHECK(j["payload"]["congruence_semisimple"] == false);
  CHECK(j["payload"]["decomposition"].is_null());
  CHECK(j["payload"]["factors"].is_null());

  j = run_json("semiring classify " + data("m2bool.json"));
  CHECK(j["payload"]["congruence_semisimple"] == true);
  CHECK(j["payload"]["decomposition"] == Json::parse("[1,8]"));
  REQUIRE(j["payload"]["factors"].size() == 1);
  CHECK(j["payload"]["factors"][0]["kind"] == "BOOL");
  CHECK(j["payload"]["factors"][0]["n"] == 2);
  CHECK(j["payload"]["flags"]["additively_idempotent"] == true);
  CHECK(j["payload"]["weakly_cancellative"] == false);

  j = run_json("semiring classify " + data("boolbool.json"));
  CHECK(j["payload"]["decomposition"] == Json::parse("[1,2]"));
  REQUIRE(j["payload"]["factors"].size() == 2);
  CHECK(j["payload"]["factors"][0]["kind"] == "BOOL");
  CHECK(j["payload"]["factors"][0]["n"] == 1);
  CHECK(j["payload"].contains("cancellativity_witness"));
}

TEST_CASE("matrix reports") {
  Json j = run_json("matrix check " + data("diag_bool.json"));
  CHECK(j["payload"]["kernel"] == "BOOL");
  CHECK(j["payload"]["square"] == true);
  CHECK(j["payload"]["idempotent"] == true);
  REQUIRE(j["payload"].contains("complement"));
  CHECK(j["payload"]["complement"]["entries"] == Json::parse("[0,0,0,1]"));

  j = run_json("matrix check " + data("idem_bool.json"));
  CHECK(j["payload"]["idempotent"] == true);
  CHECK(j["payload"]["complement"].is_null());
  CHECK(j["payload"].contains("reason"));

  j = run_json("matrix check " + data("trop_idem.json"));
  CHECK(j["payload"]["kernel"] == "TROP");
  CHECK(j["payload"]["idempotent"] == true);
  CHECK(j["payload"]["complement"].is_null());
}

TEST_CASE("failures exit with code 2") {
  std::string err;
  CHECK(run_code("bogus subcommand") == 2);
  CHECK(run_code("") == 2);
  CHECK(run_code("bmod analyze /nonexistent/nothing.json", &err) == 2);
  CHECK(err.find("error:") != std::string::npos);
  CHECK(err.find("MalformedFile") != std::string::npos);
  CHECK(run_code("bmod analyze") == 2);  // missing required positional
  CHECK(run_code("--format yaml bmod analyze " + data("proj_notfree.json")) == 2);
  CHECK(run_code("limit eq " + data("dyadic_sys.json") + " 0:x 0:1", &err) == 2);
  CHECK(err.find("MalformedFile") != std::string::npos);
  CHECK(run_code("limit eq " + data("dyadic_sys.json") + " 0:1,2 0:1", &err) == 2);
  CHECK(err.find("ShapeMismatch") != std::string::npos);

  Run help = run_cmd(bin() + " --help 2>&1");
  CHECK(help.code == 0);
  CHECK(help.out.find("bratteli") != std::string::npos);
}

TEST_CASE("reports are deterministic") {
  auto strip = [](Json j) {
    j.erase("elapsed_seconds");
    return j.dump();
  };
  Json a = run_json("bmod analyze " + data("proj_notfree.json"));
  Json b = run_json("bmod analyze " + data("proj_notfree.json"));
  CHECK(strip(a) == strip(b));

  // thread count shows up in the echoed inputs but never in the results
  Run t1 = run_cmd("SEMIK_THREADS=1 " + bin() + " trop span " + data("span_notfree.json") +
                   " 2>/dev/null");
  Run t4 = run_cmd("SEMIK_THREADS=4 " + bin() + " trop span " + data("span_notfree.json") +
                   " 2>/dev/null");
  REQUIRE(t1.code == 0);
  REQUIRE(t4.code == 0);
  Json j1 = Json::parse(t1.out);
  Json j4 = Json::parse(t4.out);
  CHECK(j1["inputs"]["threads"] == 1);
  CHECK(j4["inputs"]["threads"] == 4);
  CHECK(j1["payload"].dump() == j4["payload"].dump());

  Json f1 = run_json("bratteli iso " + data("dyadic2.json") + " " + data("dyadic4.json"));
  Json f2 = run_json("bratteli iso " + data("dyadic2.json") + " " + data("dyadic4.json"));
  CHECK(strip(f1) == strip(f2));
}

TEST_CASE("table format") {
  Run r = run_cmd(bin() + " --format table bmod analyze " + data("proj_notfree.json") + " 2>/dev/null");
  CHECK(r.code == 0);
  CHECK(r.out.find("payload.cardinality") != std::string::npos);
  CHECK(r.out.find("subcommand") != std::string::npos);
  CHECK(r.out.find("bmod analyze") != std::string::npos);
  CHECK(r.out.find('{') == std::string::npos);
}
