// SPDX-License-Identifier: Apache-2.0
// Contract tests for the qsm binary. The path to the built tool arrives in
// QSM_CLI_PATH (set by the test harness); every invocation here is small.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("QSM_CLI_PATH");
  REQUIRE_MESSAGE(p != nullptr, "QSM_CLI_PATH must point at the qsm binary");
  return p;
}

RunResult run(const std::string& args) {
  RunResult r;
  const std::string cmd = "'" + cli_path() + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string first_line(const std::string& s) {
  const auto pos = s.find('\n');
  return pos == std::string::npos ? s : s.substr(0, pos);
}

}  // namespace

TEST_CASE("every subcommand emits both formats and exits 0 on healthy runs") {
  struct Case {
    const char* args;
    const char* csv_header;
  };
  const Case cases[] = {
      {"merge --state epr --n 2 --L 2 --trials 3 --seed 5",
       "q_e,q_e_bound,mean_fidelity,ebits_in,ebits_out,cbits,trials,seed"},
      {"twirl --d 2 --samples 300 --seed 5", "d,L,max_abs_gap,trace_analytic,trace_mc"},
      {"region --state pure-ab --parties A,B", "A,B"},
      {"region --state ghz3 --parties A,B,R", "A,B,R"},
      {"assist --state ghz3 --n 2 --trials 5 --seed 5",
       "mean_entropy,stderr_entropy,per_copy,min_cut,trials"},
      {"mac --channel identity", "A,B"},
      {"typ --p 0.5,0.5 --n 8", "n,delta,rank,weight"},
      {"selftest --seed 3 --trials 20", "suite,passed,total"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.args);
    RunResult js = run(std::string(c.args) + " --format json");
    CHECK(js.exit_code == 0);
    CHECK(first_line(js.out) == "{");
    CHECK(js.out.find("\"config\"") != std::string::npos);
    RunResult cs = run(std::string(c.args) + " --format csv");
    CHECK(cs.exit_code == 0);
    CHECK(first_line(cs.out) == c.csv_header);
  }
}

TEST_CASE("identical config and seed give byte-identical output") {
  const char* cmd = "merge --state ghz3 --n 2 --L 2 --trials 4 --seed 99";
  RunResult a = run(cmd);
  RunResult b = run(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  RunResult c = run("merge --state ghz3 --n 2 --L 2 --trials 4 --seed 100");
  CHECK(c.out != a.out);  // the seed really reaches the instruments
}

TEST_CASE("seed precedence: flag beats built-in default") {
  RunResult with_flag = run("typ --p 0.5,0.5 --n 4 --seed 7");
  CHECK(with_flag.out.find("\"seed\": 7") != std::string::npos);
  RunResult plain = run("typ --p 0.5,0.5 --n 4");
  CHECK(plain.out.find("\"seed\": 12345") != std::string::npos);
}

TEST_CASE("exit codes: bad input 4, resource cap 3") {
  CHECK(run("merge --state nosuch").exit_code == 4);
  CHECK(run("merge --state epr --L -3").exit_code == 4);
  CHECK(run("region --state ghz3 --parties A,Z").exit_code == 4);
  CHECK(run("typ --p 0.6,0.6 --n 4").exit_code == 4);
  CHECK(run("bogus-subcommand").exit_code == 4);
  CHECK(run("merge --bogus-flag").exit_code == 4);

  CHECK(run("merge --state epr --n 12").exit_code == 3);
  CHECK(run("typ --p 0.5,0.5 --n 40").exit_code == 3);
  CHECK(run("merge --state epr --n 4 --cap 16").exit_code == 3);
}

TEST_CASE("amplitude files round through the state loader") {
  const std::string path = "cli_test_state.json";
  FILE* f = fopen(path.c_str(), "w");
  REQUIRE(f != nullptr);
  fputs(
      "{\"layout\":[{\"label\":\"A\",\"dim\":2},{\"label\":\"B\",\"dim\":2},"
      "{\"label\":\"R\",\"dim\":1}],"
      "\"amp_re\":[0.7071067811865476,0,0,0.7071067811865476],"
      "\"amp_im\":[0,0,0,0]}",
      f);
  fclose(f);
  RunResult r = run("merge --state " + path + " --n 1 --L 2 --trials 2 --format csv");
  CHECK(r.exit_code == 0);
  // An EPR pair merges exactly: fidelity column reads 1.
  CHECK(r.out.find(",1,") != std::string::npos);
  std::remove(path.c_str());

  FILE* g = fopen(path.c_str(), "w");
  REQUIRE(g != nullptr);
  fputs("{\"layout\":[{\"label\":\"A\",\"dim\":2}],\"amp_re\":[1],\"amp_im\":[0,0]}", g);
  fclose(g);
  CHECK(run("merge --state " + path).exit_code == 4);  // length mismatch
  std::remove(path.c_str());
}

TEST_CASE("environment seed is honored when no flag is given") {
  const std::string cmd = "QSM_SEED=4242 '" + cli_path() +
                          "' typ --p 0.5,0.5 --n 4 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  pclose(pipe);
  CHECK(out.find("\"seed\": 4242") != std::string::npos);
}
