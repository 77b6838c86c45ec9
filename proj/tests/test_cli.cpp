// Drives the biqchain binary (path injected as BIQCHAIN_BIN) through its
// subcommands and checks output, exit codes, and determinism.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "biq/io.hpp"
#include "biq/parser.hpp"
#include "biq/steps.hpp"
#include "common.hpp"
#include "doctest.h"

using namespace biq;

namespace {

struct Run {
  int code = -1;
  std::string out;  // stdout + stderr
};

Run run_cli(const std::string& args) {
  std::string cmd = std::string(BIQCHAIN_BIN) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  Run r;
  r.out = std::move(out);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

bool exists(const std::string& path) {
  return std::ifstream(path).good();
}

Quadruple std_quad() {
  auto ctx = testutil::std_algebra();
  return Quadruple(ctx->gen(0), ctx->gen(1), ctx->gen(2), ctx->gen(3));
}

Scalar S(const std::string& text) {
  return parse_scalar(text, testutil::std_algebra()->field());
}

// Written once; every test case reuses it.
const std::string kStdPath = [] {
  save_quadruple("cli_std.quad", std_quad());
  return std::string("cli_std.quad");
}();

}  // namespace

TEST_CASE("symbols prints the parameter tuple of the standard quadruple") {
  Run r = run_cli("symbols --quad " + kStdPath);
  CHECK(r.code == 0);
  CHECK(r.out == "(alpha, beta, gamma, delta)\n");
}

TEST_CASE("validate passes on the standard quadruple and fails on a "
          "zeroed generator") {
  Run good = run_cli("validate --quad " + kStdPath);
  CHECK(good.code == 0);
  CHECK(good.out.find("PASS") != std::string::npos);

  std::string text = slurp(kStdPath);
  size_t pos = text.find("y = (1)*y");
  REQUIRE(pos != std::string::npos);
  spit("cli_bad.quad", text.replace(pos, 9, "y = 0"));
  Run bad = run_cli("validate --quad cli_bad.quad");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("R2") != std::string::npos);
}

TEST_CASE("apply then classify recovers the step literal") {
  Run a = run_cli("apply --quad " + kStdPath +
                  " --step \"OMEGA_S a=1 b=alpha\" --out cli_t.quad");
  REQUIRE(a.code == 0);
  Quadruple expect = apply_omega_s(std_quad(), S("1"), S("alpha"));
  CHECK(load_quadruple("cli_t.quad") == expect);

  Run c = run_cli("classify --quad " + kStdPath + " --quad2 cli_t.quad");
  CHECK(c.code == 0);
  CHECK(c.out.find("OMEGA_S a=1 b=alpha") != std::string::npos);
}

TEST_CASE("apply rejects an unparametrized literal without touching --out") {
  std::remove("cli_none.quad");
  Run r = run_cli("apply --quad " + kStdPath +
                  " --step LAMBDA3 --out cli_none.quad");
  CHECK(r.code == 2);
  CHECK_FALSE(exists("cli_none.quad"));
}

TEST_CASE("pipeline emits a certificate that verify-chain accepts") {
  Quadruple target = apply_omega_c(
      apply_lambda1(std_quad(), 1, Lambda1Slot::Sep, S("beta"), S("1")),
      S("delta"));
  save_quadruple("cli_target.quad", target);

  Run p = run_cli("pipeline --quad " + kStdPath +
                  " --quad2 cli_target.quad --out cli_p.chain");
  REQUIRE(p.code == 0);
  CHECK(p.out.find("verification: all-pass") != std::string::npos);

  Run v = run_cli("verify-chain --chain cli_p.chain --quad " + kStdPath);
  CHECK(v.code == 0);
  CHECK(v.out.find("verification: all-pass") != std::string::npos);

  SUBCASE("byte-identical reruns") {
    std::string first_out = p.out, first_file = slurp("cli_p.chain");
    Run p2 = run_cli("pipeline --quad " + kStdPath +
                     " --quad2 cli_target.quad --out cli_p.chain");
    CHECK(p2.out == first_out);
    CHECK(slurp("cli_p.chain") == first_file);
  }

  SUBCASE("single-bit corruption of an element literal fails verification") {
    std::string cert = slurp("cli_p.chain");
    size_t pos = cert.rfind("beta");
    REQUIRE(pos != std::string::npos);
    cert[pos] ^= 1;  // 'b' -> 'c': still a lexable name, wrong value
    spit("cli_corrupt.chain", cert);
    Run bad = run_cli("verify-chain --chain cli_corrupt.chain");
    CHECK(bad.code != 0);
  }
}

TEST_CASE("connect handles a non-commuting transition end to end") {
  auto ctx = testutil::std_algebra();
  Element g = ctx->one() + ctx->gen(1) + ctx->gen(2);
  Quadruple q = std_quad();
  Quadruple target(g * q.x() * inverse(g), g * q.y() * inverse(g),
                   g * q.z() * inverse(g), g * q.u() * inverse(g));
  save_quadruple("cli_conj.quad", target);
  Run r = run_cli("connect --quad " + kStdPath +
                  " --quad2 cli_conj.quad --out cli_c.chain");
  CHECK(r.code == 0);
  Run v = run_cli("verify-chain --chain cli_c.chain");
  CHECK(v.code == 0);
}

TEST_CASE("parse and usage errors exit 2") {
  std::string text = slurp(kStdPath);
  size_t pos = text.find("z = (1)*z");
  REQUIRE(pos != std::string::npos);
  spit("cli_mal.quad", text.replace(pos, 9, "z = (1)*("));
  Run mal = run_cli("validate --quad cli_mal.quad");
  CHECK(mal.code == 2);
  CHECK(mal.out.find("line 5") != std::string::npos);

  CHECK(run_cli("validate --quad cli_missing_file.quad").code == 2);
  CHECK(run_cli("validate").code == 2);           // missing --quad
  CHECK(run_cli("frobnicate").code == 2);         // unknown command
  CHECK(run_cli("symbols --quad " + kStdPath +
                " --params \"alpha,beta,gamma,1\"")
            .code == 2);                          // header mismatch
}

TEST_CASE("verify-chain rejects a start quadruple mismatch") {
  Quadruple other = apply_omega_i(std_quad(), S("alpha"));
  save_quadruple("cli_other.quad", other);
  Chain c{std_quad(), {}};
  save_chain("cli_empty.chain", c);
  Run r = run_cli("verify-chain --chain cli_empty.chain --quad cli_other.quad");
  CHECK(r.code == 1);
}
