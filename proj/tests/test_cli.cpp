#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args, const std::string& stdin_data = "") {
  const char* bin = std::getenv("KRULL_BIN");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " 2>&1";
  if (!stdin_data.empty()) {
    std::string tmp = "/tmp/krull_cli_in.json";
    FILE* f = fopen(tmp.c_str(), "w");
    fwrite(stdin_data.data(), 1, stdin_data.size(), f);
    fclose(f);
    cmd = std::string(bin) + " " + args + " < " + tmp + " 2>&1";
  }
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const std::string z4_chain =
    "--set 'ring={\"ring\":\"Zmod\",\"n\":4}' "
    "--set 'chain={\"chain\":[{\"J\":[\"0\"],\"U\":[\"2\"]},{\"J\":[\"2\"],\"U\":[\"1\"]}]}'";

}  // namespace

TEST_CASE("exit codes follow the contract") {
  CHECK(run("collapse " + z4_chain).exit_code == 0);
  // a pseudo-regular sequence: verdict true for pseudo-regular, exit 0
  CHECK(run("pseudo-regular --set 'ring={\"ring\":\"Poly\",\"coeff\":\"Q\",\"vars\":[\"X\"]}' "
            "--set 'seq=[\"X\"]'")
            .exit_code == 0);
  // collapse of a non-collapsing chain: verdict false, exit 1
  CHECK(run("collapse --set 'ring={\"ring\":\"Z\"}' "
            "--set 'chain={\"chain\":[{\"J\":[\"0\"],\"U\":[\"2\"]},{\"J\":[\"2\"],\"U\":[\"1\"]}]}'")
            .exit_code == 1);
  // malformed input: exit 2 with a position-annotated message
  RunResult bad = run("collapse --request 'not json'");
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("InputError") != std::string::npos);
  // unknown fields are rejected
  CHECK(run("collapse " + z4_chain + " --set 'extra=1'").exit_code == 2);
  // composite characteristic: exit 2
  CHECK(run("collapse --set 'ring={\"ring\":\"Poly\",\"coeff\":{\"Fp\":4},\"vars\":[\"X\"]}' "
            "--set 'chain={\"chain\":[{\"J\":[\"X\"],\"U\":[]}]}'")
            .exit_code == 2);
  // resource exhaustion: exit 3
  CHECK(run("certify --set 'ring={\"ring\":\"Poly\",\"coeff\":\"Q\",\"vars\":[\"X\",\"Y\"]}' "
            "--set 'chain={\"chain\":[{\"J\":[\"X^3-Y\"],\"U\":[\"Y^3-X-1\"]},"
            "{\"J\":[\"Y^5-X^2\"],\"U\":[\"1\"]}]}' "
            "--set 'options={\"caps\":{\"groebner_degree\":2}}'")
            .exit_code == 3);
}

TEST_CASE("requests can come from stdin") {
  RunResult r = run("collapse --file -",
                    "{\"v\":1,\"command\":\"collapse\",\"ring\":{\"ring\":\"Zmod\",\"n\":4},"
                    "\"chain\":{\"chain\":[{\"J\":[\"0\"],\"U\":[\"2\"]},"
                    "{\"J\":[\"2\"],\"U\":[\"1\"]}]}}");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"verdict\": true") != std::string::npos);
  // a mismatched command field is rejected
  RunResult off = run("certify --file -",
                      "{\"v\":1,\"command\":\"collapse\",\"ring\":{\"ring\":\"Z\"},"
                      "\"chain\":{\"chain\":[{\"J\":[\"1\"],\"U\":[\"1\"]}]}}");
  CHECK(off.exit_code == 2);
}

TEST_CASE("round-trip: every emitted certificate verifies through the CLI") {
  // certify, extract the certificate, feed it back through verify
  RunResult cert = run("certify " + z4_chain);
  REQUIRE(cert.exit_code == 0);
  auto pos = cert.output.find("\"certificate\": ");
  REQUIRE(pos != std::string::npos);
  // the certificate object runs to the closing brace before the envelope end
  std::string certificate = cert.output.substr(pos + 15);
  certificate = certificate.substr(0, certificate.rfind('}'));
  certificate = certificate.substr(0, certificate.rfind('}') + 1);
  std::string req = std::string("{\"ring\":{\"ring\":\"Zmod\",\"n\":4},") +
                    "\"chain\":{\"chain\":[{\"J\":[\"0\"],\"U\":[\"2\"]},"
                    "{\"J\":[\"2\"],\"U\":[\"1\"]}]},\"cert\":" +
                    certificate + "}";
  RunResult ver = run("verify --file -", req);
  CHECK(ver.exit_code == 0);

  // a tampered exponent fails with exit 1: 2^1 * (1 + 2) = 6 != 0 (mod 4)
  RunResult bad = run("verify " + z4_chain +
                      " --set 'cert={\"levels\":[{\"exp\":{\"2\":1},\"cof\":{\"0\":\"1\"}},"
                      "{\"exp\":{\"1\":0},\"cof\":{\"2\":\"1\"}}]}'");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("identical request and seed give byte-identical responses") {
  std::string cmd =
      "dim-le --set 'ring={\"ring\":\"Zmod\",\"n\":12}' --set 'l=0' "
      "--set 'random={\"count\":5}' --seed 42";
  RunResult a = run(cmd);
  RunResult b = run(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  RunResult c = run(
      "dim-le --set 'ring={\"ring\":\"Zmod\",\"n\":12}' --set 'l=0' "
      "--set 'random={\"count\":5}' --seed 43");
  CHECK(c.output != a.output);  // the seed steers generation
}

TEST_CASE("lattice commands through the CLI") {
  RunResult spec = run("lattice spec --set 'pres={\"gens\":[\"a\"],\"axioms\":[]}'");
  CHECK(spec.exit_code == 0);
  CHECK(spec.output.find("\"count\": 2") != std::string::npos);

  RunResult dim = run("lattice dim --set 'pres={\"gens\":[\"a\"],\"axioms\":[]}' --set 'l=1'");
  CHECK(dim.exit_code == 0);

  RunResult leq = run(
      "lattice leq --set 'pres={\"gens\":[\"a\"],\"axioms\":[]}' "
      "--set 'x=[[\"a\"]]' --set 'y=[[]]'");
  CHECK(leq.exit_code == 0);
  RunResult gt = run(
      "lattice leq --set 'pres={\"gens\":[\"a\"],\"axioms\":[]}' "
      "--set 'x=[[]]' --set 'y=[[\"a\"]]'");
  CHECK(gt.exit_code == 1);

  RunResult kr = run(
      "lattice kr --set 'pres={\"gens\":[\"a\"],\"axioms\":[]}' --set 'l=1' "
      "--set 'query={\"lhs\":[\"1:a\"],\"rhs\":[\"0:a\"]}'");
  CHECK(kr.exit_code == 0);

  RunResult env = run("lattice bool --set 'pres={\"gens\":[\"a\"],\"axioms\":[]}'");
  CHECK(env.exit_code == 0);
  CHECK(env.output.find("\"elements\": 4") != std::string::npos);
}

TEST_CASE("zar and ext commands through the CLI") {
  CHECK(run("zar entails --set 'ring={\"ring\":\"Z\"}' --set 'u=[\"6\"]' --set 'j=[\"12\"]'")
            .exit_code == 0);
  CHECK(run("zar bridge --set 'ring={\"ring\":\"Zmod\",\"n\":4}' "
            "--set 'chain={\"chain\":[{\"J\":[\"0\"],\"U\":[\"2\"]},{\"J\":[\"2\"],\"U\":[\"1\"]}]}'")
            .exit_code == 0);

  std::string ext = "--set 'ext={\"base\":{\"ring\":\"Z\"},\"monic\":\"Y^2+1\"}'";
  RunResult up = run("ext going-up " + ext +
                     " --set 'chain={\"chain\":[{\"J\":[\"0\"],\"U\":[\"2\"]},"
                     "{\"J\":[\"2\"],\"U\":[\"3\"]},{\"J\":[\"3\"],\"U\":[\"1\"]}]}'");
  CHECK(up.exit_code == 0);
  CHECK(up.output.find("\"collapse_in_S\": true") != std::string::npos);
  CHECK(up.output.find("lying_over") != std::string::npos);

  RunResult above = run("ext above " + ext +
                        " --set 'chain={\"chain\":[{\"J\":[[\"0\",\"0\"]],\"U\":[[\"0\",\"1\"]]},"
                        "{\"J\":[[\"0\",\"1\"]],\"U\":[[\"1\",\"0\"]]}]}' "
                        "--set 'alist=[\"-1\",\"0\"]'");
  CHECK(above.exit_code == 0);

  RunResult gd = run(
      "ext going-down --set 'ext={\"base\":{\"ring\":\"Z\"},\"monic\":\"Y^2-2\"}' "
      "--set 'p0={\"J\":[\"2\"],\"U\":[\"3\"]}' --set 'u0=\"3\"' --set 'v1=[\"2\",\"2\"]' "
      "--set 'i_parts=[\"2\"]' --set 's_parts=[[\"3\",\"3\"]]'");
  CHECK(gd.exit_code == 0);
  CHECK(gd.output.find("degree_trace") != std::string::npos);
}

TEST_CASE("the --caps flag overrides search caps") {
  RunResult r = run(
      "certify --set 'ring={\"ring\":\"Poly\",\"coeff\":\"Q\",\"vars\":[\"X\",\"Y\"]}' "
      "--set 'chain={\"chain\":[{\"J\":[\"X^3-Y\"],\"U\":[\"Y^3-X-1\"]},"
      "{\"J\":[\"Y^5-X^2\"],\"U\":[\"1\"]}]}' --caps '{\"groebner_degree\":2}'");
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("ResourceExhausted") != std::string::npos);
}
