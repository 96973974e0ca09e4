// End-to-end tests of the command-line binary: exit codes, report shape,
// byte-determinism, and agreement with in-process library values.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "bmwkz/coxeter.hpp"
#include "bmwkz/params.hpp"
#include "bmwkz/phi.hpp"

namespace {

std::string g_cli;  // path to the built binary, from argv[1]

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Run the binary with the given arguments, capturing stdout; stderr (timing
// lines) is discarded so it cannot leak into the parsed reports.
RunResult run_cli(const std::string& args) {
  RunResult r;
  const std::string cmd = "'" + g_cli + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch_file(const std::string& name,
                                   const std::string& content) {
  const std::filesystem::path p =
      std::filesystem::temp_directory_path() / ("bmwkz_cli_test_" + name);
  std::ofstream out(p);
  out << content;
  return p;
}

}  // namespace

using namespace bmwkz;

TEST_CASE("identical invocations produce identical report bytes") {
  const RunResult a = run_cli("algebra --dihedral 3 --seed 7");
  const RunResult b = run_cli("algebra --dihedral 3 --seed 7");
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(a.out == b.out);

  const nlohmann::json j = nlohmann::json::parse(a.out);
  CHECK(j.at("dimension").get<int>() == 15);
  CHECK(j.at("complete").get<bool>());
  CHECK(j.at("trace_rank").get<int>() == 15);
  CHECK(j.at("hecke_dimension").get<int>() == 6);
  CHECK(j.at("relation_residuals").at("max").get<double>() < 1e-8);
  CHECK(j.at("basis").size() == 15);
}

TEST_CASE("verify passes on seeded generic parameters") {
  const RunResult r = run_cli("verify --m 3 --m 4 --seed 5");
  CHECK(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("failed").get<int>() == 0);
  CHECK(j.at("total").get<int>() > 20);
  CHECK(!j.contains("first_failure"));
  for (const auto& c : j.at("checks")) CHECK(c.at("pass").get<bool>());
}

TEST_CASE("verify fails at the projector rank check when l^{-1} = q") {
  // k = 1, alpha = 0 forces l = q^{-1}: the projector eigenvalue collides
  // with a reflection eigenvalue and no rank-one projector exists.
  const auto params = scratch_file(
      "nongeneric.json",
      R"({"kappa": [0.05, 0], "classes": [{"k": [1, 0], "alpha": [0, 0]}]})");
  const RunResult r =
      run_cli("verify --m 3 --params " + params.string());
  CHECK(r.exit_code == 1);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("failed").get<int>() > 0);
  CHECK(j.at("first_failure").get<std::string>() == "m3 projector rank");
  // The spectrum itself is still the expected multiset, so the collision
  // must surface at the projector stage and not earlier.
  for (const auto& c : j.at("checks")) {
    if (c.at("name").get<std::string>() == "m3 monodromy spectrum")
      CHECK(c.at("pass").get<bool>());
  }
}

TEST_CASE("missing parameter file is a usage error") {
  const RunResult r = run_cli("verify --params /nonexistent/params.json");
  CHECK(r.exit_code == 2);
}

TEST_CASE("bad command lines are usage errors and help is not") {
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("algebra").exit_code == 2);  // needs --dihedral or --coxeter
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("phi agrees with the in-process oracle") {
  const RunResult r = run_cli("phi --m 3 --seed 3 --word \"x0 x1 E0\"");
  CHECK(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("word").get<std::string>() == "x0 x1 E0");

  const ParameterSet p = sample_generic_parameters(3, 1);
  const PhiOracle oracle = dihedral_phi_oracle(Dihedral(3), p);
  const cplx expected = oracle.phi(0, {xg(0), xg(1), eg(0)});
  const cplx got(j.at("value").at(0).get<double>(),
                 j.at("value").at(1).get<double>());
  CHECK(std::abs(got - expected) < 1e-12);
}

TEST_CASE("monodromy report carries matrices and small residuals") {
  const RunResult r = run_cli("monodromy --m 4 --seed 9");
  CHECK(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("spectrum_residual").get<double>() < 1e-6);
  CHECK(j.at("braid_relation_residual").get<double>() < 1e-7);
  CHECK(j.at("flatness_residual").get<double>() < 1e-12);
  CHECK(j.at("generators").size() == 2);
  for (const auto& g : j.at("generators")) {
    CHECK(g.at("matrix").size() == 4);
    CHECK(g.at("matrix").at(0).size() == 4);
    CHECK(g.at("matrix").at(0).at(0).size() == 2);
    CHECK(g.at("projector_rank_ratio").get<double>() < 1e-8);
  }
}

TEST_CASE("brauer reports the dimension count flags") {
  const RunResult even = run_cli("brauer --dihedral 4 --seed 11");
  CHECK(even.exit_code == 0);
  const nlohmann::json je = nlohmann::json::parse(even.out);
  CHECK(je.at("dimension").get<int>() == 16);
  CHECK(je.at("deformed_count").get<int>() == 16);
  CHECK(je.at("alternative_count").get<int>() == 18);
  CHECK(je.at("matches_deformed").get<bool>());
  CHECK(!je.at("matches_alternative").get<bool>());
  CHECK(je.at("relation_residuals").at("max").get<double>() == 0.0);

  const RunResult odd = run_cli("brauer --dihedral 5 --seed 11");
  CHECK(odd.exit_code == 0);
  const nlohmann::json jo = nlohmann::json::parse(odd.out);
  CHECK(jo.at("dimension").get<int>() == 35);
  CHECK(jo.at("matches_deformed").get<bool>());
  CHECK(jo.at("matches_alternative").get<bool>());
}

TEST_CASE("graph files reach the general builder") {
  const auto graph = scratch_file("d5.json", R"({"dihedral": 5})");
  const RunResult r = run_cli("algebra --coxeter " + graph.string() + " --seed 19");
  CHECK(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("dimension").get<int>() == 35);
  CHECK(j.at("complete").get<bool>());
  CHECK(j.at("hecke_dimension").get<int>() == 10);
  CHECK(j.at("relation_residuals").at("max").get<double>() < 1e-10);
}

int main(int argc, char** argv) {
  if (argc > 1 && argv[1][0] != '-') {
    g_cli = argv[1];
    --argc;
    ++argv;
  }
  if (g_cli.empty()) {
    std::fprintf(stderr, "usage: test_cli <path-to-binary> [doctest args]\n");
    return 1;
  }
  return doctest::Context(argc, argv).run();
}
