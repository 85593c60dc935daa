#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "ucr/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = ucr::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

const std::string kFixtures = UCR_FIXTURE_DIR;

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) cells.push_back(cell);
  return cells;
}

}  // namespace

TEST_CASE("majorize") {
  const Run r = run({"majorize", "--p", "[0.5,0.3,0.2]", "--q", "[0.4,0.4,0.2]"});
  CHECK(r.status == 0);
  CHECK(r.out == "{\"majorizes\":true}\n");
  CHECK(run({"majorize", "--p", "[0.6,0.2,0.2]", "--q", "[0.5,0.5,0]"}).out == "{\"majorizes\":false}\n");
  CHECK(run({"--format", "csv", "majorize", "--p", "[1,0]", "--q", "[0.5,0.5]"}).out == "majorizes\r\ntrue\r\n");
}

TEST_CASE("measure and joint") {
  const json m = json::parse(run({"measure", "--measure", R"({"kind":"shannon"})", "--p", "[0.75,0.25]"}).out);
  CHECK(m["value"].get<double>() == doctest::Approx(0.8112781244591328));
  const Run csv = run({"measure", "--format", "csv", "--measure", R"({"kind":"shannon"})", "--p", "[0.75,0.25]"});
  CHECK(split_lines(csv.out)[1] == "shannon,0.811278124459");
  const json j = json::parse(run({"joint", "--joint", R"({"kind":"j2"})", "--p", "[1,0]", "--q", "[0.5,0.5]"}).out);
  CHECK(j["value"].get<double>() == 0.5);
  const json s = json::parse(run({"joint", "--joint", R"({"kind":"j2"})", "--basis-a", kFixtures + "/basis_computational.json",
                                  "--basis-b", kFixtures + "/basis_hadamard.json", "--state", "[1,0]"})
                                 .out);
  CHECK(s["value"].get<double>() == doctest::Approx(0.5));
  const json chk = json::parse(run({"measure", "--measure", R"({"kind":"circular_variance"})", "--check", "sym", "--d", "4",
                                    "--trials", "500"})
                                   .out);
  CHECK(chk["report"]["violations"] == 0);
}

TEST_CASE("bound on qubit bases") {
  const Run r = run({"bound", "--measure", R"({"kind":"j2"})", "--basis-a", kFixtures + "/basis_computational.json",
                     "--basis-b", kFixtures + "/basis_hadamard.json"});
  REQUIRE(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(std::abs(j["value"].get<double>() - 0.25) <= 1e-6);
  CHECK(j["analytic_bound"].get<double>() == doctest::Approx(0.25));
  CHECK(j["method"] == "qubit-grid+nelder-mead");
  CHECK(j["grid_resolution"] == json::array({181, 360}));
  const json coarse = json::parse(run({"bound", "--measure", R"({"kind":"j2"})", "--basis-a", kFixtures + "/basis_computational.json",
                                       "--basis-b", kFixtures + "/basis_hadamard.json", "--grid", "31"})
                                      .out);
  CHECK(coarse["grid_resolution"] == json::array({31, 60}));
}

TEST_CASE("simulate") {
  const Run r = run({"simulate", "--type", "channel", "--p", "[0,1,0]", "--channel", kFixtures + "/channel_3x3.json", "--n",
                     "1000000"});
  REQUIRE(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["freq"][0] == 0.0);
  CHECK(std::abs(j["freq"][1].get<double>() - 0.5) < 0.005);
  CHECK(j["exact"] == json::array({0.0, 0.5, 0.5}));
  const json rel = json::parse(run({"simulate", "--type", "relabel", "--p", "[1,0,0]", "--group", "[[1,2,0]]", "--weights",
                                    "[0.5,0.5,0]", "--n", "20000"})
                                   .out);
  CHECK(rel["exact"] == json::array({0.5, 0.5, 0.0}));
}

TEST_CASE("sweep rows") {
  const Run r = run({"sweep", "--beta-min", "0", "--beta-max", "0.7853981633974483", "--beta-steps", "3"});
  REQUIRE(r.status == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "beta,eta,analytic_bound,numeric_bound,gap");
  const auto first = split_csv(lines[1]);
  CHECK(first[1] == "1");
  CHECK(std::stod(first[3]) <= 1e-9);
  const auto last = split_csv(lines[3]);
  CHECK(std::stod(last[1]) == doctest::Approx(0.7071067811865476));
  CHECK(std::stod(last[2]) == doctest::Approx(0.25));
  for (std::size_t i = 1; i < lines.size(); ++i) CHECK(std::abs(std::stod(split_csv(lines[i])[4])) <= 1e-6);
}

TEST_CASE("universal") {
  const json j = json::parse(run({"universal", "--basis-a", kFixtures + "/basis_computational.json", "--basis-b",
                                  kFixtures + "/basis_hadamard.json", "--check-samples", "1000"})
                                 .out);
  CHECK(j["omega"][0].get<double>() == doctest::Approx(std::pow(std::cos(M_PI / 8), 4)).epsilon(1e-9));
  CHECK(j["check"]["violations"] == 0);
  const json t = json::parse(run({"universal", "--kind", "trivial", "--basis-a", kFixtures + "/basis_computational.json",
                                  "--basis-b", kFixtures + "/basis_hadamard.json"})
                                 .out);
  CHECK(t["u0"][0].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("identical invocations give identical bytes") {
  const std::vector<std::string> args{"bound", "--seed", "4", "--restarts", "3", "--joint", R"({"kind":"tensor","U":{"kind":"shannon"}})",
                                      "--povm-a", kFixtures + "/povm_trine.json", "--povm-b", kFixtures + "/povm_trine.json"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> sim{"simulate", "--type", "relabel", "--p", "[0.2,0.8,0]", "--group", "[[1,2,0],[1,0,2]]", "--seed", "9"};
  CHECK(run(sim).out == run(sim).out);
}

TEST_CASE("validation failures exit with status 2") {
  const std::vector<std::vector<std::string>> bad{
      {"majorize", "--p", "[0.5,0.6]", "--q", "[1,0]"},
      {"majorize", "--p", "[0.5,0.5]", "--q", "[1,0,0]"},
      {"majorize", "--p", "[0.5,0.5]"},
      {"measure", "--measure", R"({"kind":"renyi","param":-1})", "--p", "[1]"},
      {"measure", "--measure", R"({"kind":"tsallis"})", "--p", "[1]"},
      {"joint", "--joint", R"({"kind":"directsum","U":{"kind":"shannon"},"w":1.5})", "--p", "[1]", "--q", "[1]"},
      {"bound", "--measure", R"({"kind":"j2"})", "--basis-a", kFixtures + "/basis_not_orthonormal.json", "--basis-b",
       kFixtures + "/basis_hadamard.json"},
      {"bound", "--measure", R"({"kind":"j2"})", "--basis-a", kFixtures + "/missing.json", "--basis-b",
       kFixtures + "/basis_hadamard.json"},
      {"bound", "--measure", R"({"kind":"j2"})", "--basis-a", kFixtures + "/basis_computational.json"},
      {"bound", "--measure", R"({"kind":"j2"})", "--basis-a", kFixtures + "/basis_computational.json", "--basis-b",
       kFixtures + "/basis_hadamard.json", "--grid", "1x5"},
      {"simulate", "--p", "[1,0]", "--channel", "[[1,0],[0.5,0.5]]"},
      {"simulate", "--type", "teleport", "--p", "[1]"},
      {"simulate", "--type", "relabel", "--p", "[1,0,0]", "--group", "[[1,2,0]]", "--weights", "[1,0]"},
      {"sweep", "--beta-max", "2.0"},
      {"sweep", "--beta-steps", "0"},
      {"universal", "--kind", "directsum", "--w", "0", "--basis-a", kFixtures + "/basis_computational.json", "--basis-b",
       kFixtures + "/basis_hadamard.json"},
      {"--format", "xml", "majorize", "--p", "[1]", "--q", "[1]"},
      {"frobnicate"},
      {},
  };
  for (const auto& args : bad) {
    const Run r = run(args);
    CAPTURE(r.err);
    CHECK(r.status == 2);
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());
  }
}

TEST_CASE("non-convergence exits with status 3 and still prints") {
  const Run r = run({"bound", "--max-iters", "2", "--measure", R"({"kind":"j2"})", "--basis-a",
                     kFixtures + "/basis_computational.json", "--basis-b", kFixtures + "/basis_hadamard.json"});
  CHECK(r.status == 3);
  const json j = json::parse(r.out);
  CHECK(j["converged"] == false);
  CHECK(j["value"].get<double>() >= 0.25 - 1e-9);
  const Run q = run({"bound", "--max-iters", "3", "--restarts", "2", "--joint", R"({"kind":"j2"})", "--povm-a",
                     kFixtures + "/povm_qutrit_z.json", "--povm-b", kFixtures + "/povm_qutrit_z.json"});
  CHECK(q.status == 3);
  CHECK(json::accept(q.out));
  const Run s = run({"sweep", "--beta-steps", "2", "--max-iters", "2"});
  CHECK(s.status == 3);
  CHECK(split_lines(s.out).size() == 3);
}

TEST_CASE("installed binary exit codes") {
  const std::string bin = UCR_CLI_BINARY;
  const auto status_of = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status_of("majorize --p '[0.5,0.3,0.2]' --q '[0.4,0.4,0.2]'") == 0);
  CHECK(status_of("majorize --p '[0.5,0.6]' --q '[1,0]'") == 2);
  CHECK(status_of("nonsense") == 2);
  CHECK(status_of("--help") == 0);
}
