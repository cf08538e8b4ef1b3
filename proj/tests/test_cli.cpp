#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "weylab/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = weylab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

std::string info_value(const std::string& err, const std::string& key) {
  const auto pos = err.find(key + "=");
  REQUIRE(pos != std::string::npos);
  const auto start = pos + key.size() + 1;
  return err.substr(start, err.find_first_of(" \n", start) - start);
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(call({"--help"}).code == 0);
  CHECK(call({"ab", "--help"}).code == 0);
  CHECK(call({}).code == 2);
  CHECK(call({"nonsense"}).code == 2);
  CHECK(call({"ab", "--units", "si"}).code == 2);
  CHECK(call({"ab", "--samples", "1"}).code == 2);
  CHECK(call({"ab", "--x-range", "3,1"}).code == 2);
  CHECK(call({"spectrum", "--ratio-imag", "-1"}).code == 2);
  CHECK(call({"spectrum", "--n", "0,0,0", "--p", "0,0,0"}).code == 2);
  CHECK(call({"oscillator", "--lambda", "1,0,1"}).code == 2);
}

TEST_CASE("negative mass is rejected with exit code 2") {
  const Result r = call({"ab", "--mass", "-1"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.rfind("ERROR ", 0) == 0);
}

TEST_CASE("unwritable output gives exit code 1") {
  const Result r = call({"constants", "-o", "/nonexistent-dir/x.csv"});
  CHECK(r.code == 1);
  CHECK(r.err.find("ERROR io") != std::string::npos);
}

TEST_CASE("output is deterministic") {
  for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
           {"ab", "--samples", "41"},
           {"trajectories", "--count", "8", "--seed", "7", "--t", "0.3"},
           {"spectrum", "--samples", "21"},
           {"oscillator", "--max-n", "2"},
           {"constants"}}) {
    const Result a = call(args);
    const Result b = call(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
  }
}

TEST_CASE("-o writes the same bytes as stdout") {
  const auto path = std::filesystem::temp_directory_path() / "weylab_cli_test.csv";
  std::filesystem::remove(path);
  const Result direct = call({"ab", "--samples", "11"});
  const Result file = call({"ab", "--samples", "11", "-o", path.string()});
  REQUIRE(file.code == 0);
  CHECK(file.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == direct.out);
  std::filesystem::remove(path);
}

TEST_CASE("pilot and orthodox columns differ only with flux") {
  const auto zero = csv(call({"ab", "--flux", "0", "--samples", "61"}).out);
  const auto on = csv(call({"ab", "--samples", "61"}).out);
  REQUIRE(zero.size() == 62);
  REQUIRE(on.size() == 62);
  CHECK(zero[0] == std::vector<std::string>{"x", "density_orthodox", "density_pilot", "which_way", "density_averaged"});
  double max_zero = 0.0, max_on = 0.0;
  for (std::size_t i = 1; i < zero.size(); ++i) {
    max_zero = std::max(max_zero, std::abs(std::stod(zero[i][1]) - std::stod(zero[i][2])));
    if (on[i][3] != "ambiguous") max_on = std::max(max_on, std::abs(std::stod(on[i][1]) - std::stod(on[i][2])));
  }
  CHECK(max_zero < 1e-10);
  CHECK(max_on > 1e-3);
}

TEST_CASE("ab reports the separatrix") {
  const Result r = call({"ab"});
  REQUIRE(r.code == 0);
  CHECK(std::stod(info_value(r.err, "x")) == doctest::Approx(-1.3175).epsilon(1e-4));
  CHECK(info_value(r.err, "label_changes") == "1");
}

TEST_CASE("trajectory CSV carries the slit label") {
  const auto rows = csv(call({"trajectories", "--count", "4", "--seed", "3", "--t", "0.7"}).out);
  REQUIRE(rows.size() > 4);
  CHECK(rows[0] == std::vector<std::string>{"trajectory_id", "t", "x", "y", "which_way"});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK((rows[i][4] == "A" || rows[i][4] == "B"));
}

TEST_CASE("spectrum peaks at the configured resonance") {
  const Result r = call({"spectrum"});
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 402);
  std::size_t best = 1;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][3] == "exact");
    if (std::stod(rows[i][1]) > std::stod(rows[best][1])) best = i;
  }
  CHECK(std::stod(rows[best][0]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(info_value(r.err, "index") == "200");
}

TEST_CASE("spectrum overrides and long-time flags") {
  const auto rows = csv(call({"spectrum", "--long-time", "--ratio-imag", "0.5", "--v", "0", "--vbar", "1",
                              "--samples", "5", "--t", "0.1"})
                            .out);
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][3] == "outside");
  const auto ok = csv(call({"spectrum", "--long-time", "--ratio-imag", "0.5", "--samples", "3", "--t", "10"}).out);
  for (std::size_t i = 1; i < ok.size(); ++i) CHECK(ok[i][3] == "ok");
}

TEST_CASE("oscillator listing and eigenfunction") {
  const auto levels = csv(call({"oscillator", "--max-n", "1"}).out);
  CHECK(levels.size() == 9);
  const auto phi = csv(call({"oscillator", "--eigenfunction", "1,0,0", "--samples", "5"}).out);
  REQUIRE(phi.size() == 6);
  CHECK(phi[0] == std::vector<std::string>{"x", "re_phi", "im_phi"});
  CHECK(std::stod(phi[3][1]) == 0.0);
}
