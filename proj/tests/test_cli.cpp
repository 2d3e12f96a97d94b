// Copyright 2026 The hafmoments Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hafmoments/manifest.hpp"

#include "doctest.h"
#include "json.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the CLI with stderr discarded; stdout is captured.
Run cli(const std::string& args) {
  const std::string command = std::string(HAFMOMENTS_CLI_PATH) + " " + args + " 2>/dev/null";
  Run run;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer{};
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) run.out.append(buffer.data(), got);
  const int raw = pclose(pipe);
  run.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return run;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("hafmoments_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("m1") {
  CHECK(cli("m1 --k 2 --n 2").out == "24\n");
  CHECK(cli("m1 --k 1 --n 3 --mode enumerate").out == "225\n");
  CHECK(cli("m1 --k 4 --n 1").out == "4\n");
  CHECK(cli("m1 --k 1000000 --n 3").out == "15000090000120000000\n");
  CHECK(cli("m1 --k 1 --n 7 --mode enumerate").status == 2);
  CHECK(cli("m1 --k 0 --n 1").status == 2);
  CHECK(cli("m1 --k 1 --n 1 --mode guess").status == 2);
}

TEST_CASE("m2poly") {
  const auto one = nlohmann::json::parse(cli("m2poly --n 1").out);
  CHECK(one.at("coeffs") == nlohmann::json({"0", "2", "2"}));
  CHECK(one.at("family") == "G2");
  const auto two = nlohmann::json::parse(cli("m2poly --n 2 --jobs 2").out);
  CHECK(two.at("coeffs").at(4) == "8");
  CHECK(cli("m2poly --n 5").status == 2);
  CHECK(cli("m2poly --n 4").status == 2);
}

TEST_CASE("mc") {
  const auto a = cli("mc --t 1 --k 1 --n 1 --samples 100000 --seed 7");
  REQUIRE(a.status == 0);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(std::abs(j.at("mean").get<double>() - 1.0) < 5 * j.at("stderr").get<double>());
  CHECK(j.at("samples") == 100000);
  CHECK(cli("mc --t 1 --k 1 --n 1 --samples 100000 --seed 7").out == a.out);
  CHECK(cli("mc --t 1 --k 1 --n 1 --samples 100000 --seed 7 --jobs 4").out == a.out);

  const auto b = nlohmann::json::parse(cli("mc --t 2 --k 1 --n 1 --samples 200000 --seed 3").out);
  CHECK(std::abs(b.at("mean").get<double>() - 4.0) < 5 * b.at("stderr").get<double>());
  CHECK(cli("mc --t 3 --k 1 --n 1").status == 2);
}

TEST_CASE("scan") {
  const auto k1 = cli("scan --n-list 1,2,3 --k-list 1 --mode exact");
  CHECK(k1.out ==
        "k,n,m2,m2_stderr,m2_k1,m2_limit,m2_asymptote,mode\n"
        "1,1,1/4,,1/4,1/2,0.56418958354775628,exact\n"
        "1,2,1/16,,1/16,3/8,0.3989422804014327,exact\n"
        "1,3,1/64,,1/64,5/16,0.32573500793527993,exact\n");
  const auto rising = cli("scan --n-list 1 --k-list 1,10,1000000 --mode exact --format json");
  const auto rows = nlohmann::json::parse(rising.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows.at(2).at("m2") == "500000/1000001");

  TempDir tmp;
  const auto csv = tmp.path / "table.csv";
  REQUIRE(cli("scan --n-list 1,2 --k-list 1,2 --out " + csv.string()).status == 0);
  const auto manifest = nlohmann::json::parse(slurp(hafmoments::manifest_path_for(csv)));
  CHECK(manifest.at("output_sha256") == hafmoments::sha256_hex(slurp(csv)));
  CHECK(manifest.at("command_line").size() == 8);

  const auto js = tmp.path / "table.json";
  REQUIRE(cli("scan --n-list 1 --k-list 1 --out " + js.string()).status == 0);
  CHECK(nlohmann::json::parse(slurp(js)).at(0).at("m2") == "1/4");
  CHECK(cli("scan --n-list 4 --k-list 1").status == 2);
}

TEST_CASE("gbs") {
  const auto dev = cli("gbs sector-sum --m 4 --k 2 --r 0.4 --photons 2 --trials 5 --seed 1");
  REQUIRE(dev.status == 0);
  CHECK(std::stod(dev.out) < 1e-9);
  CHECK(std::abs(std::stod(cli("gbs p2n --k 1 --r 0.5 --photons 0").out) - 0.88681888397) <
        1e-10);
  CHECK(std::abs(std::stod(cli("gbs sbs-collision --n 2 --k 8").out) - 0.27861042) < 1e-7);
  CHECK(cli("gbs p2n --k 1 --r 0.5 --photons 3").status == 2);
}

TEST_CASE("verify and manifest") {
  TempDir tmp;
  const auto report = tmp.path / "verify.txt";
  const auto run = cli("verify --level quick --out " + report.string());
  CHECK(run.status == 0);
  const auto text = slurp(report);
  CHECK(text.find("PASS lemma1-ii:") != std::string::npos);
  const auto manifest = nlohmann::json::parse(slurp(hafmoments::manifest_path_for(report)));
  CHECK(manifest.at("output_sha256") == hafmoments::sha256_hex(text));
  CHECK(manifest.at("seeds").size() >= 1);
  CHECK(manifest.contains("version"));
  CHECK(cli("verify --level extreme").status == 2);
}
