// Copyright 2026 The qpolar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "qpolar/genlib.hpp"
#include "qpolar/io.hpp"
#include "qpolar/metrics.hpp"

namespace {

namespace fs = std::filesystem;
using namespace qpolar;

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::path(QPOLAR_TEST_TMP) / (std::string("cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }

  std::string write_channel(const std::string& name, const KrausChannel& ch) {
    return write(name, channel_to_json(ch).dump());
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, DecomposeIdentity) {
  const RunResult r = run_cli({"decompose", "--in", write_channel("id.json", KrausChannel::identity(2))});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const Json j = parse_json_text(r.out);
  EXPECT_NEAR(j["metrics"]["phi"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(j["metrics"]["upsilon"].get<double>(), 1.0, 1e-12);
  const ComplexMatrix v = matrix_from_json(j["polar"]["v"], 2, 2);
  EXPECT_LE((v - identity(2)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST_F(Cli, DecomposeAmplitudeDamping) {
  const RunResult r =
      run_cli({"decompose", "--in", write_channel("ad.json", amplitude_damping(2, 0.19))});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const Json j = parse_json_text(r.out);
  const ComplexMatrix a1 = matrix_from_json(j["lk"]["a1"], 2, 2);
  EXPECT_NEAR(a1(0, 0).real(), 1.0, 1e-12);
  EXPECT_NEAR(a1(1, 1).real(), 0.9, 1e-12);
  EXPECT_TRUE(j["decoherent"].get<bool>());
  EXPECT_EQ(j["classification"]["type"].get<std::string>(), "Decoherent");
}

TEST_F(Cli, DecomposeFamilySpecWithTarget) {
  const std::string in = write("fam.json", R"({"family": "rotation", "dim": 2, "params": {"theta": 0.2}})");
  Json t;
  t["dim"] = 2;
  t["unitary"] = matrix_to_json(rotation_matrix(2, 0.2));
  const std::string target = write("target.json", t.dump());
  const RunResult r = run_cli({"metrics", "--in", in, "--target", target});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NEAR(parse_json_text(r.out)["metrics"]["phi"].get<double>(), 1.0, 1e-12);
}

TEST_F(Cli, ParseErrorExitCode) {
  const RunResult r = run_cli({"decompose", "--in", write("bad.json", "{\"dim\": 2, \"kraus\": [")});
  EXPECT_EQ(r.code, cli::kExitParse);
  const Json e = parse_json_text(r.err);
  EXPECT_EQ(e["error"].get<std::string>(), "ParseError");
  EXPECT_EQ(run_cli({"decompose", "--in", path("missing.json")}).code, cli::kExitParse);
}

TEST_F(Cli, DomainErrorExitCode) {
  const KrausChannel twice(2, {identity(2), identity(2)});
  const RunResult r = run_cli({"decompose", "--in", write_channel("twice.json", twice)});
  EXPECT_EQ(r.code, cli::kExitDomain);
  EXPECT_EQ(parse_json_text(r.err)["error"].get<std::string>(), "NotCP");
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({"verify", "--trials", "0"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"verify", "--kappa", "-1"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"decompose", "--seed", "abc"}).code, cli::kExitUsage);
}

TEST_F(Cli, StrictLeadingKraus) {
  const KrausChannel tie(2, {std::sqrt(0.5) * pauli_x(), std::sqrt(0.5) * pauli_y()});
  const std::string in = write_channel("tie.json", tie);
  EXPECT_EQ(run_cli({"decompose", "--in", in, "--strict-lk"}).code, cli::kExitDomain);
}

TEST_F(Cli, ComposeBitFlips) {
  const KrausChannel b(2, {std::sqrt(0.9) * identity(2), std::sqrt(0.1) * pauli_x()});
  Json list;
  list["channels"] = Json::array({channel_to_json(b), channel_to_json(b)});
  const RunResult r = run_cli({"compose", "--in", write("pair.json", list.dump())});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const Json j = parse_json_text(r.out);
  EXPECT_NEAR(phi(channel_from_json(j), identity(2)), 0.82, 1e-12);
  const ComplexMatrix a = matrix_from_json(j["lk_composed"]["a1"], 2, 2);
  EXPECT_NEAR(phi_operator(a, identity(2)), 0.81, 1e-12);
}

TEST_F(Cli, VerifyWritesCsvAndManifest) {
  const std::string out = path("lemmas.csv");
  const RunResult r = run_cli({"verify", "--suite", "lemmas", "--dim", "2", "--trials", "50",
                               "--seed", "42", "--out", out});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const std::string csv = slurp(out);
  EXPECT_EQ(csv.rfind("case_id,theorem,observed,lower,upper,slack,holds\n", 0), 0u);
  EXPECT_EQ(csv.find(",false\n"), std::string::npos);
  const Json m = read_json_file(out + ".manifest.json");
  EXPECT_EQ(m["tool"].get<std::string>(), "qpolar");
  EXPECT_EQ(m["seed"].get<std::uint64_t>(), 42u);
  EXPECT_TRUE(m.contains("wall_clock_seconds"));
  EXPECT_EQ(m["config"]["trials"].get<int>(), 50);
  EXPECT_TRUE(parse_json_text(r.out)["ok"].get<bool>());
}

TEST_F(Cli, VerifyViolationExitCode) {
  // The theorem suite at seed 0 contains circuits that break the tight unitarity-evolution form.
  const RunResult r = run_cli({"verify", "--suite", "theorems", "--dim", "2", "--trials", "30",
                               "--seed", "0", "--out", path("th.csv")});
  EXPECT_EQ(r.code, cli::kExitViolation);
  EXPECT_GT(parse_json_text(r.out)["violations"].get<int>(), 0);
  EXPECT_NE(slurp(path("th.csv")).find(",unitarity_evolution,"), std::string::npos);
}

TEST_F(Cli, OutputsAreByteIdentical) {
  const std::string cfg =
      write("mix.json", R"({"mode": "coherence_mix", "r": 1e-4, "levels": [0.01], "max_depth": 50})");
  ASSERT_EQ(run_cli({"sweep", "--in", cfg, "--out", path("a.csv")}).code, cli::kExitOk);
  ASSERT_EQ(run_cli({"sweep", "--in", cfg, "--out", path("b.csv")}).code, cli::kExitOk);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  ASSERT_EQ(run_cli({"verify", "--suite", "appendix", "--trials", "20", "--seed", "3", "--out",
                     path("a.ver")}).code,
            cli::kExitOk);
  ASSERT_EQ(run_cli({"verify", "--suite", "appendix", "--trials", "20", "--seed", "3", "--out",
                     path("b.ver")}).code,
            cli::kExitOk);
  EXPECT_EQ(slurp(path("a.ver")), slurp(path("b.ver")));
  const Json m = read_json_file(path("a.csv") + ".manifest.json");
  EXPECT_FALSE(m["notes"].empty());
  EXPECT_EQ(m["config"]["input_config"]["construction"].size(), 1u);
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST_F(Cli, RotationSweep) {
  Json cfg;
  cfg["mode"] = "circuit";
  cfg["element"] = {{"family", "rotation"}, {"dim", 2}, {"params", {{"theta", 0.1}}}};
  cfg["max_depth"] = 3;
  const RunResult r = run_cli({"sweep", "--in", write("rot.json", cfg.dump())});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0][2], "phi");
  EXPECT_EQ(rows[3][1], "3");
  EXPECT_NEAR(std::stod(rows[3][2]), std::pow(std::cos(0.3), 2), 1e-12);
  EXPECT_NEAR(std::stod(rows[3][7]), std::pow(std::cos(0.3), 2), 1e-12);
}

TEST_F(Cli, DepthOneMatchesMetrics) {
  const KrausChannel el = premultiply(rotation_matrix(2, 0.05), amplitude_damping(2, 0.02));
  Json cfg;
  cfg["mode"] = "circuit";
  cfg["element"] = channel_to_json(el);
  cfg["max_depth"] = 1;
  const RunResult s = run_cli({"sweep", "--in", write("one.json", cfg.dump())});
  ASSERT_EQ(s.code, cli::kExitOk) << s.err;
  const RunResult m = run_cli({"metrics", "--in", write_channel("el.json", el)});
  ASSERT_EQ(m.code, cli::kExitOk) << m.err;
  const Json mj = parse_json_text(m.out);
  const auto rows = csv_rows(s.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(std::stod(rows[1][2]), mj["metrics"]["phi"].get<double>());
  EXPECT_EQ(std::stod(rows[1][3]), mj["metrics"]["upsilon"].get<double>());
}

TEST_F(Cli, CatastrophicSweepExitCode) {
  Json cfg;
  cfg["mode"] = "circuit";
  cfg["element"] = {{"family", "rotation"}, {"dim", 2}, {"params", {{"theta", 0.3}}}};
  cfg["max_depth"] = 4;
  const RunResult r = run_cli({"sweep", "--in", write("cat.json", cfg.dump())});
  EXPECT_EQ(r.code, cli::kExitDomain);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[2].back(), "true");
  EXPECT_EQ(rows[3].back(), "false");
}

TEST_F(Cli, ExtremalDephaserDump) {
  const RunResult r = run_cli(
      {"sweep", "--in", write("ext.json", R"({"mode": "extremal_dephaser", "dim": 64, "seed": 7})")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 66u);
  const auto& summary = rows.back();
  EXPECT_EQ(summary[0], "summary");
  EXPECT_LT(std::stod(summary[4]), std::stod(summary[5]));
  EXPECT_EQ(summary[8], "false");
}

TEST_F(Cli, BinaryExitCodes) {
  const std::string bin = QPOLAR_CLI_PATH;
  const std::string bad = write("bad.json", "not json");
  const auto status = [](const std::string& cmd) {
    const int s = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status(bin + " decompose --in " + write_channel("id.json", KrausChannel::identity(2))), 0);
  EXPECT_EQ(status(bin + " decompose --in " + bad), 2);
  EXPECT_EQ(status(bin + " verify --trials 0"), 64);
  EXPECT_EQ(status(bin + " --help"), 0);
}

}  // namespace
