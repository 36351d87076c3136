#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "prodstruct/certificate.hpp"
#include "prodstruct/instances.hpp"

using namespace prodstruct;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(PRODSTRUCT_CLI) + " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("prodstruct_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenPartitionVerifyStar) {
  const std::string g = path("g.txt"), cert = path("cert.json");
  ASSERT_EQ(run("gen --family grid --params 4 4 --out " + g).code, 0);
  ASSERT_TRUE(fs::exists(g + ".meta.json"));
  const CliRun p = run("partition " + g + " --method star --out " + cert);
  ASSERT_EQ(p.code, 0) << p.out;
  const json j = read_json_file(cert);
  EXPECT_EQ(j["witness"]["kind"], "forest");
  EXPECT_TRUE(j["meets_bound"].get<bool>());
  const Certificate c = certificate_from_json(j);
  const Graph host = c.partition.host;
  for (auto [a, b] : host.edges()) EXPECT_EQ(a, 0);
  EXPECT_EQ(run("verify " + g + " " + cert).code, 0);
}

TEST_F(Cli, TamperedCertificateFails) {
  const std::string g = path("g.txt"), cert = path("cert.json"), bad = path("bad.json");
  ASSERT_EQ(run("gen --family grid --params 6 6 --out " + g).code, 0);
  ASSERT_EQ(run("partition " + g + " --method td --depth 3 --out " + cert).code, 0);
  json j = read_json_file(cert);
  // move one vertex into a fresh singleton part, unconnected in the host
  auto& parts = j["parts"];
  std::size_t victim = 0;
  while (parts[victim].size() < 2) ++victim;
  const int v = parts[victim].back().get<int>();
  parts[victim].erase(parts[victim].size() - 1);
  parts.push_back(json::array({v}));
  j["witness"]["parent"].push_back(-1);
  std::ofstream(bad) << j.dump();
  const CliRun r = run("verify " + g + " " + bad);
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_NE(r.out.find("edge"), std::string::npos) << r.out;
}

TEST_F(Cli, TwTdWithDecomposition) {
  const std::string g = path("g.txt"), cert = path("cert.json");
  ASSERT_EQ(run("gen --family k_tree --params 150 2 --seed 3 --out " + g).code, 0);
  const CliRun p = run("partition " + g + " --method tw-td --depth 3 --out " + cert);
  ASSERT_EQ(p.code, 0) << p.out;
  EXPECT_EQ(run("verify " + g + " " + cert).code, 0);
}

TEST_F(Cli, SeparatorReports) {
  const std::string g = path("g.txt"), out = path("sep.json");
  ASSERT_EQ(run("gen --family path --params 12 --out " + g).code, 0);
  ASSERT_EQ(run("sep " + g + " --method balanced --out " + out).code, 0);
  const json j = read_json_file(out);
  EXPECT_TRUE(j["meets_contract"].get<bool>());
  EXPECT_LE(j["max_component"].get<int>(), 6);
  EXPECT_EQ(run("sep " + g + " --method tree --p 2 --q 3.9").code, 1);
}

TEST_F(Cli, ExpansionAndPromiseViolation) {
  const std::string g = path("g.txt"), k = path("k5.txt"), cert = path("cert.json"), model = path("model.json");
  ASSERT_EQ(run("gen --family grid --params 5 5 --out " + g).code, 0);
  ASSERT_EQ(run("partition " + g + " --method expansion --ell 2 --h 5 --out " + cert).code, 0);
  EXPECT_EQ(run("verify " + g + " " + cert).code, 0);
  ASSERT_EQ(run("gen --family complete --params 5 --out " + k).code, 0);
  ASSERT_EQ(run("partition " + k + " --method expansion --ell 1 --h 5 --out " + model).code, 0);
  EXPECT_EQ(read_json_file(model)["kind"], "shallow-model");
  EXPECT_EQ(run("verify " + k + " " + model).code, 0);
}

TEST_F(Cli, SeparableOnProduct) {
  const std::string g = path("g.txt"), cert = path("cert.json");
  ASSERT_EQ(run("gen --spec \"strong_product(path(4),path(16))\" --out " + g).code, 0);
  const CliRun p = run("partition " + g + " --method separable --meta " + g + ".meta.json --out " + cert);
  ASSERT_EQ(p.code, 0) << p.out;
  EXPECT_EQ(run("verify " + g + " " + cert).code, 0);
}

TEST_F(Cli, BenchTwTdPasses) {
  const std::string csv = path("bench.csv");
  const CliRun r = run("bench --suite tw-td --dmax 4 --scale 500 --no-time --out " + csv);
  ASSERT_EQ(r.code, 0) << r.out;
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "instance,n,operation,bound_formula,bound_value,achieved,pass,ms");
  int rows = 0;
  for (std::string line; std::getline(in, line);) {
    ++rows;
    EXPECT_NE(line.find(",true,"), std::string::npos) << line;
  }
  EXPECT_GT(rows, 10);
}

TEST_F(Cli, UsageAndInputErrors) {
  EXPECT_EQ(run("partition").code, 2);
  EXPECT_EQ(run("gen --family nosuch --params 3").code, 2);
  EXPECT_EQ(run("partition " + path("missing.txt") + " --method star").code, 2);
  const std::string g = path("bad.txt");
  std::ofstream(g) << "3 1\n0 7\n";
  EXPECT_EQ(run("partition " + g + " --method star").code, 2);
}
