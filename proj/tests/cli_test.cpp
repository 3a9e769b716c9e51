#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("gowers_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  CliRun run(const std::string& args) const {
    const std::string out = path("stdout.txt");
    const std::string cmd = std::string(GOWERS_CLI_PATH) + " " + args + " > " + out + " 2> " + path("stderr.txt");
    const int raw = std::system(cmd.c_str());
    CliRun r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = read("stdout.txt");
    return r;
  }

  fs::path dir_;
};

TEST_F(Cli, NormExamples) {
  write("f.json", R"({"orders":[4],"values":[1,0,0,0]})");
  CliRun r = run("norm --d 2 --input " + path("f.json"));
  ASSERT_EQ(r.status, 0);
  EXPECT_NEAR(Json::parse(r.out).at("value").get<double>(), 0.3535533906, 1e-10);
  write("ones.json", R"({"orders":[4],"values":[1,1,1,1]})");
  r = run("norm --d 1 --input " + path("ones.json"));
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(Json::parse(r.out).at("value").get<double>(), 1.0);
  r = run("norm --d 2 --method closed --input " + path("f.json"));
  EXPECT_NEAR(Json::parse(r.out).at("value").get<double>(), 0.3535533906, 1e-10);
}

TEST_F(Cli, InvalidInputExitsTwo) {
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("norm --d 2 --input " + path("missing.json")).status, 2);
  write("bad.json", R"({"orders":[4],"values":[1,0]})");
  EXPECT_EQ(run("norm --d 2 --input " + path("bad.json")).status, 2);
  write("garbage.json", "{{{");
  EXPECT_EQ(run("u2 --input " + path("garbage.json")).status, 2);
  write("f.json", R"({"orders":[4],"values":[1,0,0,0]})");
  EXPECT_EQ(run("norm --d 9 --input " + path("f.json")).status, 2);
  EXPECT_EQ(run("verify-suite --level medium").status, 2);
}

TEST_F(Cli, SpectralCommands) {
  write("f.json", R"({"orders":[4],"values":[1,0,0,0]})");
  EXPECT_NEAR(Json::parse(run("u2 --input " + path("f.json")).out).at("value").get<double>(), std::pow(2.0, -1.5), 1e-15);
  EXPECT_NEAR(Json::parse(run("u2-dual --input " + path("f.json")).out).at("value").get<double>(), std::pow(2.0, -0.5),
              1e-15);
  const Json a2 = Json::parse(run("a2 --input " + path("f.json")).out);
  EXPECT_NEAR(a2.at("value").get<double>(), 1.0, 1e-15);
  EXPECT_EQ(a2.at("spectrum").at("re").size(), 4u);
}

TEST_F(Cli, DualFunctionAndCsvExport) {
  write("f.json", R"({"orders":[4],"values":[1,0,0,0]})");
  const CliRun r = run("dual-fn --d 2 --input " + path("f.json") + " --csv " + path("D.csv"));
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(Json::parse(r.out).at("values")[0].get<double>(), 0.0625);
  EXPECT_EQ(read("D.csv").substr(0, 12), "index,value\n");
  const CliRun n = run("dual-norm --d 2 --group 4 --input " + path("D.csv"));
  ASSERT_EQ(n.status, 0);
  EXPECT_NEAR(Json::parse(n.out).at("value").get<double>(), std::pow(2.0, -4.5), 1e-9);
}

TEST_F(Cli, DecompositionCommands) {
  ASSERT_EQ(run("gen --group 8 --seed 3 --out " + path("g.json")).status, 0);
  const double dual = Json::parse(run("u2-dual --input " + path("g.json")).out).at("value").get<double>();
  const Json g = Json::parse(read("g.json"));
  Json scaled = g;
  for (auto& v : scaled["values"]) v = v.get<double>() / dual;
  write("unit.json", scaled.dump());
  CliRun r = run("decompose-thk --d 2 --k 2 --delta 0.3 --input " + path("unit.json"));
  ASSERT_EQ(r.status, 0);
  Json j = Json::parse(r.out);
  EXPECT_LE(j.at("residual").get<double>(), 1e-5);
  EXPECT_LE(j.at("h_dual_lp").get<double>(), 0.3 + 1e-5);
  r = run("decompose-borne --d 2 --delta 0.25 --input " + path("unit.json"));
  ASSERT_EQ(r.status, 0);
  j = Json::parse(r.out);
  EXPECT_LE(j.at("f_sup").get<double>(), 4 + 1e-5);
  EXPECT_LE(j.at("h_l1").get<double>(), 0.25 + 1e-5);
}

TEST_F(Cli, GeneratorsAreDeterministic) {
  const CliRun a = run("gen --group 2,3 --seed 9");
  const CliRun b = run("gen --group 2,3 --seed 9");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  const Json phase = Json::parse(run("gen --kind phase --group 4 --coefficients 0,1").out);
  EXPECT_NEAR(phase.at("values")[2].get<double>(), -1.0, 1e-15);
  const Json ind = Json::parse(run("gen --kind indicator --group 5 --subset 1,3").out);
  EXPECT_EQ(ind.at("values"), Json::parse("[0,1,0,1,0]"));
  const Json torus = Json::parse(run("gen --kind torus --terms 1:1:0 --alpha 0.125 --length 8").out);
  EXPECT_TRUE(torus.at("embedding").get<bool>());
  EXPECT_LE(torus.at("u2_dual").get<double>(), torus.at("bound").get<double>() + 1e-12);
  EXPECT_EQ(run("gen --kind torus --terms 1:1 --alpha 0.1 --length 8").status, 2);
}

TEST_F(Cli, RegularizeAndMainDecompose) {
  write("F.json", R"({"d":1,"orders":[6],"terms":[{"0":[1,-1,0.5,0,0.25,1],"1":[0.5,1,-1,0,1,0]}]})");
  CliRun r = run("regularize --delta 0.05 --input " + path("F.json"));
  ASSERT_EQ(r.status, 0);
  Json j = Json::parse(r.out);
  EXPECT_LE(j.at("final_defect").get<double>(), 0.05);
  EXPECT_FALSE(j.at("history").empty());

  write("fs.json",
        R"({"d":2,"orders":[6],"functions":{"10":[1,0,0,1,0,0],"01":[0.5,0.5,1,0,0,1],"11":[1,1,0,0,1,0]}})");
  r = run("main-decompose --delta 0.3 --input " + path("fs.json"));
  ASSERT_EQ(r.status, 0) << r.out;
  j = Json::parse(r.out);
  EXPECT_TRUE(j.at("verification").at("passed").get<bool>());
  EXPECT_LE(j.at("verification").at("rho_l2").get<double>(), 0.3);
}

TEST_F(Cli, VerifySuiteDeterminismAndFaults) {
  const CliRun a = run("verify-suite --level quick --seed 7");
  const CliRun b = run("--threads 3 verify-suite --level quick --seed 7");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(Json::parse(a.out).at("passed").get<bool>());

  const CliRun f = run("verify-suite --level quick --seed 7 --inject-fault spectral.u2_parseval");
  EXPECT_EQ(f.status, 1);
  const Json report = Json::parse(f.out);
  int failed = 0;
  for (const Json& e : report.at("entries")) {
    if (!e.at("passed").get<bool>()) {
      ++failed;
      EXPECT_EQ(e.at("name"), "spectral.u2_parseval");
    }
  }
  EXPECT_EQ(failed, 1);
  EXPECT_EQ(run("verify-suite --inject-fault no.such.entry").status, 2);

  ASSERT_EQ(run("verify-suite --level quick --filter cube. --out " + path("r.json")).status, 0);
  EXPECT_EQ(Json::parse(read("r.json")).at("entries").size(), 2u);
}

}  // namespace
