#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("minkgauss-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Outcome run(const std::string& args) const {
    const fs::path out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    const std::string cmd = std::string("\"") + MINKGAUSS_CLI + "\" " + args + " > \"" +
                            out.string() + "\" 2> \"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    Outcome r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  fs::path path(const char* name) const { return dir_ / name; }
  static std::string catalog(const char* file) {
    return (fs::path(MINKGAUSS_CATALOG_DIR) / file).string();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, AnalyzeDegenerateNullJson) {
  const Outcome r = run("analyze catalog:degenerate-null --json " + path("a.json").string());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(path("a.json")));
  EXPECT_EQ(j["verdicts"]["equivalence_battery"]["all_hold"], true);
  EXPECT_FALSE(j.contains("timings_ms"));
}

TEST_F(Cli, JsonIsByteIdenticalAcrossThreads) {
  ASSERT_EQ(run("analyze catalog:degenerate-null --threads 1 --json " + path("1.json").string()).code, 0);
  ASSERT_EQ(run("analyze catalog:degenerate-null --threads 4 --json " + path("4.json").string()).code, 0);
  EXPECT_EQ(slurp(path("1.json")), slurp(path("4.json")));
}

TEST_F(Cli, AnalyzeCatalogFileAndPlane) {
  const Outcome r = run("analyze " + catalog("null-translation.surf"));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("no-null-2-type-witness"), std::string::npos);
  const Outcome p = run("analyze catalog:plane");
  EXPECT_EQ(p.code, 0);
  EXPECT_NE(p.out.find("harmonic"), std::string::npos);
}

TEST_F(Cli, MissingFileExitsTwo) {
  const Outcome r = run("analyze missing.surf");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("missing.surf"), std::string::npos);
}

TEST_F(Cli, BadInputsExitTwo) {
  EXPECT_EQ(run("analyze catalog:helicoid").code, 2);
  EXPECT_EQ(run("analyze catalog:plane --grid 2").code, 2);
  EXPECT_EQ(run("analyze catalog:plane --domain 0 0 0 1").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  std::ofstream(path("bad.surf")) << "name = bad\nx0 = s +\n";
  const Outcome r = run("analyze " + path("bad.surf").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bad.surf"), std::string::npos);
}

TEST_F(Cli, TooManyExclusionsExitThree) {
  std::ofstream(path("partial.surf"))
      << "name = partly-riemannian\nx0 = 2*s^2\nx1 = s\nx2 = t\nx3 = 0\ndomain = -0.8 0.8 -0.8 0.8\n";
  const Outcome r = run("analyze " + path("partial.surf").string() + " --json " + path("p.json").string());
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("excluded"), std::string::npos);
  const auto j = nlohmann::json::parse(slurp(path("p.json")));
  EXPECT_EQ(j["summary"]["excluded"], 85);
  EXPECT_EQ(j["excluded"][0]["code"], "NotLorentzian");
}

TEST_F(Cli, FieldsCsv) {
  const Outcome r = run("fields catalog:plane --grid 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "s,t,det_g,K,KD,H_norm,lap_nu_norm");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 10);
  ASSERT_EQ(run("analyze catalog:plane --grid 3 --csv " + path("f.csv").string() + " --json " +
                path("x.json").string())
                .code,
            0);
  EXPECT_EQ(slurp(path("f.csv")), r.out);
}

TEST_F(Cli, TimingsFlag) {
  ASSERT_EQ(run("analyze catalog:plane --grid 3 --timings --json " + path("t.json").string()).code, 0);
  EXPECT_TRUE(nlohmann::json::parse(slurp(path("t.json"))).contains("timings_ms"));
}

TEST_F(Cli, VerifySuites) {
  EXPECT_EQ(run("verify algebra").code, 0);
  const Outcome bogus = run("verify bogus");
  EXPECT_EQ(bogus.code, 2);
  for (const char* s : {"algebra", "jets", "engine", "identities", "classification"}) {
    EXPECT_NE(bogus.err.find(s), std::string::npos) << s;
  }
}

TEST_F(Cli, VerifyIdentities) {
  const Outcome r = run("verify identities");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
}
