#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "abelfourier/cli.hpp"

using namespace abelfourier;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "abelfourier");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string data(const std::string& name) { return std::string(ABELFOURIER_TEST_DATA) + "/" + name; }

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("abelfourier_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir_;
};

}  // namespace

TEST(CliVerify, AllChecksAtGenusTwo) {
  const CliRun r = cli({"verify", "--genus", "2", "--checks", "all"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["results"].size(), 20u);
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["exit_status"], "0");
}

TEST(CliVerify, SingleCheckTextFormat) {
  const CliRun r = cli({"verify", "--genus", "1", "--checks", "claim_star", "--format", "text"});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  EXPECT_NE(r.out.find("pass  C4 claim_star"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("status: pass"), std::string::npos);
}

TEST(CliVerify, RejectsBadInput) {
  const CliRun bad = cli({"verify", "--variety", data("bad_non_alternating.json")});
  EXPECT_EQ(bad.code, kExitInput);
  EXPECT_NE(bad.err.find("NotAlternating"), std::string::npos) << bad.err;

  const CliRun unknown = cli({"verify", "--genus", "1", "--checks", "not_a_check"});
  EXPECT_EQ(unknown.code, kExitInput);
  EXPECT_NE(unknown.err.find("UnknownCheck"), std::string::npos) << unknown.err;

  EXPECT_EQ(cli({"verify", "--genus", "1", "--format", "yaml"}).code, kExitInput);
  EXPECT_EQ(cli({"verify", "--genus", "1", "--variety", data("type_1_2.json")}).code, kExitInput);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitInput);
  EXPECT_EQ(cli({"--help"}).code, kExitPass);
}

TEST(CliVerify, VarietyFileAndSkips) {
  const CliRun r = cli({"verify", "--variety", data("type_1_2.json"), "--checks", "C2,C6,C8"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j["results"].size(), 3u);
  std::map<std::string, std::string> status;
  for (const auto& c : j["results"]) status[c["id"]] = c["status"];
  EXPECT_EQ(status["C2"], "skipped");
  EXPECT_EQ(status["C6"], "skipped");
  EXPECT_EQ(status["C8"], "pass");
}

TEST_F(CliFiles, FourierOfExponentialTheta) {
  const AbelianVariety A = standard_ppav(2);
  const std::string cls = write("exp_theta.json", dump(to_json(cup_exponential(theta_class(A)))));
  const CliRun r = cli({"fourier", "--variety", data("gaussian_square.json"), "--class", cls});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  EXPECT_EQ(r.out, dump(to_json(cup_exponential(-theta_class(dual(A))))));
}

TEST_F(CliFiles, FourierPointAndInverseRoundTrip) {
  const AbelianVariety A = standard_ppav(2);
  const std::string point = write("point.json", dump(to_json(point_class(A))));
  const CliRun r = cli({"fourier", "--variety", data("gaussian_square.json"), "--class", point});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  EXPECT_EQ(r.out, dump(to_json(fundamental_class(dual(A)))));

  const std::string x = write("x.json", R"({"rank":4,"terms":[{"generators":[0],"coeff":"3"},)"
                                        R"({"generators":[1,2],"coeff":"-2"},{"generators":[],"coeff":"7"}]})");
  const std::string fx = dir_ / "fx.json";
  ASSERT_EQ(cli({"fourier", "--variety", data("gaussian_square.json"), "--class", x, "--out", fx}).code, kExitPass);
  const CliRun back = cli({"fourier", "--variety", data("gaussian_square.json"), "--class", fx, "--inverse"});
  ASSERT_EQ(back.code, kExitPass) << back.err;
  EXPECT_EQ(back.out, dump(to_json(multivector_from_json(json::parse(slurp(x))))));
}

TEST_F(CliFiles, FourierRankMismatch) {
  const std::string cls = write("small.json", R"({"rank":2,"terms":[]})");
  const CliRun r = cli({"fourier", "--variety", data("gaussian_square.json"), "--class", cls});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("RankMismatch"), std::string::npos) << r.err;
  EXPECT_EQ(cli({"fourier", "--variety", data("gaussian_square.json"), "--class", (dir_ / "missing.json").string()}).code,
            kExitInput);
}

TEST(CliHodge, RanksAndCertificates) {
  const CliRun deg2 = cli({"hodge", "--variety", data("gaussian_square.json"), "--degree", "2"});
  ASSERT_EQ(deg2.code, kExitPass) << deg2.err;
  EXPECT_NE(deg2.out.find("rank: 4\n"), std::string::npos) << deg2.out;

  const CliRun deg0 = cli({"hodge", "--genus", "2", "--degree", "0", "--format", "json"});
  ASSERT_EQ(deg0.code, kExitPass) << deg0.err;
  EXPECT_EQ(json::parse(deg0.out)["rank"], 1);

  const CliRun beta = cli({"hodge", "--genus", "3", "--degree", "4", "--beta"});
  ASSERT_EQ(beta.code, kExitPass) << beta.err;
  EXPECT_NE(beta.out.find("cokernel trivial"), std::string::npos) << beta.out;

  EXPECT_EQ(cli({"hodge", "--genus", "3", "--degree", "2", "--beta"}).code, kExitInput);
  EXPECT_EQ(cli({"hodge", "--genus", "2", "--degree", "3"}).code, kExitInput);
  const CliRun nj = cli({"hodge", "--variety", data("type_1_2.json"), "--degree", "2"});
  EXPECT_EQ(nj.code, kExitInput);
  EXPECT_NE(nj.err.find("NoComplexStructure"), std::string::npos) << nj.err;
}

TEST_F(CliFiles, HodgeCertifyGeneratorsFile) {
  const AbelianVariety A = standard_ppav(2);
  json gens = json::array();
  gens.push_back(to_json(Int(2) * point_class(A)));
  const std::string path = write("gens.json", dump(json{{"generators", gens}}));
  const std::string report = dir_ / "report.json";
  const CliRun r = cli({"hodge", "--genus", "2", "--degree", "4", "--certify-generators", path, "--format", "json",
                     "--out", report});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  EXPECT_TRUE(r.out.empty());
  const json j = json::parse(slurp(report));
  EXPECT_EQ(j["certificate"]["torsion"], json::array({"2"}));
  EXPECT_EQ(j["certificate"]["trivial"], false);

  json bad = json::array();
  bad.push_back(json::parse(R"({"rank":4,"terms":[{"generators":[0,2],"coeff":"1"}]})"));
  const CliRun nh = cli({"hodge", "--genus", "2", "--degree", "2", "--certify-generators", write("bad.json", dump(bad))});
  EXPECT_EQ(nh.code, kExitInput);
  EXPECT_NE(nh.err.find("NotHodge"), std::string::npos) << nh.err;
}
