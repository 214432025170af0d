#include "hamspec/cli/commands.hpp"

#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "hamspec/io.hpp"
#include "support.hpp"

namespace hamspec::cli {
namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = std::filesystem::temp_directory_path() /
           ("hamspec_cli_" + std::to_string(rd()) + "_" + std::to_string(rd()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  Path write(const std::string& name, const std::string& text) const {
    const Path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }
  Path matrix(const std::string& name, const RealMatrix& m) const {
    const Path p = dir_ / name;
    io::write_matrix_csv(p, m);
    return p;
  }
  Path path(const std::string& name) const { return dir_ / name; }

  Path dir_;
};

TEST_F(CliTest, RealizeThenCheck) {
  const Path spec = write("s.json", R"(["1+1i","1-1i","-1-1i","-1+1i","1+2i","1-2i","-1-2i","-1+2i"])");
  const CommandOutcome r = cmd_realize(spec, path("h.csv"));
  ASSERT_EQ(r.exit_code, 0) << r.diagnostics;
  EXPECT_EQ(r.report["status"], "ok");
  EXPECT_EQ(r.report["dimension"], 8);
  EXPECT_LE(r.report["pairing_error"].get<double>(), 1e-8);

  const CommandOutcome c = cmd_check(path("h.csv"));
  ASSERT_EQ(c.exit_code, 0) << c.diagnostics;
  EXPECT_TRUE(c.report["hamiltonian"].get<bool>());
  EXPECT_TRUE(c.report["spectrum_closed"].get<bool>());
  EXPECT_LE(c.report["max_odd_charpoly_coefficient"].get<double>(), 1e-10);
}

TEST_F(CliTest, RealizeReportsMissingPartner) {
  const Path spec = write("bad.json", R"(["1+1i","1-1i","2","-2"])");
  const CommandOutcome r = cmd_realize(spec, path("h.csv"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(r.report["status"], "error");
  EXPECT_NE(r.report["error"]["message"].get<std::string>().find("-1-1i"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(path("h.csv")));
}

TEST_F(CliTest, ParseAndIoErrorsExitTwo) {
  EXPECT_EQ(cmd_realize(write("x.json", "[1,"), path("h.csv")).exit_code, 2);
  EXPECT_EQ(cmd_check(write("r.csv", "1,2\n3\n")).exit_code, 2);
  EXPECT_EQ(cmd_check(path("missing.csv")).exit_code, 2);
}

TEST_F(CliTest, CheckFlagsNonHamiltonian) {
  const CommandOutcome c = cmd_check(matrix("i.csv", RealMatrix::Identity(4, 4)));
  ASSERT_EQ(c.exit_code, 0);
  EXPECT_FALSE(c.report["hamiltonian"].get<bool>());
}

TEST_F(CliTest, PerturbWorkedExample) {
  const Path a = matrix("a.csv", testing::rado_example_matrix());
  const Path c = matrix("c.csv", testing::rado_example_core());
  const Path x = matrix("x.csv", testing::rado_example_basis());
  const CommandOutcome r = cmd_perturb(a, "-2.8284271247461903,2.8284271247461903", c,
                                       path("out.csv"), x);
  ASSERT_EQ(r.exit_code, 0) << r.diagnostics;
  const RealMatrix updated = io::read_matrix_csv(path("out.csv"));
  EXPECT_TRUE(is_hamiltonian(updated, 1e-9).hamiltonian);
  EXPECT_LE(r.report["prediction_error"].get<double>(), 1e-8);

  // Without an explicit X the eigenvectors are chosen internally; the
  // spectrum is the same.
  const CommandOutcome s =
      cmd_perturb(a, "-2.8284271247461903,2.8284271247461903", c, path("out2.csv"));
  ASSERT_EQ(s.exit_code, 0) << s.diagnostics;
  EXPECT_LE(s.report["prediction_error"].get<double>(), 1e-8);
}

TEST_F(CliTest, PerturbWithZeroCoreLeavesMatrixUnchanged) {
  const Path a = matrix("a.csv", testing::rado_example_matrix());
  const Path c = matrix("c.csv", RealMatrix::Zero(2, 2));
  const CommandOutcome r = cmd_perturb(a, "1,-1", c, path("out.csv"));
  ASSERT_EQ(r.exit_code, 0) << r.diagnostics;
  EXPECT_EQ(io::read_text_file(path("out.csv")), io::read_text_file(a));
}

TEST_F(CliTest, PerturbErrors) {
  const Path a = matrix("a.csv", testing::rado_example_matrix());
  const Path c = matrix("c.csv", testing::rado_example_core());
  EXPECT_EQ(cmd_perturb(a, "1", c, path("o.csv")).exit_code, 1);
  EXPECT_EQ(cmd_perturb(a, "5,-5", c, path("o.csv")).exit_code, 1);
  EXPECT_EQ(cmd_perturb(a, "1,zz", c, path("o.csv")).exit_code, 2);
  const Path bad_c = matrix("bc.csv", RealMatrix::Identity(2, 2));
  const CommandOutcome r = cmd_perturb(a, "1,-1", bad_c, path("o.csv"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(r.report["error"]["kind"], to_string(ErrorKind::kStructure));
}

TEST_F(CliTest, RadiusAndForcing) {
  RealMatrix a = RealMatrix::Zero(2, 2);
  a(0, 0) = -3;
  a(1, 1) = -4;
  const Path p = matrix("a.csv", a);
  const CommandOutcome r = cmd_radius(p, 1e-6);
  ASSERT_EQ(r.exit_code, 0) << r.diagnostics;
  EXPECT_LE(r.report["alpha_lower"].get<double>(), 3.0);
  EXPECT_GE(r.report["alpha_upper"].get<double>(), 3.0);
  EXPECT_EQ(r.report["certificates"].size(), r.report["iterations"].get<std::size_t>());
  EXPECT_FALSE(r.report.contains("bound_alpha_plus_2C"));

  const CommandOutcome f = cmd_radius(p, 1e-6, std::nullopt, ForceOptions{1.0, {0, 1, -1}});
  ASSERT_EQ(f.exit_code, 0) << f.diagnostics;
  EXPECT_NEAR(f.report["bound_alpha_plus_2C"].get<double>(), 1 + 2 * std::sqrt(2.0), 1e-12);
  EXPECT_TRUE(f.report["forcing"]["reaches_axis"].get<bool>());

  const CommandOutcome bad = cmd_radius(p, 1e-6, std::nullopt, ForceOptions{1.0, {1, 1, 1}});
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_EQ(bad.report["error"]["kind"], to_string(ErrorKind::kPrecondition));
}

TEST_F(CliTest, RadiusRejectsUnstable) {
  const CommandOutcome r = cmd_radius(matrix("a.csv", RealMatrix::Identity(2, 2)), 1e-6);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.report["error"]["message"].get<std::string>().find("not stable"),
            std::string::npos);
  EXPECT_EQ(cmd_radius(matrix("b.csv", -RealMatrix::Identity(2, 2)), 1e-6, 0.5).exit_code, 1);
}

TEST_F(CliTest, HAlphaClosedForm) {
  const CommandOutcome r = cmd_halpha(matrix("c.csv", testing::circulant({0, 1, 0, 1})), 1.0);
  ASSERT_EQ(r.exit_code, 0) << r.diagnostics;
  EXPECT_TRUE(r.report["imaginary_axis"].get<bool>());
  EXPECT_TRUE(r.report["normal"].get<bool>());
  EXPECT_LE(r.report["closed_form_error"].get<double>(), 1e-7);
  EXPECT_EQ(r.report["spectrum"].size(), 8u);

  RealMatrix nn(2, 2);
  nn << 0, 1, -1, 0;  // normal, but not a real spectrum
  const CommandOutcome s = cmd_halpha(matrix("n.csv", nn), 0.5);
  ASSERT_EQ(s.exit_code, 0);
  EXPECT_FALSE(s.report.contains("closed_form_spectrum"));
  EXPECT_EQ(cmd_halpha(matrix("n2.csv", nn), -1.0).exit_code, 1);
}

}  // namespace
}  // namespace hamspec::cli
