#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "cfou/errors.hpp"
#include "cfou/report_io.hpp"
#include "commands.hpp"
#include "config.hpp"

using namespace cfou;
using namespace cfou::cli;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "cfou");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string tool() {
  const char* p = std::getenv("CFOU_TOOL");
  return p ? p : "";
}

// Runs the built executable; returns the exit status and stdout.
std::pair<int, std::string> shell(const std::string& cmd) {
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t k;
  while ((k = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, k);
  const int status = pclose(f);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "cfou_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Config, DefaultsAndOverrides) {
  const auto c = resolve(Command::Mc, json::object(), {{"hurst", "0.3"}, {"t_list", "10,20"}});
  EXPECT_EQ(c.real("hurst"), 0.3);
  EXPECT_EQ(c.real_list("t_list"), (std::vector<double>{10.0, 20.0}));
  EXPECT_EQ(c.count("n_reps"), 500u);
  EXPECT_EQ(c.seed(), 20240607u);
  EXPECT_EQ(c.text("method"), "divergence");
  EXPECT_EQ(c.to_json()["command"], "mc");
}

TEST(Config, FlagsOverrideFileValues) {
  const json base = {{"hurst", 0.4}, {"seed", 5}};
  const auto c = resolve(Command::Simulate, base, {{"seed", "6"}});
  EXPECT_EQ(c.real("hurst"), 0.4);
  EXPECT_EQ(c.seed(), 6u);
}

TEST(Config, RejectsUnknownAndOutOfRange) {
  EXPECT_THROW(resolve(Command::Simulate, {{"n_reps", 4}}, {}), DomainError);
  EXPECT_THROW(resolve(Command::Simulate, {{"bogus", 1}}, {}), DomainError);
  EXPECT_THROW(resolve(Command::Simulate, {}, {{"hurst", "1.2"}}), DomainError);
  EXPECT_THROW(resolve(Command::Simulate, {}, {{"gamma.lambda", "-1"}}), DomainError);
  EXPECT_THROW(resolve(Command::Simulate, {}, {{"n_steps", "1.5"}}), DomainError);
  EXPECT_THROW(resolve(Command::Estimate, {}, {{"method", "backward"}}), DomainError);
  EXPECT_THROW(resolve(Command::Bridge, {}, {{"alpha", "0.4"}}), DomainError);
  EXPECT_THROW(resolve(Command::Bridge, {}, {{"g_exp", "0.2"}}), DomainError);
  EXPECT_THROW(resolve(Command::VerifyKernels, {}, {{"mode", "nonsense"}}), DomainError);
  EXPECT_THROW(resolve(Command::Simulate, {{"command", "mc"}}, {}), DomainError);
  EXPECT_THROW(resolve(Command::Mc, {}, {{"t_list", "10,,20"}}), DomainError);
}

TEST(Config, VerifyKernelsModeDefaults) {
  EXPECT_EQ(resolve(Command::VerifyKernels, {}, {{"mode", "contraction"}}).real_list("t_list"),
            (std::vector<double>{5.0, 10.0, 20.0}));
  EXPECT_EQ(resolve(Command::VerifyKernels, {}, {}).real_list("t_list"), (std::vector<double>{10.0, 20.0, 40.0}));
  EXPECT_EQ(resolve(Command::VerifyKernels, {}, {{"mode", "reduction"}}).real("t_end"), 10.0);
}

TEST(Cli, HelpAndVersion) {
  EXPECT_EQ(run({"--help"}).code, kOk);
  const auto v = run({"--version"});
  EXPECT_EQ(v.code, kOk);
  EXPECT_NE(v.out.find(io::kToolVersion), std::string::npos);
}

TEST(Cli, ValidationErrorsAreOneLine) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"simulate", "--hurst", "1.5"}, {"simulate", "--no-such-flag", "1"}, {"bridge", "--alpha", "0.5"}, {}}) {
    const auto r = run(args);
    EXPECT_EQ(r.code, kValidation);
    EXPECT_EQ(r.err.rfind("cfou: error kind=validation", 0), 0u) << r.err;
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
  }
}

TEST(Cli, MetadataHeader) {
  const auto r = run({"bridge", "--method", "closed", "--seed", "17"});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, std::string("# tool: cfou ") + io::kToolVersion);
  std::getline(is, line);
  ASSERT_EQ(line.rfind("# config: ", 0), 0u);
  const json cfg = json::parse(line.substr(10));
  EXPECT_EQ(cfg["command"], "bridge");
  EXPECT_EQ(cfg["seed"], 17);
  std::getline(is, line);
  EXPECT_EQ(line, "# seed: 17");
  EXPECT_NE(r.out.find("quantity,closed_form,quadrature,monte_carlo,rel_gap\n"), std::string::npos);
}

TEST(Cli, JsonFormatCarriesMetadata) {
  const auto r = run({"estimate", "--t-end", "5", "--n-steps", "512", "--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["tool"], std::string("cfou ") + io::kToolVersion);
  EXPECT_EQ(j["config"]["t_end"], 5.0);
  EXPECT_EQ(j["seed"], 20240607);
  EXPECT_TRUE(j.contains("timestamp"));
  EXPECT_EQ(j["report"]["gamma_hat"].size(), 2u);
}

TEST(Cli, IdenticalRunsGiveIdenticalBodies) {
  const std::vector<std::string> args{"simulate", "--t-end", "3", "--n-steps", "300", "--seed", "8"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, kOk);
  EXPECT_EQ(io::csv_body(a.out), io::csv_body(b.out));
  const auto c = run({"simulate", "--t-end", "3", "--n-steps", "300", "--seed", "9"});
  EXPECT_NE(io::csv_body(a.out), io::csv_body(c.out));
}

TEST(Cli, OutputFileRoundTrips) {
  const auto path = scratch("est.csv");
  const auto r = run({"estimate", "--t-end", "4", "--n-steps", "400", "--hurst", "0.3", "--out", path.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto again = run({"estimate", "--config", path.string(), "--out", scratch("est2.csv").string()});
  ASSERT_EQ(again.code, kOk) << again.err;
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  EXPECT_EQ(io::csv_body(slurp(path)), io::csv_body(slurp(scratch("est2.csv"))));
  const json cfg1 = load_config_file(path.string()), cfg2 = load_config_file(scratch("est2.csv").string());
  json a = cfg1, b = cfg2;
  a.erase("out_path");
  b.erase("out_path");
  EXPECT_EQ(a, b);
}

TEST(Cli, McWritesCsvAndJsonReport) {
  const auto path = scratch("mc.csv");
  const auto r = run({"mc", "--t-list", "5,10", "--n-steps", "256", "--n-reps", "8", "--out", path.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::ifstream in(scratch("mc.json"));
  ASSERT_TRUE(in.good());
  const json j = json::parse(in);
  EXPECT_EQ(j["report"]["mc"]["n_reps"], 8);
  EXPECT_EQ(j["report"]["mc"]["estimates"].size(), 8u);
  const auto again = run({"mc", "--config", scratch("mc.json").string(), "--out", scratch("mc2.csv").string()});
  ASSERT_EQ(again.code, kOk) << again.err;
}

TEST(Tool, ExitCodesAndEnvThreads) {
  const std::string t = tool();
  if (t.empty()) GTEST_SKIP() << "CFOU_TOOL not set";
  EXPECT_EQ(shell("'" + t + "' bridge --method closed 2>/dev/null").first, 0);
  EXPECT_EQ(shell("'" + t + "' simulate --hurst 2 2>/dev/null").first, 2);
  EXPECT_EQ(shell("CFOU_THREADS=zero '" + t + "' bridge --method closed 2>/dev/null").first, 2);
  EXPECT_EQ(shell("CFOU_THREADS=2 '" + t + "' bridge --method closed 2>/dev/null").first, 0);
  const auto err = shell("'" + t + "' simulate --hurst 2 2>&1 >/dev/null");
  EXPECT_EQ(err.second.rfind("cfou: error kind=validation", 0), 0u);
}

TEST(Tool, DivergenceProbeShowsGrowth) {
  const std::string t = tool();
  if (t.empty()) GTEST_SKIP() << "CFOU_TOOL not set";
  const auto [code, out] = shell("'" + t + "' verify-kernels --hurst 0.2 --mode divergence --n-list 64,128,256,512");
  ASSERT_EQ(code, 0);
  std::istringstream is(io::csv_body(out));
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "T,n,estimate_re,estimate_im,target,residual,target_im");
  std::vector<double> est;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tok;
    std::getline(ls, tok, ',');
    std::getline(ls, tok, ',');
    std::getline(ls, tok, ',');
    est.push_back(std::stod(tok));
  }
  ASSERT_EQ(est.size(), 4u);
  for (std::size_t i = 1; i < est.size(); ++i) EXPECT_GT(est[i], est[i - 1]);
}
