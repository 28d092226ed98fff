#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace steklov;
using namespace steklov::cli;
using nlohmann::json;

namespace {

std::string temp_prefix(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "steklov_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Outcome {
  int code;
  std::string log;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream log, err;
  const int code = main_entry(args, log, err);
  return {code, log.str(), err.str()};
}

}  // namespace

TEST_CASE("minimal config takes the defaults") {
  const RunConfig c = parse_config(json{{"command", "check-identities"}});
  CHECK(c.command == Command::check_identities);
  CHECK(c.mesh.kind == "sphere");
  CHECK(c.mesh.order == 12);
  CHECK(c.m == 1.0);
  CHECK(c.z == cplx(0.0, 0.0));
  CHECK(c.seed == 0);
}

TEST_CASE("config validation names the field") {
  auto message = [](const json& j) -> std::string {
    try {
      parse_config(j);
    } catch (const UsageError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message({{"command", "rate-resolvent"}, {"M", -5}}).find("`M`") != std::string::npos);
  CHECK(message({{"command", "check-identities"}, {"foo", 1}}).find("`foo`") != std::string::npos);
  CHECK(message({{"order", 8}}).find("`command`") != std::string::npos);
  CHECK(message({{"command", "nope"}}).find("`command`") != std::string::npos);
  CHECK(message({{"command", "assemble"}, {"order", 7}}).find("`order`") != std::string::npos);
  CHECK(message({{"command", "assemble"}, {"R", 0.0}}).find("`R`") != std::string::npos);
  CHECK(message({{"command", "assemble"}, {"z", {1.0}}}).find("`z`") != std::string::npos);
  CHECK(message({{"command", "assemble"}, {"mesh", "file"}}).find("`path`") != std::string::npos);
  CHECK(message({{"command", "eig-mit"}, {"mesh", "file"}, {"path", "x"}}).find("`mesh`") != std::string::npos);
  CHECK(message({{"command", "rate-resolvent"}, {"M", {10, 20}}}).find("`M`") != std::string::npos);
  CHECK(message({{"command", "rate-resolvent"}, {"M", {20, 10, 40}}}).find("`M`") != std::string::npos);
  CHECK(message({{"command", "eig-step"}, {"M", {10, 20}}}).find("`M`") != std::string::npos);
  CHECK(message({{"command", "eig-mit"}, {"window", {0.5, 1.02}}}).find("`window`") != std::string::npos);
  CHECK(message({{"command", "eig-mit"}, {"steps", 4}}).find("`steps`") != std::string::npos);
  CHECK(message({{"command", "parametrix"}, {"j", 3}}).find("`j`") != std::string::npos);
  CHECK(message({{"command", "parametrix"}, {"h", 1.5}}).find("`h`") != std::string::npos);
  CHECK(message({{"command", "assemble"}, {"operator", "dense"}}).find("`operator`") != std::string::npos);
  CHECK(message({{"command", "assemble"}, {"seed", -1}}).find("`seed`") != std::string::npos);
  CHECK(message({{"command", "assemble"}, {"order", "12"}}).find("`order`") != std::string::npos);
}

TEST_CASE("windows keep clear of the branch points") {
  const RunConfig mit = parse_config(json{{"command", "eig-mit"}, {"window", {1.0, 2.5}}});
  CHECK(mit.window.first == doctest::Approx(1.05));
  CHECK(mit.window.second == 2.5);
  const RunConfig step = parse_config(json{{"command", "eig-step"}, {"M", 1.0}, {"window", {1.2, 3.0}}});
  CHECK(step.window.first == 1.2);
  CHECK(step.window.second == doctest::Approx(1.95));
  CHECK(parse_config(json{{"command", "rate-eig"}}).M == std::vector<double>{50, 100, 200});
  CHECK(parse_config(json{{"command", "rate-resolvent"}}).M == std::vector<double>{10, 20, 40, 80});
}

TEST_CASE("flags mirror the JSON keys") {
  const RunConfig c = parse_args({"rate-resolvent", "--m", "1", "--M", "10,20,40,80", "--z", "0.4,0", "--order", "8",
                                  "--threads", "1", "--seed", "42"});
  CHECK(c.command == Command::rate_resolvent);
  CHECK(c.M == std::vector<double>{10, 20, 40, 80});
  CHECK(c.z == cplx(0.4, 0.0));
  CHECK(c.mesh.order == 8);
  CHECK(c.threads == 1);
  CHECK(c.seed == 42);

  const RunConfig s = parse_args({"ps-compare", "--l", "8", "--model", "semiclassical", "--width", "0.35"});
  CHECK(s.l == std::vector<int>{8});
  CHECK(s.model == SymbolModel::semiclassical);
  CHECK(s.width == doctest::Approx(0.35));

  const std::string path = temp_prefix("config.json");
  std::ofstream(path) << R"({"command": "eig-mit", "order": 8, "window": [2.5, 2.7]})";
  const RunConfig f = parse_args({"--config", path, "--order", "10"});
  CHECK(f.command == Command::eig_mit);
  CHECK(f.mesh.order == 10);
  CHECK(f.window.second == 2.7);

  CHECK_THROWS_AS(parse_args({"assemble", "--bogus", "1"}), UsageError);
  CHECK_THROWS_AS(parse_args({"assemble", "--order", "eight"}), UsageError);
  CHECK_THROWS_AS(parse_args({"assemble", "extra"}), UsageError);
  CHECK_THROWS_AS(parse_args({}), UsageError);
}

TEST_CASE("check lines and CSV numbers") {
  const Check ok = Check::at_most("residual", 1e-14, 1e-13);
  CHECK(ok.pass());
  CHECK(ok.line() == "PASS residual: measured 1e-14, tolerance <= 1e-13");
  const Check band = Check::within("slope", -0.5, -1.15, -0.85);
  CHECK_FALSE(band.pass());
  CHECK(band.line() == "FAIL slope: measured -0.5, tolerance in [-1.15, -0.85]");
  CHECK_FALSE(Check::at_most("nan", std::nan(""), 1.0).pass());
  CHECK(csv_number(0.1) == "0.10000000000000001");
  CHECK(std::stod(csv_number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(csv_number(std::nan("")) == "nan");
}

TEST_CASE("clifford identity suite") {
  for (const Check& c : clifford_checks(3, 200)) {
    CAPTURE(c.line());
    CHECK(c.pass());
  }
}

TEST_CASE("exit codes") {
  CHECK(invoke({"--help"}).code == 0);
  const Outcome bad = invoke({"rate-resolvent", "--M", "-5"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("`M`") != std::string::npos);
  CHECK(invoke({"check-identities", "--foo", "1"}).code == 2);
  CHECK(invoke({"assemble", "--mesh", "file", "--path", "/nonexistent/mesh.txt"}).code == 2);

  const std::string prefix = temp_prefix("run_");
  const Outcome ok = invoke({"parametrix", "--j", "2", "--samples", "10", "--out", prefix});
  CHECK(ok.code == 0);
  CHECK(ok.log.find("PASS A2 transport residual") != std::string::npos);
  CHECK(slurp(prefix + "parametrix.csv").rfind("name,residual,tolerance\n", 0) == 0);

  // default envelope width: the error falls like l^-1/2, short of the required order
  const Outcome fail = invoke({"ps-compare", "--l", "2,4,8", "--order", "8", "--out", prefix});
  CHECK(fail.code == 1);
  CHECK(fail.log.find("FAIL wavepacket error fitted order") != std::string::npos);

  // no step-potential eigenvalue exists at such weak coupling
  const Outcome breakdown = invoke({"rate-eig", "--order", "6", "--M", "0.5,1", "--out", prefix});
  CHECK(breakdown.code == 3);
}

TEST_CASE("identities run is deterministic") {
  const std::string a = temp_prefix("det_a_"), b = temp_prefix("det_b_");
  const Outcome first = invoke({"check-identities", "--order", "6", "--seed", "5", "--out", a});
  const Outcome second = invoke({"check-identities", "--order", "6", "--seed", "5", "--out", b, "--threads", "1"});
  CHECK(first.code == 0);
  CHECK(second.code == 0);
  const std::string csv = slurp(a + "identities.csv");
  CHECK(csv == slurp(b + "identities.csv"));
  CHECK(csv.find("Lambda^2 = 1/4 + C^2 + m S") != std::string::npos);
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("scan, eigen and rate CSV schemas") {
  const std::string prefix = temp_prefix("schema_");
  const Outcome mit = invoke({"eig-mit", "--order", "8", "--window", "2.5,2.7", "--steps", "12", "--out", prefix});
  CHECK(mit.code == 0);
  const std::string scan = slurp(prefix + "scan.csv");
  CHECK(scan.rfind("a,sigma_min\n", 0) == 0);
  CHECK(std::count(scan.begin(), scan.end(), '\n') == 13);
  const std::string eigen = slurp(prefix + "eigen.csv");
  CHECK(eigen.rfind("M,lambda,residual\n0,2.59657", 0) == 0);

  const Outcome rate = invoke({"rate-resolvent", "--order", "8", "--M", "10,20,40,80", "--z", "0.4,0", "--out", prefix});
  CHECK(rate.code == 0);
  const std::string csv = slurp(prefix + "rate.csv");
  CHECK(csv.rfind("M,residual\n10,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

  const Outcome dump = invoke({"assemble", "--order", "6", "--operator", "ps-interior", "--out", prefix});
  CHECK(dump.code == 0);
  CHECK(std::filesystem::file_size(prefix + "operator.sdop") > 0);
}
