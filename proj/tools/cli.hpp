#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "steklov/wavepacket.hpp"

namespace steklov::cli {

enum class Command { check_identities, assemble, ps_compare, eig_mit, eig_step, rate_resolvent, rate_eig, parametrix };

std::string to_string(Command command);

struct MeshSpec {
  std::string kind = "sphere";  // sphere or file
  double radius = 1.0;
  int order = 12;
  std::string path;
};

struct RunConfig {
  Command command = Command::check_identities;
  MeshSpec mesh;
  double m = 1.0;
  std::vector<double> M;  // couplings, ascending
  cplx z = 0.0;
  std::pair<double, double> window{1.0, 2.5};  // trimmed 0.05 away from m and m + M
  int steps = 24;
  int kappa = -1;
  std::vector<int> l{8, 16, 32};
  SymbolModel model = SymbolModel::classical;
  std::optional<double> width;
  std::string op = "lambda";
  int j = 1;
  double h = 0.5;
  std::string chart = "cubic";
  int samples = 100;
  std::string out;  // prefix of the artifact paths
  std::uint64_t seed = 0;
  int threads = 0;  // 0: STEKLOV_THREADS or hardware concurrency
};

// Invalid configuration; exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Validates a JSON config. Unknown keys, missing `command` and out-of-range values throw UsageError
// naming the field.
RunConfig parse_config(const nlohmann::json& config);
// argv[1] is the command unless --config supplies it; flags override keys of the config file.
RunConfig parse_args(const std::vector<std::string>& args);

// One measured invariant against its tolerance band.
struct Check {
  std::string name;
  double measured = 0.0;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = 0.0;

  static Check at_most(std::string name, double measured, double tolerance);
  static Check within(std::string name, double measured, double lo, double hi);
  bool pass() const { return measured >= lo && measured <= hi; }
  // "PASS name: measured ..., tolerance ..."
  std::string line() const;
};

// 17 significant digits, "nan" for NaN.
std::string csv_number(double v);

// Clifford algebra identities over `samples` random vectors.
std::vector<Check> clifford_checks(std::uint64_t seed, int samples = 1000);

struct StudyResult {
  std::vector<Check> checks;
  std::vector<std::string> info;
  bool all_pass() const;
};

// Runs the command, printing check and INFO lines to `log` as they are produced.
StudyResult run_study(const RunConfig& config, std::ostream& log);

// Exit code 0 when every check passes, 1 otherwise. Writes CSV artifacts under config.out.
int run(const RunConfig& config, std::ostream& log);

// Full command line handling with the 0/1/2/3 exit contract.
int main_entry(const std::vector<std::string>& args, std::ostream& log, std::ostream& err);

}  // namespace steklov::cli
