#include "cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "steklov/bem.hpp"
#include "steklov/errors.hpp"
#include "steklov/harmonics.hpp"
#include "steklov/parallel.hpp"
#include "steklov/parametrix.hpp"
#include "steklov/resolvent.hpp"
#include "steklov/spectral.hpp"
#include "steklov/sphere_spectral.hpp"

namespace steklov::cli {
namespace {

using nlohmann::json;

const std::map<std::string, Command> kCommands = {
    {"check-identities", Command::check_identities}, {"assemble", Command::assemble},
    {"ps-compare", Command::ps_compare},             {"eig-mit", Command::eig_mit},
    {"eig-step", Command::eig_step},                 {"rate-resolvent", Command::rate_resolvent},
    {"rate-eig", Command::rate_eig},                 {"parametrix", Command::parametrix},
};

enum class Kind { string, number, list, pair };

const std::map<std::string, Kind> kKeys = {
    {"command", Kind::string}, {"mesh", Kind::string},   {"R", Kind::number},      {"order", Kind::number},
    {"path", Kind::string},    {"m", Kind::number},      {"M", Kind::list},        {"z", Kind::pair},
    {"window", Kind::pair},    {"steps", Kind::number},  {"kappa", Kind::number},  {"l", Kind::list},
    {"model", Kind::string},   {"width", Kind::number},  {"operator", Kind::string}, {"j", Kind::number},
    {"h", Kind::number},       {"chart", Kind::string},  {"samples", Kind::number}, {"out", Kind::string},
    {"seed", Kind::number},    {"threads", Kind::number},
};

// Gap kept between scan windows and the branch points m, m + M.
constexpr double kBranchGap = 0.05;
// Candidate minima below this sigma_min are refined; refined roots above kRootResidual are discarded.
constexpr double kMinimumThreshold = 0.5;
constexpr double kRootResidual = 1e-3;

const char* const kUsage = R"(usage: steklov <command> [--key value ...] [--config file.json]

commands: check-identities assemble ps-compare eig-mit eig-step rate-resolvent rate-eig parametrix

keys (flags and JSON share names; lists and pairs are comma separated on flags, arrays in JSON):
  --mesh sphere|file  --R radius  --order n  --path mesh.txt
  --m mass  --M couplings  --z re,im  --window lo,hi  --steps n  --kappa k
  --l degrees  --model classical|semiclassical  --width w
  --operator cauchy|lambda|single-layer|ps-interior|ps-exterior
  --j order  --h step  --chart flat|cubic  --samples n
  --out prefix  --seed n  --threads n (fallback STEKLOV_THREADS)

exit codes: 0 all checks pass, 1 a check failed, 2 usage error, 3 numerical breakdown
)";

[[noreturn]] void usage(const std::string& field, const std::string& what) {
  throw UsageError("`" + field + "`: " + what);
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) usage(key, "expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& key) {
  const double d = number(v, key);
  if (d != std::floor(d) || std::abs(d) > 1e9) usage(key, "expected an integer");
  return static_cast<int>(d);
}

std::vector<double> numbers(const json& v, const std::string& key) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array() || v.empty()) usage(key, "expected a number or a non-empty array of numbers");
  std::vector<double> out;
  for (const json& e : v) out.push_back(number(e, key));
  return out;
}

std::pair<double, double> pair_of(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 2) usage(key, "expected two numbers");
  return {number(v[0], key), number(v[1], key)};
}

std::string text(const json& v, const std::string& key) {
  if (!v.is_string()) usage(key, "expected a string");
  return v.get<std::string>();
}

double parse_number(const std::string& s, const std::string& key) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) usage(key, "cannot parse '" + s + "' as a number");
  return v;
}

// Flag value to the JSON form of its key.
json flag_value(const std::string& key, const std::string& raw) {
  const Kind kind = kKeys.at(key);
  if (kind == Kind::string) return raw;
  if (kind == Kind::number) return parse_number(raw, key);
  json arr = json::array();
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) arr.push_back(parse_number(item, key));
  if (kind == Kind::list && arr.size() == 1) return arr[0];
  return arr;
}

void trim_window(RunConfig& c) {
  auto& [lo, hi] = c.window;
  if (!(lo < hi)) usage("window", "needs lo < hi");
  lo = std::max(lo, c.m + kBranchGap);
  if (c.command == Command::eig_step) hi = std::min(hi, c.m + c.M.front() - kBranchGap);
  if (!(lo < hi)) usage("window", "empty after excluding 0.05 around m and m + M");
}

void validate(RunConfig& c) {
  if (c.mesh.kind != "sphere" && c.mesh.kind != "file") usage("mesh", "expected sphere or file");
  if (c.mesh.kind == "file" && c.mesh.path.empty()) usage("path", "required for a file mesh");
  if (!(c.mesh.radius > 0.0)) usage("R", "must be positive");
  if (c.mesh.order < 4 || c.mesh.order % 2 != 0) usage("order", "must be even and >= 4");
  if (!(c.m > 0.0)) usage("m", "must be positive");
  for (double v : c.M) {
    if (!(v > 0.0)) usage("M", "must be positive");
  }
  if (!std::is_sorted(c.M.begin(), c.M.end()) || std::adjacent_find(c.M.begin(), c.M.end()) != c.M.end()) {
    usage("M", "must be strictly increasing");
  }
  if (c.steps < 8) usage("steps", "must be >= 8");
  if (c.kappa == 0) usage("kappa", "must be nonzero");
  for (int l : c.l) {
    if (l < 1) usage("l", "must be >= 1");
  }
  if (c.width && !(*c.width > 0.0)) usage("width", "must be positive");
  static const std::array<std::string, 5> ops = {"cauchy", "lambda", "single-layer", "ps-interior", "ps-exterior"};
  if (std::find(ops.begin(), ops.end(), c.op) == ops.end()) {
    usage("operator", "expected cauchy, lambda, single-layer, ps-interior or ps-exterior");
  }
  if (c.j < 0 || c.j > kMaxParametrixOrder) usage("j", "must be in 0..2");
  if (!(c.h > 0.0 && c.h <= 1.0)) usage("h", "must satisfy 0 < h <= 1");
  if (c.chart != "flat" && c.chart != "cubic") usage("chart", "expected flat or cubic");
  if (c.samples < 1) usage("samples", "must be >= 1");
  if (c.threads < 0) usage("threads", "must be >= 0");

  const bool sphere_only = c.command == Command::ps_compare || c.command == Command::eig_mit ||
                           c.command == Command::eig_step || c.command == Command::rate_resolvent ||
                           c.command == Command::rate_eig;
  if (sphere_only && c.mesh.kind != "sphere") usage("mesh", to_string(c.command) + " needs a sphere mesh");

  switch (c.command) {
    case Command::rate_resolvent:
      if (c.M.empty()) c.M = {10, 20, 40, 80};
      if (c.M.size() < 3) usage("M", "a rate fit needs at least 3 couplings");
      break;
    case Command::rate_eig:
      if (c.M.empty()) c.M = {50, 100, 200};
      if (c.M.size() < 2) usage("M", "needs at least 2 couplings");
      break;
    case Command::eig_step:
      if (c.M.empty()) c.M = {200};
      if (c.M.size() != 1) usage("M", "eig-step takes a single coupling");
      trim_window(c);
      break;
    case Command::eig_mit:
      trim_window(c);
      break;
    case Command::ps_compare:
      if (c.model == SymbolModel::classical && std::abs(c.z.real()) == c.m) usage("z", "must differ from +-m");
      break;
    default:
      break;
  }
}

// ---- reporting ----

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

class Report {
 public:
  explicit Report(std::ostream& log) : log_(log) {}
  void add(const Check& c) {
    log_ << c.line() << '\n';
    result_.checks.push_back(c);
  }
  void info(const std::string& s) {
    log_ << "INFO " << s << '\n';
    result_.info.push_back(s);
  }
  std::ostream& log() { return log_; }
  StudyResult take() { return std::move(result_); }

 private:
  std::ostream& log_;
  StudyResult result_;
};

class Csv {
 public:
  Csv(const std::string& path, const std::string& header) : path_(path), file_(path, std::ios::binary) {
    if (!file_) usage("out", "cannot write " + path);
    file_ << header << '\n';
  }
  void row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
      if (!first) file_ << ',';
      file_ << csv_number(v);
      first = false;
    }
    file_ << '\n';
  }
  void named(const std::string& name, double residual, double tolerance) {
    file_ << name << ',' << csv_number(residual) << ',' << csv_number(tolerance) << '\n';
  }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream file_;
};

// ---- helpers ----

MeshRef load_mesh(const MeshSpec& spec) {
  if (spec.kind == "file") return share(mesh_from_file(spec.path));
  return share(sphere_mesh(spec.radius, spec.order));
}

Vec3 gaussian_vec(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng), g(rng)};
}

Spinor gaussian_spinor(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Spinor v;
  for (int a = 0; a < 4; ++a) v[a] = cplx(g(rng), g(rng));
  return v;
}

double max_abs(const SpinorMatrix& a) { return a.cwiseAbs().maxCoeff(); }

Eigen::VectorXcd smooth_field(const SurfaceMesh& mesh, int degree, std::mt19937_64& rng) {
  const SphereTransform sht(mesh);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(sh_count(sht.degree()), 4);
  for (int i = 0; i < sh_count(degree); ++i) {
    for (int a = 0; a < 4; ++a) c(i, a) = cplx(g(rng), g(rng));
  }
  return sht.synthesize_spinor(c);
}

// Distinct radial-oracle eigenvalues in the window over angular indices |kappa| <= kmax.
std::vector<double> oracle_in_window(double radius, double m, std::optional<double> M, std::pair<double, double> w,
                                     int kmax) {
  std::vector<double> out;
  for (int k = 1; k <= kmax; ++k) {
    for (int kappa : {-k, k}) {
      for (double e : radial_oracle(radius, m, M, kappa, 6)) {
        if (e > w.first && e < w.second) out.push_back(e);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }), out.end());
  return out;
}

std::vector<EigenResult> scan_roots(const SpectralScan& scan) {
  std::vector<EigenResult> roots;
  for (const auto& bracket : scan_minima(scan, kMinimumThreshold)) {
    const EigenResult e = refine_eigenvalue(scan, bracket);
    if (e.residual <= kRootResidual) roots.push_back(e);
  }
  return roots;
}

double farthest_match(const std::vector<double>& from, const std::vector<double>& to) {
  double worst = 0.0;
  for (double a : from) {
    double best = std::numeric_limits<double>::infinity();
    for (double b : to) best = std::min(best, std::abs(a - b));
    worst = std::max(worst, best);
  }
  return worst;
}

void write_scan(const SpectralScan& scan, const std::string& path) {
  Csv csv(path, "a,sigma_min");
  for (const ScanPoint& p : scan.points) csv.row({p.a, p.sigma_min});
}

void oracle_comparison(Report& report, const std::vector<EigenResult>& roots, const std::vector<double>& oracle) {
  std::vector<double> values;
  for (const EigenResult& r : roots) values.push_back(r.value);
  const double delta = std::max(farthest_match(values, oracle), farthest_match(oracle, values));
  report.info(std::to_string(values.size()) + " refined roots, " + std::to_string(oracle.size()) +
              " oracle eigenvalues in the window");
  report.add(Check::at_most("refined roots against the radial oracle, max |delta|", delta, 5e-3));
  report.add(Check::within("root count minus oracle count",
                           static_cast<double>(values.size()) - static_cast<double>(oracle.size()), 0.0, 0.0));
}

// A local scan of `half_width` around `guess` refined to the single root nearest the guess.
EigenResult local_root(const SpectralScan& scan, double guess) {
  const auto roots = scan_roots(scan);
  if (roots.empty()) {
    throw BracketError("no root near " + format_value(guess) + " in [" + format_value(scan.points.front().a) + ", " +
                       format_value(scan.points.back().a) + "]");
  }
  return *std::min_element(roots.begin(), roots.end(), [guess](const EigenResult& a, const EigenResult& b) {
    return std::abs(a.value - guess) < std::abs(b.value - guess);
  });
}

// ---- commands ----

void check_identities(const RunConfig& c, Report& report) {
  std::ostream& log = report.log();
  Csv csv(c.out + "identities.csv", "name,residual,tolerance");
  auto record = [&](const Check& k) {
    report.add(k);
    csv.named(k.name, k.measured, k.hi);
  };
  for (const Check& k : clifford_checks(c.seed)) record(k);

  const MeshRef mesh = load_mesh(c.mesh);
  double normal_defect = 0.0;
  for (const Vec3& n : mesh->normals) normal_defect = std::max(normal_defect, std::abs(n.norm() - 1.0));
  record(Check::at_most("mesh normals are unit", normal_defect, 1e-10));
  if (mesh->sphere) {
    const double area = 4.0 * std::numbers::pi * c.mesh.radius * c.mesh.radius;
    double sum = 0.0;
    for (double w : mesh->weights) sum += w;
    record(Check::at_most("sphere quadrature area, relative", std::abs(sum - area) / area, 1e-8));
  }

  const KernelParams p = make_params(c.m, c.z);
  const BoundaryOperator cauchy = assemble_cauchy(mesh, p);
  const BoundaryOperator lambda = assemble_lambda(mesh, p);
  const Eigen::MatrixXcd half_beta =
      nodewise_matrix(*mesh, [](std::size_t) -> SpinorMatrix { return 0.5 * dirac_beta(); });
  record(Check::at_most("Lambda - C - beta/2, max abs", (lambda.matrix - cauchy.matrix - half_beta).cwiseAbs().maxCoeff(),
                        1e-13));

  if (mesh->sphere) {
    std::mt19937_64 rng(c.seed);
    const int degree = std::min(4, c.mesh.order - 2);
    const Eigen::MatrixXcd s = assemble_single_layer(mesh, p).matrix;
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const Eigen::VectorXcd f = smooth_field(*mesh, degree, rng);
      const Eigen::VectorXcd rhs = 0.25 * f + cauchy.matrix * (cauchy.matrix * f) + c.m * (s * f);
      worst = std::max(worst, l2_norm(*mesh, lambda.matrix * (lambda.matrix * f) - rhs) / l2_norm(*mesh, f));
    }
    record(Check::at_most("Lambda^2 = 1/4 + C^2 + m S on 20 smooth fields, relative", worst, 1e-2));

    const Eigen::MatrixXcd an =
        nodewise_matrix(*mesh, [&](std::size_t i) { return alpha_dot(mesh->normals[i]); }) * cauchy.matrix;
    worst = 0.0;
    for (int k = 0; k < 5; ++k) {
      const Eigen::VectorXcd f = smooth_field(*mesh, degree, rng);
      worst = std::max(worst, l2_norm(*mesh, an * (an * f) + 0.25 * f) / l2_norm(*mesh, f));
    }
    record(Check::at_most("(alpha.n C)^2 + 1/4 on resolved fields, relative", worst, 1e-8));
  }
  log << "wrote " << csv.path() << '\n';
}

void assemble(const RunConfig& c, Report& report) {
  std::ostream& log = report.log();
  const MeshRef mesh = load_mesh(c.mesh);
  const KernelParams p = make_params(c.m, c.z);
  BoundaryOperator op;
  if (c.op == "cauchy") op = assemble_cauchy(mesh, p);
  else if (c.op == "lambda") op = assemble_lambda(mesh, p);
  else if (c.op == "single-layer") op = assemble_single_layer(mesh, p);
  else if (c.op == "ps-interior") op = ps_interior(mesh, p);
  else op = ps_exterior(mesh, c.m, c.z);
  const std::string path = c.out + "operator.sdop";
  write_operator(op, path);
  log << "assembled " << to_string(op.label) << " of dimension " << op.dim() << ", wrote " << path << '\n';
}

void ps_compare(const RunConfig& c, Report& report) {
  std::ostream& log = report.log();
  Csv csv(c.out + "wavepacket.csv", "l,error");
  std::vector<std::pair<double, double>> pts;
  for (int l : c.l) {
    const int order = std::max(c.mesh.order, 2 * l);
    const MeshRef mesh = share(sphere_mesh(c.mesh.radius, order));
    WavepacketSpec spec;
    spec.l = l;
    spec.model = c.model;
    spec.width = c.width;
    const ChannelOperator op = ps_interior_channels(c.mesh.radius, order - 1, c.m, c.z.real());
    const WavepacketResult r = wavepacket_compare(op, c.m, mesh, spec);
    csv.row({static_cast<double>(l), r.error});
    report.info("l = " + std::to_string(l) + ": error " + format_value(r.error) + " over " +
                std::to_string(r.support) + " nodes");
    pts.push_back({static_cast<double>(l), r.error});
  }
  if (pts.size() >= 3) report.add(Check::at_most("wavepacket error fitted order in l", rate_fit(pts).slope, -0.8));
  log << "wrote " << csv.path() << '\n';
}

void eig_mit(const RunConfig& c, Report& report) {
  std::ostream& log = report.log();
  const MeshRef mesh = load_mesh(c.mesh);
  const SpectralScan scan = mit_scan(mesh, c.m, c.window.first, c.window.second, c.steps);
  write_scan(scan, c.out + "scan.csv");
  const auto roots = scan_roots(scan);
  Csv csv(c.out + "eigen.csv", "M,lambda,residual");
  for (const EigenResult& r : roots) csv.row({0.0, r.value, r.residual});
  oracle_comparison(report, roots, oracle_in_window(c.mesh.radius, c.m, std::nullopt, c.window, c.mesh.order / 2));
  log << "wrote " << c.out << "scan.csv, " << csv.path() << '\n';
}

void eig_step(const RunConfig& c, Report& report) {
  std::ostream& log = report.log();
  const MeshRef mesh = load_mesh(c.mesh);
  const double M = c.M.front();
  const SpectralScan scan = bs_scan(mesh, c.m, M, c.window.first, c.window.second, c.steps);
  write_scan(scan, c.out + "scan.csv");
  const auto roots = scan_roots(scan);
  Csv csv(c.out + "eigen.csv", "M,lambda,residual");
  for (const EigenResult& r : roots) csv.row({M, r.value, r.residual});
  oracle_comparison(report, roots, oracle_in_window(c.mesh.radius, c.m, M, c.window, c.mesh.order / 2));
  log << "wrote " << c.out << "scan.csv, " << csv.path() << '\n';
}

void rate_resolvent(const RunConfig& c, Report& report) {
  std::ostream& log = report.log();
  const MeshRef mesh = load_mesh(c.mesh);
  std::mt19937_64 rng(c.seed);
  const Spinor v = gaussian_spinor(rng);
  const Vec3 wave = gaussian_vec(rng);
  const double radius = c.mesh.radius;

  ResolventProblem pr;
  pr.kind = ResolventKind::full;
  pr.mesh = mesh;
  pr.m = c.m;
  pr.z = c.z;
  pr.f = [v, wave, radius](const Vec3& x) -> Spinor {
    const double s = 1.0 - x.squaredNorm() / (radius * radius);
    if (s <= 0.0) return Spinor::Zero();
    return v * (s * s * s) * std::exp(I_unit * wave.dot(x));
  };
  pr.support = {0.0, radius};
  pr.angular_order = 6;
  const VolumeGrid grid = ball_grid(radius, 6, 4);

  const auto pts = resolvent_rate(pr, grid, c.M);
  Csv csv(c.out + "rate.csv", "M,residual");
  for (const auto& [M, r] : pts) csv.row({M, r});
  report.add(Check::within("||(R_M - R_MIT) f|| fitted slope in M", rate_fit(pts).slope, -1.15, -0.85));
  log << "wrote " << csv.path() << '\n';
}

void rate_eig(const RunConfig& c, Report& report) {
  std::ostream& log = report.log();
  const MeshRef mesh = load_mesh(c.mesh);
  const double radius = c.mesh.radius;
  constexpr double half_width = 0.01;

  const auto mit_guess = radial_oracle(radius, c.m, std::nullopt, c.kappa, 1);
  if (mit_guess.empty()) throw BracketError("no MIT eigenvalue for kappa = " + std::to_string(c.kappa));
  const EigenResult mit =
      local_root(mit_scan(mesh, c.m, mit_guess[0] - half_width, mit_guess[0] + half_width, 8), mit_guess[0]);
  report.info("MIT eigenvalue " + csv_number(mit.value) + ", residual " + format_value(mit.residual));

  Csv csv(c.out + "eigen.csv", "M,lambda,residual");
  csv.row({0.0, mit.value, mit.residual});
  std::vector<double> shifts;
  for (double M : c.M) {
    const auto guess = radial_oracle(radius, c.m, M, c.kappa, 1);
    if (guess.empty()) throw BracketError("no step-potential eigenvalue at M = " + format_value(M));
    const EigenResult e = local_root(bs_scan(mesh, c.m, M, guess[0] - half_width, guess[0] + half_width, 8), guess[0]);
    csv.row({M, e.value, e.residual});
    shifts.push_back(M * (e.value - mit.value));
    report.info("M = " + format_value(M) + ": lambda " + csv_number(e.value) + ", M (lambda - lambda_MIT) " +
                format_value(shifts.back()));
  }

  double spread = 0.0;
  for (double s : shifts) spread = std::max(spread, std::abs(s - shifts.back()) / std::abs(shifts.back()));
  report.add(Check::at_most("M (lambda_M - lambda_MIT) relative spread across M", spread, 0.1));

  const MkjResult mkj = mkj_matrix(mesh, mit_eigentraces(mesh, c.m, c.kappa, mit.value));
  double mu = mkj.mu[0];
  for (Eigen::Index i = 0; i < mkj.mu.size(); ++i) {
    if (std::abs(mkj.mu[i] - shifts.back()) < std::abs(mu - shifts.back())) mu = mkj.mu[i];
  }
  report.info("m_kj eigenvalue nearest the largest-M shift: " + format_value(mu));
  report.add(Check::at_most("M (lambda_M - lambda_MIT) against m_kj eigenvalue, relative",
                            std::abs(shifts.back() - mu) / std::abs(mu), 0.1));
  log << "wrote " << csv.path() << '\n';
}

void parametrix(const RunConfig& c, Report& report) {
  std::ostream& log = report.log();
  Csv csv(c.out + "parametrix.csv", "name,residual,tolerance");
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  Chart chart = flat_chart();
  if (c.chart == "cubic") {
    std::array<double, 10> coeff{};
    for (double& v : coeff) v = u(rng);
    chart = cubic_chart(coeff);
  }

  std::vector<ParametrixTerm> terms;
  for (int j = 0; j <= c.j; ++j) terms.push_back(parametrix_term(j, chart, c.h, c.z));
  std::vector<double> transport(terms.size(), 0.0), boundary(terms.size(), 0.0);
  for (int s = 0; s < c.samples; ++s) {
    const Vec2 y(0.3 * g(rng), 0.3 * g(rng)), xi(2 * g(rng), 2 * g(rng));
    const double tau = 0.2 * std::abs(g(rng));
    const SpinorMatrix pm = l0_eigendecomp(chart, y, xi, c.z).P_minus;
    for (std::size_t j = 0; j < terms.size(); ++j) {
      const double r = j == 0 ? transport_residual(terms[0], y, xi, tau)
                              : transport_residual(terms[j], terms[j - 1], y, xi, tau);
      transport[j] = std::max(transport[j], r);
      const SpinorMatrix trace = pm * terms[j].eval(y, xi, 0.0) - (j == 0 ? pm : SpinorMatrix::Zero());
      boundary[j] = std::max(boundary[j], max_abs(trace));
    }
  }
  // A2 differentiates A1 numerically in y, which limits its residual
  const std::array<double, 3> transport_tol = {1e-12, 1e-8, 1e-5};
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const std::string tag = "A" + std::to_string(j);
    const Check t = Check::at_most(tag + " transport residual, max abs", transport[j], transport_tol[j]);
    const Check b = Check::at_most(tag + " boundary condition on the P- range, max abs", boundary[j], 1e-13);
    for (const Check& k : {t, b}) {
      report.add(k);
      csv.named(k.name, k.measured, k.hi);
    }
  }
  log << "wrote " << csv.path() << '\n';
}

}  // namespace

std::string to_string(Command command) {
  for (const auto& [name, cmd] : kCommands) {
    if (cmd == command) return name;
  }
  return "unknown";
}

RunConfig parse_config(const json& config) {
  if (!config.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, value] : config.items()) {
    if (!kKeys.contains(key)) usage(key, "unknown key");
  }
  if (!config.contains("command")) usage("command", "required");
  RunConfig c;
  const std::string name = text(config["command"], "command");
  if (!kCommands.contains(name)) usage("command", "unknown command '" + name + "'");
  c.command = kCommands.at(name);

  for (const auto& [key, v] : config.items()) {
    if (key == "mesh") c.mesh.kind = text(v, key);
    else if (key == "R") c.mesh.radius = number(v, key);
    else if (key == "order") c.mesh.order = integer(v, key);
    else if (key == "path") c.mesh.path = text(v, key);
    else if (key == "m") c.m = number(v, key);
    else if (key == "M") c.M = numbers(v, key);
    else if (key == "z") {
      const auto [re, im] = pair_of(v, key);
      c.z = cplx(re, im);
    } else if (key == "window") c.window = pair_of(v, key);
    else if (key == "steps") c.steps = integer(v, key);
    else if (key == "kappa") c.kappa = integer(v, key);
    else if (key == "l") {
      c.l.clear();
      for (double d : numbers(v, key)) c.l.push_back(integer(d, key));
    } else if (key == "model") {
      const std::string s = text(v, key);
      if (s == "classical") c.model = SymbolModel::classical;
      else if (s == "semiclassical") c.model = SymbolModel::semiclassical;
      else usage(key, "expected classical or semiclassical");
    } else if (key == "width") c.width = number(v, key);
    else if (key == "operator") c.op = text(v, key);
    else if (key == "j") c.j = integer(v, key);
    else if (key == "h") c.h = number(v, key);
    else if (key == "chart") c.chart = text(v, key);
    else if (key == "samples") c.samples = integer(v, key);
    else if (key == "out") c.out = text(v, key);
    else if (key == "seed") {
      const double d = number(v, key);
      if (d < 0.0 || d != std::floor(d)) usage(key, "must be a non-negative integer");
      c.seed = v.is_number_unsigned() ? v.get<std::uint64_t>() : static_cast<std::uint64_t>(d);
    } else if (key == "threads") c.threads = integer(v, key);
  }
  validate(c);
  return c;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app("steklov", "steklov");
  app.set_help_flag();
  std::string config_path;
  std::vector<std::string> positional;
  app.add_option("--config", config_path);
  app.add_option("command", positional);
  std::map<std::string, std::string> flags;
  for (const auto& [key, kind] : kKeys) {
    if (key != "command") app.add_option("--" + key, flags[key]);
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  json config = json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) usage("config", "cannot read " + config_path);
    try {
      config = json::parse(in);
    } catch (const json::parse_error& e) {
      usage("config", e.what());
    }
    if (!config.is_object()) usage("config", "must be a JSON object");
  }
  if (positional.size() > 1) throw UsageError("unexpected argument '" + positional[1] + "'");
  if (!positional.empty()) config["command"] = positional[0];
  for (const auto& [key, raw] : flags) {
    if (app.count("--" + key) > 0) config[key] = flag_value(key, raw);
  }
  return parse_config(config);
}

Check Check::at_most(std::string name, double measured, double tolerance) {
  return {std::move(name), measured, -std::numeric_limits<double>::infinity(), tolerance};
}

Check Check::within(std::string name, double measured, double lo, double hi) {
  return {std::move(name), measured, lo, hi};
}

std::string Check::line() const {
  std::string tol = std::isinf(lo) ? "<= " + format_value(hi)
                    : lo == hi     ? "== " + format_value(hi)
                                   : "in [" + format_value(lo) + ", " + format_value(hi) + "]";
  return std::string(pass() ? "PASS " : "FAIL ") + name + ": measured " + format_value(measured) + ", tolerance " + tol;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<Check> clifford_checks(std::uint64_t seed, int samples) {
  double anti = 0.0;
  const SpinorMatrix b = dirac_beta();
  for (int j = 1; j <= 3; ++j) {
    for (int k = 1; k <= 3; ++k) {
      const SpinorMatrix a = dirac_alpha(j) * dirac_alpha(k) + dirac_alpha(k) * dirac_alpha(j);
      anti = std::max(anti, max_abs(a - (j == k ? 2.0 : 0.0) * identity4()));
    }
    anti = std::max(anti, max_abs(dirac_alpha(j) * b + b * dirac_alpha(j)));
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mass(0.1, 10.0);
  double product = 0.0, spin_alpha = 0.0, proj = 0.0, tangential = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vec3 x = gaussian_vec(rng), y = gaussian_vec(rng);
    product = std::max(product, max_abs(I_unit * alpha_dot(x) * alpha_dot(y) - I_unit * x.dot(y) * identity4() -
                                        spin_dot(x.cross(y))));
    spin_alpha = std::max(spin_alpha, max_abs(spin_dot(x) * alpha_dot(y) + alpha_dot(y) * spin_dot(x) +
                                              2.0 * x.dot(y) * gamma5()));

    const Vec3 n = gaussian_vec(rng).normalized();
    const SpinorMatrix p = projector(n, Side::plus), q = projector(n, Side::minus), an = alpha_dot(n);
    proj = std::max({proj, max_abs(p * p - p), max_abs(q * q - q), max_abs(p.adjoint() - p), max_abs(p * q),
                     max_abs(p + q - identity4()), max_abs(p * an - an * q), max_abs(q * an - an * p),
                     max_abs(b * q - p * b), max_abs(b * p - q * b)});

    Vec3 tau = gaussian_vec(rng);
    tau -= tau.dot(n) * n;
    const double mm = mass(rng);
    const SpinorMatrix st = spin_dot(tau);
    const SpinorMatrix k = st - I_unit * mm * b * an;
    const double scale = tau.squaredNorm() + mm * mm;
    tangential = std::max({tangential, max_abs(k * k - scale * identity4()) / scale,
                           max_abs(p * st - st * q), max_abs(q * st - st * p)});
  }
  return {
      Check::at_most("Dirac anticommutation relations, max abs", anti, 1e-13),
      Check::at_most("i(alpha.X)(alpha.Y) = i X.Y + S.(X^Y), max abs", product, 1e-13),
      Check::at_most("{S.X, alpha.Y} = -2 (X.Y) gamma5, max abs", spin_alpha, 1e-13),
      Check::at_most("projector algebra, max abs", proj, 1e-13),
      Check::at_most("(S.tau - i m beta alpha.n)^2 = |tau|^2 + m^2 (relative) and P+- S.tau = S.tau P-+", tangential,
                     1e-13),
  };
}

bool StudyResult::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

StudyResult run_study(const RunConfig& config, std::ostream& log) {
  if (config.threads > 0) set_thread_count(config.threads);
  Report report(log);
  switch (config.command) {
    case Command::check_identities: check_identities(config, report); break;
    case Command::assemble: assemble(config, report); break;
    case Command::ps_compare: ps_compare(config, report); break;
    case Command::eig_mit: eig_mit(config, report); break;
    case Command::eig_step: eig_step(config, report); break;
    case Command::rate_resolvent: rate_resolvent(config, report); break;
    case Command::rate_eig: rate_eig(config, report); break;
    case Command::parametrix: parametrix(config, report); break;
  }
  return report.take();
}

int run(const RunConfig& config, std::ostream& log) { return run_study(config, log).all_pass() ? 0 : 1; }

int main_entry(const std::vector<std::string>& args, std::ostream& log, std::ostream& err) {
  if (std::find_if(args.begin(), args.end(), [](const std::string& a) { return a == "--help" || a == "-h"; }) !=
      args.end()) {
    log << kUsage;
    return 0;
  }
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  try {
    return run(config, log);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ArgumentError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const LoadError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const CapabilityError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ResolutionError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const InversionError& e) {
    err << "numerical breakdown: " << e.what() << " (sigma_min " << e.sigma_min << ")\n";
    return 3;
  } catch (const std::exception& e) {
    err << "numerical breakdown: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace steklov::cli
