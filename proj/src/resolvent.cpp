#include "steklov/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "steklov/errors.hpp"
#include "steklov/parallel.hpp"
#include "steklov/quadrature.hpp"
#include "steklov/spectral.hpp"
#include "steklov/sphere_assembly.hpp"

namespace steklov {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFirstAngularPanel = 1e-3;
constexpr int kAngularPanelPoints = 6;

// Gauss panels on [lo, hi], geometrically refined toward the graded ends.
void graded_panels(double lo, double hi, double grade_lo, double grade_hi, int per_panel, Rule1D& out) {
  std::vector<double> edges{lo};
  const double mid = 0.5 * (lo + hi);
  std::vector<double> upper;
  if (grade_lo > 0.0) {
    for (double w = grade_lo; lo + w < mid; w *= 3.0) edges.push_back(lo + w);
  }
  if (grade_hi > 0.0) {
    for (double w = grade_hi; hi - w > mid; w *= 3.0) upper.push_back(hi - w);
  }
  edges.push_back(mid);
  edges.insert(edges.end(), upper.rbegin(), upper.rend());
  edges.push_back(hi);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i + 1] <= edges[i]) continue;
    const Rule1D g = gauss_legendre(per_panel, edges[i], edges[i + 1]);
    out.nodes.insert(out.nodes.end(), g.nodes.begin(), g.nodes.end());
    out.weights.insert(out.weights.end(), g.weights.begin(), g.weights.end());
  }
}

// Rule in c = cos(angle to the x axis), graded where the ray chord through the support spheres
// changes quickly: tangency to a sphere inside the target radius, or c = 0 for a sphere just outside.
Rule1D angular_rule(double r, const RadialSupport& support, int per_panel) {
  std::vector<std::pair<double, double>> marks;  // (c, first panel width)
  for (double s : {support.inner, support.outer}) {
    if (s <= 0.0 || r == 0.0) continue;
    if (r > s) {
      marks.emplace_back(-std::sqrt(1.0 - (s * s) / (r * r)), kFirstAngularPanel);
    } else if ((s - r) / s < 0.5) {
      marks.emplace_back(0.0, std::max(kFirstAngularPanel, (s - r) / s));
    }
  }
  std::sort(marks.begin(), marks.end());
  Rule1D rule;
  double lo = -1.0, grade_lo = 0.0;
  for (const auto& [c, w] : marks) {
    if (c <= lo) {
      grade_lo = std::max(grade_lo, w);
      continue;
    }
    graded_panels(lo, c, grade_lo, w, per_panel, rule);
    lo = c;
    grade_lo = w;
  }
  graded_panels(lo, 1.0, grade_lo, 0.0, per_panel, rule);
  return rule;
}

// Sub-intervals of rho >= 0 where inner <= |x + rho w| <= outer, with c = w . x / |x|.
std::vector<std::pair<double, double>> ray_segments(double r, double c, const RadialSupport& support) {
  auto roots = [&](double s, double& lo, double& hi) {
    const double disc = r * r * c * c - r * r + s * s;
    if (disc <= 0.0) return false;
    const double q = std::sqrt(disc);
    lo = -r * c - q;
    hi = -r * c + q;
    return true;
  };
  std::vector<std::pair<double, double>> out;
  double b_lo, b_hi;
  if (!roots(support.outer, b_lo, b_hi)) return out;
  b_lo = std::max(b_lo, 0.0);
  if (b_hi <= b_lo) return out;
  double a_lo, a_hi;
  if (support.inner > 0.0 && roots(support.inner, a_lo, a_hi) && a_hi > b_lo && a_lo < b_hi) {
    if (a_lo > b_lo) out.emplace_back(b_lo, a_lo);
    if (a_hi < b_hi) out.emplace_back(std::max(a_hi, b_lo), b_hi);
  } else {
    out.emplace_back(b_lo, b_hi);
  }
  return out;
}

Spinor apply_beta(const Spinor& f) { return Spinor(f[0], f[1], -f[2], -f[3]); }

Spinor apply_alpha(const Vec3& w, const Spinor& f) {
  const cplx wp(w.x(), w.y()), wm(w.x(), -w.y());
  const cplx s0 = w.z() * f[2] + wm * f[3], s1 = wp * f[2] - w.z() * f[3];
  const cplx t0 = w.z() * f[0] + wm * f[1], t1 = wp * f[0] - w.z() * f[1];
  return Spinor(s0, s1, t0, t1);
}

bool inside_ball(const MeshRef& mesh, const Vec3& x) { return x.norm() < mesh->sphere->radius; }

void require_ball(const ResolventProblem& pr) {
  if (!pr.mesh || pr.mesh->kind != MeshKind::sphere || !pr.mesh->sphere) {
    throw CapabilityError("volume resolvents are implemented for sphere meshes (the ball) only");
  }
  if (!pr.f) throw ArgumentError("resolvent needs a right-hand side");
  if (!(pr.m > 0.0)) throw ArgumentError("resolvent needs m > 0");
  if (!(pr.support.outer > pr.support.inner) || pr.support.inner < 0.0) throw ArgumentError("bad support radii");
}

std::vector<Spinor> free_values(const ResolventProblem& pr, const KernelParams& p, const std::vector<Vec3>& points) {
  std::vector<Spinor> out(points.size());
  parallel_for(static_cast<int>(points.size()),
               [&](int i) { out[i] = free_resolvent_at(points[i], pr.f, pr.support, p, pr.angular_order); });
  return out;
}

Eigen::VectorXcd stack(const std::vector<Spinor>& v) {
  Eigen::VectorXcd out(4 * static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out.segment<4>(4 * static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

Eigen::VectorXcd project(const SurfaceMesh& mesh, Side side, const Eigen::VectorXcd& v) {
  return nodewise_apply(mesh, [&](std::size_t i) { return projector(mesh.normals[i], side); }, v);
}

// u0 on the trace nodes and Lambda^-1 t u0 for the MIT problem of the given side.
struct MitParts {
  KernelParams p;
  Eigen::MatrixXcd lambda_inv;
  Eigen::VectorXcd density;  // Lambda^-1 t u0
  Eigen::VectorXcd trace;    // trace of the MIT solution
};

MitParts mit_parts(const ResolventProblem& pr, double mass, bool exterior) {
  MitParts parts;
  parts.p = make_params(mass, pr.z);
  const SurfaceMesh& s = *pr.mesh;
  parts.lambda_inv = invert_dense(assemble_lambda(pr.mesh, parts.p)).op.matrix;
  const Eigen::VectorXcd t0 = stack(free_values(pr, parts.p, s.nodes));
  parts.density = parts.lambda_inv * t0;
  // interior trace of Phi is Lambda - beta P-, exterior trace is Lambda - beta P+
  const Side side = exterior ? Side::plus : Side::minus;
  const SpinorMatrix beta = dirac_beta();
  parts.trace = nodewise_apply(s, [&](std::size_t i) -> SpinorMatrix { return beta * projector(s.normals[i], side); },
                               parts.density);
  return parts;
}

std::vector<Spinor> subtract_potential(const ResolventProblem& pr, const MitParts& parts,
                                       const std::vector<Vec3>& points, std::vector<Spinor> values) {
  const std::vector<Spinor> phi = potential_eval_many(pr.mesh, parts.p, {parts.density, pr.mesh}, points);
  for (std::size_t i = 0; i < points.size(); ++i) values[i] -= phi[i];
  return values;
}

}  // namespace

VolumeGrid ball_grid(double radius, int radial, int angular_order) {
  if (!(radius > 0.0) || radial < 1) throw ArgumentError("ball_grid needs R > 0 and radial >= 1");
  const SurfaceMesh dirs = sphere_mesh(1.0, angular_order);
  const Rule1D rr = gauss_legendre(radial, 0.0, radius);
  VolumeGrid g;
  for (int k = 0; k < radial; ++k) {
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      g.points.push_back(rr.nodes[k] * dirs.nodes[j]);
      g.weights.push_back(rr.weights[k] * rr.nodes[k] * rr.nodes[k] * dirs.weights[j]);
    }
  }
  return g;
}

VolumeGrid shell_grid(double inner, double outer, int radial, int angular_order, double layer) {
  if (!(inner > 0.0 && outer > inner) || radial < 1) throw ArgumentError("shell_grid needs 0 < inner < outer");
  const SurfaceMesh dirs = sphere_mesh(1.0, angular_order);
  Rule1D rr;
  if (layer > 0.0 && layer < outer - inner) {
    graded_panels(inner, outer, layer, 0.0, radial, rr);
  } else {
    rr = gauss_legendre(radial, inner, outer);
  }
  VolumeGrid g;
  for (std::size_t k = 0; k < rr.nodes.size(); ++k) {
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      g.points.push_back(rr.nodes[k] * dirs.nodes[j]);
      g.weights.push_back(rr.weights[k] * rr.nodes[k] * rr.nodes[k] * dirs.weights[j]);
    }
  }
  return g;
}

double l2_norm(const VolumeGrid& grid, const std::vector<Spinor>& values) {
  if (values.size() != grid.points.size()) throw ArgumentError("values do not match the volume grid");
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += grid.weights[i] * values[i].squaredNorm();
  return std::sqrt(s);
}

Spinor free_resolvent_at(const Vec3& x, const SpinorField& f, const RadialSupport& support, const KernelParams& p,
                         int angular_order) {
  const double r = x.norm();
  const Vec3 axis = r > 0.0 ? Vec3(x / r) : Vec3::UnitZ();
  const Vec3 e1 = (std::abs(axis.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX()).cross(axis).normalized();
  const Vec3 e2 = axis.cross(e1);
  const Rule1D crule = angular_rule(r, support, kAngularPanelPoints);
  const int nphi = 4 * angular_order;
  const double decay = std::max(0.0, p.k.imag());
  const double length = sphere::kernel_length(p);
  Spinor sum = Spinor::Zero();
  for (std::size_t a = 0; a < crule.nodes.size(); ++a) {
    const double c = crule.nodes[a];
    const double sn = std::sqrt(std::max(0.0, 1.0 - c * c));
    const auto segments = ray_segments(r, c, support);
    if (segments.empty()) continue;
    std::vector<Rule1D> radial;
    for (const auto& [s0, s1] : segments) {
      if (decay * s0 > 40.0) continue;
      const double len = s1 - s0;
      Rule1D g = graded_rule(std::min(0.5 * length, len), 0.5 * len, len, 6, 12);
      for (double& t : g.nodes) t += s0;
      radial.push_back(std::move(g));
    }
    for (int b = 0; b < nphi; ++b) {
      const double phi = 2.0 * kPi * b / nphi;
      const Vec3 w = c * axis + sn * (std::cos(phi) * e1 + std::sin(phi) * e2);
      const double wdir = crule.weights[a] * 2.0 * kPi / nphi;
      Spinor ray = Spinor::Zero();
      for (const Rule1D& g : radial) {
        for (std::size_t q = 0; q < g.nodes.size(); ++q) {
          const double rho = g.nodes[q];
          const Spinor fy = f(x + rho * w);
          const cplx e = std::exp(I_unit * p.k * rho) / (4.0 * kPi);
          // phi_z(-rho w) rho^2 = e (z + m beta) rho - e (1 - i k rho) i alpha.w
          ray += g.weights[q] * (e * rho * (p.z * fy + p.m * apply_beta(fy)) -
                                 e * (1.0 - I_unit * p.k * rho) * I_unit * apply_alpha(w, fy));
        }
      }
      sum += wdir * ray;
    }
  }
  return sum;
}

ResolventResult resolvent_apply(const ResolventProblem& pr, const std::vector<Vec3>& points) {
  require_ball(pr);
  const double radius = pr.mesh->sphere->radius;
  ResolventResult res;
  switch (pr.kind) {
    case ResolventKind::free: {
      const KernelParams p = make_params(pr.m, pr.z);
      res.values = free_values(pr, p, points);
      res.trace = {stack(free_values(pr, p, pr.mesh->nodes)), pr.mesh};
      return res;
    }
    case ResolventKind::mit:
    case ResolventKind::exterior_mit: {
      const bool exterior = pr.kind == ResolventKind::exterior_mit;
      if (exterior ? pr.support.inner < radius : pr.support.outer > radius) {
        throw ArgumentError(exterior ? "exterior_mit needs f supported outside the ball"
                                     : "mit needs f supported inside the ball");
      }
      for (const Vec3& x : points) {
        if (inside_ball(pr.mesh, x) == exterior) throw ArgumentError("evaluation point on the wrong side of the surface");
      }
      const MitParts parts = mit_parts(pr, pr.m, exterior);
      res.values = subtract_potential(pr, parts, points, free_values(pr, parts.p, points));
      res.trace = {parts.trace, pr.mesh};
      return res;
    }
    case ResolventKind::full: {
      if (!(pr.M > 0.0)) throw ArgumentError("full resolvent needs M > 0");
      if (pr.support.outer > radius) throw ArgumentError("full resolvent needs f supported inside the ball");
      const MitParts parts = mit_parts(pr, pr.m, false);
      const SurfaceMesh& s = *pr.mesh;
      const Inverse psi_inv = invert_dense(assemble_psi(pr.mesh, pr.m, pr.M, pr.z));
      const Eigen::VectorXcd phi = psi_inv.op.matrix * project(s, Side::plus, parts.trace);
      const Eigen::VectorXcd phi_minus = project(s, Side::minus, phi);
      const Eigen::VectorXcd phi_plus = phi - phi_minus;
      const KernelParams pe = make_params(pr.m + pr.M, pr.z);
      const Eigen::VectorXcd dens_int = parts.lambda_inv * phi_minus;
      const Eigen::VectorXcd dens_ext = invert_dense(assemble_lambda(pr.mesh, pe)).op.matrix * phi_plus;
      std::vector<Vec3> in_pts, out_pts;
      std::vector<std::size_t> in_idx, out_idx;
      for (std::size_t i = 0; i < points.size(); ++i) {
        (inside_ball(pr.mesh, points[i]) ? in_pts : out_pts).push_back(points[i]);
        (inside_ball(pr.mesh, points[i]) ? in_idx : out_idx).push_back(i);
      }
      res.values.assign(points.size(), Spinor::Zero());
      if (!in_pts.empty()) {
        const auto mit = subtract_potential(pr, parts, in_pts, free_values(pr, parts.p, in_pts));
        const auto corr = potential_eval_many(pr.mesh, parts.p, {dens_int, pr.mesh}, in_pts);
        for (std::size_t k = 0; k < in_pts.size(); ++k) res.values[in_idx[k]] = mit[k] + corr[k];
      }
      if (!out_pts.empty()) {
        const auto ext = potential_eval_many(pr.mesh, pe, {dens_ext, pr.mesh}, out_pts);
        for (std::size_t k = 0; k < out_pts.size(); ++k) res.values[out_idx[k]] = ext[k];
      }
      // interior trace: MIT trace plus the E^i correction, whose trace is phi- - beta P- Lambda^-1 phi-
      const SpinorMatrix beta = dirac_beta();
      const Eigen::VectorXcd corr_trace =
          phi_minus - nodewise_apply(s, [&](std::size_t i) -> SpinorMatrix { return beta * projector(s.normals[i], Side::minus); },
                                     dens_int);
      res.trace = {parts.trace + corr_trace, pr.mesh};
      return res;
    }
  }
  throw ArgumentError("unknown resolvent kind");
}

std::vector<std::pair<double, double>> resolvent_rate(const ResolventProblem& pr, const VolumeGrid& grid,
                                                      const std::vector<double>& couplings) {
  require_ball(pr);
  if (pr.support.outer > pr.mesh->sphere->radius) throw ArgumentError("rate study needs f supported inside the ball");
  for (const Vec3& x : grid.points) {
    if (!inside_ball(pr.mesh, x)) throw ArgumentError("rate study grid must lie inside the ball");
  }
  const MitParts parts = mit_parts(pr, pr.m, false);
  const SurfaceMesh& s = *pr.mesh;
  const Eigen::VectorXcd h_plus = project(s, Side::plus, parts.trace);
  std::vector<std::pair<double, double>> out;
  for (double M : couplings) {
    if (!(M > 0.0)) throw ArgumentError("couplings must be positive");
    const Inverse psi_inv = invert_dense(assemble_psi(pr.mesh, pr.m, M, pr.z));
    const Eigen::VectorXcd dens = parts.lambda_inv * project(s, Side::minus, psi_inv.op.matrix * h_plus);
    const auto corr = potential_eval_many(pr.mesh, parts.p, {dens, pr.mesh}, grid.points);
    out.emplace_back(M, l2_norm(grid, corr));
  }
  return out;
}

}  // namespace steklov
