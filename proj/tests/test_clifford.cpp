#include "doctest.h"

#include <random>

#include "steklov/clifford.hpp"
#include "steklov/errors.hpp"

using namespace steklov;

namespace {

double dist(const SpinorMatrix& a, const SpinorMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

Vec3 random_vec(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng), g(rng)};
}

}  // namespace

TEST_CASE("alpha matrices square to one and anticommute") {
  const SpinorMatrix a1 = dirac_alpha(1), a2 = dirac_alpha(2), a3 = dirac_alpha(3);
  CHECK(dist(a1 * a1, identity4()) == 0.0);
  CHECK(dist(a1 * a2 + a2 * a1, SpinorMatrix::Zero()) == 0.0);
  CHECK(dist(a3.adjoint(), a3) == 0.0);
  CHECK_THROWS_AS(dirac_alpha(0), ArgumentError);
  CHECK_THROWS_AS(dirac_alpha(4), ArgumentError);
}

TEST_CASE("beta and gamma5") {
  const SpinorMatrix b = dirac_beta(), g5 = gamma5(), a1 = dirac_alpha(1);
  CHECK(dist(b * b, identity4()) == 0.0);
  CHECK(dist(b * a1 + a1 * b, SpinorMatrix::Zero()) == 0.0);
  CHECK(std::abs(b.trace()) == 0.0);
  CHECK(dist(g5, -I_unit * dirac_alpha(1) * dirac_alpha(2) * dirac_alpha(3)) < 1e-15);
  CHECK(dist(g5 * g5, identity4()) == 0.0);
  for (int j = 1; j <= 3; ++j) CHECK(dist(g5 * dirac_alpha(j), dirac_alpha(j) * g5) == 0.0);
  CHECK(dist(g5 * b, -b * g5) == 0.0);
}

TEST_CASE("alpha_dot examples") {
  CHECK(dist(alpha_dot(Vec3(1, 0, 0)), dirac_alpha(1)) == 0.0);
  const Vec3 v = Vec3(1, 1, 0) / std::sqrt(2.0);
  CHECK(dist(alpha_dot(v) * alpha_dot(v), identity4()) < 1e-15);
  CHECK(dist(alpha_dot(Vec3(Vec3::Zero())), SpinorMatrix::Zero()) == 0.0);
}

TEST_CASE("spin identities") {
  const Vec3 e1(1, 0, 0), e2(0, 1, 0), e3(0, 0, 1);
  CHECK(dist(I_unit * alpha_dot(e1) * alpha_dot(e2), spin_dot(e3)) < 1e-15);
  const SpinorMatrix anti = spin_dot(e1) * alpha_dot(e1) + alpha_dot(e1) * spin_dot(e1);
  CHECK(dist(anti, -2.0 * gamma5()) < 1e-15);
  CHECK(dist(spin_dot(e2) * dirac_beta(), dirac_beta() * spin_dot(e2)) == 0.0);

  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const Vec3 x = random_vec(rng), y = random_vec(rng);
    const SpinorMatrix lhs = I_unit * alpha_dot(x) * alpha_dot(y);
    const SpinorMatrix rhs = I_unit * x.dot(y) * identity4() + spin_dot(x.cross(y));
    worst = std::max(worst, dist(lhs, rhs));
    const SpinorMatrix ac = spin_dot(x) * alpha_dot(y) + alpha_dot(y) * spin_dot(x);
    worst = std::max(worst, dist(ac, -2.0 * x.dot(y) * gamma5()));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("projector algebra") {
  const Vec3 e3(0, 0, 1);
  const SpinorMatrix pp = projector(e3, Side::plus), pm = projector(e3, Side::minus);
  CHECK(dist(pp + pm, identity4()) == 0.0);
  CHECK(dist(pp * pp, pp) < 1e-15);
  CHECK(dist(pm * pm, pm) < 1e-15);

  SpinorMatrix expected = SpinorMatrix::Zero();
  expected.block<2, 2>(0, 0).setIdentity();
  expected.block<2, 2>(2, 2).setIdentity();
  expected(0, 2) = -I_unit;
  expected(1, 3) = I_unit;
  expected(2, 0) = I_unit;
  expected(3, 1) = -I_unit;
  CHECK(dist(pp, 0.5 * expected) < 1e-15);

  const SpinorMatrix ian = -I_unit * alpha_dot(e3);
  CHECK(dist(pp * ian, ian * pm) < 1e-15);
  CHECK(dist(ian * pm, -dirac_beta() * pm) < 1e-15);

  CHECK_THROWS_AS(projector(Vec3(0, 0, 1.0 + 1e-9), Side::plus), ArgumentError);

  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const Vec3 n = random_vec(rng).normalized();
    const SpinorMatrix p = projector(n, Side::plus), m = projector(n, Side::minus);
    const SpinorMatrix an = alpha_dot(n), b = dirac_beta();
    worst = std::max({worst, dist(p * p, p), dist(m * m, m), dist(p.adjoint(), p),
                      dist(p * m, SpinorMatrix::Zero()), dist(p * an, an * m), dist(m * an, an * p),
                      dist(b * m, p * b), dist(b * p, m * b)});
    // tau orthogonal to n
    Vec3 tau = random_vec(rng);
    tau -= tau.dot(n) * n;
    const double mass = 0.5 + std::abs(random_vec(rng).x());
    const SpinorMatrix q = spin_dot(tau) - I_unit * mass * b * an;
    worst = std::max(worst, dist(q * q, (tau.squaredNorm() + mass * mass) * identity4()));
    worst = std::max(worst, dist(p * spin_dot(tau), spin_dot(tau) * m));
  }
  CHECK(worst <= 1e-13);
}
