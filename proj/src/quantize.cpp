#include "steklov/quantize.hpp"

#include <fftw3.h>

#include <memory>
#include <mutex>

#include "steklov/errors.hpp"

namespace steklov {
namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// FFTW planning is not thread-safe.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(plan_mutex());
    fftw_destroy_plan(p);
  }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

// In-place 2D transforms of the four spinor components, stored component-major.
void transform(std::vector<cplx>& data, int nx, int ny, int sign) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  Plan plan;
  {
    std::lock_guard lock(plan_mutex());
    const int dims[2] = {ny, nx};
    plan.reset(fftw_plan_many_dft(2, dims, 4, buf, nullptr, 1, nx * ny, buf, nullptr, 1, nx * ny, sign,
                                  FFTW_ESTIMATE));
  }
  fftw_execute(plan.get());
}

}  // namespace

PeriodicGrid flat_quantize(const SymbolField& symbol, double h, const PeriodicGrid& field) {
  if (!power_of_two(field.nx) || !power_of_two(field.ny)) {
    throw ArgumentError("flat_quantize needs power-of-two grid sizes, got " + std::to_string(field.nx) + " x " +
                        std::to_string(field.ny));
  }
  const std::size_t n = static_cast<std::size_t>(field.nx) * static_cast<std::size_t>(field.ny);
  if (field.values.size() != n) throw ArgumentError("flat_quantize: grid values do not match nx * ny");

  std::vector<cplx> spec(4 * n);
  for (std::size_t p = 0; p < n; ++p) {
    for (int a = 0; a < 4; ++a) spec[a * n + p] = field.values[p][a];
  }
  transform(spec, field.nx, field.ny, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(n);

  PeriodicGrid out = field;
  if (!symbol.depends_on_y) {
    const Vec2 origin = Vec2::Zero();
    for (int iy = 0; iy < field.ny; ++iy) {
      for (int ix = 0; ix < field.nx; ++ix) {
        const std::size_t p = static_cast<std::size_t>(iy) * field.nx + ix;
        const Vec2 k(field.frequency(ix, field.nx), field.frequency(iy, field.ny));
        Spinor c;
        for (int a = 0; a < 4; ++a) c[a] = spec[a * n + p];
        c = symbol.eval(origin, h * k) * c;
        for (int a = 0; a < 4; ++a) spec[a * n + p] = c[a];
      }
    }
    transform(spec, field.nx, field.ny, FFTW_BACKWARD);
    for (std::size_t p = 0; p < n; ++p) {
      for (int a = 0; a < 4; ++a) out.values[p][a] = spec[a * n + p] * scale;
    }
    return out;
  }

  // direct summation: u(y) = sum_k a(y, h k) u_hat(k) e^{i k.y} / n
  std::vector<Spinor> coeff(n);
  std::vector<Vec2> freq(n);
  for (int iy = 0; iy < field.ny; ++iy) {
    for (int ix = 0; ix < field.nx; ++ix) {
      const std::size_t p = static_cast<std::size_t>(iy) * field.nx + ix;
      for (int a = 0; a < 4; ++a) coeff[p][a] = spec[a * n + p];
      freq[p] = Vec2(field.frequency(ix, field.nx), field.frequency(iy, field.ny));
    }
  }
  for (int iy = 0; iy < field.ny; ++iy) {
    for (int ix = 0; ix < field.nx; ++ix) {
      const Vec2 y = field.point(ix, iy);
      Spinor acc = Spinor::Zero();
      for (std::size_t q = 0; q < n; ++q) {
        acc += symbol.eval(y, h * freq[q]) * coeff[q] * std::exp(I_unit * freq[q].dot(y));
      }
      out.values[static_cast<std::size_t>(iy) * field.nx + ix] = acc * scale;
    }
  }
  return out;
}

}  // namespace steklov
