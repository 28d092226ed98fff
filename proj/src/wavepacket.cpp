#include "steklov/wavepacket.hpp"

#include <cmath>
#include <string>

#include "steklov/errors.hpp"
#include "steklov/symbols.hpp"

namespace steklov {
namespace {

struct Packet {
  Eigen::VectorXcd field;
  std::size_t center;
  Vec3 wave;  // l d / R
  double width;
};

void check_mesh(const SurfaceMesh& mesh, int l) {
  if (!mesh.sphere) throw CapabilityError("wavepacket_compare needs a sphere mesh");
  if (l < 1) throw ArgumentError("wavepacket_compare needs l >= 1");
  if (mesh.sphere->order < 2 * l) {
    throw ResolutionError("wavepacket at l = " + std::to_string(l) + " needs sphere order >= " +
                          std::to_string(2 * l) + ", got " + std::to_string(mesh.sphere->order));
  }
}

Packet make_packet(const SurfaceMesh& mesh, const WavepacketSpec& spec) {
  const double radius = mesh.sphere->radius;
  Packet pk;
  pk.center = 0;
  double best = -2.0;
  const Vec3 target = spec.center.normalized();
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const double c = mesh.normals[i].dot(target);
    if (c > best) {
      best = c;
      pk.center = i;
    }
  }
  const Vec3 n = mesh.normals[pk.center];
  const Vec3 dir = spec.direction.value_or(Vec3(0, 0, 1).cross(n));
  const Vec3 tangential = dir - dir.dot(n) * n;
  if (!(tangential.norm() > 1e-12 * dir.norm())) throw DomainError("wavepacket direction has no tangential part");
  pk.wave = spec.l * tangential.normalized() / radius;
  pk.width = spec.width.value_or(radius / std::sqrt(static_cast<double>(spec.l)));
  if (!(pk.width > 0.0)) throw ArgumentError("wavepacket width must be positive");

  Spinor v(cplx(1.0, 0.0), cplx(0.0, 0.5), cplx(0.3, 0.0), cplx(-0.2, 0.1));
  pk.field.resize(4 * static_cast<Eigen::Index>(mesh.size()));
  const Vec3 c = mesh.nodes[pk.center];
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const Vec3& x = mesh.nodes[i];
    const double env = std::exp(-(x - c).squaredNorm() / (2.0 * pk.width * pk.width));
    pk.field.segment<4>(4 * static_cast<Eigen::Index>(i)) =
        env * std::exp(I_unit * pk.wave.dot(x - c)) * (projector(mesh.normals[i], Side::minus) * v);
  }
  return pk;
}

WavepacketResult compare(const SurfaceMesh& mesh, const Packet& pk, const Eigen::VectorXcd& out, SymbolModel model,
                         double mass) {
  WavepacketResult r;
  r.frequency = pk.wave.norm();
  const Vec3 c = mesh.nodes[pk.center];
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    if ((mesh.nodes[i] - c).norm() > 3.0 * pk.width) continue;
    ++r.support;
    const Vec3& n = mesh.normals[i];
    const Vec3 xi = pk.wave - pk.wave.dot(n) * n;
    const SpinorMatrix a = model == SymbolModel::classical ? ps_classical_symbol(n, xi)
                                                            : ps_semiclassical_symbol(n, Vec3(xi / mass));
    const Eigen::Index k = 4 * static_cast<Eigen::Index>(i);
    const Spinor pred = a * pk.field.segment<4>(k);
    num += mesh.weights[i] * (out.segment<4>(k) - pred).squaredNorm();
    den += mesh.weights[i] * pred.squaredNorm();
  }
  r.error = std::sqrt(num / den);
  return r;
}

}  // namespace

WavepacketResult wavepacket_compare(const BoundaryOperator& op, const WavepacketSpec& spec) {
  if (!op.mesh) throw ArgumentError("wavepacket_compare: operator has no mesh");
  if (op.label != OperatorLabel::ps_interior) {
    throw CapabilityError("wavepacket_compare supports the interior PS operator, got " + to_string(op.label));
  }
  check_mesh(*op.mesh, spec.l);
  const Packet pk = make_packet(*op.mesh, spec);
  return compare(*op.mesh, pk, op.matrix * pk.field, spec.model, op.mass);
}

WavepacketResult wavepacket_compare(const ChannelOperator& op, double mass, const MeshRef& mesh,
                                    const WavepacketSpec& spec) {
  check_mesh(*mesh, spec.l);
  const Packet pk = make_packet(*mesh, spec);
  return compare(*mesh, pk, apply_channels(op, *mesh, pk.field), spec.model, mass);
}

}  // namespace steklov
