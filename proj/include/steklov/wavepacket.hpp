#pragma once

#include <optional>

#include "steklov/bem.hpp"
#include "steklov/sphere_spectral.hpp"

namespace steklov {

enum class SymbolModel { classical, semiclassical };

struct WavepacketResult {
  double error = 0.0;         // relative L2 discrepancy over the packet support
  std::size_t support = 0;    // nodes within three envelope widths of the center
  double frequency = 0.0;     // |xi| of the packet
};

// Gaussian packet of width R / sqrt(l) around the mesh node nearest `center`, oscillating as
// e^{i l d.x / R} along the tangential part of `direction` (default: the azimuthal direction),
// projected onto P-. The operator output is compared with the PS principal symbol applied at each
// node with the local normal and the local tangential frequency. The semiclassical model uses
// h = 1 / mass.
struct WavepacketSpec {
  int l = 8;
  Vec3 center = Vec3(1.0, 0.0, 0.0);
  std::optional<Vec3> direction;
  SymbolModel model = SymbolModel::classical;
  std::optional<double> width;  // absolute envelope width, replacing R / sqrt(l)
};

// Dense interior PS operator on a sphere mesh of order >= 2l.
WavepacketResult wavepacket_compare(const BoundaryOperator& op, const WavepacketSpec& spec);
// Exact channel operator (interior PS at the given mass) on a sphere mesh of order >= 2l.
WavepacketResult wavepacket_compare(const ChannelOperator& op, double mass, const MeshRef& mesh,
                                    const WavepacketSpec& spec);

}  // namespace steklov
