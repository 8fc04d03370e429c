#include "mfd/frame.hpp"

#include <stdexcept>

namespace mfd {

namespace {

inline bool bit(uint64_t v, uint32_t w) { return (v >> w) & 1; }

bool frame_controls_fire(const PauliFrame& f, const std::vector<Control>& cs) {
  for (const Control& c : cs)
    if (bit(f.x, c.wire) != c.positive) return false;
  return true;
}

}  // namespace

void frame_apply(PauliFrame& f, const Gate& g) {
  const uint64_t am = 1ull << g.a, bm = 1ull << g.b;
  switch (g.kind) {
    case GateKind::H: {
      const bool xa = f.x & am, za = f.z & am;
      f.x = (f.x & ~am) | (za ? am : 0);
      f.z = (f.z & ~am) | (xa ? am : 0);
      return;
    }
    case GateKind::S:
    case GateKind::Sdg:
      if (f.x & am) f.z ^= am;
      return;
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
      return;  // Pauli gates shift phases only
    case GateKind::T:
    case GateKind::Tdg:
      if (f.x & am)
        throw std::runtime_error("frame: X component hits a T gate on wire " + std::to_string(g.a));
      return;
    case GateKind::CX:
      if (f.x & am) f.x ^= bm;
      if (f.z & bm) f.z ^= am;
      return;
    case GateKind::CZ:
      if (f.x & am) f.z ^= bm;
      if (f.x & bm) f.z ^= am;
      return;
    case GateKind::Swap: {
      const bool xa = f.x & am, xb = f.x & bm, za = f.z & am, zb = f.z & bm;
      f.x = (f.x & ~(am | bm)) | (xb ? am : 0) | (xa ? bm : 0);
      f.z = (f.z & ~(am | bm)) | (zb ? am : 0) | (za ? bm : 0);
      return;
    }
    case GateKind::MCX:
      if (frame_controls_fire(f, g.controls)) f.x ^= 1ull << g.targets[0];
      return;
    case GateKind::MCZ:
      if (frame_controls_fire(f, g.controls)) f.z ^= 1ull << g.targets[0];
      return;
    case GateKind::CReset:
      if (frame_controls_fire(f, g.controls)) {
        for (uint32_t t : g.targets) {
          f.x &= ~(1ull << t);
          f.z &= ~(1ull << t);
        }
      }
      return;
  }
}

bool frame_run_circuit(const Circuit& decoder, const Circuit& cfn, PauliFrame f) {
  for (const Gate& g : decoder.gates) frame_apply(f, g);
  for (const Gate& g : cfn.gates) frame_apply(f, g);
  const uint32_t message = decoder.message.value_or(0);
  return bit(f.z, message);
}

bool frame_run(const Circuit& decoder, PauliFrame f, const FlipTable& table) {
  for (const Gate& g : decoder.gates) {
    if (!g.is_clifford() && g.kind != GateKind::T && g.kind != GateKind::Tdg)
      throw std::invalid_argument("frame_run: decoder must be unitary gates only");
    frame_apply(f, g);
  }
  const uint32_t message = decoder.message.value_or(0);
  const uint16_t syndrome = static_cast<uint16_t>(f.x & ~(1ull << message));
  if (table.z_fires(syndrome)) f.z ^= 1ull << message;
  if (table.x_fires(syndrome)) f.x ^= 1ull << message;
  return bit(f.z, message);
}

}  // namespace mfd
