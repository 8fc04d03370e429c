#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mfd/circuit.hpp"
#include "mfd/pauli.hpp"

namespace mfd {

/* CSS stabilizer code in qubit numbering (qubit q carries the nonzero 4-bit
 * label q+1). X generators are the four label-bit indicator sets; Z
 * generators repeat those four and add the six pairwise intersections. */
struct StabilizerCode {
  uint32_t n = 0;
  uint32_t k = 0;
  uint32_t d = 0;
  std::vector<PauliString> x_generators;
  std::vector<PauliString> z_generators;
  PauliString logical_x;
  PauliString logical_z;
};

StabilizerCode build_code();

/* Minimum weight (up to w_max) over Pauli errors that commute with every
 * generator yet lie outside the generator span, 0 when none exists. */
uint32_t verify_distance(const StabilizerCode& code, uint32_t w_max);

/* Encoder and inverse in wire numbering. Wire 0 is the message wire; wires
 * 1..4 carry the X-generator pivots; the rest follow in qubit order. */
struct EncoderBundle {
  Circuit encoder;
  Circuit decoder;
  Circuit simplified_decoder;
  std::array<uint32_t, 15> wire_to_qubit{};
  std::array<uint32_t, 15> qubit_to_wire{};
};

/* Staircase synthesis from the generator matrices. Throws unless the result
 * conjugates wire-0 Paulis onto the logicals (Z picks up a minus sign by
 * construction), sends every other wire's Z into the positively-signed
 * stabilizer group, and those images generate the full group. Fills
 * simplified_decoder via simplify_decoder. */
EncoderBundle synthesize_encoder(const StabilizerCode& code);

/* Greedy last-to-first CX deletion to a fixpoint. A deletion survives only
 * if the full flip table still derives cleanly with the same flip set. Ends
 * with a statevector guard: noiseless decode must leave every syndrome wire
 * at |0>, and each single Z error must be corrected by a correction block
 * resynthesized from the surviving decoder. */
void simplify_decoder(EncoderBundle& bundle);

PauliString remap_to_wires(const PauliString& p, const std::array<uint32_t, 15>& qubit_to_wire);

}  // namespace mfd
