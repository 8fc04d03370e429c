#pragma once

#include <cstdint>

#include "mfd/circuit.hpp"
#include "mfd/flip_table.hpp"

namespace mfd {

/* Pauli difference between the actual and the ideal run, phases ignored.
 * Bit w of x/z is an X/Z flip on wire w. Valid while the ideal circuit keeps
 * every control and reset wire in a basis state, which the statevector
 * simulator asserts independently. */
struct PauliFrame {
  uint64_t x = 0;
  uint64_t z = 0;
  bool operator==(const PauliFrame&) const = default;
};

/* Propagates one gate. Clifford gates use the symplectic update rules.
 * Controls of multi-controlled gates read the frame's X bits (the ideal wire
 * value there is 0); a fired MCX/MCZ toggles the target's x/z bit, a fired
 * reset clears both target bits. T gates pass Z frames and reject X frames. */
void frame_apply(PauliFrame& f, const Gate& g);

/* Literal path: executes decoder then correction block on the frame and
 * returns the residual Z flip on the message wire. */
bool frame_run_circuit(const Circuit& decoder, const Circuit& cfn, PauliFrame f);

/* Table path: propagates through the Clifford decoder, then applies the
 * table's Boolean corrections to the message bits. */
bool frame_run(const Circuit& decoder, PauliFrame f, const FlipTable& table);

}  // namespace mfd
