#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mfd/circuit.hpp"
#include "mfd/pauli.hpp"

namespace mfd {

/* Effect of one single-wire input error pushed through the decoder: does the
 * message wire flip, and which syndrome wires read 1. Syndromes are wire
 * bitmasks (bit w = basis flip on wire w; the message bit is never set). */
struct FlipEntry {
  bool flip = false;
  uint16_t syndrome = 0;
};

enum class CfnBackend { ExactPattern, Anf, ControlledReset };
const char* backend_name(CfnBackend b);
CfnBackend backend_from_name(const std::string& name);

struct FlipTable {
  uint32_t n_wires = 0;
  uint32_t message = 0;
  bool z_only = false;
  std::array<FlipEntry, 15> z_entries{};  // input error Z on wire q
  std::array<FlipEntry, 15> x_entries{};  // input error X on wire q (unset when z_only)
  uint16_t support_a = 0;  // wires carrying Z-sector syndromes
  uint16_t support_b = 0;  // wires carrying X-sector syndromes

  /* Exact-match correction semantics with the zero extension: fire only on a
   * tabled flip syndrome, restricted to the sector support. */
  bool z_fires(uint16_t syndrome) const { return z_lut_[syndrome & support_a] != 0; }
  bool x_fires(uint16_t syndrome) const { return x_lut_[syndrome & support_b] != 0; }

  std::string str() const;  // two-sector table, 30 entry lines plus summaries

  std::vector<uint8_t> z_lut_, x_lut_;  // filled by derive
};

/* Conjugates the 30 single-wire errors through the decoder. Hard errors:
 * a flip entry with an all-zero syndrome, a flip and a no-flip entry sharing
 * a syndrome, overlapping sector supports, or a sector leaking the wrong
 * component onto the message wire. */
FlipTable derive_flip_table(const Circuit& decoder);

/* Z sector only; X-sector invariants are not enforced. Used when a decoder
 * variant preserves Z-error handling but not X-error handling. */
FlipTable derive_flip_table_z(const Circuit& decoder);

/* Correction block over the syndrome wires, message-targeted. Z corrections
 * precede X corrections; ordering within a sector is deterministic.
 *   ExactPattern: one fully-polarized multi-controlled gate per distinct
 *                 tabled flip syndrome.
 *   Anf: positive-control gates from the algebraic normal form of the
 *        zero-extended flip function; pointwise equal to ExactPattern.
 *   ControlledReset: Z sector lowered to a controlled-reset priority chain;
 *        requires the flip function in form OR(generators) AND NOT OR(vetoes)
 *        on the tabled patterns, else throws. X sector as in ExactPattern. */
Circuit synthesize_cfn(const FlipTable& table, CfnBackend backend);

/* Veto-OR recognizer result (wire masks), exposed for tests and tooling. */
struct VetoOrForm {
  bool found = false;
  uint16_t generators = 0;
  uint16_t vetoes = 0;
};
VetoOrForm recognize_veto_or(const FlipTable& table);

struct CfnCheck {
  char sector = 'I';  // 'X','Y','Z' error kind; 'I' for the noiseless row
  uint32_t wire = 0;
  double fidelity = 0;
  bool pass = false;
};
struct CfnReport {
  bool pass = false;
  double min_fidelity = 1;
  std::vector<CfnCheck> checks;
};

/* Statevector check of decoder+correction against every single-wire Pauli
 * inserted on the ideal encoded magic-state input; the message wire must
 * return to the magic state with fidelity 1 within 1e-10. */
CfnReport verify_cfn(const Circuit& decoder, const Circuit& cfn);

}  // namespace mfd
