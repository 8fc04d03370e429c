#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mfd/circuit.hpp"
#include "mfd/pauli.hpp"

namespace mfd {

/* Stabilizer state as 2n signed Pauli rows. stab[i] and destab[i]
 * anticommute; all other row pairs commute. Gates act by conjugating every
 * row. */
class Tableau {
 public:
  explicit Tableau(uint32_t n);  // |0...0>

  uint32_t n() const { return n_; }
  const PauliString& stabilizer(uint32_t i) const { return stab_[i]; }
  const PauliString& destabilizer(uint32_t i) const { return destab_[i]; }

  void apply(const CliffordGate& g);
  void apply_pauli(const PauliString& p);  // state := P |psi>

  /* +1/-1 when P is (up to sign) in the stabilizer group, nullopt when the
   * expectation is indeterminate (some stabilizer anticommutes or P is
   * outside the group). */
  std::optional<int> expectation(const PauliString& p) const;
  std::optional<int> z_value(uint32_t w) const;  // 0/1 basis value, nullopt if indeterminate

  void check_rows() const;  // commutation structure invariant, for tests

 private:
  uint32_t n_;
  std::vector<PauliString> destab_, stab_;
};

struct TabRunResult {
  Tableau tab;
  std::vector<uint8_t> syndrome;  // Z-basis reads of the non-message wires, wire order
};

/* Runs gates [0, insert_at), applies the flip operator, runs the rest.
 * Multi-controlled gates and controlled resets require deterministic control
 * and target reads and act classically. The syndrome is captured just before
 * the first such gate after the insertion point (at the end if none). T gates
 * must be stripped beforehand. */
TabRunResult tab_run(const Circuit& c, const PauliString& initial_flips, size_t insert_at = 0);

}  // namespace mfd
