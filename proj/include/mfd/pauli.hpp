#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mfd {

/* Gate alphabet for Clifford conjugation. Two-wire kinds are CX, CZ, Swap;
 * everything else acts on one wire. */
enum class CliffordKind : uint8_t { H, S, Sdg, X, Y, Z, CX, CZ, Swap };

constexpr bool is_two_wire(CliffordKind k) {
  return k == CliffordKind::CX || k == CliffordKind::CZ || k == CliffordKind::Swap;
}

struct CliffordGate {
  CliffordKind kind;
  uint32_t a = 0;  // control for CX/CZ, the sole wire for one-wire kinds
  uint32_t b = 0;  // target for CX/CZ, unused for one-wire kinds

  static CliffordGate h(uint32_t w) { return {CliffordKind::H, w, 0}; }
  static CliffordGate s(uint32_t w) { return {CliffordKind::S, w, 0}; }
  static CliffordGate sdg(uint32_t w) { return {CliffordKind::Sdg, w, 0}; }
  static CliffordGate x(uint32_t w) { return {CliffordKind::X, w, 0}; }
  static CliffordGate y(uint32_t w) { return {CliffordKind::Y, w, 0}; }
  static CliffordGate z(uint32_t w) { return {CliffordKind::Z, w, 0}; }
  static CliffordGate cx(uint32_t c, uint32_t t) { return {CliffordKind::CX, c, t}; }
  static CliffordGate cz(uint32_t c, uint32_t t) { return {CliffordKind::CZ, c, t}; }
  static CliffordGate swap(uint32_t c, uint32_t t) { return {CliffordKind::Swap, c, t}; }

  CliffordGate inverse() const;
  uint32_t arity() const { return is_two_wire(kind) ? 2 : 1; }
};

/* n-wire Pauli operator in symplectic form. Wire w lives at bit w of the
 * packed words (little-endian within the word; this layout is the
 * serialization contract). The stored value is
 *
 *     i^phase_pow * (tensor product of per-wire letters I, X, Y, Z)
 *
 * with letter(w) = X if only x bit set, Z if only z, Y if both. Internally
 * Y = iXZ, so the coefficient of the XZ normal form is i^(phase_pow + #Y).
 * Capacity is one machine word: n <= 64, far above the 20-wire cap used
 * anywhere in this project. */
class PauliString {
 public:
  uint32_t n = 0;
  uint64_t x = 0;
  uint64_t z = 0;
  uint8_t phase_pow = 0;  // power of i, 0..3

  PauliString() = default;
  explicit PauliString(uint32_t n_wires);

  static PauliString identity(uint32_t n) { return PauliString(n); }
  static PauliString single(uint32_t n, uint32_t wire, char letter);

  bool x_bit(uint32_t w) const { return (x >> w) & 1; }
  bool z_bit(uint32_t w) const { return (z >> w) & 1; }
  void set_x(uint32_t w, bool v);
  void set_z(uint32_t w, bool v);

  uint32_t weight() const;
  bool is_identity() const { return x == 0 && z == 0 && phase_pow == 0; }

  /* Letter at wire w: 'I', 'X', 'Y' or 'Z'. */
  char letter(uint32_t w) const;

  bool operator==(const PauliString& o) const = default;

  /* Text form: sign then per-wire letters, e.g. "+Z0 X1 X8".
   * Identity prints as "+". Signs: +, -, +i, -i. */
  std::string str() const;
  static PauliString parse(const std::string& text, uint32_t n);
};

/* P * Q, exact over {1, i, -1, -i}. */
PauliString multiply(const PauliString& p, const PauliString& q);

/* Symplectic inner product x_P.z_Q + z_P.x_Q == 0 (mod 2). */
bool commutes(const PauliString& p, const PauliString& q);

/* Heisenberg propagation U P U^dag for the unitary U of g, phase tracked. */
PauliString conjugate(const PauliString& p, const CliffordGate& g);

enum class Direction { Forward, Reverse };

struct Circuit;  // circuit.hpp

/* Folds conjugate over C's gates. Forward computes C P C^dag (first gate
 * first); Reverse computes C^dag P C. Throws if C holds anything outside the
 * Clifford alphabet (T, multi-controlled, reset). */
PauliString conjugate_through_circuit(const PauliString& p, const Circuit& c,
                                      Direction dir);

}  // namespace mfd
