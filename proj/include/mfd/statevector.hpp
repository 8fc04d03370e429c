#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "mfd/circuit.hpp"
#include "mfd/pauli.hpp"

namespace mfd {

/* Dense simulator. Wire w is bit w of the amplitude index (little-endian).
 *
 * Trajectory mode (coherent_mode = false): every control wire of MCX/MCZ and
 * controlled reset, and every reset target, must be within 1e-9 of a
 * computational basis state; controlled reset then acts classically. Coherent
 * mode realizes controlled reset as a controlled swap with a fresh appended
 * |0> wire per target and skips the purity requirements.
 *
 * check_norm asserts unit norm within 1e-12 after every gate. Exhaustive
 * sweeps may disable it; the same circuits are norm-checked in the tests. */
class Statevector {
 public:
  static constexpr uint32_t kMaxWires = 20;
  static constexpr double kPurityTol = 1e-9;
  static constexpr double kNormTol = 1e-12;

  explicit Statevector(uint32_t n, uint64_t basis_bits = 0);

  uint32_t n() const { return n_; }
  const std::vector<std::complex<double>>& amplitudes() const { return a_; }
  std::complex<double>& operator[](uint64_t i) { return a_[i]; }
  const std::complex<double>& operator[](uint64_t i) const { return a_[i]; }

  bool coherent_mode = false;
  bool check_norm = true;

  void apply(const Gate& g);
  void run(const Circuit& c);
  void apply_pauli(const PauliString& p);
  void apply_rz(uint32_t w, double theta);  // exp(-i theta Z / 2)

  double norm_sq() const;
  double prob_one(uint32_t w) const;
  void assert_basis_pure(uint32_t w) const;

  /* <phi| tr_rest(rho) |phi> for the single-wire state phi on wire w. */
  double projector_expectation(uint32_t w, std::complex<double> phi0,
                               std::complex<double> phi1) const;

 private:
  uint32_t n_;
  std::vector<std::complex<double>> a_;

  void apply_1q(uint32_t w, std::complex<double> m00, std::complex<double> m01,
                std::complex<double> m10, std::complex<double> m11);
  void apply_diag(uint32_t w, std::complex<double> d0, std::complex<double> d1);
  void apply_cx(uint32_t c, uint32_t t);
  void apply_cz(uint32_t c, uint32_t t);
  void apply_swap(uint32_t a, uint32_t b);
  void apply_mc(const Gate& g);
  void apply_creset(const Gate& g);
  uint32_t grow();  // appends a |0> wire, returns its index
  void control_masks(const std::vector<Control>& cs, uint64_t& pos, uint64_t& neg) const;
};

Statevector sv_run(const Circuit& c, Statevector input, bool coherent_mode = false);

}  // namespace mfd
