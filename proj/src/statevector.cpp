#include "mfd/statevector.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mfd {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};

inline std::complex<double> i_pow(uint32_t c) {
  switch (c & 3u) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}
}  // namespace

Statevector::Statevector(uint32_t n, uint64_t basis_bits) : n_(n) {
  if (n > kMaxWires) throw std::invalid_argument("Statevector: wire cap is 20");
  if (n == 0) throw std::invalid_argument("Statevector: needs at least one wire");
  if (basis_bits >> n) throw std::invalid_argument("Statevector: basis label out of range");
  a_.assign(1ull << n, {0, 0});
  a_[basis_bits] = {1, 0};
}

double Statevector::norm_sq() const {
  double s = 0;
  for (const auto& v : a_) s += std::norm(v);
  return s;
}

double Statevector::prob_one(uint32_t w) const {
  const uint64_t m = 1ull << w;
  double s = 0;
  for (uint64_t i = 0; i < a_.size(); ++i)
    if (i & m) s += std::norm(a_[i]);
  return s;
}

void Statevector::assert_basis_pure(uint32_t w) const {
  const double p = prob_one(w);
  if (std::min(p, 1.0 - p) > kPurityTol)
    throw std::runtime_error("statevector: wire " + std::to_string(w) +
                             " is not in a computational basis state (p1=" + std::to_string(p) + ")");
}

void Statevector::apply_1q(uint32_t w, std::complex<double> m00, std::complex<double> m01,
                           std::complex<double> m10, std::complex<double> m11) {
  const uint64_t step = 1ull << w;
  for (uint64_t base = 0; base < a_.size(); base += 2 * step) {
    for (uint64_t i = base; i < base + step; ++i) {
      const auto lo = a_[i], hi = a_[i + step];
      a_[i] = m00 * lo + m01 * hi;
      a_[i + step] = m10 * lo + m11 * hi;
    }
  }
}

void Statevector::apply_diag(uint32_t w, std::complex<double> d0, std::complex<double> d1) {
  const uint64_t m = 1ull << w;
  for (uint64_t i = 0; i < a_.size(); ++i) a_[i] *= (i & m) ? d1 : d0;
}

void Statevector::apply_cx(uint32_t c, uint32_t t) {
  const uint64_t cm = 1ull << c, tm = 1ull << t;
  for (uint64_t i = 0; i < a_.size(); ++i)
    if ((i & cm) && !(i & tm)) std::swap(a_[i], a_[i | tm]);
}

void Statevector::apply_cz(uint32_t c, uint32_t t) {
  const uint64_t cm = 1ull << c, tm = 1ull << t;
  for (uint64_t i = 0; i < a_.size(); ++i)
    if ((i & cm) && (i & tm)) a_[i] = -a_[i];
}

void Statevector::apply_swap(uint32_t a, uint32_t b) {
  const uint64_t am = 1ull << a, bm = 1ull << b;
  for (uint64_t i = 0; i < a_.size(); ++i)
    if ((i & am) && !(i & bm)) std::swap(a_[i], a_[i ^ am ^ bm]);
}

void Statevector::control_masks(const std::vector<Control>& cs, uint64_t& pos, uint64_t& neg) const {
  pos = neg = 0;
  for (const Control& c : cs) (c.positive ? pos : neg) |= 1ull << c.wire;
}

void Statevector::apply_mc(const Gate& g) {
  if (!coherent_mode)
    for (const Control& c : g.controls) assert_basis_pure(c.wire);
  uint64_t pos, neg;
  control_masks(g.controls, pos, neg);
  const uint64_t tm = 1ull << g.targets[0];
  if (g.kind == GateKind::MCX) {
    for (uint64_t i = 0; i < a_.size(); ++i)
      if ((i & pos) == pos && !(i & neg) && !(i & tm)) std::swap(a_[i], a_[i | tm]);
  } else {
    for (uint64_t i = 0; i < a_.size(); ++i)
      if ((i & pos) == pos && !(i & neg) && (i & tm)) a_[i] = -a_[i];
  }
}

uint32_t Statevector::grow() {
  if (n_ == kMaxWires) throw std::runtime_error("statevector: wire cap (20) exceeded by reset ancilla");
  a_.resize(a_.size() * 2, {0, 0});
  return n_++;
}

void Statevector::apply_creset(const Gate& g) {
  const Control ctl = g.controls[0];
  const uint64_t cm = 1ull << ctl.wire;
  if (coherent_mode) {
    for (uint32_t t : g.targets) {
      const uint64_t tm = 1ull << t;
      const uint64_t am = 1ull << grow();
      for (uint64_t i = 0; i < a_.size(); ++i) {
        const bool fire = ctl.positive ? (i & cm) : !(i & cm);
        if (fire && (i & tm) && !(i & am)) std::swap(a_[i], a_[i ^ tm ^ am]);
      }
    }
    return;
  }
  assert_basis_pure(ctl.wire);
  const double p_ctl = prob_one(ctl.wire);
  const bool fire = ctl.positive ? (p_ctl > 0.5) : (p_ctl < 0.5);
  if (!fire) return;
  for (uint32_t t : g.targets) {
    assert_basis_pure(t);
    if (prob_one(t) > 0.5) apply_1q(t, 0, 1, 1, 0);
  }
}

void Statevector::apply(const Gate& g) {
  g.validate(n_);
  constexpr double s = std::numbers::sqrt2 / 2.0;
  const std::complex<double> e_pi4{s, s};
  switch (g.kind) {
    case GateKind::H: apply_1q(g.a, s, s, s, -s); break;
    case GateKind::S: apply_diag(g.a, 1, kI); break;
    case GateKind::Sdg: apply_diag(g.a, 1, -kI); break;
    case GateKind::X: apply_1q(g.a, 0, 1, 1, 0); break;
    case GateKind::Y: apply_1q(g.a, 0, -kI, kI, 0); break;
    case GateKind::Z: apply_diag(g.a, 1, -1); break;
    case GateKind::T: apply_diag(g.a, 1, e_pi4); break;
    case GateKind::Tdg: apply_diag(g.a, 1, std::conj(e_pi4)); break;
    case GateKind::CX: apply_cx(g.a, g.b); break;
    case GateKind::CZ: apply_cz(g.a, g.b); break;
    case GateKind::Swap: apply_swap(g.a, g.b); break;
    case GateKind::MCX:
    case GateKind::MCZ: apply_mc(g); break;
    case GateKind::CReset: apply_creset(g); break;
  }
  if (check_norm) {
    const double nrm = norm_sq();
    if (std::abs(nrm - 1.0) > kNormTol)
      throw std::runtime_error("statevector: norm drift after " + g.name());
  }
}

void Statevector::run(const Circuit& c) {
  // Coherent resets append ancilla wires, so a grown state may legitimately be
  // wider than the circuit it keeps executing.
  const bool ok = (c.n_wires == n_) || (coherent_mode && c.n_wires < n_);
  if (!ok) throw std::invalid_argument("statevector run: wire count mismatch");
  for (const Gate& g : c.gates) apply(g);
}

void Statevector::apply_pauli(const PauliString& p) {
  if (p.n > n_) throw std::invalid_argument("apply_pauli: operator wider than state");
  const auto ph = i_pow(static_cast<uint32_t>(p.phase_pow) +
                        static_cast<uint32_t>(std::popcount(p.x & p.z)));
  if (p.x == 0) {
    for (uint64_t i = 0; i < a_.size(); ++i)
      a_[i] *= (std::popcount(i & p.z) & 1) ? -ph : ph;
    return;
  }
  for (uint64_t i = 0; i < a_.size(); ++i) {
    const uint64_t j = i ^ p.x;
    if (i >= j) continue;
    const auto si = (std::popcount(i & p.z) & 1) ? -ph : ph;
    const auto sj = (std::popcount(j & p.z) & 1) ? -ph : ph;
    const auto ai = a_[i];
    a_[i] = sj * a_[j];  // new[i] takes old[j] with the sign of source j
    a_[j] = si * ai;
  }
}

void Statevector::apply_rz(uint32_t w, double theta) {
  if (w >= n_) throw std::invalid_argument("apply_rz: wire out of range");
  const std::complex<double> d0 = std::polar(1.0, -theta / 2.0);
  apply_diag(w, d0, std::conj(d0));
}

double Statevector::projector_expectation(uint32_t w, std::complex<double> phi0,
                                          std::complex<double> phi1) const {
  const uint64_t m = 1ull << w;
  double s = 0;
  for (uint64_t i = 0; i < a_.size(); ++i) {
    if (i & m) continue;
    s += std::norm(std::conj(phi0) * a_[i] + std::conj(phi1) * a_[i | m]);
  }
  return s;
}

Statevector sv_run(const Circuit& c, Statevector input, bool coherent_mode) {
  input.coherent_mode = coherent_mode;
  input.run(c);
  return input;
}

}  // namespace mfd
