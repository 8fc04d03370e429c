#include "mfd/tableau.hpp"

#include <stdexcept>

namespace mfd {

Tableau::Tableau(uint32_t n) : n_(n) {
  if (n == 0 || n > 64) throw std::invalid_argument("Tableau: wire count must be in 1..64");
  destab_.reserve(n);
  stab_.reserve(n);
  for (uint32_t i = 0; i < n; ++i) {
    destab_.push_back(PauliString::single(n, i, 'X'));
    stab_.push_back(PauliString::single(n, i, 'Z'));
  }
}

void Tableau::apply(const CliffordGate& g) {
  for (auto& r : destab_) r = conjugate(r, g);
  for (auto& r : stab_) r = conjugate(r, g);
}

void Tableau::apply_pauli(const PauliString& p) {
  for (auto& r : destab_)
    if (!commutes(r, p)) r.phase_pow = static_cast<uint8_t>((r.phase_pow + 2) & 3);
  for (auto& r : stab_)
    if (!commutes(r, p)) r.phase_pow = static_cast<uint8_t>((r.phase_pow + 2) & 3);
}

std::optional<int> Tableau::expectation(const PauliString& p) const {
  if (p.n != n_) throw std::invalid_argument("Tableau::expectation: wire count mismatch");
  for (const auto& s : stab_)
    if (!commutes(s, p)) return std::nullopt;
  PauliString acc = PauliString::identity(n_);
  for (uint32_t i = 0; i < n_; ++i)
    if (!commutes(destab_[i], p)) acc = multiply(acc, stab_[i]);
  if (acc.x != p.x || acc.z != p.z) return std::nullopt;  // outside the group
  const uint32_t d = (acc.phase_pow + 4u - p.phase_pow) & 3u;
  if (d & 1u) throw std::logic_error("Tableau::expectation: non-Hermitian phase");
  return d == 0 ? 1 : -1;
}

std::optional<int> Tableau::z_value(uint32_t w) const {
  const auto e = expectation(PauliString::single(n_, w, 'Z'));
  if (!e) return std::nullopt;
  return *e == 1 ? 0 : 1;
}

void Tableau::check_rows() const {
  for (uint32_t i = 0; i < n_; ++i) {
    for (uint32_t j = 0; j < n_; ++j) {
      if (!commutes(stab_[i], stab_[j])) throw std::logic_error("tableau: stabilizers anticommute");
      if (!commutes(destab_[i], destab_[j])) throw std::logic_error("tableau: destabilizers anticommute");
      const bool anti = !commutes(stab_[i], destab_[j]);
      if (anti != (i == j)) throw std::logic_error("tableau: broken pairing");
    }
  }
}

namespace {

bool control_fires(const Tableau& t, const std::vector<Control>& cs) {
  for (const Control& c : cs) {
    const auto v = t.z_value(c.wire);
    if (!v) throw std::runtime_error("tableau: control wire " + std::to_string(c.wire) +
                                     " has an indeterminate basis value");
    if ((*v == 1) != c.positive) return false;
  }
  return true;
}

}  // namespace

TabRunResult tab_run(const Circuit& c, const PauliString& initial_flips, size_t insert_at) {
  c.validate();
  if (insert_at > c.gates.size()) throw std::invalid_argument("tab_run: insertion index out of range");
  if (initial_flips.n != c.n_wires) throw std::invalid_argument("tab_run: flip operator width mismatch");

  Tableau tab(c.n_wires);
  const uint32_t message = c.message.value_or(0);
  std::vector<uint8_t> syndrome;
  bool captured = false;

  const auto capture = [&] {
    if (captured) return;
    captured = true;
    for (uint32_t w = 0; w < c.n_wires; ++w) {
      if (w == message) continue;
      const auto v = tab.z_value(w);
      if (!v) throw std::runtime_error("tab_run: syndrome wire " + std::to_string(w) +
                                       " is indeterminate at read time");
      syndrome.push_back(static_cast<uint8_t>(*v));
    }
  };

  for (size_t idx = 0; idx <= c.gates.size(); ++idx) {
    if (idx == insert_at) tab.apply_pauli(initial_flips);
    if (idx == c.gates.size()) break;
    const Gate& g = c.gates[idx];
    switch (g.kind) {
      case GateKind::T:
      case GateKind::Tdg:
        throw std::runtime_error("tab_run: strip T gates before tableau simulation");
      case GateKind::MCX:
      case GateKind::MCZ: {
        if (idx >= insert_at) capture();
        if (control_fires(tab, g.controls))
          tab.apply_pauli(PauliString::single(c.n_wires, g.targets[0],
                                              g.kind == GateKind::MCX ? 'X' : 'Z'));
        break;
      }
      case GateKind::CReset: {
        if (idx >= insert_at) capture();
        if (control_fires(tab, g.controls)) {
          for (uint32_t t : g.targets) {
            const auto v = tab.z_value(t);
            if (!v) throw std::runtime_error("tab_run: reset target " + std::to_string(t) +
                                             " is indeterminate");
            if (*v == 1) tab.apply_pauli(PauliString::single(c.n_wires, t, 'X'));
          }
        }
        break;
      }
      default:
        tab.apply(g.clifford_gate());
        break;
    }
  }
  capture();
  return {std::move(tab), std::move(syndrome)};
}

}  // namespace mfd
