#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfd/pauli.hpp"

namespace mfd {

/* Gate alphabet: the Clifford kinds (same order as CliffordKind), the
 * non-Clifford phase gates, multi-controlled X/Z with per-control polarity,
 * and a controlled reset that forces its targets to |0> when the control
 * fires. */
enum class GateKind : uint8_t { H, S, Sdg, X, Y, Z, CX, CZ, Swap, T, Tdg, MCX, MCZ, CReset };

struct Control {
  uint32_t wire = 0;
  bool positive = true;  // fire on |1> if true, on |0> if false
  bool operator==(const Control&) const = default;
};

struct Gate {
  GateKind kind = GateKind::H;
  uint32_t a = 0;  // sole wire of one-wire kinds; control of CX/CZ/Swap
  uint32_t b = 0;  // target of CX/CZ/Swap
  std::vector<Control> controls;   // MCX/MCZ: >= 1; CReset: exactly 1
  std::vector<uint32_t> targets;   // MCX/MCZ: exactly 1; CReset: >= 1

  static Gate h(uint32_t w) { return one(GateKind::H, w); }
  static Gate s(uint32_t w) { return one(GateKind::S, w); }
  static Gate sdg(uint32_t w) { return one(GateKind::Sdg, w); }
  static Gate x(uint32_t w) { return one(GateKind::X, w); }
  static Gate y(uint32_t w) { return one(GateKind::Y, w); }
  static Gate z(uint32_t w) { return one(GateKind::Z, w); }
  static Gate t(uint32_t w) { return one(GateKind::T, w); }
  static Gate tdg(uint32_t w) { return one(GateKind::Tdg, w); }
  static Gate cx(uint32_t c, uint32_t t) { return two(GateKind::CX, c, t); }
  static Gate cz(uint32_t c, uint32_t t) { return two(GateKind::CZ, c, t); }
  static Gate swap(uint32_t c, uint32_t t) { return two(GateKind::Swap, c, t); }
  static Gate mcx(std::vector<Control> cs, uint32_t target);
  static Gate mcz(std::vector<Control> cs, uint32_t target);
  static Gate creset(Control c, std::vector<uint32_t> ts);
  static Gate from_clifford(const CliffordGate& g);

  bool is_clifford() const { return kind <= GateKind::Swap; }
  CliffordGate clifford_gate() const;  // throws unless is_clifford()
  std::string name() const;
  void validate(uint32_t n_wires) const;
  bool operator==(const Gate&) const = default;

 private:
  static Gate one(GateKind k, uint32_t w) { Gate g; g.kind = k; g.a = w; return g; }
  static Gate two(GateKind k, uint32_t c, uint32_t t) { Gate g; g.kind = k; g.a = c; g.b = t; return g; }
};

struct Circuit {
  uint32_t n_wires = 0;
  std::vector<Gate> gates;
  std::optional<uint32_t> message;  // wire-role label: the wire carrying the decoded output

  Circuit() = default;
  explicit Circuit(uint32_t n) : n_wires(n) {}
  void add(Gate g);  // validates against n_wires
  void validate() const;
  bool operator==(const Circuit&) const = default;
};

/* Reversed gate order with per-gate inverses. Errors on controlled reset,
 * which has no inverse. */
Circuit invert(const Circuit& c);

/* Rewrites negative controls as X-conjugated positive controls. */
Circuit compile_polarity(const Circuit& c);

/* Drops T and Tdg gates; the Clifford-frame and tableau replacement pass. */
Circuit strip_t(const Circuit& c);

Circuit concat(const Circuit& a, const Circuit& b);

/* Line format. Header "wires N" or "wires N; message M", then one gate per
 * line: "H 3", "CX 2 7", "MCZ c+1 c-14 t0", "CRESET c+14 t1 t2". Parse
 * errors carry the line number and offending token. serialize(parse(s))
 * reproduces canonical text exactly. */
std::string serialize(const Circuit& c);
Circuit parse_circuit(const std::string& text);

}  // namespace mfd
