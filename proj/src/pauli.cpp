#include "mfd/pauli.hpp"

#include <bit>
#include <cctype>
#include <stdexcept>

#include "mfd/circuit.hpp"

namespace mfd {

namespace {

inline uint32_t pc(uint64_t v) { return static_cast<uint32_t>(std::popcount(v)); }

/* XZ normal form i^c X^u Z^v. Product rule picks up (-1) for each Z in the
 * left factor passing an X in the right factor. */
struct XZ {
  uint64_t u = 0, v = 0;
  uint32_t c = 0;
};

inline XZ mul(XZ a, const XZ& b) {
  a.c = (a.c + b.c + 2 * pc(a.v & b.u)) & 3u;
  a.u ^= b.u;
  a.v ^= b.v;
  return a;
}

inline uint32_t xz_coeff(const PauliString& p) {
  return (p.phase_pow + pc(p.x & p.z)) & 3u;
}

inline uint8_t letter_phase(uint32_t c, uint64_t x, uint64_t z) {
  return static_cast<uint8_t>((c + 4u - (pc(x & z) & 3u)) & 3u);
}

}  // namespace

CliffordGate CliffordGate::inverse() const {
  CliffordGate g = *this;
  if (kind == CliffordKind::S) g.kind = CliffordKind::Sdg;
  else if (kind == CliffordKind::Sdg) g.kind = CliffordKind::S;
  return g;
}

PauliString::PauliString(uint32_t n_wires) : n(n_wires) {
  if (n_wires > 64) throw std::invalid_argument("PauliString: wire count exceeds 64");
}

PauliString PauliString::single(uint32_t n, uint32_t wire, char letter) {
  PauliString p(n);
  if (wire >= n) throw std::invalid_argument("PauliString::single: wire out of range");
  switch (letter) {
    case 'I': break;
    case 'X': p.x = 1ull << wire; break;
    case 'Z': p.z = 1ull << wire; break;
    case 'Y': p.x = 1ull << wire; p.z = 1ull << wire; break;
    default: throw std::invalid_argument("PauliString::single: letter must be I, X, Y or Z");
  }
  return p;
}

void PauliString::set_x(uint32_t w, bool v) {
  if (w >= n) throw std::invalid_argument("PauliString::set_x: wire out of range");
  x = v ? (x | (1ull << w)) : (x & ~(1ull << w));
}

void PauliString::set_z(uint32_t w, bool v) {
  if (w >= n) throw std::invalid_argument("PauliString::set_z: wire out of range");
  z = v ? (z | (1ull << w)) : (z & ~(1ull << w));
}

uint32_t PauliString::weight() const { return pc(x | z); }

char PauliString::letter(uint32_t w) const {
  const bool xb = x_bit(w), zb = z_bit(w);
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

std::string PauliString::str() const {
  static const char* sign[4] = {"+", "+i", "-", "-i"};
  std::string out = sign[phase_pow & 3];
  bool first = true;
  for (uint32_t w = 0; w < n; ++w) {
    const char l = letter(w);
    if (l == 'I') continue;
    if (!first) out += ' ';
    out += l;
    out += std::to_string(w);
    first = false;
  }
  return out;
}

PauliString PauliString::parse(const std::string& text, uint32_t n) {
  PauliString p(n);
  size_t i = 0;
  auto skip = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip();
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    const bool neg = text[i] == '-';
    ++i;
    bool imag = false;
    if (i < text.size() && text[i] == 'i') { imag = true; ++i; }
    p.phase_pow = static_cast<uint8_t>((neg ? 2 : 0) + (imag ? 1 : 0));
  }
  while (true) {
    skip();
    if (i >= text.size()) break;
    const char l = text[i++];
    if (l != 'X' && l != 'Y' && l != 'Z')
      throw std::invalid_argument(std::string("PauliString::parse: expected letter, got '") + l + "'");
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw std::invalid_argument("PauliString::parse: letter without wire index");
    uint32_t w = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      w = w * 10 + static_cast<uint32_t>(text[i++] - '0');
    if (w >= n) throw std::invalid_argument("PauliString::parse: wire " + std::to_string(w) + " out of range");
    if (p.x_bit(w) || p.z_bit(w))
      throw std::invalid_argument("PauliString::parse: duplicate wire " + std::to_string(w));
    if (l == 'X' || l == 'Y') p.set_x(w, true);
    if (l == 'Z' || l == 'Y') p.set_z(w, true);
  }
  return p;
}

PauliString multiply(const PauliString& p, const PauliString& q) {
  if (p.n != q.n) throw std::invalid_argument("multiply: wire count mismatch");
  PauliString r(p.n);
  const uint32_t c = (xz_coeff(p) + xz_coeff(q) + 2 * pc(p.z & q.x)) & 3u;
  r.x = p.x ^ q.x;
  r.z = p.z ^ q.z;
  r.phase_pow = letter_phase(c, r.x, r.z);
  return r;
}

bool commutes(const PauliString& p, const PauliString& q) {
  if (p.n != q.n) throw std::invalid_argument("commutes: wire count mismatch");
  return ((pc(p.x & q.z) + pc(p.z & q.x)) & 1u) == 0;
}

PauliString conjugate(const PauliString& p, const CliffordGate& g) {
  const bool two = is_two_wire(g.kind);
  if (g.a >= p.n || (two && g.b >= p.n))
    throw std::invalid_argument("conjugate: gate wire outside operator range");
  if (two && g.a == g.b) throw std::invalid_argument("conjugate: two-wire gate with equal wires");

  const uint64_t am = 1ull << g.a;
  const uint64_t bm = two ? (1ull << g.b) : 0;
  XZ ix_a{am, 0, 0}, iz_a{0, am, 0};  // images of X_a, Z_a under g . g^dag
  XZ ix_b{bm, 0, 0}, iz_b{0, bm, 0};
  switch (g.kind) {
    case CliffordKind::H: ix_a = {0, am, 0}; iz_a = {am, 0, 0}; break;
    case CliffordKind::S: ix_a = {am, am, 1}; break;
    case CliffordKind::Sdg: ix_a = {am, am, 3}; break;
    case CliffordKind::X: iz_a = {0, am, 2}; break;
    case CliffordKind::Y: ix_a = {am, 0, 2}; iz_a = {0, am, 2}; break;
    case CliffordKind::Z: ix_a = {am, 0, 2}; break;
    case CliffordKind::CX: ix_a = {am | bm, 0, 0}; iz_b = {0, am | bm, 0}; break;
    case CliffordKind::CZ: ix_a = {am, bm, 0}; ix_b = {bm, am, 0}; break;
    case CliffordKind::Swap:
      ix_a = {bm, 0, 0}; iz_a = {0, bm, 0};
      ix_b = {am, 0, 0}; iz_b = {0, am, 0};
      break;
  }

  const uint64_t gm = am | bm;
  XZ acc;  // conjugated gate-local part, X factors then Z factors
  if (p.x & am) acc = mul(acc, ix_a);
  if (two && (p.x & bm)) acc = mul(acc, ix_b);
  if (p.z & am) acc = mul(acc, iz_a);
  if (two && (p.z & bm)) acc = mul(acc, iz_b);

  PauliString r(p.n);
  r.x = (p.x & ~gm) | acc.u;
  r.z = (p.z & ~gm) | acc.v;
  r.phase_pow = letter_phase((xz_coeff(p) + acc.c) & 3u, r.x, r.z);
  return r;
}

PauliString conjugate_through_circuit(const PauliString& p, const Circuit& c, Direction dir) {
  PauliString r = p;
  const auto step = [&r](const Gate& g, bool inverted) {
    if (!g.is_clifford())
      throw std::runtime_error("conjugate_through_circuit: non-Clifford gate " + g.name());
    const CliffordGate cg = g.clifford_gate();
    r = conjugate(r, inverted ? cg.inverse() : cg);
  };
  if (dir == Direction::Forward) {
    for (const Gate& g : c.gates) step(g, false);
  } else {
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) step(*it, true);
  }
  return r;
}

}  // namespace mfd
