#include "mfd/code.hpp"

#include <algorithm>
#include <bit>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "mfd/flip_table.hpp"
#include "mfd/statevector.hpp"

namespace mfd {

namespace {

constexpr uint32_t kN = 15;

/* 30-bit symplectic vector, x block low. */
uint64_t sympl(const PauliString& p) {
  return (p.x & 0x7fffu) | ((p.z & 0x7fffu) << kN);
}

/* GF2 span keyed by leading bit, with the generator combination tracked so a
 * member can be rebuilt as a signed Pauli product. */
class Gf2Span {
 public:
  bool insert(uint64_t v, uint32_t tag) {
    uint32_t combo = tag;
    reduce(v, combo);
    if (v == 0) return false;
    const int b = 63 - std::countl_zero(v);
    basis_[b] = v;
    combo_[b] = combo;
    ++rank_;
    return true;
  }

  /* Combination of inserted tags reproducing v, or nullopt. */
  std::optional<uint32_t> member(uint64_t v) const {
    uint32_t combo = 0;
    reduce(v, combo);
    if (v != 0) return std::nullopt;
    return combo;
  }

  uint32_t rank() const { return rank_; }

 private:
  void reduce(uint64_t& v, uint32_t& combo) const {
    while (v) {
      const int b = 63 - std::countl_zero(v);
      if (!basis_[b]) return;
      v ^= basis_[b];
      combo ^= combo_[b];
    }
  }

  std::array<uint64_t, 64> basis_{};
  std::array<uint32_t, 64> combo_{};
  uint32_t rank_ = 0;
};

std::vector<uint32_t> mask_bits(uint32_t mask) {
  std::vector<uint32_t> out;
  for (uint32_t b = 0; b < 32; ++b)
    if ((mask >> b) & 1) out.push_back(b);
  return out;
}

/* Pairwise-commuting generators make the subset product order-independent,
 * so the signed group element for a GF2 combination is well defined. */
PauliString combo_product(const std::vector<PauliString>& gens, uint32_t combo) {
  PauliString acc(gens.empty() ? kN : gens[0].n);
  for (size_t i = 0; i < gens.size(); ++i)
    if ((combo >> i) & 1) acc = multiply(acc, gens[i]);
  return acc;
}

void verify_encoder(const StabilizerCode& code, const EncoderBundle& b) {
  std::vector<PauliString> gens_w;
  for (const PauliString& g : code.x_generators) gens_w.push_back(remap_to_wires(g, b.qubit_to_wire));
  for (const PauliString& g : code.z_generators) gens_w.push_back(remap_to_wires(g, b.qubit_to_wire));

  Gf2Span span;
  for (size_t i = 0; i < gens_w.size(); ++i)
    if (!span.insert(sympl(gens_w[i]), 1u << i))
      throw std::logic_error("encoder synthesis: dependent stabilizer generators");

  const auto conj = [&](char letter, uint32_t w) {
    return conjugate_through_circuit(PauliString::single(kN, w, letter), b.encoder,
                                     Direction::Forward);
  };

  PauliString want_z = remap_to_wires(code.logical_z, b.qubit_to_wire);
  want_z.phase_pow = 2;
  if (conj('Z', 0) != want_z)
    throw std::logic_error("encoder synthesis: wire-0 Z does not map to minus logical Z");
  if (conj('X', 0) != remap_to_wires(code.logical_x, b.qubit_to_wire))
    throw std::logic_error("encoder synthesis: wire-0 X does not map to logical X");

  Gf2Span images;
  for (uint32_t w = 1; w < kN; ++w) {
    const PauliString img = conj('Z', w);
    const auto combo = span.member(sympl(img));
    if (!combo)
      throw std::logic_error("encoder synthesis: syndrome-wire Z image outside the stabilizer group");
    if (combo_product(gens_w, *combo) != img)
      throw std::logic_error("encoder synthesis: syndrome-wire Z image carries the wrong sign");
    images.insert(sympl(img), 0);
  }
  if (images.rank() != kN - 1)
    throw std::logic_error("encoder synthesis: syndrome-wire images do not generate the group");
}

}  // namespace

StabilizerCode build_code() {
  StabilizerCode c;
  c.n = kN;
  c.k = 1;
  c.d = 3;
  const auto bit = [](uint32_t label, uint32_t i) { return (label >> (i - 1)) & 1u; };

  for (uint32_t i = 1; i <= 4; ++i) {
    PauliString g(kN);
    for (uint32_t label = 1; label <= kN; ++label)
      if (bit(label, i)) g.set_x(label - 1, true);
    c.x_generators.push_back(g);
  }
  for (uint32_t i = 1; i <= 4; ++i) {
    PauliString g(kN);
    for (uint32_t label = 1; label <= kN; ++label)
      if (bit(label, i)) g.set_z(label - 1, true);
    c.z_generators.push_back(g);
  }
  for (uint32_t i = 1; i <= 4; ++i)
    for (uint32_t j = i + 1; j <= 4; ++j) {
      PauliString g(kN);
      for (uint32_t label = 1; label <= kN; ++label)
        if (bit(label, i) && bit(label, j)) g.set_z(label - 1, true);
      c.z_generators.push_back(g);
    }

  c.logical_z = PauliString(kN);
  for (uint32_t label : {1u, 2u, 3u}) c.logical_z.set_z(label - 1, true);
  c.logical_x = PauliString(kN);
  for (uint32_t label : {3u, 5u, 6u, 9u, 10u, 12u, 15u}) c.logical_x.set_x(label - 1, true);
  return c;
}

uint32_t verify_distance(const StabilizerCode& code, uint32_t w_max) {
  Gf2Span span;
  uint32_t tag = 0;
  for (const PauliString& g : code.x_generators) span.insert(sympl(g), 1u << tag++);
  for (const PauliString& g : code.z_generators) span.insert(sympl(g), 1u << tag++);

  const auto commutes_all = [&](uint64_t ex, uint64_t ez) {
    for (const PauliString& g : code.x_generators)
      if ((std::popcount(ex & g.z) + std::popcount(ez & g.x)) & 1) return false;
    for (const PauliString& g : code.z_generators)
      if ((std::popcount(ex & g.z) + std::popcount(ez & g.x)) & 1) return false;
    return true;
  };

  for (uint32_t w = 1; w <= w_max; ++w) {
    std::vector<uint32_t> pos(w);
    std::iota(pos.begin(), pos.end(), 0);
    while (true) {
      uint32_t letters = 1;
      for (uint32_t i = 0; i < w; ++i) letters *= 3;
      for (uint32_t l = 0; l < letters; ++l) {
        uint64_t ex = 0, ez = 0;
        uint32_t rest = l;
        for (uint32_t i = 0; i < w; ++i) {
          const uint32_t d = rest % 3;
          rest /= 3;
          if (d != 2) ex |= 1ull << pos[i];
          if (d != 0) ez |= 1ull << pos[i];
        }
        if (!commutes_all(ex, ez)) continue;
        if (!span.member(ex | (ez << kN))) return w;
      }
      int i = static_cast<int>(w) - 1;
      while (i >= 0 && pos[i] == code.n - w + i) --i;
      if (i < 0) break;
      ++pos[i];
      for (uint32_t j = i + 1; j < w; ++j) pos[j] = pos[j - 1] + 1;
    }
  }
  return 0;
}

PauliString remap_to_wires(const PauliString& p, const std::array<uint32_t, 15>& qubit_to_wire) {
  PauliString r(p.n);
  r.phase_pow = p.phase_pow;
  for (uint32_t q = 0; q < p.n; ++q) {
    if (p.x_bit(q)) r.set_x(qubit_to_wire[q], true);
    if (p.z_bit(q)) r.set_z(qubit_to_wire[q], true);
  }
  return r;
}

EncoderBundle synthesize_encoder(const StabilizerCode& code) {
  if (code.n != kN || code.x_generators.size() + code.z_generators.size() != kN - 1)
    throw std::invalid_argument("synthesize_encoder: expects the fixed 15-wire geometry");
  for (const PauliString& g : code.x_generators)
    if (g.z != 0 || g.phase_pow != 0)
      throw std::invalid_argument("synthesize_encoder: X generators must be pure positive X");
  for (const PauliString& g : code.z_generators)
    if (g.x != 0 || g.phase_pow != 0)
      throw std::invalid_argument("synthesize_encoder: Z generators must be pure positive Z");

  const uint32_t r = static_cast<uint32_t>(code.x_generators.size());
  std::vector<uint32_t> rows;
  for (const PauliString& g : code.x_generators) rows.push_back(static_cast<uint32_t>(g.x));

  std::vector<uint32_t> pivots;
  uint32_t rank = 0;
  for (uint32_t col = 0; col < code.n && rank < rows.size(); ++col) {
    uint32_t hit = rank;
    while (hit < rows.size() && !((rows[hit] >> col) & 1)) ++hit;
    if (hit == rows.size()) continue;
    std::swap(rows[rank], rows[hit]);
    for (uint32_t i = 0; i < rows.size(); ++i)
      if (i != rank && ((rows[i] >> col) & 1)) rows[i] ^= rows[rank];
    pivots.push_back(col);
    ++rank;
  }
  if (rank != rows.size())
    throw std::invalid_argument("synthesize_encoder: dependent X generators");

  uint32_t pivot_mask = 0;
  for (uint32_t p : pivots) pivot_mask |= 1u << p;

  uint32_t lx = static_cast<uint32_t>(code.logical_x.x);
  for (uint32_t i = 0; i < r; ++i)
    if ((lx >> pivots[i]) & 1) lx ^= rows[i];

  const uint32_t cand = static_cast<uint32_t>(code.logical_z.z) & ~pivot_mask & lx;
  if (!cand)
    throw std::invalid_argument("synthesize_encoder: no message qubit off the pivots");
  const uint32_t msg_q = std::countr_zero(cand);

  EncoderBundle b;
  b.wire_to_qubit[0] = msg_q;
  for (uint32_t i = 0; i < r; ++i) b.wire_to_qubit[1 + i] = pivots[i];
  uint32_t next = r + 1;
  for (uint32_t q = 0; q < code.n; ++q)
    if (q != msg_q && !((pivot_mask >> q) & 1)) b.wire_to_qubit[next++] = q;
  for (uint32_t w = 0; w < kN; ++w) b.qubit_to_wire[b.wire_to_qubit[w]] = w;

  Circuit enc(kN);
  enc.message = 0;
  enc.add(Gate::x(0));
  for (uint32_t i = 1; i < r; ++i) enc.add(Gate::cx(i, r));
  for (uint32_t q : mask_bits(lx & ~(1u << msg_q)))
    enc.add(Gate::cx(0, b.qubit_to_wire[q]));
  for (uint32_t i = 0; i < r; ++i) {
    enc.add(Gate::h(1 + i));
    for (uint32_t q : mask_bits(rows[i] & ~(1u << pivots[i])))
      enc.add(Gate::cx(1 + i, b.qubit_to_wire[q]));
  }

  b.encoder = enc;
  b.decoder = invert(enc);
  verify_encoder(code, b);
  simplify_decoder(b);
  return b;
}

void simplify_decoder(EncoderBundle& bundle) {
  const FlipTable base = derive_flip_table(bundle.decoder);
  const auto flips_of = [](const FlipTable& t) {
    std::pair<uint16_t, uint16_t> f{0, 0};
    for (uint32_t q = 0; q < kN; ++q) {
      if (t.z_entries[q].flip) f.first |= 1u << q;
      if (t.x_entries[q].flip) f.second |= 1u << q;
    }
    return f;
  };
  const auto want = flips_of(base);

  Circuit cur = bundle.decoder;
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (size_t i = cur.gates.size(); i-- > 0;) {
      if (cur.gates[i].kind != GateKind::CX) continue;
      Circuit cand = cur;
      cand.gates.erase(cand.gates.begin() + static_cast<ptrdiff_t>(i));
      FlipTable t;
      try {
        t = derive_flip_table(cand);
      } catch (const std::exception&) {
        continue;
      }
      if (flips_of(t) != want) continue;
      cur = std::move(cand);
      progressed = true;
    }
  }

  const FlipTable tz = derive_flip_table_z(cur);
  const Circuit zcfn = synthesize_cfn(tz, CfnBackend::ExactPattern);
  const uint32_t msg = cur.message.value_or(0);
  Circuit prep(kN);
  prep.message = msg;
  prep.add(Gate::h(msg));
  prep = concat(prep, bundle.encoder);
  Statevector ideal(kN);
  ideal.run(prep);
  const std::complex<double> plus{std::numbers::sqrt2 / 2.0, 0};

  const auto check = [&](const PauliString* err, bool require_clean) {
    Statevector sv = ideal;
    if (err) sv.apply_pauli(*err);
    sv.run(cur);
    sv.run(zcfn);
    if (sv.projector_expectation(msg, plus, plus) < 1.0 - 1e-9)
      throw std::logic_error("simplify_decoder: message recovery broken");
    if (require_clean)
      for (uint32_t w = 0; w < kN; ++w)
        if (w != msg && sv.prob_one(w) > 1e-9)
          throw std::logic_error("simplify_decoder: noiseless baseline broken");
  };
  check(nullptr, true);
  for (uint32_t q = 0; q < kN; ++q) {
    const PauliString err = PauliString::single(kN, q, 'Z');
    check(&err, false);
  }

  bundle.simplified_decoder = cur;
}

}  // namespace mfd
