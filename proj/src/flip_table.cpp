#include "mfd/flip_table.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mfd/statevector.hpp"

namespace mfd {

const char* backend_name(CfnBackend b) {
  switch (b) {
    case CfnBackend::ExactPattern: return "exact_pattern";
    case CfnBackend::Anf: return "anf";
    case CfnBackend::ControlledReset: return "controlled_reset";
  }
  return "?";
}

CfnBackend backend_from_name(const std::string& name) {
  if (name == "exact_pattern") return CfnBackend::ExactPattern;
  if (name == "anf") return CfnBackend::Anf;
  if (name == "controlled_reset") return CfnBackend::ControlledReset;
  throw std::invalid_argument("unknown correction backend '" + name + "'");
}

namespace {

std::vector<uint32_t> mask_wires(uint16_t mask) {
  std::vector<uint32_t> ws;
  for (uint32_t w = 0; w < 16; ++w)
    if ((mask >> w) & 1) ws.push_back(w);
  return ws;
}

void check_sector(const std::array<FlipEntry, 15>& entries, const char* sector) {
  std::map<uint16_t, bool> seen;
  for (const FlipEntry& e : entries) {
    if (e.flip && e.syndrome == 0)
      throw std::runtime_error(std::string("flip table: ") + sector +
                               "-sector flip with empty syndrome (undetectable error)");
    const auto [it, fresh] = seen.emplace(e.syndrome, e.flip);
    if (!fresh && it->second != e.flip)
      throw std::runtime_error(std::string("flip table: ") + sector +
                               "-sector syndrome shared by a flip and a no-flip error");
  }
}

FlipTable derive_impl(const Circuit& decoder, bool z_only) {
  decoder.validate();
  if (decoder.n_wires != 15)
    throw std::invalid_argument("derive_flip_table: expects the 15-wire decoder");
  for (const Gate& g : decoder.gates)
    if (!g.is_clifford())
      throw std::invalid_argument("derive_flip_table: decoder must be Clifford, found " + g.name());

  FlipTable t;
  t.n_wires = decoder.n_wires;
  t.message = decoder.message.value_or(0);
  t.z_only = z_only;
  const uint16_t msg_bit = static_cast<uint16_t>(1u << t.message);

  for (uint32_t q = 0; q < 15; ++q) {
    const auto img_z =
        conjugate_through_circuit(PauliString::single(15, q, 'Z'), decoder, Direction::Forward);
    if (img_z.x_bit(t.message))
      throw std::runtime_error("flip table: Z-sector error on wire " + std::to_string(q) +
                               " leaves an X component on the message wire");
    t.z_entries[q].flip = img_z.z_bit(t.message);
    t.z_entries[q].syndrome = static_cast<uint16_t>(img_z.x) & ~msg_bit;
    t.support_a |= t.z_entries[q].syndrome;

    if (!z_only) {
      const auto img_x =
          conjugate_through_circuit(PauliString::single(15, q, 'X'), decoder, Direction::Forward);
      if (img_x.z_bit(t.message))
        throw std::runtime_error("flip table: X-sector error on wire " + std::to_string(q) +
                                 " leaves a Z component on the message wire");
      t.x_entries[q].flip = img_x.x_bit(t.message);
      t.x_entries[q].syndrome = static_cast<uint16_t>(img_x.x) & ~msg_bit;
      t.support_b |= t.x_entries[q].syndrome;
    }
  }

  check_sector(t.z_entries, "Z");
  if (!z_only) {
    check_sector(t.x_entries, "X");
    if (t.support_a & t.support_b)
      throw std::runtime_error("flip table: sector syndrome supports overlap");
  }

  t.z_lut_.assign(1u << 15, 0);
  t.x_lut_.assign(1u << 15, 0);
  for (const FlipEntry& e : t.z_entries)
    if (e.flip) t.z_lut_[e.syndrome] = 1;
  for (const FlipEntry& e : t.x_entries)
    if (e.flip) t.x_lut_[e.syndrome] = 1;
  return t;
}

std::vector<uint16_t> distinct_flip_syndromes(const std::array<FlipEntry, 15>& entries) {
  std::vector<uint16_t> out;
  for (const FlipEntry& e : entries)
    if (e.flip) out.push_back(e.syndrome);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void emit_exact(Circuit& c, uint16_t support, const std::vector<uint16_t>& syndromes,
                uint32_t target, bool x_kind) {
  const auto ws = mask_wires(support);
  for (uint16_t s : syndromes) {
    std::vector<Control> cs;
    for (uint32_t w : ws) cs.push_back({w, ((s >> w) & 1) != 0});
    c.add(x_kind ? Gate::mcx(std::move(cs), target) : Gate::mcz(std::move(cs), target));
  }
}

void emit_anf(Circuit& c, uint16_t support, const std::vector<uint16_t>& syndromes,
              uint32_t target, bool x_kind) {
  const auto ws = mask_wires(support);
  const size_t k = ws.size();
  if (k == 0) return;
  std::vector<uint8_t> f(1u << k, 0);
  for (uint16_t s : syndromes) {
    uint32_t idx = 0;
    for (size_t j = 0; j < k; ++j)
      if ((s >> ws[j]) & 1) idx |= 1u << j;
    f[idx] = 1;
  }
  for (size_t j = 0; j < k; ++j)
    for (uint32_t m = 0; m < f.size(); ++m)
      if (m & (1u << j)) f[m] ^= f[m ^ (1u << j)];
  if (f[0]) throw std::logic_error("anf: constant term from a zero-syndrome flip");
  std::vector<uint32_t> monomials;
  for (uint32_t m = 1; m < f.size(); ++m)
    if (f[m]) monomials.push_back(m);
  std::stable_sort(monomials.begin(), monomials.end(), [](uint32_t a, uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  for (uint32_t m : monomials) {
    std::vector<Control> cs;
    for (size_t j = 0; j < k; ++j)
      if (m & (1u << j)) cs.push_back({ws[j], true});
    c.add(x_kind ? Gate::mcx(std::move(cs), target) : Gate::mcz(std::move(cs), target));
  }
}

}  // namespace

FlipTable derive_flip_table(const Circuit& decoder) { return derive_impl(decoder, false); }

FlipTable derive_flip_table_z(const Circuit& decoder) { return derive_impl(decoder, true); }

VetoOrForm recognize_veto_or(const FlipTable& t) {
  const auto ws = mask_wires(t.support_a);
  const size_t k = ws.size();
  if (k > 12) throw std::runtime_error("veto-OR recognizer: Z-sector support too large");

  std::vector<std::pair<uint16_t, bool>> pts{{0, false}};
  for (const FlipEntry& e : t.z_entries) pts.emplace_back(e.syndrome, e.flip);

  uint64_t total = 1;
  for (size_t i = 0; i < k; ++i) total *= 3;
  for (uint64_t a = 0; a < total; ++a) {
    uint16_t gmask = 0, vmask = 0;
    uint64_t rest = a;
    for (size_t i = 0; i < k; ++i) {
      const uint64_t digit = rest % 3;
      rest /= 3;
      if (digit == 1) gmask |= 1u << ws[i];
      else if (digit == 2) vmask |= 1u << ws[i];
    }
    if (!gmask) continue;
    bool ok = true;
    for (const auto& [s, flip] : pts) {
      const bool val = (s & gmask) != 0 && (s & vmask) == 0;
      if (val != flip) { ok = false; break; }
    }
    if (ok) return {true, gmask, vmask};
  }
  return {false, 0, 0};
}

Circuit synthesize_cfn(const FlipTable& t, CfnBackend backend) {
  Circuit c(t.n_wires);
  c.message = t.message;
  const auto z_syndromes = distinct_flip_syndromes(t.z_entries);
  const auto x_syndromes = distinct_flip_syndromes(t.x_entries);

  switch (backend) {
    case CfnBackend::ExactPattern:
      emit_exact(c, t.support_a, z_syndromes, t.message, false);
      break;
    case CfnBackend::Anf:
      emit_anf(c, t.support_a, z_syndromes, t.message, false);
      break;
    case CfnBackend::ControlledReset: {
      const VetoOrForm form = recognize_veto_or(t);
      if (!form.found)
        throw std::runtime_error(
            "controlled_reset backend: Z-sector flip function is not of the form "
            "OR(generators) AND NOT OR(vetoes); structure not expressible");
      const auto gen = mask_wires(form.generators);
      for (uint32_t v : mask_wires(form.vetoes))
        c.add(Gate::creset({v, true}, std::vector<uint32_t>(gen.begin(), gen.end())));
      for (size_t i = 0; i < gen.size(); ++i) {
        c.add(Gate::cz(gen[i], t.message));
        if (i + 1 < gen.size())
          c.add(Gate::creset({gen[i], true},
                             std::vector<uint32_t>(gen.begin() + i + 1, gen.end())));
      }
      break;
    }
  }

  if (backend == CfnBackend::Anf) emit_anf(c, t.support_b, x_syndromes, t.message, true);
  else emit_exact(c, t.support_b, x_syndromes, t.message, true);
  return c;
}

std::string FlipTable::str() const {
  std::ostringstream os;
  os << "flip-table wires " << n_wires << " message " << message << '\n';
  const auto dump = [&os](char name, const std::array<FlipEntry, 15>& entries, uint16_t support) {
    os << "sector " << name << "  support";
    if (support == 0) os << " -";
    for (uint32_t w : mask_wires(support)) os << ' ' << w;
    os << '\n';
    uint16_t flips = 0;
    for (uint32_t q = 0; q < 15; ++q) {
      const FlipEntry& e = entries[q];
      os << "  " << name << q << "  flip " << (e.flip ? 1 : 0) << "  syndrome";
      if (e.syndrome == 0) os << " -";
      for (uint32_t w : mask_wires(e.syndrome)) os << ' ' << w;
      os << '\n';
      if (e.flip) flips |= 1u << q;
    }
    os << "  flip-errors";
    if (flips == 0) os << " -";
    for (uint32_t w : mask_wires(flips)) os << ' ' << w;
    os << '\n';
  };
  dump('Z', z_entries, support_a);
  if (!z_only) dump('X', x_entries, support_b);
  else os << "sector X  omitted (Z-only derivation)\n";
  return os.str();
}

CfnReport verify_cfn(const Circuit& decoder, const Circuit& cfn) {
  const uint32_t n = decoder.n_wires;
  const uint32_t msg = decoder.message.value_or(0);
  Circuit prep(n);
  prep.message = msg;
  prep.add(Gate::h(msg));
  prep = concat(prep, invert(decoder));
  for (uint32_t w = 0; w < n; ++w) prep.add(Gate::t(w));

  Statevector ideal(n);
  ideal.run(prep);

  const double s = std::numbers::sqrt2 / 2.0;
  const std::complex<double> a0{s, 0};
  const std::complex<double> a1 = std::polar(s, std::numbers::pi / 4.0);

  CfnReport rep;
  rep.pass = true;
  rep.min_fidelity = 1.0;
  const auto probe = [&](char sector, uint32_t wire, const PauliString* err) {
    Statevector sv = ideal;
    if (err) sv.apply_pauli(*err);
    sv.run(decoder);
    sv.run(cfn);
    CfnCheck chk;
    chk.sector = sector;
    chk.wire = wire;
    chk.fidelity = sv.projector_expectation(msg, a0, a1);
    chk.pass = chk.fidelity >= 1.0 - 1e-10;
    rep.min_fidelity = std::min(rep.min_fidelity, chk.fidelity);
    rep.pass = rep.pass && chk.pass;
    rep.checks.push_back(chk);
  };

  probe('I', 0, nullptr);
  for (uint32_t w = 0; w < n; ++w) {
    for (char letter : {'X', 'Y', 'Z'}) {
      const PauliString err = PauliString::single(n, w, letter);
      probe(letter, w, &err);
    }
  }
  return rep;
}

}  // namespace mfd
