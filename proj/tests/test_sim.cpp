#include "doctest.h"

#include <complex>
#include <random>

#include "dense_oracle.hpp"
#include "mfd/circuit.hpp"
#include "mfd/frame.hpp"
#include "mfd/statevector.hpp"
#include "mfd/tableau.hpp"

using namespace mfd;
using oracle::cd;

namespace {

Circuit random_unitary_circuit(uint32_t n, uint32_t len, bool with_mc, std::mt19937_64& rng) {
  Circuit c(n);
  std::uniform_int_distribution<int> pick(0, with_mc ? 11 : 10);
  std::uniform_int_distribution<uint32_t> wire(0, n - 1);
  for (uint32_t i = 0; i < len; ++i) {
    const int k = pick(rng);
    if (k < 9) {
      c.add(oracle::random_clifford_gate(n, rng));
    } else if (k == 9) {
      c.add(Gate::t(wire(rng)));
    } else if (k == 10) {
      c.add(Gate::tdg(wire(rng)));
    } else {
      const uint32_t t = wire(rng);
      std::vector<Control> cs;
      for (uint32_t w = 0; w < n; ++w)
        if (w != t && (rng() & 1)) cs.push_back({w, (rng() & 1) != 0});
      if (cs.empty()) cs.push_back({(t + 1) % n, true});
      c.add((rng() & 1) ? Gate::mcx(cs, t) : Gate::mcz(cs, t));
    }
  }
  return c;
}

cd inner(const std::vector<cd>& a, const std::vector<cd>& b) {
  cd s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace

TEST_CASE("statevector matches the dense unitary on mixed circuits") {
  std::mt19937_64 rng(51);
  for (int it = 0; it < 20; ++it) {
    const uint32_t n = 4;
    const Circuit c = random_unitary_circuit(n, 22, true, rng);
    const uint64_t input = rng() & 0xf;
    Statevector sv(n, input);
    sv.coherent_mode = true;  // multi-controlled gates act unitarily
    sv.run(c);
    oracle::Vec v(1u << n);
    v[input] = 1;
    v = oracle::apply(oracle::circuit_unitary(c), v);
    REQUIRE(oracle::max_abs_diff(v, sv.amplitudes()) < 1e-11);
  }
}

TEST_CASE("apply_pauli and apply_rz match dense operators") {
  std::mt19937_64 rng(53);
  for (int it = 0; it < 30; ++it) {
    const uint32_t n = 3;
    const Circuit c = random_unitary_circuit(n, 10, false, rng);
    Statevector sv(n);
    sv.run(c);
    oracle::Vec v(sv.amplitudes());

    const PauliString p = oracle::random_pauli(n, rng);
    sv.apply_pauli(p);
    v = oracle::apply(oracle::pauli_matrix(p), v);
    REQUIRE(oracle::max_abs_diff(v, sv.amplitudes()) < 1e-12);

    const double theta = 0.777 * (it + 1);
    const uint32_t w = it % n;
    sv.apply_rz(w, theta);
    oracle::Mat rz = oracle::eye(1u << n);
    for (uint64_t i = 0; i < rz.size(); ++i)
      rz[i][i] = std::polar(1.0, ((i >> w) & 1 ? 0.5 : -0.5) * theta);
    v = oracle::apply(rz, v);
    REQUIRE(oracle::max_abs_diff(v, sv.amplitudes()) < 1e-12);
  }
}

TEST_CASE("projector_expectation equals the reduced density matrix form") {
  std::mt19937_64 rng(59);
  for (int it = 0; it < 20; ++it) {
    const uint32_t n = 4;
    Statevector sv(n);
    sv.run(random_unitary_circuit(n, 16, false, rng));
    const uint32_t w = it % n;
    const cd phi0 = std::polar(0.6, 0.3 * it);
    const cd phi1 = std::polar(0.8, -0.9 * it);
    cd r00 = 0, r01 = 0, r11 = 0;
    const auto& a = sv.amplitudes();
    const uint64_t mw = 1ull << w;
    for (uint64_t i = 0; i < a.size(); ++i) {
      if (i & mw) continue;
      r00 += a[i] * std::conj(a[i]);
      r01 += a[i] * std::conj(a[i | mw]);
      r11 += a[i | mw] * std::conj(a[i | mw]);
    }
    const double want = std::real(std::conj(phi0) * r00 * phi0 + std::conj(phi0) * r01 * phi1 +
                                  std::conj(phi1) * std::conj(r01) * phi0 +
                                  std::conj(phi1) * r11 * phi1);
    REQUIRE(sv.projector_expectation(w, phi0, phi1) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("controlled reset, trajectory mode") {
  SUBCASE("positive control fires and clears the target") {
    Statevector sv(2, 0b11);
    sv.apply(Gate::creset({0, true}, {1}));
    CHECK(std::abs(sv.amplitudes()[0b01] - cd{1, 0}) < 1e-15);
  }
  SUBCASE("unfired control leaves the target") {
    Statevector sv(2, 0b10);
    sv.apply(Gate::creset({0, true}, {1}));
    CHECK(std::abs(sv.amplitudes()[0b10] - cd{1, 0}) < 1e-15);
  }
  SUBCASE("negative control fires on |0>") {
    Statevector sv(2, 0b10);
    sv.apply(Gate::creset({0, false}, {1}));
    CHECK(std::abs(sv.amplitudes()[0b00] - cd{1, 0}) < 1e-15);
  }
  SUBCASE("superposed control wire is rejected") {
    Statevector sv(2);
    sv.apply(Gate::h(0));
    CHECK_THROWS_AS(sv.apply(Gate::creset({0, true}, {1})), std::runtime_error);
  }
  SUBCASE("superposed target wire is rejected when the reset fires") {
    Statevector sv(2, 0b01);
    sv.apply(Gate::h(1));
    CHECK_THROWS_AS(sv.apply(Gate::creset({0, true}, {1})), std::runtime_error);
  }
  SUBCASE("multi-controlled gates also require basis controls") {
    Statevector sv(2);
    sv.apply(Gate::h(0));
    CHECK_THROWS_AS(sv.apply(Gate::mcx({{0, true}}, 1)), std::runtime_error);
  }
}

TEST_CASE("controlled reset, coherent mode") {
  Statevector sv(2);
  sv.coherent_mode = true;
  sv.apply(Gate::h(0));
  sv.apply(Gate::x(1));
  sv.apply(Gate::creset({0, true}, {1}));
  REQUIRE(sv.n() == 3);  // one ancilla grown for the swapped-out target
  const double s = 1.0 / std::numbers::sqrt2;
  CHECK(std::abs(sv.amplitudes()[0b010] - cd{s, 0}) < 1e-12);
  CHECK(std::abs(sv.amplitudes()[0b101] - cd{s, 0}) < 1e-12);
  // the message-side reduced state: wire 1 holds |1> with prob 1/2
  CHECK(sv.prob_one(1) == doctest::Approx(0.5).epsilon(1e-12));

  Statevector cap(19);
  cap.coherent_mode = true;
  cap.apply(Gate::x(0));
  cap.apply(Gate::creset({0, true}, {1}));  // grows to 20, at the cap
  CHECK_THROWS_WITH_AS(cap.apply(Gate::creset({0, true}, {2})), doctest::Contains("cap"),
                       std::runtime_error);
}

TEST_CASE("norm drift detection can be toggled") {
  Statevector sv(1);
  sv[0] = {2, 0};  // deliberately unnormalized
  CHECK_THROWS_WITH_AS(sv.apply(Gate::h(0)), doctest::Contains("norm"), std::runtime_error);
  Statevector sv2(1);
  sv2[0] = {2, 0};
  sv2.check_norm = false;
  CHECK_NOTHROW(sv2.apply(Gate::h(0)));
}

TEST_CASE("tableau expectations agree with the statevector on random Clifford circuits") {
  std::mt19937_64 rng(61);
  for (int it = 0; it < 15; ++it) {
    const uint32_t n = 5;
    const Circuit c = oracle::random_clifford_circuit(n, 30, rng);
    Tableau tab(n);
    for (const Gate& g : c.gates) tab.apply(g.clifford_gate());
    tab.check_rows();
    Statevector sv(n);
    sv.run(c);

    for (int k = 0; k < 40; ++k) {
      PauliString p = oracle::random_pauli(n, rng, false);
      if (rng() & 1) p.phase_pow = 2;
      Statevector tmp = sv;
      tmp.apply_pauli(p);
      const cd val = inner(sv.amplitudes(), tmp.amplitudes());
      const auto exp = tab.expectation(p);
      if (exp) {
        CHECK(std::abs(val - cd{static_cast<double>(*exp), 0}) < 1e-9);
      } else {
        CHECK(std::abs(val) < 1e-9);
      }
    }
    for (uint32_t w = 0; w < n; ++w) {
      const auto zv = tab.z_value(w);
      const double p1 = sv.prob_one(w);
      if (zv) {
        CHECK(p1 == doctest::Approx(static_cast<double>(*zv)).epsilon(1e-9));
      } else {
        CHECK(p1 == doctest::Approx(0.5).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("tableau pauli application flips signs like the statevector") {
  std::mt19937_64 rng(67);
  const uint32_t n = 4;
  const Circuit c = oracle::random_clifford_circuit(n, 20, rng);
  Tableau tab(n);
  for (const Gate& g : c.gates) tab.apply(g.clifford_gate());
  Statevector sv(n);
  sv.run(c);
  const PauliString p = oracle::random_pauli(n, rng, false);
  tab.apply_pauli(p);
  sv.apply_pauli(p);
  for (int k = 0; k < 30; ++k) {
    const PauliString q = oracle::random_pauli(n, rng, false);
    Statevector tmp = sv;
    tmp.apply_pauli(q);
    const cd val = inner(sv.amplitudes(), tmp.amplitudes());
    const auto exp = tab.expectation(q);
    if (exp) {
      CHECK(std::abs(val - cd{static_cast<double>(*exp), 0}) < 1e-9);
    } else {
      CHECK(std::abs(val) < 1e-9);
    }
  }
}

TEST_CASE("tab_run captures the syndrome before corrections and acts classically") {
  Circuit c(3);
  c.message = 0;
  c.add(Gate::x(0));
  c.add(Gate::mcx({{0, true}}, 1));

  SUBCASE("no flips") {
    const TabRunResult r = tab_run(c, PauliString(3));
    REQUIRE(r.syndrome == std::vector<uint8_t>{0, 0});
    CHECK(r.tab.z_value(1) == 1);  // fired
  }
  SUBCASE("x flip on wire 1 shows in the syndrome") {
    const TabRunResult r = tab_run(c, PauliString::single(3, 1, 'X'));
    REQUIRE(r.syndrome == std::vector<uint8_t>{1, 0});
    CHECK(r.tab.z_value(1) == 0);  // 1 from the flip, toggled back by the fired gate
  }
  SUBCASE("controlled reset clears a flipped target") {
    Circuit cr(3);
    cr.message = 0;
    cr.add(Gate::x(0));
    cr.add(Gate::creset({0, true}, {1, 2}));
    const TabRunResult r = tab_run(cr, PauliString::single(3, 1, 'X'));
    REQUIRE(r.syndrome == std::vector<uint8_t>{1, 0});
    CHECK(r.tab.z_value(1) == 0);
    CHECK(r.tab.z_value(2) == 0);
  }
  SUBCASE("insertion point places the flips mid-circuit") {
    Circuit mid(2);
    mid.add(Gate::x(0));
    mid.add(Gate::cx(0, 1));
    // X0 inserted after the first gate cancels its effect on wire 0
    const TabRunResult r = tab_run(mid, PauliString::single(2, 0, 'X'), 1);
    CHECK(r.tab.z_value(0) == 0);
    CHECK(r.tab.z_value(1) == 0);
  }
  SUBCASE("t gates are rejected") {
    Circuit t(2);
    t.add(Gate::t(0));
    CHECK_THROWS_AS(tab_run(t, PauliString(2)), std::runtime_error);
  }
  SUBCASE("indeterminate control is rejected") {
    Circuit h(2);
    h.add(Gate::h(0));
    h.add(Gate::mcx({{0, true}}, 1));
    CHECK_THROWS_AS(tab_run(h, PauliString(2)), std::runtime_error);
  }
}

TEST_CASE("frame propagation matches Clifford conjugation on the flip bits") {
  std::mt19937_64 rng(71);
  for (int it = 0; it < 40; ++it) {
    const uint32_t n = 6;
    const Circuit c = oracle::random_clifford_circuit(n, 25, rng);
    PauliString p = oracle::random_pauli(n, rng, false);
    const PauliString img = conjugate_through_circuit(p, c, Direction::Forward);
    PauliFrame f{p.x, p.z};
    for (const Gate& g : c.gates) frame_apply(f, g);
    CHECK(f.x == img.x);
    CHECK(f.z == img.z);
  }
}

TEST_CASE("frame semantics of the non-Clifford and classical gates") {
  SUBCASE("T passes Z flips and rejects X flips") {
    PauliFrame f{0, 0b1};
    CHECK_NOTHROW(frame_apply(f, Gate::t(0)));
    CHECK(f.z == 0b1);
    PauliFrame g{0b1, 0};
    CHECK_THROWS_AS(frame_apply(g, Gate::t(0)), std::runtime_error);
  }
  SUBCASE("controls read the X bits with polarity") {
    PauliFrame f{0b10, 0};
    frame_apply(f, Gate::mcx({{1, true}}, 0));
    CHECK(f.x == 0b11);  // fired, toggles target x
    PauliFrame g{0b10, 0};
    frame_apply(g, Gate::mcx({{1, false}}, 0));
    CHECK(g.x == 0b10);  // value 1 on a negative control: no fire
    PauliFrame h{0, 0};
    frame_apply(h, Gate::mcx({{1, false}}, 0));
    CHECK(h.x == 0b01);  // value 0 on a negative control: fire
  }
  SUBCASE("fired MCZ toggles the target Z bit") {
    PauliFrame f{0b10, 0};
    frame_apply(f, Gate::mcz({{1, true}}, 0));
    CHECK(f.z == 0b01);
    CHECK(f.x == 0b10);
  }
  SUBCASE("fired reset clears the target bits") {
    PauliFrame f{0b110, 0b010};
    frame_apply(f, Gate::creset({2, true}, {1}));
    CHECK(f.x == 0b100);
    CHECK(f.z == 0b000);
  }
  SUBCASE("unfired reset leaves the target bits") {
    PauliFrame f{0b010, 0b010};
    frame_apply(f, Gate::creset({2, true}, {1}));
    CHECK(f.x == 0b010);
    CHECK(f.z == 0b010);
  }
}
