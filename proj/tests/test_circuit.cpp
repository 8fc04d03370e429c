#include "doctest.h"

#include <random>

#include "dense_oracle.hpp"
#include "mfd/circuit.hpp"

using namespace mfd;

namespace {

Circuit random_mixed_circuit(uint32_t n, uint32_t len, std::mt19937_64& rng) {
  Circuit c(n);
  std::uniform_int_distribution<int> pick(0, 11);
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

}  // namespace

TEST_CASE("gate validation rejects malformed gates") {
  Circuit c(4);
  CHECK_THROWS_AS(c.add(Gate::h(4)), std::invalid_argument);
  CHECK_THROWS_AS(c.add(Gate::cx(1, 1)), std::invalid_argument);
  CHECK_THROWS_AS(c.add(Gate::mcx({{0, true}, {0, false}}, 2)), std::invalid_argument);
  CHECK_THROWS_AS(c.add(Gate::mcx({{2, true}}, 2)), std::invalid_argument);
  CHECK_THROWS_AS(c.add(Gate::mcx({}, 2)), std::invalid_argument);
  CHECK_THROWS_AS(c.add(Gate::creset({1, true}, {})), std::invalid_argument);
  CHECK_THROWS_AS(c.add(Gate::creset({1, true}, {1})), std::invalid_argument);
  CHECK_NOTHROW(c.add(Gate::creset({1, true}, {0, 2, 3})));
}

TEST_CASE("invert is a dense-matrix inverse and an involution") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 20; ++it) {
    const Circuit c = random_mixed_circuit(3, 14, rng);
    const Circuit inv = invert(c);
    CHECK(invert(inv) == c);
    const oracle::Mat prod = oracle::mul(oracle::circuit_unitary(inv), oracle::circuit_unitary(c));
    REQUIRE(oracle::max_abs_diff(prod, oracle::eye(8)) < 1e-11);
  }
}

TEST_CASE("invert rejects controlled reset") {
  Circuit c(3);
  c.add(Gate::creset({0, true}, {1}));
  CHECK_THROWS_WITH_AS(invert(c), doctest::Contains("irreversible"), std::runtime_error);
}

TEST_CASE("compile_polarity preserves the unitary and leaves only positive controls") {
  std::mt19937_64 rng(37);
  for (int it = 0; it < 20; ++it) {
    const Circuit c = random_mixed_circuit(4, 10, rng);
    const Circuit flat = compile_polarity(c);
    for (const Gate& g : flat.gates)
      for (const Control& ctl : g.controls) CHECK(ctl.positive);
    REQUIRE(oracle::max_abs_diff(oracle::circuit_unitary(c), oracle::circuit_unitary(flat)) <
            1e-11);
  }
}

TEST_CASE("strip_t drops exactly the non-Clifford phase gates") {
  Circuit c(2);
  c.add(Gate::h(0));
  c.add(Gate::t(0));
  c.add(Gate::cx(0, 1));
  c.add(Gate::tdg(1));
  c.add(Gate::s(1));
  const Circuit s = strip_t(c);
  REQUIRE(s.gates.size() == 3);
  CHECK(s.gates[0] == Gate::h(0));
  CHECK(s.gates[1] == Gate::cx(0, 1));
  CHECK(s.gates[2] == Gate::s(1));
}

TEST_CASE("concat joins gate lists and carries the message label") {
  Circuit a(3);
  a.message = 1;
  a.add(Gate::h(0));
  Circuit b(3);
  b.add(Gate::cx(0, 2));
  const Circuit ab = concat(a, b);
  CHECK(ab.gates.size() == 2);
  CHECK(ab.message == 1u);
  Circuit wrong(4);
  CHECK_THROWS_AS(concat(a, wrong), std::invalid_argument);
}

TEST_CASE("serialize/parse round-trips arbitrary circuits") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 25; ++it) {
    Circuit c = random_mixed_circuit(5, 12, rng);
    if (rng() & 1) c.message = static_cast<uint32_t>(rng() % 5);
    if (rng() & 1) c.add(Gate::creset({0, (rng() & 1) != 0}, {1, 3}));
    const std::string text = serialize(c);
    const Circuit back = parse_circuit(text);
    CHECK(back == c);
    CHECK(serialize(back) == text);
  }
}

TEST_CASE("parse accepts comments, blank lines and the documented forms") {
  const std::string text =
      "# correction block sample\n"
      "wires 15; message 0\n"
      "\n"
      "H 3\n"
      "SDG 3\n"
      "CX 2 7\n"
      "MCX c+3 c-14 t0\n"
      "MCZ c+1 c+2 c-14 t0\n"
      "CRESET c+14 t1 t2 t8\n";
  const Circuit c = parse_circuit(text);
  REQUIRE(c.gates.size() == 6);
  CHECK(c.n_wires == 15);
  CHECK(c.message == 0u);
  CHECK(c.gates[3] == Gate::mcx({{3, true}, {14, false}}, 0));
  CHECK(c.gates[5] == Gate::creset({14, true}, {1, 2, 8}));
  const std::string canon = serialize(c);
  CHECK(parse_circuit(canon) == c);
  CHECK(serialize(parse_circuit(canon)) == canon);
}

TEST_CASE("parse errors carry the line number and offending token") {
  CHECK_THROWS_WITH_AS(parse_circuit("H 0\n"), doctest::Contains("line 1"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_circuit("wires 3\nFLIP 0\n"), doctest::Contains("FLIP"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_circuit("wires 3\nH 7\n"), doctest::Contains("line 2"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_circuit("wires 3\nMCX t0 c+1\n"), doctest::Contains("t0"),
                       std::invalid_argument);
  CHECK_THROWS_AS(parse_circuit("wires 3\nCX 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_circuit("wires 3\nH 0 extra\n"), std::invalid_argument);
}
