#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mfd/circuit.hpp"
#include "mfd/code.hpp"
#include "mfd/flip_table.hpp"

namespace mfd {

/* Failure counts of the single-block protocol under independent Z noise,
 * bucketed by input-pattern weight. total[w] = C(15, w). */
struct Census {
  std::array<uint64_t, 16> failing{};
  std::array<uint64_t, 16> total{};
  uint64_t failing_sum() const;
};

/* Per-pattern failure bit for all 2^15 Z patterns, literal frame execution
 * of decoder then correction block. */
std::vector<uint8_t> failure_lut(const Circuit& decoder, const Circuit& cfn);
Census census_from_lut(const std::vector<uint8_t>& lut);

/* Folded table semantics: syndromes and direct flips XOR across the pattern,
 * correction fires once on the folded syndrome. */
Census exact_census(const FlipTable& table);
/* Literal gate-by-gate path. Must agree with the folded path. */
Census exact_census(const Circuit& decoder, const Circuit& cfn);

/* Output error rate: sum_w failing[w] p^w (1-p)^(15-w). */
double curve_eval(const Census& c, double p);
/* r-fold self-composition of the curve; rounds = 0 returns p. */
double compose_rounds(const Census& c, double p, uint32_t rounds);
/* Closed form c^(-1/t) (c^(1/t) p)^((t+1)^rounds) for a curve ~ c p^(t+1). */
double analytic_rate(double coeff, uint32_t t, double p, uint32_t rounds);

struct ThresholdResult {
  bool found = false;
  double root = 0;
  double lo = 0;
  double hi = 0;
};
/* Smallest crossing of curve_eval(p) = p on (1e-4, 0.5): log-grid scan for a
 * sign change, then bisection to a bracket under 1e-6. found = false when no
 * sign change shows up on the grid. */
ThresholdResult threshold_solve(const Census& c);

/* Everything the protocol runs need, synthesized once. prep is H(message),
 * encoder, then the non-Clifford phase layer on every wire; decode is the
 * decoder followed by the correction block; tab_circuit is the T-stripped
 * full protocol with tab_insert the gate index where the error layer lands. */
struct Setup {
  StabilizerCode code;
  EncoderBundle bundle;
  FlipTable table;
  CfnBackend backend{};
  Circuit cfn;
  Circuit prep;
  Circuit decode;
  Circuit tab_circuit;
  size_t tab_insert = 0;
};
Setup make_setup(CfnBackend backend);

enum class McMode { Frame, Tableau, Statevector };
const char* mode_name(McMode m);
McMode mode_from_name(const std::string& name);

struct McResult {
  double p = 0;
  uint32_t rounds = 1;
  CfnBackend backend{};
  McMode mode{};
  uint64_t trials = 0;
  uint64_t failures = 0;
  double estimate = 0;
  double ci_low = 0;
  double ci_high = 0;
  double exact = 0;     // composed census value at p
  double analytic = 0;  // closed form seeded by the weight-2 census count
  uint64_t seed = 0;
};

struct Wilson {
  double lo = 0;
  double hi = 0;
};
/* 95% score interval; collapses to [0, z^2/(n+z^2)] at zero failures. */
Wilson wilson(uint64_t failures, uint64_t trials);

uint64_t splitmix64(uint64_t x);
/* Per-trial RNG stream; identical regardless of worker count or partition. */
uint64_t stream_seed(uint64_t master, uint64_t rounds, uint64_t trial);
double uniform01(std::mt19937_64& rng);

/* Frame mode supports any round count (each round-r input is drawn from an
 * independent round-(r-1) block; a trial consumes 15^rounds leaf draws).
 * Tableau and statevector modes are single-round. For rounds = 1 all three
 * modes consume the same draws, so a fixed seed gives identical counts. */
McResult monte_carlo(const Setup& setup, double p, uint64_t trials, uint32_t rounds,
                     McMode mode, uint64_t seed, uint32_t workers = 1);

/* Per-pattern agreement of frame, tableau and statevector failure bits over
 * patterns [first, last). Returns the number of disagreeing patterns. */
uint64_t sweep_agreement(const Setup& setup, uint32_t first = 0, uint32_t last = 1u << 15);

/* Coherent-error probe: exp(-i theta Z/2) on each listed wire between
 * encoding and decoding, statevector in coherent mode, returns the message
 * fidelity against the ideal output state. */
double coherent_probe(const Circuit& decoder, const Circuit& cfn, double theta,
                      const std::vector<uint32_t>& wires);

/* CSV emitters. config lines are echoed as '#' comments; doubles print with
 * %.17g; no timestamps, so equal inputs give byte-equal output. */
std::string census_csv(const Census& c, const std::vector<std::string>& config);
std::string results_csv(const std::vector<McResult>& rows, const std::vector<std::string>& config);

}  // namespace mfd
