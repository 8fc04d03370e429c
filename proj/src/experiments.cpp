#include "mfd/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mfd/frame.hpp"
#include "mfd/statevector.hpp"
#include "mfd/tableau.hpp"

namespace mfd {

namespace {

constexpr uint32_t kN = 15;
constexpr uint32_t kPatterns = 1u << kN;

std::array<uint64_t, 16> binomials() {
  std::array<uint64_t, 16> b{};
  b[0] = 1;
  for (uint32_t w = 1; w <= kN; ++w) b[w] = b[w - 1] * (kN - w + 1) / w;
  return b;
}

std::complex<double> magic_amp0() { return {std::numbers::sqrt2 / 2.0, 0}; }
std::complex<double> magic_amp1() {
  return std::polar(std::numbers::sqrt2 / 2.0, std::numbers::pi / 4.0);
}

bool tableau_failure(const Setup& s, uint32_t pattern) {
  PauliString zf(s.code.n);
  zf.z = pattern;
  const TabRunResult r = tab_run(s.tab_circuit, zf, s.tab_insert);
  const uint32_t msg = s.bundle.decoder.message.value_or(0);
  const auto ex = r.tab.expectation(PauliString::single(s.code.n, msg, 'X'));
  if (!ex) throw std::logic_error("tableau failure readout is indeterminate");
  return *ex == -1;
}

bool sv_failure(const Statevector& base, const Setup& s, uint32_t pattern) {
  Statevector sv = base;
  sv.check_norm = false;
  PauliString zf(s.code.n);
  zf.z = pattern;
  sv.apply_pauli(zf);
  sv.run(s.decode);
  const uint32_t msg = s.bundle.decoder.message.value_or(0);
  return sv.projector_expectation(msg, magic_amp0(), magic_amp1()) < 0.5;
}

uint32_t draw_pattern(double p, std::mt19937_64& rng) {
  uint32_t pattern = 0;
  for (uint32_t w = 0; w < kN; ++w)
    if (uniform01(rng) < p) pattern |= 1u << w;
  return pattern;
}

bool draw_block(uint32_t level, double p, std::mt19937_64& rng,
                const std::vector<uint8_t>& lut) {
  if (level == 0) return uniform01(rng) < p;
  uint32_t pattern = 0;
  for (uint32_t w = 0; w < kN; ++w)
    if (draw_block(level - 1, p, rng, lut)) pattern |= 1u << w;
  return lut[pattern] != 0;
}

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

uint64_t Census::failing_sum() const {
  uint64_t s = 0;
  for (uint64_t f : failing) s += f;
  return s;
}

std::vector<uint8_t> failure_lut(const Circuit& decoder, const Circuit& cfn) {
  std::vector<uint8_t> lut(kPatterns);
  for (uint32_t f = 0; f < kPatterns; ++f)
    lut[f] = frame_run_circuit(decoder, cfn, PauliFrame{0, f}) ? 1 : 0;
  return lut;
}

Census census_from_lut(const std::vector<uint8_t>& lut) {
  Census c;
  c.total = binomials();
  for (uint32_t f = 0; f < kPatterns; ++f)
    if (lut[f]) ++c.failing[std::popcount(f)];
  return c;
}

Census exact_census(const FlipTable& table) {
  Census c;
  c.total = binomials();
  for (uint32_t f = 0; f < kPatterns; ++f) {
    uint16_t syn = 0;
    bool flip = false;
    for (uint32_t q = 0; q < kN; ++q)
      if ((f >> q) & 1) {
        syn ^= table.z_entries[q].syndrome;
        flip ^= table.z_entries[q].flip;
      }
    if (flip != table.z_fires(syn)) ++c.failing[std::popcount(f)];
  }
  return c;
}

Census exact_census(const Circuit& decoder, const Circuit& cfn) {
  return census_from_lut(failure_lut(decoder, cfn));
}

double curve_eval(const Census& c, double p) {
  double out = 0;
  for (uint32_t w = 0; w <= kN; ++w)
    if (c.failing[w])
      out += static_cast<double>(c.failing[w]) * std::pow(p, w) * std::pow(1 - p, kN - w);
  return out;
}

double compose_rounds(const Census& c, double p, uint32_t rounds) {
  double out = p;
  for (uint32_t r = 0; r < rounds; ++r) out = curve_eval(c, out);
  return out;
}

double analytic_rate(double coeff, uint32_t t, double p, uint32_t rounds) {
  const double e = std::pow(static_cast<double>(t) + 1.0, static_cast<double>(rounds));
  return std::pow(coeff, -1.0 / t) * std::pow(std::pow(coeff, 1.0 / t) * p, e);
}

ThresholdResult threshold_solve(const Census& c) {
  constexpr double kLo = 1e-4, kHi = 0.5;
  constexpr int kPoints = 4096;
  const auto g = [&c](double p) { return curve_eval(c, p) - p; };

  double prev_p = kLo;
  double prev_g = g(kLo);
  for (int i = 1; i < kPoints; ++i) {
    const double p = kLo * std::pow(kHi / kLo, static_cast<double>(i) / (kPoints - 1));
    const double gp = g(p);
    if ((prev_g <= 0) != (gp <= 0)) {
      double a = prev_p, b = p;
      double ga = prev_g;
      while (b - a > 1e-6) {
        const double m = 0.5 * (a + b);
        const double gm = g(m);
        if ((gm <= 0) == (ga <= 0)) {
          a = m;
          ga = gm;
        } else {
          b = m;
        }
      }
      return {true, 0.5 * (a + b), a, b};
    }
    prev_p = p;
    prev_g = gp;
  }
  return {false, 0, 0, 0};
}

Setup make_setup(CfnBackend backend) {
  Setup s;
  s.code = build_code();
  s.bundle = synthesize_encoder(s.code);
  s.table = derive_flip_table(s.bundle.decoder);
  s.backend = backend;
  s.cfn = synthesize_cfn(s.table, backend);

  const uint32_t msg = s.bundle.decoder.message.value_or(0);
  Circuit prep(s.code.n);
  prep.message = msg;
  prep.add(Gate::h(msg));
  prep = concat(prep, s.bundle.encoder);
  for (uint32_t w = 0; w < s.code.n; ++w) prep.add(Gate::t(w));
  s.prep = prep;
  s.decode = concat(s.bundle.decoder, s.cfn);
  s.tab_circuit = strip_t(concat(s.prep, s.decode));
  s.tab_insert = 1 + s.bundle.encoder.gates.size();
  return s;
}

const char* mode_name(McMode m) {
  switch (m) {
    case McMode::Frame: return "frame";
    case McMode::Tableau: return "tableau";
    case McMode::Statevector: return "sv";
  }
  return "?";
}

McMode mode_from_name(const std::string& name) {
  if (name == "frame") return McMode::Frame;
  if (name == "tableau") return McMode::Tableau;
  if (name == "sv") return McMode::Statevector;
  throw std::invalid_argument("unknown sampling mode '" + name + "'");
}

Wilson wilson(uint64_t failures, uint64_t trials) {
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(failures) / n;
  const double z2 = z * z;
  const double denom = 1 + z2 / n;
  const double center = (phat + z2 / (2 * n)) / denom;
  const double half = (z / denom) * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

uint64_t stream_seed(uint64_t master, uint64_t rounds, uint64_t trial) {
  return splitmix64(splitmix64(splitmix64(master) ^ rounds) ^ trial);
}

double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

McResult monte_carlo(const Setup& setup, double p, uint64_t trials, uint32_t rounds,
                     McMode mode, uint64_t seed, uint32_t workers) {
  if (trials == 0) throw std::invalid_argument("monte_carlo: trials must be positive");
  if (rounds == 0) throw std::invalid_argument("monte_carlo: rounds must be positive");
  if (mode != McMode::Frame && rounds != 1)
    throw std::invalid_argument("monte_carlo: only frame mode supports multiple rounds");
  workers = std::max<uint32_t>(1, workers);

  std::vector<uint8_t> lut;
  Census cen;
  if (mode == McMode::Frame) {
    lut = failure_lut(setup.bundle.decoder, setup.cfn);
    cen = census_from_lut(lut);
  } else {
    cen = exact_census(setup.bundle.decoder, setup.cfn);
  }

  Statevector base(setup.code.n);
  if (mode == McMode::Statevector) base.run(setup.prep);

  const auto run_range = [&](uint64_t t0, uint64_t t1) {
    uint64_t fails = 0;
    for (uint64_t t = t0; t < t1; ++t) {
      std::mt19937_64 rng(stream_seed(seed, rounds, t));
      bool fail = false;
      switch (mode) {
        case McMode::Frame:
          fail = draw_block(rounds, p, rng, lut);
          break;
        case McMode::Tableau:
          fail = tableau_failure(setup, draw_pattern(p, rng));
          break;
        case McMode::Statevector:
          fail = sv_failure(base, setup, draw_pattern(p, rng));
          break;
      }
      fails += fail ? 1 : 0;
    }
    return fails;
  };

  uint64_t failures = 0;
  if (workers == 1) {
    failures = run_range(0, trials);
  } else {
    const uint64_t chunk = (trials + workers - 1) / workers;
    std::vector<uint64_t> fails(workers, 0);
    std::vector<std::thread> pool;
    for (uint32_t k = 0; k < workers; ++k) {
      const uint64_t t0 = k * chunk;
      const uint64_t t1 = std::min<uint64_t>(trials, t0 + chunk);
      if (t0 >= t1) break;
      pool.emplace_back([&fails, &run_range, k, t0, t1] { fails[k] = run_range(t0, t1); });
    }
    for (std::thread& th : pool) th.join();
    for (uint64_t f : fails) failures += f;
  }

  McResult r;
  r.p = p;
  r.rounds = rounds;
  r.backend = setup.backend;
  r.mode = mode;
  r.trials = trials;
  r.failures = failures;
  r.estimate = static_cast<double>(failures) / static_cast<double>(trials);
  const Wilson ci = wilson(failures, trials);
  r.ci_low = ci.lo;
  r.ci_high = ci.hi;
  r.exact = compose_rounds(cen, p, rounds);
  r.analytic = analytic_rate(static_cast<double>(cen.failing[2]), 1, p, rounds);
  r.seed = seed;
  return r;
}

uint64_t sweep_agreement(const Setup& setup, uint32_t first, uint32_t last) {
  const uint32_t msg = setup.bundle.decoder.message.value_or(0);
  Statevector base(setup.code.n);
  base.run(setup.prep);

  uint64_t bad = 0;
  for (uint32_t f = first; f < last; ++f) {
    const bool fr = frame_run_circuit(setup.bundle.decoder, setup.cfn, PauliFrame{0, f});
    const bool tb = tableau_failure(setup, f);
    const bool sf = sv_failure(base, setup, f);
    if (fr != tb || tb != sf) ++bad;
  }
  (void)msg;
  return bad;
}

double coherent_probe(const Circuit& decoder, const Circuit& cfn, double theta,
                      const std::vector<uint32_t>& wires) {
  const uint32_t n = decoder.n_wires;
  const uint32_t msg = decoder.message.value_or(0);
  Circuit prep(n);
  prep.message = msg;
  prep.add(Gate::h(msg));
  prep = concat(prep, invert(decoder));
  for (uint32_t w = 0; w < n; ++w) prep.add(Gate::t(w));

  Statevector sv(n);
  sv.coherent_mode = true;
  sv.run(prep);
  for (uint32_t w : wires) sv.apply_rz(w, theta);
  sv.run(decoder);
  sv.run(cfn);
  return sv.projector_expectation(msg, magic_amp0(), magic_amp1());
}

std::string census_csv(const Census& c, const std::vector<std::string>& config) {
  std::ostringstream os;
  for (const std::string& line : config) os << "# " << line << '\n';
  os << "weight,total_patterns,failures\n";
  for (uint32_t w = 0; w <= kN; ++w)
    os << w << ',' << c.total[w] << ',' << c.failing[w] << '\n';
  return os.str();
}

std::string results_csv(const std::vector<McResult>& rows, const std::vector<std::string>& config) {
  std::ostringstream os;
  for (const std::string& line : config) os << "# " << line << '\n';
  os << "p,rounds,backend,mode,trials,failures,estimate,ci_low,ci_high,exact,analytic,seed\n";
  for (const McResult& r : rows) {
    os << fmt_g(r.p) << ',' << r.rounds << ',' << backend_name(r.backend) << ','
       << mode_name(r.mode) << ',' << r.trials << ',' << r.failures << ','
       << fmt_g(r.estimate) << ',' << fmt_g(r.ci_low) << ',' << fmt_g(r.ci_high) << ','
       << fmt_g(r.exact) << ',' << fmt_g(r.analytic) << ',' << r.seed << '\n';
  }
  return os.str();
}

}  // namespace mfd
