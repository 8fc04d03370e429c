#include "mfd/circuit.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mfd {

namespace {

const char* kNames[] = {"H", "S", "SDG", "X", "Y", "Z", "CX", "CZ", "SWAP",
                        "T", "TDG", "MCX", "MCZ", "CRESET"};

[[noreturn]] void parse_fail(size_t line, const std::string& token, const std::string& why) {
  throw std::runtime_error("circuit parse error at line " + std::to_string(line) + ", token '" +
                           token + "': " + why);
}

uint32_t parse_wire(size_t line, const std::string& token, const std::string& digits) {
  if (digits.empty()) parse_fail(line, token, "missing wire index");
  uint32_t w = 0;
  for (char ch : digits) {
    if (ch < '0' || ch > '9') parse_fail(line, token, "malformed wire index");
    w = w * 10 + static_cast<uint32_t>(ch - '0');
    if (w > 1000000) parse_fail(line, token, "wire index out of range");
  }
  return w;
}

}  // namespace

Gate Gate::mcx(std::vector<Control> cs, uint32_t target) {
  Gate g;
  g.kind = GateKind::MCX;
  g.controls = std::move(cs);
  g.targets = {target};
  return g;
}

Gate Gate::mcz(std::vector<Control> cs, uint32_t target) {
  Gate g;
  g.kind = GateKind::MCZ;
  g.controls = std::move(cs);
  g.targets = {target};
  return g;
}

Gate Gate::creset(Control c, std::vector<uint32_t> ts) {
  Gate g;
  g.kind = GateKind::CReset;
  g.controls = {c};
  g.targets = std::move(ts);
  return g;
}

Gate Gate::from_clifford(const CliffordGate& g) {
  Gate out;
  out.kind = static_cast<GateKind>(g.kind);
  out.a = g.a;
  out.b = g.b;
  return out;
}

CliffordGate Gate::clifford_gate() const {
  if (!is_clifford()) throw std::runtime_error("clifford_gate: " + name() + " is not Clifford");
  return {static_cast<CliffordKind>(kind), a, b};
}

std::string Gate::name() const { return kNames[static_cast<size_t>(kind)]; }

void Gate::validate(uint32_t n_wires) const {
  const auto in_range = [n_wires](uint32_t w) { return w < n_wires; };
  switch (kind) {
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::Swap:
      if (!in_range(a) || !in_range(b)) throw std::invalid_argument(name() + ": wire out of range");
      if (a == b) throw std::invalid_argument(name() + ": equal wires");
      if (!controls.empty() || !targets.empty())
        throw std::invalid_argument(name() + ": unexpected control/target lists");
      return;
    case GateKind::MCX:
    case GateKind::MCZ:
    case GateKind::CReset: {
      const size_t min_controls = 1;
      if (controls.size() < min_controls) throw std::invalid_argument(name() + ": needs a control");
      if (kind == GateKind::CReset) {
        if (controls.size() != 1) throw std::invalid_argument("CRESET: exactly one control");
        if (targets.empty()) throw std::invalid_argument("CRESET: needs at least one target");
      } else if (targets.size() != 1) {
        throw std::invalid_argument(name() + ": exactly one target");
      }
      std::set<uint32_t> seen;
      for (const Control& c : controls) {
        if (!in_range(c.wire)) throw std::invalid_argument(name() + ": control wire out of range");
        if (!seen.insert(c.wire).second) throw std::invalid_argument(name() + ": repeated wire");
      }
      for (uint32_t t : targets) {
        if (!in_range(t)) throw std::invalid_argument(name() + ": target wire out of range");
        if (!seen.insert(t).second) throw std::invalid_argument(name() + ": repeated wire");
      }
      return;
    }
    default:
      if (!in_range(a)) throw std::invalid_argument(name() + ": wire out of range");
      if (!controls.empty() || !targets.empty())
        throw std::invalid_argument(name() + ": unexpected control/target lists");
      return;
  }
}

void Circuit::add(Gate g) {
  g.validate(n_wires);
  gates.push_back(std::move(g));
}

void Circuit::validate() const {
  if (message && *message >= n_wires) throw std::invalid_argument("circuit: message wire out of range");
  for (const Gate& g : gates) g.validate(n_wires);
}

Circuit invert(const Circuit& c) {
  Circuit out(c.n_wires);
  out.message = c.message;
  out.gates.reserve(c.gates.size());
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    Gate g = *it;
    switch (g.kind) {
      case GateKind::S: g.kind = GateKind::Sdg; break;
      case GateKind::Sdg: g.kind = GateKind::S; break;
      case GateKind::T: g.kind = GateKind::Tdg; break;
      case GateKind::Tdg: g.kind = GateKind::T; break;
      case GateKind::CReset:
        throw std::runtime_error("invert: controlled reset is irreversible");
      default: break;
    }
    out.gates.push_back(std::move(g));
  }
  return out;
}

Circuit compile_polarity(const Circuit& c) {
  Circuit out(c.n_wires);
  out.message = c.message;
  for (const Gate& g : c.gates) {
    if (g.controls.empty()) {
      out.gates.push_back(g);
      continue;
    }
    std::vector<uint32_t> flips;
    Gate pos = g;
    for (Control& ctl : pos.controls) {
      if (!ctl.positive) {
        flips.push_back(ctl.wire);
        ctl.positive = true;
      }
    }
    for (uint32_t w : flips) out.gates.push_back(Gate::x(w));
    out.gates.push_back(std::move(pos));
    for (uint32_t w : flips) out.gates.push_back(Gate::x(w));
  }
  return out;
}

Circuit strip_t(const Circuit& c) {
  Circuit out(c.n_wires);
  out.message = c.message;
  for (const Gate& g : c.gates)
    if (g.kind != GateKind::T && g.kind != GateKind::Tdg) out.gates.push_back(g);
  return out;
}

Circuit concat(const Circuit& a, const Circuit& b) {
  if (a.n_wires != b.n_wires) throw std::invalid_argument("concat: wire count mismatch");
  Circuit out = a;
  if (!out.message) out.message = b.message;
  out.gates.insert(out.gates.end(), b.gates.begin(), b.gates.end());
  return out;
}

std::string serialize(const Circuit& c) {
  std::ostringstream os;
  os << "wires " << c.n_wires;
  if (c.message) os << "; message " << *c.message;
  os << '\n';
  for (const Gate& g : c.gates) {
    os << g.name();
    switch (g.kind) {
      case GateKind::CX:
      case GateKind::CZ:
      case GateKind::Swap:
        os << ' ' << g.a << ' ' << g.b;
        break;
      case GateKind::MCX:
      case GateKind::MCZ:
      case GateKind::CReset:
        for (const Control& ctl : g.controls)
          os << " c" << (ctl.positive ? '+' : '-') << ctl.wire;
        for (uint32_t t : g.targets) os << " t" << t;
        break;
      default:
        os << ' ' << g.a;
        break;
    }
    os << '\n';
  }
  return os.str();
}

Circuit parse_circuit(const std::string& text) {
  std::istringstream is(text);
  std::string raw;
  size_t line_no = 0;
  Circuit c;
  bool have_header = false;

  while (std::getline(is, raw)) {
    ++line_no;
    std::string line;
    for (char ch : raw) line += (ch == ';') ? ' ' : ch;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;

    if (!have_header) {
      if (tok[0] != "wires" || tok.size() < 2) parse_fail(line_no, tok[0], "expected 'wires N' header");
      c.n_wires = parse_wire(line_no, tok[1], tok[1]);
      if (tok.size() == 4 && tok[2] == "message") {
        c.message = parse_wire(line_no, tok[3], tok[3]);
      } else if (tok.size() != 2) {
        parse_fail(line_no, tok.back(), "malformed header");
      }
      have_header = true;
      continue;
    }

    const std::string& nm = tok[0];
    const auto it = std::find(std::begin(kNames), std::end(kNames), nm);
    if (it == std::end(kNames)) parse_fail(line_no, nm, "unknown gate");
    const GateKind kind = static_cast<GateKind>(it - std::begin(kNames));
    Gate g;
    g.kind = kind;

    if (kind == GateKind::MCX || kind == GateKind::MCZ || kind == GateKind::CReset) {
      for (size_t i = 1; i < tok.size(); ++i) {
        const std::string& t = tok[i];
        if (t.size() >= 3 && t[0] == 'c' && (t[1] == '+' || t[1] == '-')) {
          if (!g.targets.empty()) parse_fail(line_no, t, "control after target");
          g.controls.push_back({parse_wire(line_no, t, t.substr(2)), t[1] == '+'});
        } else if (t.size() >= 2 && t[0] == 't') {
          g.targets.push_back(parse_wire(line_no, t, t.substr(1)));
        } else {
          parse_fail(line_no, t, "expected c+N, c-N or tN");
        }
      }
    } else if (kind == GateKind::CX || kind == GateKind::CZ || kind == GateKind::Swap) {
      if (tok.size() != 3) parse_fail(line_no, nm, "expected two wire operands");
      g.a = parse_wire(line_no, tok[1], tok[1]);
      g.b = parse_wire(line_no, tok[2], tok[2]);
    } else {
      if (tok.size() != 2) parse_fail(line_no, nm, "expected one wire operand");
      g.a = parse_wire(line_no, tok[1], tok[1]);
    }

    try {
      g.validate(c.n_wires);
    } catch (const std::exception& e) {
      parse_fail(line_no, nm, e.what());
    }
    c.gates.push_back(std::move(g));
  }

  if (!have_header) throw std::runtime_error("circuit parse error: empty input, no 'wires' header");
  return c;
}

}  // namespace mfd
