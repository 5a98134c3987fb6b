#include "odecirc/circuit.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace odecirc {

namespace {

const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::InputPos: return "in";
    case GateKind::InputNeg: return "nin";
    case GateKind::And: return "and";
    case GateKind::Or: return "or";
    case GateKind::Maj: return "maj";
  }
  return "?";
}

std::optional<GateKind> kind_by_name(const std::string& s) {
  if (s == "in") return GateKind::InputPos;
  if (s == "nin") return GateKind::InputNeg;
  if (s == "and") return GateKind::And;
  if (s == "or") return GateKind::Or;
  if (s == "maj") return GateKind::Maj;
  return std::nullopt;
}

// Expected gate kind at a level >= 1, or nullopt when the level is out of
// pattern (level 0 in TC's Maj slot).
std::optional<GateKind> level_kind(Variant v, unsigned level) {
  if (level == 0) return std::nullopt;
  if (v == Variant::AC) return level % 2 == 1 ? GateKind::Or : GateKind::And;
  switch (level % 3) {
    case 1: return GateKind::Or;
    case 2: return GateKind::And;
    default: return GateKind::Maj;
  }
}

}  // namespace

uint64_t Circuit::id_space() const {
  unsigned __int128 s = 1;
  for (unsigned i = 0; i < k; ++i) {
    s *= n_inputs;
    if (s > (static_cast<unsigned __int128>(1) << 62)) return 1ull << 62;
  }
  return static_cast<uint64_t>(s);
}

const Gate* Circuit::find(uint64_t id) const {
  auto it = std::lower_bound(
      gates.begin(), gates.end(), id,
      [](const Gate& g, uint64_t v) { return g.id < v; });
  if (it == gates.end() || it->id != id) return nullptr;
  return &*it;
}

BitVector BitVector::from_value(const Value& v, unsigned width) {
  BitVector b;
  b.bits.resize(width);
  for (unsigned i = 0; i < width; ++i) b.bits[i] = bit_of(v, i) != 0;
  return b;
}

Value BitVector::to_value() const {
  Value v = 0;
  for (unsigned i = 0; i < bits.size(); ++i)
    if (bits[i]) boost::multiprecision::bit_set(v, i);
  return v;
}

std::string BitVector::to_string() const {
  std::string s;
  s.reserve(bits.size());
  for (bool b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::optional<BitVector> BitVector::parse(const std::string& s) {
  BitVector b;
  b.bits.reserve(s.size());
  for (char c : s) {
    if (c == '0') b.bits.push_back(false);
    else if (c == '1') b.bits.push_back(true);
    else return std::nullopt;
  }
  return b;
}

std::vector<Diagnostic> validate_normal_form(const Circuit& c) {
  std::vector<Diagnostic> ds;
  auto err = [&](const std::string& code, const std::string& msg) {
    ds.push_back({Severity::Error, code, msg, ""});
  };

  if (c.n_inputs == 0) err("InvalidCircuit", "circuit has no inputs");
  uint64_t space = c.id_space();
  const unsigned n = c.n_inputs;

  std::unordered_map<uint64_t, const Gate*> by_id;
  for (const auto& g : c.gates) {
    if (by_id.count(g.id)) err("InvalidCircuit", "duplicate gate id " + std::to_string(g.id));
    by_id[g.id] = &g;
    if (g.id >= space)
      err("InvalidCircuit", "gate id " + std::to_string(g.id) +
                                " outside index space n^k = " + std::to_string(space));
    if (g.level > c.depth)
      err("InvalidCircuit", "gate " + std::to_string(g.id) + " above depth");
  }

  // level 0: exactly the inputs and their negations
  for (unsigned i = 0; i < n; ++i) {
    auto* g = by_id.count(i) ? by_id[i] : nullptr;
    if (!g || g->kind != GateKind::InputPos || g->level != 0)
      err("InvalidCircuit", "input gate " + std::to_string(i) + " missing or malformed");
    auto* ng = by_id.count(n + i) ? by_id[n + i] : nullptr;
    if (!ng || ng->kind != GateKind::InputNeg || ng->level != 0)
      err("InvalidCircuit", "negated input gate " + std::to_string(n + i) + " missing or malformed");
  }

  for (const auto& g : c.gates) {
    bool is_input = g.kind == GateKind::InputPos || g.kind == GateKind::InputNeg;
    if (g.level == 0) {
      if (!is_input)
        err("InvalidCircuit", "non-input gate " + std::to_string(g.id) + " at level 0");
      if (g.id >= 2ull * n)
        err("InvalidCircuit", "level-0 gate " + std::to_string(g.id) +
                                  " outside id range 0..2n-1");
      if (!g.preds.empty())
        err("InvalidCircuit", "input gate with predecessors");
      continue;
    }
    if (is_input)
      err("InvalidCircuit", "input gate above level 0");
    auto want = level_kind(c.variant, g.level);
    if (!want || g.kind != *want)
      err("InvalidCircuit", "gate " + std::to_string(g.id) + " kind does not match level " +
                                std::to_string(g.level));
    if (g.preds.empty())
      err("InvalidCircuit", "gate " + std::to_string(g.id) + " has no predecessors");
    for (uint64_t p : g.preds) {
      auto it = by_id.find(p);
      if (it == by_id.end()) {
        err("InvalidCircuit", "dangling predecessor " + std::to_string(p));
      } else if (it->second->level + 1 != g.level) {
        err("InvalidCircuit", "edge " + std::to_string(p) + " -> " + std::to_string(g.id) +
                                  " skips levels");
      }
    }
  }

  if (c.variant == Variant::AC && c.depth % 2 != 0)
    err("InvalidCircuit", "AC depth must be even");

  if (c.outputs.empty()) err("InvalidCircuit", "no outputs");
  const uint64_t m = c.outputs.size();
  if (c.depth == 0) {
    for (uint64_t o : c.outputs)
      if (!by_id.count(o) || by_id[o]->level != 0)
        err("InvalidCircuit", "depth-0 output must be a level-0 gate");
  } else {
    // outputs are exactly the level-d gates, at the top of the id space
    std::set<uint64_t> outs(c.outputs.begin(), c.outputs.end());
    for (const auto& g : c.gates) {
      if (g.level == c.depth && !outs.count(g.id))
        err("InvalidCircuit", "level-d gate " + std::to_string(g.id) + " is not an output");
      if (g.level != c.depth && outs.count(g.id))
        err("InvalidCircuit", "output " + std::to_string(g.id) + " below depth");
    }
    for (uint64_t i = 0; i < m; ++i) {
      uint64_t want = space - m + i;
      if (i >= c.outputs.size() || c.outputs[i] != want) {
        err("InvalidCircuit", "outputs must occupy ids n^k-m .. n^k-1 contiguously");
        break;
      }
      if (!by_id.count(want)) err("InvalidCircuit", "output gate missing");
    }
  }
  return ds;
}

Simulator::Simulator(const Circuit& c) : n_inputs_(c.n_inputs) {
  auto diags = validate_normal_form(c);
  if (has_errors(diags))
    throw CircuitError("InvalidCircuit", format_diagnostic(diags.front()));

  std::vector<const Gate*> order;
  order.reserve(c.gates.size());
  for (const auto& g : c.gates) order.push_back(&g);
  std::stable_sort(order.begin(), order.end(),
                   [](const Gate* a, const Gate* b) { return a->level < b->level; });

  std::unordered_map<uint64_t, uint32_t> rank;
  rank.reserve(order.size() * 2);
  rows_.reserve(order.size());
  for (const Gate* g : order) {
    Row r;
    r.kind = g->kind;
    if (g->kind == GateKind::InputPos) {
      r.input_index = static_cast<uint32_t>(g->id);
    } else if (g->kind == GateKind::InputNeg) {
      r.input_index = static_cast<uint32_t>(g->id - c.n_inputs);
    } else {
      r.pred_ranks.reserve(g->preds.size());
      for (uint64_t p : g->preds) r.pred_ranks.push_back(rank.at(p));
    }
    rank[g->id] = static_cast<uint32_t>(rows_.size());
    rows_.push_back(std::move(r));
  }
  for (uint64_t o : c.outputs) output_rows_.push_back(rank.at(o));
}

BitVector Simulator::run(const BitVector& input) const {
  if (input.width() != n_inputs_)
    throw CircuitError("WidthMismatch",
                       "input width " + std::to_string(input.width()) +
                           " != " + std::to_string(n_inputs_));
  std::vector<char> val(rows_.size());
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Row& r = rows_[i];
    switch (r.kind) {
      case GateKind::InputPos:
        val[i] = input.bits[r.input_index];
        break;
      case GateKind::InputNeg:
        val[i] = !input.bits[r.input_index];
        break;
      case GateKind::And: {
        char v = 1;
        for (uint32_t p : r.pred_ranks) v = v && val[p];
        val[i] = v;
        break;
      }
      case GateKind::Or: {
        char v = 0;
        for (uint32_t p : r.pred_ranks) v = v || val[p];
        val[i] = v;
        break;
      }
      case GateKind::Maj: {
        size_t ones = 0;
        for (uint32_t p : r.pred_ranks) ones += val[p] ? 1 : 0;
        val[i] = 2 * ones > r.pred_ranks.size();
        break;
      }
    }
  }
  BitVector out;
  out.bits.reserve(output_rows_.size());
  for (uint32_t o : output_rows_) out.bits.push_back(val[o] != 0);
  return out;
}

BitVector simulate(const Circuit& c, const BitVector& input) {
  return Simulator(c).run(input);
}

CircuitStats stats(const Circuit& c) {
  return {c.gates.size(), c.depth};
}

std::string encode(const Circuit& c) {
  std::ostringstream os;
  os << "odecirc-circuit 1\n";
  os << "variant " << (c.variant == Variant::AC ? "AC" : "TC") << "\n";
  os << "inputs " << c.n_inputs << "\n";
  os << "k " << c.k << "\n";
  os << "depth " << c.depth << "\n";
  os << "m " << c.outputs.size() << "\n";
  for (const auto& g : c.gates) {
    os << "gate " << g.id << " " << g.level << " " << kind_name(g.kind);
    for (uint64_t p : g.preds) os << " " << p;
    os << "\n";
  }
  os << "outputs";
  for (uint64_t o : c.outputs) os << " " << o;
  os << "\n";
  return os.str();
}

Circuit decode(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  unsigned lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw CircuitError("ParseError", "line " + std::to_string(lineno) + ": " + msg);
  };

  Circuit c;
  bool have_header = false, have_outputs = false;
  bool saw_variant = false, saw_inputs = false, saw_k = false, saw_depth = false,
       saw_m = false;
  uint64_t declared_m = 0;

  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (!have_header) {
      unsigned version = 0;
      if (word != "odecirc-circuit" || !(ls >> version) || version != 1)
        fail("expected header 'odecirc-circuit 1'");
      have_header = true;
      continue;
    }
    if (word == "variant") {
      std::string v;
      if (!(ls >> v)) fail("missing variant");
      if (v == "AC") c.variant = Variant::AC;
      else if (v == "TC") c.variant = Variant::TC;
      else fail("unknown variant '" + v + "'");
      saw_variant = true;
    } else if (word == "inputs") {
      if (!(ls >> c.n_inputs)) fail("missing input count");
      saw_inputs = true;
    } else if (word == "k") {
      if (!(ls >> c.k)) fail("missing size exponent");
      saw_k = true;
    } else if (word == "depth") {
      if (!(ls >> c.depth)) fail("missing depth");
      saw_depth = true;
    } else if (word == "m") {
      if (!(ls >> declared_m)) fail("missing output count");
      saw_m = true;
    } else if (word == "gate") {
      Gate g;
      std::string kind;
      if (!(ls >> g.id >> g.level >> kind)) fail("malformed gate record");
      auto k = kind_by_name(kind);
      if (!k) fail("unknown gate kind '" + kind + "'");
      g.kind = *k;
      uint64_t p;
      while (ls >> p) g.preds.push_back(p);
      c.gates.push_back(std::move(g));
    } else if (word == "outputs") {
      uint64_t o;
      while (ls >> o) c.outputs.push_back(o);
      have_outputs = true;
    } else {
      fail("unknown record '" + word + "'");
    }
  }
  ++lineno;
  if (!have_header) fail("empty circuit file");
  if (!saw_variant || !saw_inputs || !saw_k || !saw_depth || !saw_m || !have_outputs)
    fail("truncated circuit file (missing field)");
  if (declared_m != c.outputs.size()) fail("output count does not match m");
  std::sort(c.gates.begin(), c.gates.end(),
            [](const Gate& a, const Gate& b) { return a.id < b.id; });
  return c;
}

std::string to_dot(const Circuit& c) {
  std::ostringstream os;
  os << "digraph circuit {\n  rankdir=BT;\n";
  for (const auto& g : c.gates) {
    os << "  g" << g.id << " [label=\"" << kind_name(g.kind) << g.id
       << "\\nL" << g.level << "\"];\n";
    for (uint64_t p : g.preds) os << "  g" << p << " -> g" << g.id << ";\n";
  }
  for (uint64_t o : c.outputs)
    os << "  g" << o << " [shape=doublecircle];\n";
  os << "}\n";
  return os.str();
}

bool structurally_equal(const Circuit& a, const Circuit& b) {
  if (a.n_inputs != b.n_inputs || a.k != b.k || a.depth != b.depth ||
      a.variant != b.variant || a.outputs != b.outputs ||
      a.gates.size() != b.gates.size())
    return false;
  for (size_t i = 0; i < a.gates.size(); ++i) {
    const Gate& x = a.gates[i];
    const Gate& y = b.gates[i];
    if (x.id != y.id || x.level != y.level || x.kind != y.kind || x.preds != y.preds)
      return false;
  }
  return true;
}

Circuit random_circuit(std::mt19937_64& rng, const RandomCircuitSpec& spec) {
  auto pick = [&rng](uint64_t lo, uint64_t hi) {  // inclusive, portable
    return lo + rng() % (hi - lo + 1);
  };
  Circuit c;
  c.variant = spec.variant;
  c.n_inputs = spec.n;
  c.depth = spec.depth;
  if (c.variant == Variant::AC && c.depth % 2 != 0) ++c.depth;

  const unsigned n = c.n_inputs;
  for (unsigned i = 0; i < n; ++i)
    c.gates.push_back({i, 0, GateKind::InputPos, {}});
  for (unsigned i = 0; i < n; ++i)
    c.gates.push_back({n + i, 0, GateKind::InputNeg, {}});

  // pick widths, then assign ids so outputs land at the top of n^k
  std::vector<unsigned> widths(c.depth + 1);
  widths[0] = 2 * n;
  for (unsigned l = 1; l <= c.depth; ++l)
    widths[l] = static_cast<unsigned>(pick(1, spec.max_level_width));
  unsigned internal = 0;
  for (unsigned l = 1; l < c.depth; ++l) internal += widths[l];
  unsigned m = c.depth == 0 ? widths[0] : widths[c.depth];

  c.k = 2;
  while (c.id_space() < 2ull * n + internal + m) ++c.k;
  uint64_t space = c.id_space();

  std::vector<std::vector<uint64_t>> level_ids(c.depth + 1);
  for (unsigned i = 0; i < 2 * n; ++i) level_ids[0].push_back(i);
  uint64_t next = 2 * n;
  for (unsigned l = 1; l <= c.depth; ++l) {
    for (unsigned j = 0; j < widths[l]; ++j) {
      uint64_t id = (l == c.depth) ? space - m + j : next++;
      level_ids[l].push_back(id);
    }
  }

  for (unsigned l = 1; l <= c.depth; ++l) {
    GateKind kind = *level_kind(c.variant, l);
    for (uint64_t id : level_ids[l]) {
      Gate g{id, l, kind, {}};
      unsigned fanin = static_cast<unsigned>(
          pick(1, std::min<uint64_t>(spec.max_fanin, level_ids[l - 1].size())));
      std::vector<uint64_t> pool = level_ids[l - 1];
      for (unsigned f = 0; f < fanin; ++f) {
        size_t at = static_cast<size_t>(pick(0, pool.size() - 1));
        g.preds.push_back(pool[at]);
        pool.erase(pool.begin() + static_cast<long>(at));
      }
      std::sort(g.preds.begin(), g.preds.end());
      c.gates.push_back(std::move(g));
    }
  }
  if (c.depth == 0) {
    c.outputs = level_ids[0];
  } else {
    c.outputs = level_ids[c.depth];
  }
  std::sort(c.gates.begin(), c.gates.end(),
            [](const Gate& a, const Gate& b) { return a.id < b.id; });
  return c;
}

}  // namespace odecirc
