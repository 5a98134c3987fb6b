#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "odecirc/compile.hpp"
#include "odecirc/dsl.hpp"
#include "odecirc/eval.hpp"
#include "odecirc/nonuniform.hpp"
#include "odecirc/stdterms.hpp"

using namespace odecirc;

namespace {

struct Options {
  std::string mode = "acdl";
  std::string term_text;
  std::vector<std::string> args;
  std::string out_path;
  std::string circuit_path;
  std::string bits;
  unsigned samples = 200;
  uint64_t seed = 1;
  unsigned long max_oracle_x = 1ul << 16;
  std::string widths = "4,8";
};

ModePreset mode_or_die(const std::string& name) {
  auto m = mode_by_name(name);
  if (!m) {
    std::cerr << "unknown mode '" << name << "'; modes:";
    for (const auto& p : all_presets()) std::cerr << " " << p.name;
    std::cerr << "\n";
    std::exit(2);
  }
  return preset(*m);
}

std::vector<unsigned> parse_widths(const std::string& s) {
  std::vector<unsigned> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoul(item));
  return out;
}

CheckedTerm check_or_die(const std::string& text, const ModePreset& mode,
                         std::optional<unsigned> arity_hint = std::nullopt) {
  TermPtr t;
  try {
    t = parse_dsl(text, arity_hint);
  } catch (const ParseError& e) {
    std::cerr << "parse error at offset " << e.offset << ": " << e.what() << "\n";
    std::exit(2);
  }
  auto r = validate(t, mode);
  for (const auto& d : r.diagnostics) std::cerr << format_diagnostic(d) << "\n";
  if (!r.ok()) std::exit(1);
  return *r.checked;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    std::cerr << "cannot read " << path << "\n";
    std::exit(2);
  }
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int cmd_check(const Options& o) {
  ModePreset mode = mode_or_die(o.mode);
  TermPtr t;
  try {
    t = parse_dsl(o.term_text);
  } catch (const ParseError& e) {
    std::cerr << "parse error at offset " << e.offset << ": " << e.what() << "\n";
    return 1;
  }
  auto r = validate(t, mode);
  for (const auto& d : r.diagnostics) std::cout << format_diagnostic(d) << "\n";
  if (r.ok()) std::cout << "ok: arity " << t->arity << " under " << mode.name << "\n";
  return r.ok() ? 0 : 1;
}

int cmd_eval(const Options& o) {
  ModePreset mode = mode_or_die(o.mode);
  CheckedTerm ct = check_or_die(o.term_text, mode,
                                static_cast<unsigned>(o.args.size()));
  if (ct.arity() != o.args.size()) {
    std::cerr << "term has arity " << ct.arity() << ", got " << o.args.size()
              << " argument(s)\n";
    return 2;
  }
  std::vector<Value> args;
  for (const auto& a : o.args) args.push_back(Value(a));
  try {
    std::cout << eval(ct, Env(args, &standard_oracle_bindings())) << "\n";
  } catch (const EvalError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int cmd_compile(const Options& o) {
  ModePreset mode = mode_or_die(o.mode);
  CheckedTerm ct = check_or_die(o.term_text, mode);
  auto widths = parse_widths(o.widths);
  unsigned w = widths.empty() ? 8 : widths.front();
  try {
    WidthPlan plan = infer_widths(ct, std::vector<unsigned>(ct.arity(), w));
    Circuit c = compile(ct, plan);
    std::string text = encode(c);
    if (o.out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(o.out_path);
      f << text;
    }
    std::cerr << "compiled: " << stats(c).size << " gates, depth "
              << stats(c).depth << ", inputs " << c.n_inputs << "\n";
  } catch (const CompileError& e) {
    std::cerr << "compile error [" << e.code << "]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int cmd_simulate(const Options& o) {
  Circuit c;
  try {
    c = decode(read_file(o.circuit_path));
  } catch (const CircuitError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  auto in = BitVector::parse(o.bits);
  if (!in) {
    std::cerr << "input must be a 0/1 string (LSB first)\n";
    return 2;
  }
  try {
    std::cout << simulate(c, *in).to_string() << "\n";
  } catch (const CircuitError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}

int cmd_stats(const Options& o) {
  ModePreset mode = mode_or_die(o.mode);
  CheckedTerm ct = check_or_die(o.term_text, mode);
  auto profile = depth_profile(ct, parse_widths(o.widths));
  std::cout << "width depth size\n";
  for (const auto& e : profile)
    std::cout << e.width << " " << e.depth << " " << e.size << "\n";
  return 0;
}

int cmd_stdlib_list(const Options&) {
  std::cout << "name arity modes\n";
  for (const auto& nt : stdlib_registry()) {
    std::cout << nt.name << " " << nt.arity() << " ";
    bool first = true;
    for (Mode m : nt.modes) {
      std::cout << (first ? "" : ",") << preset(m).name;
      first = false;
    }
    if (nt.modes.empty()) std::cout << "-";
    std::cout << "\n";
  }
  return 0;
}

int cmd_verify(const Options& o) {
  ModePreset mode = mode_or_die(o.mode);
  CheckedTerm ct = check_or_die(o.term_text, mode);
  std::mt19937_64 rng(o.seed);
  auto draw = [&rng](uint64_t bound) { return rng() % bound; };

  unsigned failures = 0;

  {  // campaign 1: closed form vs step iteration
    unsigned bad = 0, ran = 0;
    for (unsigned s = 0; s < o.samples; ++s) {
      Value x = Value(draw(o.max_oracle_x + 1));
      std::vector<Value> ys(ct.arity() ? ct.arity() - 1 : 0);
      for (auto& y : ys) y = Value(draw(1024));
      try {
        std::vector<Value> full{x};
        for (const auto& y : ys) full.push_back(y);
        Value lhs = eval(ct, Env(full, &standard_oracle_bindings()));
        Env params(ys, &standard_oracle_bindings());
        Value rhs = step_oracle(ct, x, params, o.max_oracle_x);
        ++ran;
        if (lhs != rhs) ++bad;
      } catch (const EvalError&) {
        // sample outside the term's valid regime
      }
    }
    std::cout << (bad == 0 ? "PASS" : "FAIL") << " step-oracle " << ran
              << " samples " << bad << " mismatches\n";
    failures += bad != 0;
  }

  {  // campaign 2: evaluation vs compiled circuit
    unsigned bad = 0, ran = 0;
    bool compiled_any = false;
    for (unsigned w : parse_widths(o.widths)) {
      try {
        WidthPlan plan = infer_widths(ct, std::vector<unsigned>(ct.arity(), w));
        Circuit c = compile(ct, plan);
        compiled_any = true;
        for (unsigned s = 0; s < o.samples; ++s) {
          std::vector<Value> args(ct.arity());
          for (auto& a : args) a = Value(draw(1ull << w));
          try {
            Value want = eval(ct, Env(args, &standard_oracle_bindings()));
            Value got = unpack_output(plan, simulate(c, pack_args(c, plan, args)));
            ++ran;
            if (want != got) ++bad;
          } catch (const EvalError&) {
          }
        }
      } catch (const CompileError& e) {
        std::cout << "SKIP circuit width " << w << " [" << e.code << "]\n";
      }
    }
    if (compiled_any) {
      std::cout << (bad == 0 ? "PASS" : "FAIL") << " circuit " << ran
                << " samples " << bad << " mismatches\n";
      failures += bad != 0;
    }
  }
  return failures == 0 ? 0 : 1;
}

int cmd_roundtrip(const Options& o) {
  Circuit c;
  try {
    c = decode(read_file(o.circuit_path));
  } catch (const CircuitError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  auto diags = validate_normal_form(c);
  for (const auto& d : diags) std::cerr << format_diagnostic(d) << "\n";
  if (!diags.empty()) return 1;
  if (c.n_inputs > 16) {
    std::cerr << "refusing an exhaustive sweep over > 16 inputs\n";
    return 2;
  }
  auto rep = roundtrip_exhaustive(c);
  std::cout << rep.to_text();
  return rep.mismatches == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"term algebra and circuit toolkit for length-ODE function classes"};
  app.require_subcommand(1);
  Options o;
  if (const char* env = std::getenv("ODECIRC_MAX_ORACLE_X"))
    o.max_oracle_x = std::stoul(env);

  auto add_mode = [&](CLI::App* cmd) {
    cmd->add_option("--mode", o.mode, "validation mode preset");
  };

  auto* check = app.add_subcommand("check", "validate a term");
  add_mode(check);
  check->add_option("term", o.term_text)->required();

  auto* ev = app.add_subcommand("eval", "evaluate a term on integer arguments");
  add_mode(ev);
  ev->add_option("term", o.term_text)->required();
  ev->add_option("args", o.args, "decimal arguments");

  auto* comp = app.add_subcommand("compile", "lower a term to a circuit file");
  add_mode(comp);
  comp->add_option("term", o.term_text)->required();
  comp->add_option("--widths", o.widths, "argument width (first entry used)");
  comp->add_option("--out", o.out_path, "output path (stdout when absent)");

  auto* sim = app.add_subcommand("simulate", "run a circuit file on a bit string");
  sim->add_option("circuit", o.circuit_path)->required();
  sim->add_option("bits", o.bits, "input bits, LSB first")->required();

  auto* ver = app.add_subcommand("verify", "differential campaigns for a term");
  add_mode(ver);
  ver->add_option("term", o.term_text)->required();
  ver->add_option("--samples", o.samples);
  ver->add_option("--seed", o.seed);
  ver->add_option("--max-oracle-x", o.max_oracle_x);
  ver->add_option("--widths", o.widths);

  auto* st = app.add_subcommand("stats", "depth/size profile across widths");
  add_mode(st);
  st->add_option("term", o.term_text)->required();
  st->add_option("--widths", o.widths);

  app.add_subcommand("stdlib-list", "list the named derived terms");

  auto* rt = app.add_subcommand("roundtrip", "non-uniform eval-vs-simulate sweep");
  rt->add_option("circuit", o.circuit_path)->required();

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) return cmd_check(o);
  if (ev->parsed()) return cmd_eval(o);
  if (comp->parsed()) return cmd_compile(o);
  if (sim->parsed()) return cmd_simulate(o);
  if (ver->parsed()) return cmd_verify(o);
  if (st->parsed()) return cmd_stats(o);
  if (app.get_subcommand("stdlib-list")->parsed()) return cmd_stdlib_list(o);
  if (rt->parsed()) return cmd_roundtrip(o);
  return 2;
}
