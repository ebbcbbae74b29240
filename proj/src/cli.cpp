#include "omegapow/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "omegapow/codings.hpp"
#include "omegapow/eraser.hpp"
#include "omegapow/omega.hpp"
#include "omegapow/pi.hpp"
#include "omegapow/sigma.hpp"
#include "omegapow/suite.hpp"

namespace omegapow {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

CounterMachine load_machine(const std::string& path) { return parse_machine(read_file(path)); }

std::string yn(bool b) { return b ? "yes" : "no"; }

CounterMachine builtin(const std::string& name) {
  if (name == "a0") return test_machine_a0();
  if (name == "a1") return test_machine_a1();
  if (name == "p1") return p_base_machine(1);
  if (name == "p2") return p_base_machine(2);
  if (name == "s1") return s1_machine();
  if (name == "contains-one") return contains_one_machine();
  if (name == "mu0") return mu0_machine();
  if (name == "mu1") return mu1_machine();
  if (name == "mu2") return mu2_machine();
  if (name == "pi0") return pi0_machine();
  if (name == "pi1") return pi1_machine(contains_one_machine());
  if (name == "a") return assemble_A(contains_one_machine());
  if (name == "script-l") return script_l_machine(test_machine_a0());
  if (name == "mu-five") return mu_five_machine("ab");
  throw InputError("unknown builtin machine '" + name + "'");
}

const std::vector<std::string> kBuiltins = {"a0",  "a1",  "p1",  "p2", "s1", "contains-one", "mu0",
                                            "mu1", "mu2", "pi0", "pi1", "a", "script-l",     "mu-five"};

// A base language for the ω-power commands: a machine, its oracle, and a DFA when regular.
struct Base {
  CounterMachine machine;
  LanguageOracle oracle;
  std::optional<DFA> dfa;
};

Base make_base(const std::string& name, const std::string& machine_path) {
  Base b;
  if (!machine_path.empty()) {
    b.machine = load_machine(machine_path);
    auto keep = std::make_shared<CounterMachine>(b.machine);
    auto r = std::make_shared<Runner>(*keep);
    b.oracle = {keep->alphabet, [keep, r](std::string_view w) { return r->accepts(w); }, machine_path, {}};
    return b;
  }
  b.machine = builtin(name);
  b.oracle.alphabet = b.machine.alphabet;
  b.oracle.tag = name;
  if (name == "p1" || name == "p2") {
    const int n = name == "p1" ? 1 : 2;
    b.dfa = p_base_dfa(n);
    b.oracle.member = [n](std::string_view w) { return p_base_oracle(n, w); };
  } else if (name == "s1") {
    b.oracle.member = s1_oracle;
  } else if (name == "contains-one") {
    b.oracle.member = contains_one;
  } else if (name == "a") {
    b.oracle.member = [](std::string_view w) { return a_oracle(w, contains_one); };
  } else if (name == "a0") {
    b.oracle.member = [](std::string_view w) { return w == "ab"; };
  } else if (name == "a1") {
    b.oracle.member = test_machine_a1_oracle;
  } else {
    auto keep = std::make_shared<CounterMachine>(b.machine);
    auto r = std::make_shared<Runner>(*keep);
    b.oracle.member = [keep, r](std::string_view w) { return r->accepts(w); };
  }
  return b;
}

std::string join_words(const std::vector<Word>& ws) {
  std::string s;
  for (size_t i = 0; i < ws.size(); ++i) s += (i ? " " : "") + render_word(ws[i]);
  return s;
}

// Target of `crosscheck`: a machine and its independent oracle.
struct Target {
  CounterMachine machine;
  std::function<bool(std::string_view)> oracle;
  std::function<bool(std::string_view)> viable;
  std::shared_ptr<PipelineArtifact> art;
};

Target make_target(const std::string& name, int cap) {
  Target t;
  auto stage = [&](char kind) -> int {
    if (name.size() < 3 || name[0] != kind || name[1] != 'n') return 0;
    return std::stoi(name.substr(2));
  };
  if (int n = stage('p')) {
    t.art = std::make_shared<PipelineArtifact>(build_pn(n, cap));
    auto a = t.art;
    t.oracle = [a, n](std::string_view w) { return pn_oracle(n, *a, w); };
  } else if (int n = stage('s')) {
    t.art = std::make_shared<PipelineArtifact>(build_sn(n, cap));
    auto a = t.art;
    t.oracle = [a, n](std::string_view w) { return sn_oracle(n, *a, w); };
  } else if (name == "script-l" || name == "mu-five") {
    const auto R = std::make_shared<DFA>(script_r_dfa("ab"));
    t.viable = [R](std::string_view w) {
      uint32_t q = R->initial;
      for (char c : w) q = R->next(q, c);
      return q != 3;
    };
    if (name == "script-l") {
      auto a0 = std::make_shared<CounterMachine>(test_machine_a0());
      t.oracle = [a0](std::string_view w) { return script_l_oracle(*a0, w).has_value(); };
    } else {
      t.oracle = [](std::string_view w) { return mu_five_oracle(w, "ab"); };
    }
    t.machine = builtin(name);
  } else if (name == "l3a" || name == "l3b") {
    const char a = name[2];
    t.machine = l3a_machine(a, "ab");
    t.oracle = [a](std::string_view w) { return !w.empty() && w.back() == a && in_l3(w.substr(0, w.size() - 1)); };
  } else if (name == "pi1") {
    t.machine = builtin(name);
    t.oracle = [](std::string_view w) { return pi1_oracle(w, contains_one); };
  } else if (auto c = parse_component(name)) {
    t.machine = builtin(name);
    t.oracle = [w = *c](std::string_view x) { return defn_oracle(w, x); };
  } else {
    throw InputError("unknown crosscheck target '" + name + "'");
  }
  if (t.art) t.machine = t.art->machine;
  return t;
}

void print_artifact(std::ostream& out, const PipelineArtifact& a) {
  for (const auto& line : a.log) out << "stage " << line << "\n";
  out << "label=" << a.label << "\n";
  out << "claimed_class=" << a.claimed_class << " (not verified)\n";
  out << "states=" << a.machine.num_states << "\n";
  out << "transitions=" << a.machine.transitions.size() << "\n";
  out << "violations=" << validate_machine(a.machine).size() << "\n";
  if (!a.code_alphabet.empty()) out << "code_alphabet=" << render_word(a.code_alphabet) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"omega-power constructions, oracles and checks", "omegapow"};
  app.require_subcommand(1);

  int n = 0, cap = kDefaultCap;
  size_t depth = 10, limit = 100;
  uint64_t N = 1, p = 0, l = 0, q = 0, seed = kDefaultSeed;
  uint32_t counter_cap = 64;
  size_t unroll_cap = 100000;
  std::string machine_path, out_path, word, sigma, base_name, target, stem, period, alpha, name;
  std::vector<std::string> blocks, factor_args;
  std::vector<int> criteria;
  bool inverse = false;

  auto* build_pn_cmd = app.add_subcommand("build-pn", "build the P_n machine");
  build_pn_cmd->add_option("--n", n, "stage")->required()->check(CLI::PositiveNumber);
  build_pn_cmd->add_option("--cap", cap, "largest stage allowed")->check(CLI::PositiveNumber);
  build_pn_cmd->add_option("--out", out_path, "write the machine here");

  auto* build_sn_cmd = app.add_subcommand("build-sn", "build the S_n machine");
  build_sn_cmd->add_option("--n", n, "stage")->required()->check(CLI::PositiveNumber);
  build_sn_cmd->add_option("--cap", cap, "largest stage allowed")->check(CLI::PositiveNumber);
  build_sn_cmd->add_option("--out", out_path, "write the machine here");

  auto* emit_cmd = app.add_subcommand("emit", "print a bundled machine");
  emit_cmd->add_option("--builtin", name, "machine name")->required()->check(CLI::IsMember(kBuiltins));

  auto* accept_cmd = app.add_subcommand("accept", "exit 0 iff the machine accepts the word");
  accept_cmd->add_option("--machine", machine_path, "machine file")->required();
  accept_cmd->add_option("--word", word, "word (BS = eraser, EPS = empty)")->required();

  auto* enum_cmd = app.add_subcommand("enumerate", "list accepted words up to a length");
  enum_cmd->add_option("--machine", machine_path, "machine file")->required();
  enum_cmd->add_option("--depth", depth, "maximum length");

  auto* cross_cmd = app.add_subcommand("crosscheck", "compare a machine with its oracle on all short words");
  cross_cmd->add_option("--target", target, "pn<k>, sn<k>, script-l, mu-five, mu0, mu1, mu2, pi0, pi1, l3a, l3b")
      ->required();
  cross_cmd->add_option("--depth", depth, "maximum length");
  cross_cmd->add_option("--cap", cap, "largest stage allowed")->check(CLI::PositiveNumber);

  auto* eraser_cmd = app.add_subcommand("eraser", "evaluate the eraser on a word");
  eraser_cmd->add_option("--word", word, "word (BS = eraser)")->required();

  auto* pair_cmd = app.add_subcommand("pair", "pair (N, p)");
  pair_cmd->add_option("--N", N)->required();
  pair_cmd->add_option("--p", p)->required();
  auto* unpair_cmd = app.add_subcommand("unpair", "unpair q");
  unpair_cmd->add_option("--q", q)->required();

  auto* enc_cmd = app.add_subcommand("encode-g", "block coding of a prefix");
  enc_cmd->add_option("--N", N)->required();
  enc_cmd->add_option("--l", l);
  enc_cmd->add_option("--sigma", sigma, "prefix")->required();
  enc_cmd->add_option("--out", out_path, "write the word here instead of stdout");
  auto* dec_cmd = app.add_subcommand("decode-g", "invert the block coding");
  auto* dec_word = dec_cmd->add_option("--word", word);
  dec_cmd->add_option("--file", machine_path, "read the word from a file")->excludes(dec_word);

  auto* phi_cmd = app.add_subcommand("phi", "separator words and their binary images");
  phi_cmd->add_option("--l", l);
  phi_cmd->add_option("--block", blocks, "blocks s_m in order (EPS = empty)");
  phi_cmd->add_flag("--inverse", inverse, "read --alpha and print the blocks");
  phi_cmd->add_option("--alpha", alpha);

  auto* fact_cmd = app.add_subcommand("factorize", "factorizations into base words");
  fact_cmd->add_option("--word", word)->required();
  fact_cmd->add_option("--base", base_name)->check(CLI::IsMember(kBuiltins));
  fact_cmd->add_option("--machine", machine_path);
  fact_cmd->add_option("--limit", limit);

  auto* up_cmd = app.add_subcommand("upword", "membership of stem.period^omega in the omega-power");
  up_cmd->add_option("--stem", stem)->default_val("EPS");
  up_cmd->add_option("--period", period)->required();
  up_cmd->add_option("--base", base_name)->check(CLI::IsMember(kBuiltins));
  up_cmd->add_option("--machine", machine_path);
  up_cmd->add_option("--counter-cap", counter_cap);
  up_cmd->add_option("--unroll-cap", unroll_cap, "configuration budget");

  auto* cls_cmd = app.add_subcommand("classify", "case analysis of a factorization over A (L = contains a 1)");
  auto* cls_factor = cls_cmd->add_option("--factor", factor_args, "factors in order");
  cls_cmd->add_option("--factors", machine_path, "file with one factor per line")->excludes(cls_factor);

  auto* suite_cmd = app.add_subcommand("suite", "acceptance battery");
  suite_cmd->add_option("--seed", seed);
  suite_cmd->add_option("--criterion", criteria)->check(CLI::Range(1, kCriteria));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*build_pn_cmd || *build_sn_cmd) {
      const auto a = *build_pn_cmd ? build_pn(n, cap) : build_sn(n, cap);
      print_artifact(out, a);
      if (!out_path.empty()) write_file(out_path, serialize(a.machine));
      return 0;
    }
    if (*emit_cmd) {
      out << serialize(builtin(name));
      return 0;
    }
    if (*accept_cmd) {
      const auto m = load_machine(machine_path);
      const Word w = parse_word(word);
      const bool ok = accepts(m, w);
      out << "accepted=" << yn(ok) << "\n";
      return ok ? 0 : 1;
    }
    if (*enum_cmd) {
      const auto ws = enumerate_accepted(load_machine(machine_path), depth);
      for (const auto& w : ws) out << render_word(w) << "\n";
      out << "count=" << ws.size() << "\n";
      return 0;
    }
    if (*cross_cmd) {
      const auto t = make_target(target, cap);
      const auto r = crosscheck(t.machine, t.oracle, depth, t.viable);
      out << "target=" << target << "\nstates=" << t.machine.num_states << "\nwords=" << r.words
          << "\naccepted=" << r.accepted << "\nmismatches=" << r.mismatches << "\n";
      for (const auto& w : r.examples) out << "mismatch=" << render_word(w) << "\n";
      return r.mismatches == 0 ? 0 : 1;
    }
    if (*eraser_cmd) {
      const Word w = parse_word(word);
      const auto a = eval_approx(w);
      out << "tilde=" << render_word(eval_tilde(w)) << "\n";
      out << "approx=" << (a ? render_word(*a) : "underflow") << "\n";
      out << "in_l3=" << yn(in_l3(w)) << "\n";
      return 0;
    }
    if (*pair_cmd) {
      out << "q=" << pair({N, p}) << "\n";
      return 0;
    }
    if (*unpair_cmd) {
      const auto g = unpair(q);
      out << "N=" << g.N << "\np=" << g.p << "\n";
      return 0;
    }
    if (*enc_cmd) {
      const auto w = encode_g({N, l}, parse_word(sigma));
      if (!out_path.empty()) {
        write_file(out_path, w);
        out << "length=" << w.size() << "\n";
      } else {
        out << w << "\n";
      }
      return 0;
    }
    if (*dec_cmd) {
      std::string text = machine_path.empty() ? word : read_file(machine_path);
      while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
      const auto d = decode_g(text);
      if (!d) {
        out << "result=not-in-range\n";
        return 1;
      }
      out << "N=" << d->p.N << "\nl=" << d->p.l << "\nsigma=" << render_word(d->sigma) << "\n";
      return 0;
    }
    if (*phi_cmd) {
      if (inverse) {
        const auto d = phi_inverse(alpha, l);
        for (const auto& b : d.blocks) out << "block=" << render_word(b) << "\n";
        out << "k_word=" << render_word(k_word(d)) << "\n";
        return 0;
      }
      DiagonalPrefix d{l, {}};
      for (const auto& b : blocks) d.blocks.push_back(parse_word(b));
      out << "alpha=" << render_word(phi_forward(d)) << "\n";
      out << "k_word=" << render_word(k_word(d)) << "\n";
      return 0;
    }
    if (*fact_cmd || *up_cmd) {
      if (base_name.empty() == machine_path.empty()) throw CLI::ValidationError("give exactly one of --base, --machine");
      const auto b = make_base(base_name, machine_path);
      if (*fact_cmd) {
        const Word w = parse_word(word);
        const auto fs = factorizations(w, b.oracle, limit);
        for (const auto& f : fs) out << "factorization=" << join_words(f.factors(w)) << "\n";
        out << "count=" << fs.size() << "\n";
        out << "omega_power_prefix=" << yn(is_omega_power_prefix(w, b.oracle)) << "\n";
        return 0;
      }
      const UPWord x{parse_word(stem), parse_word(period)};
      if (x.v.empty()) throw InputError("the period must be nonempty");
      const auto r = b.dfa ? up_membership_regular_certified(x, *b.dfa)
                           : up_membership_bounded(x, b.machine, counter_cap, unroll_cap);
      out << "method=" << (b.dfa ? "regular-exact" : "bounded") << "\n";
      out << "verdict=" << (b.dfa && r.verdict == Verdict::NoBounded ? "no" : verdict_name(r.verdict)) << "\n";
      out << "explored=" << r.explored << "\n";
      if (!b.dfa) out << "counter_cap_hit=" << yn(r.counter_cap_hit) << "\nnode_cap_hit=" << yn(r.node_cap_hit) << "\n";
      if (r.certificate) {
        out << "stem_factors=" << join_words(r.certificate->stem) << "\n";
        out << "cycle_factors=" << join_words(r.certificate->cycle) << "\n";
        out << "replay=" << yn(replay_certificate(x, b.machine, *r.certificate)) << "\n";
      }
      return r.verdict == Verdict::Yes ? 0 : 1;
    }
    if (*cls_cmd) {
      if (!machine_path.empty()) {
        std::istringstream in(read_file(machine_path));
        for (std::string line; std::getline(in, line);)
          if (!line.empty()) factor_args.push_back(line);
      }
      if (factor_args.empty()) throw CLI::ValidationError("give --factor or --factors");
      std::vector<Word> fs;
      for (const auto& f : factor_args) fs.push_back(parse_word(f));
      out << "case=" << describe(claim2_classify(fs, contains_one)) << "\n";
      return 0;
    }
    if (*suite_cmd) {
      if (criteria.empty())
        for (int i = 1; i <= kCriteria; ++i) criteria.push_back(i);
      const auto rs = run_suite(criteria, seed);
      out << format_table(rs, false) << "\n" << format_report(rs, seed);
      err << format_table(rs, true);
      bool ok = true;
      for (const auto& r : rs) ok = ok && r.pass && !(r.budget > 0 && r.seconds > r.budget);
      return ok ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    err << "usage: " << e.what() << "\n";
    return 2;
  } catch (const Unsupported& e) {
    err << "unsupported: " << e.what() << "\n";
    return 4;
  } catch (const FeasibilityError& e) {
    err << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    err << "malformed input: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "malformed input: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace omegapow
