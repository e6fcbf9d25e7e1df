// Command-line front end: ideal calculus, Betti tables with line detection,
// the iterated shift experiment, and the verification suites.
//
// Exit codes: 0 ok, 1 failed verification, 2 parse error, 3 domain error,
// 4 resource cutoff, 5 search exhaustion.  Results go to stdout, diagnostics
// to stderr.  Identical invocations produce identical bytes.

#include <sys/resource.h>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "glfrob/errors.hpp"
#include "glfrob/evaluation.hpp"
#include "glfrob/harness.hpp"
#include "glfrob/homology.hpp"
#include "glfrob/ideal_expr.hpp"
#include "glfrob/schur.hpp"

using namespace glfrob;

namespace {

struct Common {
  uint32_t p = 2;
  int q = 0;
  std::string format = "text";
  long long seed = 0;
  long long limit_mem = 0;   // MB of address space
  long long limit_time = 0;  // CPU seconds
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--p", c.p, "characteristic (prime)")->envname("GLFROB_P");
  cmd->add_option("--q", c.q, "ring truncation exponent, 0 for the full ring")
      ->envname("GLFROB_Q");
  cmd->add_option("--format", c.format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->envname("GLFROB_FORMAT");
  cmd->add_option("--seed", c.seed, "seed for randomized corpora")
      ->envname("GLFROB_SEED");
  cmd->add_option("--limit-mem", c.limit_mem, "address space cap in MB")
      ->envname("GLFROB_LIMIT_MEM");
  cmd->add_option("--limit-time", c.limit_time, "CPU time cap in seconds")
      ->envname("GLFROB_LIMIT_TIME");
}

void apply_limits(const Common& c) {
  if (c.limit_mem > 0) {
    rlimit rl{static_cast<rlim_t>(c.limit_mem) * 1024 * 1024,
              static_cast<rlim_t>(c.limit_mem) * 1024 * 1024};
    setrlimit(RLIMIT_AS, &rl);
  }
  if (c.limit_time > 0) {
    rlimit rl{static_cast<rlim_t>(c.limit_time),
              static_cast<rlim_t>(c.limit_time)};
    setrlimit(RLIMIT_CPU, &rl);
  }
}

int parse_int(const std::string& s, const char* what) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw parse_error(std::string("trailing text in ") + what);
    return v;
  } catch (const parse_error&) {
    throw;
  } catch (const std::exception&) {
    throw parse_error(std::string("expected an integer for ") + what + ": " + s);
  }
}

// n values from --n or --n-range a..b, sorted ascending.
std::vector<int> resolve_n(int n_single, const std::string& n_range) {
  if (!n_range.empty()) {
    size_t dots = n_range.find("..");
    if (dots == std::string::npos)
      throw parse_error("n-range wants a..b: " + n_range);
    int a = 0, b = 0;
    try {
      size_t used = 0;
      a = std::stoi(n_range.substr(0, dots), &used);
      if (used != dots) throw parse_error("n-range wants a..b: " + n_range);
      std::string hi = n_range.substr(dots + 2);
      b = std::stoi(hi, &used);
      if (used != hi.size()) throw parse_error("n-range wants a..b: " + n_range);
    } catch (const parse_error&) {
      throw;
    } catch (const std::exception&) {
      throw parse_error("n-range wants a..b: " + n_range);
    }
    if (a > b) throw parse_error("empty n-range: " + n_range);
    std::vector<int> out;
    for (int n = a; n <= b; ++n) out.push_back(n);
    return out;
  }
  if (n_single < 0) throw parse_error("pass --n or --n-range");
  return {n_single};
}

std::string mono_str(const std::vector<int>& e) {
  std::ostringstream out;
  bool first = true;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!first) out << "*";
    first = false;
    out << "x" << i + 1;
    if (e[i] > 1) out << "^" << e[i];
  }
  return first ? "1" : out.str();
}

// ---- ideal ----------------------------------------------------------------------

int cmd_ideal(const Common& c, const std::string& expr, const std::string& action,
              const std::vector<std::string>& args) {
  PrimeContext ctx{c.p};
  GLIdeal I = parse_ideal(expr, ctx);
  const bool json = c.format == "json";
  nlohmann::ordered_json j;

  auto want_args = [&](size_t k) {
    if (args.size() != k)
      throw parse_error(action + " wants " + std::to_string(k) + " argument" +
                        (k == 1 ? "" : "s"));
  };

  if (action == "canon") {
    want_args(0);
    if (json) j["ideal"] = I.str();
    else std::cout << I.str() << "\n";
  } else if (action == "radical") {
    want_args(0);
    GLIdeal R = gl_radical(I, ctx);
    if (json) j["radical"] = R.str();
    else std::cout << R.str() << "\n";
  } else if (action == "prime") {
    want_args(0);
    bool pr = is_gl_prime(I);
    if (json) j["prime"] = pr;
    else std::cout << "GL-prime: " << (pr ? "true" : "false") << "\n";
  } else if (action == "member") {
    want_args(1);
    bool in = ideal_member(parse_monomial(args[0]), I, ctx);
    if (json) j["member"] = in;
    else std::cout << (in ? "true" : "false") << "\n";
  } else if (action == "contains") {
    want_args(1);
    bool in = ideal_contains(I, parse_ideal(args[0], ctx), ctx);
    if (json) j["contains"] = in;
    else std::cout << (in ? "true" : "false") << "\n";
  } else if (action == "eval") {
    want_args(2);
    int n = parse_int(args[0], "n");
    int d_max = parse_int(args[1], "dmax");
    auto gens = evaluate_ideal(I, n, d_max, ctx);
    if (json) {
      j["generators"] = gens;
    } else if (c.format == "csv") {
      for (const auto& g : gens) {
        for (size_t i = 0; i < g.size(); ++i)
          std::cout << (i ? "," : "") << g[i];
        std::cout << "\n";
      }
    } else {
      for (const auto& g : gens) std::cout << mono_str(g) << "\n";
    }
  } else if (action == "hilbert") {
    want_args(2);
    long long v = hilbert_function(I, parse_int(args[0], "n"),
                                   parse_int(args[1], "d"), ctx);
    if (json) j["hilbert"] = v;
    else std::cout << v << "\n";
  } else {
    throw parse_error("unknown ideal action: " + action);
  }

  if (json) std::cout << j.dump() << "\n";
  return 0;
}

// ---- betti ----------------------------------------------------------------------

std::string render_lines(const LineCover& cover) {
  std::ostringstream out;
  for (const CoverLine& ln : cover.lines)
    out << "line: r = " << ln.s.str() << "*i + " << ln.c.str() << " ("
        << ln.points.size() << " points)\n";
  out << "residual: " << cover.residual.size() << "\n";
  return out.str();
}

int cmd_betti(const Common& c, const std::string& desc,
              const std::vector<int>& n_set, int i_max, int j_max_opt,
              int max_lines) {
  PrimeContext ctx{c.p};
  RingSpec ring(ctx, c.q);
  ModuleFamily fam = parse_family(desc, ring);

  // Partial results stay off stdout when a cutoff interrupts the sweep.
  std::ostringstream buf;
  nlohmann::ordered_json sweep = nlohmann::ordered_json::array();
  try {
    for (int n : n_set) {
      int j_max = j_max_opt > 0 ? j_max_opt : n;
      BettiTable T = ring.truncated()
                         ? minimal_resolution(fam.eval_full(n), i_max, j_max).second
                         : koszul_tor(fam.eval(n, j_max), i_max, j_max);
      std::vector<int> t = t_sequence(T);
      SlopeResult s = slope(T);
      LineCover cover = detect_lines(T, max_lines);
      if (c.format == "json") {
        nlohmann::ordered_json one;
        one["n"] = n;
        one["table"] = nlohmann::ordered_json::parse(T.json_dump());
        one["t"] = t;
        if (s.trivial) one["slope"] = nullptr;
        else one["slope"] = s.value.str();
        one["slope_cutoff"] = s.cutoff;
        auto jl = nlohmann::ordered_json::array();
        for (const CoverLine& ln : cover.lines)
          jl.push_back({{"s", ln.s.str()},
                        {"c", ln.c.str()},
                        {"points", ln.points.size()}});
        one["lines"] = std::move(jl);
        one["residual"] = cover.residual.size();
        sweep.push_back(std::move(one));
      } else if (c.format == "csv") {
        buf << "# n=" << n << "\n" << T.csv_dump();
      } else {
        buf << "# n = " << n << "\n" << T.pretty();
        buf << "t:";
        for (int ti : t) buf << " " << ti;
        buf << "\n";
        if (s.trivial) buf << "slope: trivial\n";
        else buf << "slope: " << s.value.str() << (s.cutoff ? " (cutoff)" : "") << "\n";
        buf << render_lines(cover);
      }
    }
  } catch (const cutoff_error& ex) {
    std::cerr << (c.format == "json" ? sweep.dump() + "\n" : buf.str());
    std::cerr << "cutoff: " << ex.what() << "\n";
    return 4;
  }

  if (c.format == "json") std::cout << sweep.dump() << "\n";
  else std::cout << buf.str();
  return 0;
}

// ---- shift experiment -----------------------------------------------------------

int cmd_shift_experiment(const Common& c, const std::string& desc, int l_max,
                         const std::vector<int>& n_set) {
  PrimeContext ctx{c.p};
  RingSpec ring(ctx, c.q);
  if (!ring.truncated())
    throw domain_error("the shift experiment needs --q, a positive power of p");
  ModuleFamily fam = parse_family(desc, ring);
  ShiftExperiment ex = shift_until_flat(fam, c.q, l_max, n_set);

  if (c.format == "json") {
    std::cout << ex.json_dump() << "\n";
  } else {
    for (const ShiftStep& st : ex.steps) {
      std::cout << "l = " << st.l << ":";
      if (st.zero) {
        std::cout << " zero module";
      } else {
        std::cout << " t0=" << st.t0;
        if (st.t1 >= 0) std::cout << " t1=" << st.t1;
        if (!st.slope.trivial) std::cout << " slope=" << st.slope.value.str();
        std::cout << " torsion_free=" << (st.torsion_free ? "true" : "false");
      }
      std::cout << " flat_all=" << (st.flat_all ? "true" : "false") << "\n";
    }
    if (ex.inconclusive)
      std::cout << "inconclusive at lmax " << l_max << "\n";
    else
      std::cout << "minimal flat step: " << ex.l_flat << "\n";
  }

  if (ex.inconclusive) {
    std::cerr << "exhausted the step budget before reaching flatness\n";
    return 5;
  }
  return 0;
}

// ---- verify ---------------------------------------------------------------------

int cmd_verify(const Common& c, const std::string& suite) {
  SuiteReport rep = run_suite(suite, c.seed);
  if (c.format == "json") {
    std::cout << rep.json_dump() << "\n";
  } else {
    for (const SuiteEntry& e : rep.entries) {
      std::cout << e.id << ": " << e.status;
      if (!e.diff.empty()) std::cout << " (" << e.diff << ")";
      std::cout << "\n";
    }
    std::cout << "suite " << rep.suite << ": " << rep.passed << " passed, "
              << rep.failed << " failed\n";
  }
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"digit-vector calculus for GL-stable ideals"};
  app.require_subcommand(1);

  Common c;

  auto* ideal = app.add_subcommand("ideal", "ideal calculus on digit vectors");
  std::string ideal_expr, ideal_action;
  std::vector<std::string> ideal_args;
  ideal->add_option("expr", ideal_expr, "ideal expression")->required();
  ideal
      ->add_option("action", ideal_action,
                   "canon, radical, prime, member, contains, eval or hilbert")
      ->required();
  ideal->add_option("args", ideal_args, "action arguments");
  add_common(ideal, c);

  auto* betti = app.add_subcommand("betti", "Betti tables with line detection");
  std::string betti_desc, betti_range;
  int betti_n = -1, betti_imax = 6, betti_jmax = 0, betti_lines = 4;
  betti->add_option("descriptor", betti_desc, "module family descriptor")->required();
  betti->add_option("--n", betti_n, "evaluation width");
  betti->add_option("--n-range", betti_range, "sweep a..b");
  betti->add_option("--imax", betti_imax, "homological cutoff")
      ->check(CLI::PositiveNumber);
  betti->add_option("--jmax", betti_jmax, "degree cutoff, defaults to n")
      ->check(CLI::PositiveNumber);
  betti->add_option("--lines", betti_lines, "line cover budget")
      ->check(CLI::PositiveNumber);
  add_common(betti, c);

  auto* shift = app.add_subcommand("shift-experiment",
                                   "iterate the shift functor until flat");
  std::string shift_desc, shift_range;
  int shift_n = -1, shift_lmax = 8;
  shift->add_option("descriptor", shift_desc, "module family descriptor")->required();
  shift->add_option("--n", shift_n, "evaluation width");
  shift->add_option("--n-range", shift_range, "sweep a..b");
  shift->add_option("--lmax", shift_lmax, "step budget")->check(CLI::PositiveNumber);
  add_common(shift, c);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  verify->add_option("suite", suite, "suite name")->required();
  add_common(verify, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    apply_limits(c);
    if (*ideal) return cmd_ideal(c, ideal_expr, ideal_action, ideal_args);
    if (*betti)
      return cmd_betti(c, betti_desc, resolve_n(betti_n, betti_range),
                       betti_imax, betti_jmax, betti_lines);
    if (*shift)
      return cmd_shift_experiment(c, shift_desc, shift_lmax,
                                  resolve_n(shift_n, shift_range));
    if (*verify) return cmd_verify(c, suite);
  } catch (const parse_error& ex) {
    std::cerr << "parse error: " << ex.what() << "\n";
    return 2;
  } catch (const domain_error& ex) {
    std::cerr << "domain error: " << ex.what() << "\n";
    return 3;
  } catch (const cutoff_error& ex) {
    std::cerr << "cutoff: " << ex.what() << "\n";
    return 4;
  } catch (const exhaustion_error& ex) {
    std::cerr << "exhausted: " << ex.what() << "\n";
    return 5;
  } catch (const std::bad_alloc&) {
    std::cerr << "out of memory\n";
    return 4;
  }
  return 0;
}
