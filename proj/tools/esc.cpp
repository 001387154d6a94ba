// esc: check, reduce, verify and generate terms.
// Exit codes: 0 pass, 1 verification failure, 2 input error.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "esc/oracle.hpp"
#include "esc/parser.hpp"
#include "esc/serialize.hpp"

using namespace esc;

namespace {

constexpr int kPass = 0, kFail = 1, kInput = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& file) {
  if (file == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(file);
  if (!in) throw InputError("cannot read " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Judgement load(const std::string& file) {
  try {
    return parse_term_file(slurp(file));
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

std::string term_file(const Term& t, const std::optional<TypingContext>& ctx) {
  std::string out;
  if (ctx) out += "# ctx: " + print_typing_context(*ctx) + "\n";
  return out + print(t) + "\n";
}

// --------------------------------------------------------------------------- check

struct CheckOpts {
  std::string file;
  std::string ctx;
  bool json = false;
};

int cmd_check(const CheckOpts& o) {
  Judgement j = load(o.file);
  std::optional<TypingContext> ctx = j.ctx;
  if (!o.ctx.empty()) {
    try {
      ctx = parse_typing_context(o.ctx);
    } catch (const Error& e) {
      throw InputError(std::string("--ctx: ") + e.what());
    }
  }
  Json rep{{"term", print(j.term)}, {"size", size(j.term)}};
  int code = kPass;
  std::string line;

  auto proper = check_proper(j.term);
  rep["proper"] = proper.ok;
  if (!proper.ok) {
    rep["error"] = {{"kind", "properness"}, {"message", proper.violation}, {"path", proper.where}};
    line = "improper at [" + path_str(proper.where) + "]: " + proper.violation;
    code = kFail;
  } else {
    Json cl = Json::array();
    for (auto& p : find_clashes(j.term)) cl.push_back(p);
    rep["clashes"] = cl;
    try {
      Formula f = synth(ctx.value_or(TypingContext{}), j.term);
      rep["type"] = f.str();
      line = f.str();
    } catch (const TypeError& e) {
      rep["error"] = {{"kind", type_error_kind_name(e.kind())}, {"message", e.what()}, {"path", e.where()}};
      line = std::string("proper, untypable: ") + e.what();
      code = kFail;
    }
  }
  if (o.json) std::cout << rep.dump(2) << '\n';
  else std::cout << line << '\n';
  return code;
}

// --------------------------------------------------------------------------- reduce

struct ReduceOpts {
  std::string file;
  std::string strategy = "good";
  std::uint64_t seed = 0;
  std::size_t max_steps = 10000;
  std::string trace;
  bool stats = false;
  bool json = false;
};

int cmd_reduce(const ReduceOpts& o) {
  Judgement j = load(o.file);
  auto proper = check_proper(j.term);
  if (!proper.ok) throw InputError("improper term at [" + path_str(proper.where) + "]: " + proper.violation);
  Strategy s;
  s.kind = *strategy_from_name(o.strategy);
  s.seed = o.seed;
  Trace tr = normalize(j.term, s, {o.max_steps});

  if (!o.trace.empty()) {
    std::ofstream out(o.trace);
    if (!out) throw InputError("cannot write " + o.trace);
    write_trace_jsonl(out, tr);
  }
  Json sum = trace_summary(tr);
  try {
    sum["initial_measure"] = measure(tr.initial);
  } catch (const MeasureOverflow&) {
    sum["initial_measure"] = nullptr;
  }
  if (o.stats) sum["subterm"] = to_json(subterm_report(tr));

  std::cerr << "strategy " << strategy_name(s.kind) << ": " << tr.steps.size() << " steps, "
            << verdict_name(tr.verdict) << ", final size " << size(tr.final)
            << (is_cut_free(tr.final) ? ", cut-free" : "") << '\n';
  for (auto& [k, n] : sum["steps_by_kind"].items()) std::cerr << "  " << k << ": " << n << '\n';
  if (o.stats) {
    const Json& st = sum["subterm"];
    std::cerr << "  max duplicated size " << st["max_duplicated_size"] << " (initial size " << st["initial_size"]
              << "), sub-term violations " << st["violations"].size() << '\n';
  }
  if (o.json) std::cout << sum.dump(2) << '\n';
  else std::cout << print(tr.final) << '\n';
  return tr.verdict == Verdict::Normal ? kPass : kFail;
}

// --------------------------------------------------------------------------- verify

struct VerifyOpts {
  std::string suite;
  std::size_t size = 16;
  std::size_t count = 100;
  std::uint64_t seed = 1;
  bool untyped = false;
  unsigned threads = 0;
  std::string out = "counterexamples";
  bool json = false;
};

const std::vector<std::string> kSuites = {"diamond", "confluence", "fullness", "full-composition", "measure",
                                          "psn",     "sn",         "bisim",    "subject-reduction", "random-descent",
                                          "local-termination"};

bool typed_suite(const std::string& s) {
  return s == "diamond" || s == "fullness" || s == "subject-reduction" || s == "random-descent";
}

Report run_suite(const std::string& suite, const std::optional<TypingContext>& ctx, const Term& t, bool typed) {
  if (suite == "diamond") return check_diamond(t);
  if (suite == "confluence") return check_confluence(t, Mode::Micro);
  if (suite == "fullness") return check_fullness(t);
  if (suite == "full-composition") return check_full_composition(t);
  if (suite == "measure") return check_measure_decrease(t);
  if (suite == "psn") return check_psn(t);
  if (suite == "bisim") return check_cuteq_bisim(t);
  if (suite == "subject-reduction") return check_subject_reduction(*ctx, t);
  if (suite == "random-descent") return check_random_descent(t);
  if (suite == "local-termination") return check_local_termination(t);
  // sn
  SnResult r = check_sn(t, Mode::Micro);
  Report rep;
  rep.check = "sn";
  rep.cases = 1;
  rep.detail = std::string(sn_kind_name(r.kind)) + ", longest " + std::to_string(r.longest);
  if (r.kind == SnResult::Kind::Truncated) rep.inconclusive = true;
  if (r.kind == SnResult::Kind::Cycle) {
    rep.detail += ", cycle of length " + std::to_string(r.cycle.size());
    // Divergence of untyped terms is expected; only typed terms must be SN.
    rep.ok = !typed;
  }
  return rep;
}

int cmd_verify(const VerifyOpts& o) {
  bool typed = !o.untyped && o.suite != "psn";
  if (typed_suite(o.suite) && !typed) throw InputError("suite " + o.suite + " needs typed terms");

  std::vector<std::pair<std::optional<TypingContext>, Term>> terms;
  if (typed)
    for (auto& t : sample_typed(o.seed, o.count, o.size)) terms.emplace_back(t.ctx, t.term);
  else
    for (auto& t : sample_untyped(o.seed, o.count, o.size)) terms.emplace_back(std::nullopt, t);

  std::vector<Report> reports(terms.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < terms.size();) {
      try {
        reports[i] = run_suite(o.suite, terms[i].first, terms[i].second, typed);
      } catch (const std::exception& e) {
        reports[i] = Report{o.suite, false, false, 0, std::string("exception: ") + e.what()};
      }
    }
  };
  unsigned n = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::size_t failed = 0, inconclusive = 0, cases = 0, notes = 0;
  Json fails = Json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const Report& r = reports[i];
    cases += r.cases;
    if (r.inconclusive) ++inconclusive;
    if (o.suite == "sn" && r.detail.rfind("cycle", 0) == 0) {
      ++notes;
      if (r.ok) std::cerr << "divergent sample " << i << ": " << print(terms[i].second) << '\n';
    }
    if (r.ok) continue;
    ++failed;
    std::filesystem::create_directories(o.out);
    std::string path = o.out + "/" + o.suite + "-" + std::to_string(i) + ".esc";
    std::ofstream(path) << "# " << r.detail << '\n' << term_file(terms[i].second, terms[i].first);
    fails.push_back({{"sample", i}, {"file", path}, {"detail", r.detail}});
    std::cerr << "FAIL sample " << i << " (" << path << "): " << r.detail << '\n';
  }
  std::cerr << o.suite << ": " << terms.size() << " terms, " << cases << " cases, " << failed << " failed, "
            << inconclusive << " inconclusive";
  if (o.suite == "sn") std::cerr << ", " << notes << " divergent";
  std::cerr << '\n';
  if (o.json)
    std::cout << Json{{"suite", o.suite},         {"terms", terms.size()},     {"cases", cases},
                      {"failed", failed},         {"inconclusive", inconclusive}, {"failures", fails}}
                     .dump(2)
              << '\n';
  return failed ? kFail : kPass;
}

// --------------------------------------------------------------------------- gen

struct GenOpts {
  std::string family;
  std::size_t n = 1;
  bool typed = false;
  std::size_t size = 20;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenOpts& o) {
  std::string text;
  if (o.family == "omega") {
    text = term_file(gen_omega(), std::nullopt);
  } else if (o.family == "spindle") {
    if (o.n == 0) throw InputError("--n must be at least 1");
    TypedTerm t = gen_spindle(o.n);
    text = term_file(t.term, t.ctx);
  } else if (o.family == "glitch") {
    text = term_file(glitch_term(), std::nullopt);
  } else {
    if (o.size == 0) throw InputError("--size must be at least 1");
    if (o.typed) {
      TypedTerm t = gen_typed(o.seed, o.size);
      text = "# type: " + t.type.str() + "\n" + term_file(t.term, t.ctx);
    } else {
      text = term_file(gen_untyped_proper(o.seed, o.size), std::nullopt);
    }
  }
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out);
    if (!f) throw InputError("cannot write " + o.out);
    f << text;
  }
  return kPass;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cut elimination with explicit substitutions: check, reduce, verify, generate"};
  app.require_subcommand(1);

  CheckOpts co;
  auto* check = app.add_subcommand("check", "Check properness, clashes and the type of a term file");
  check->add_option("file", co.file, "Term file ('-' for stdin)")->required();
  check->add_option("--ctx", co.ctx, "Typing context, e.g. \"e:!X, m:X\"");
  check->add_flag("--json", co.json, "Machine-readable report");

  ReduceOpts ro;
  auto* reduce = app.add_subcommand("reduce", "Normalize a term and report the trace");
  reduce->add_option("file", ro.file, "Term file ('-' for stdin)")->required();
  reduce->add_option("--strategy", ro.strategy, "good|leftmost|random|small")
      ->check(CLI::IsMember({"good", "leftmost", "random", "small"}));
  reduce->add_option("--seed", ro.seed, "Seed for the random strategy");
  reduce->add_option("--max-steps", ro.max_steps, "Step limit");
  reduce->add_option("--trace", ro.trace, "Write the trace as JSON lines");
  reduce->add_flag("--stats", ro.stats, "Include the sub-term report");
  reduce->add_flag("--json", ro.json, "Print the summary as JSON instead of the normal form");

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "Run a property check over generated terms");
  verify->add_option("--suite", vo.suite, "Property to check")->required()->check(CLI::IsMember(kSuites));
  verify->add_option("--size", vo.size, "Maximum term size");
  verify->add_option("--count", vo.count, "Number of terms");
  verify->add_option("--seed", vo.seed, "First generator seed");
  verify->add_flag("--untyped", vo.untyped, "Use the untyped proper generator");
  verify->add_option("--threads", vo.threads, "Worker threads (0: all cores)");
  verify->add_option("--out", vo.out, "Directory for counterexample files");
  verify->add_flag("--json", vo.json, "Machine-readable summary");

  GenOpts go;
  auto* gen = app.add_subcommand("gen", "Generate a term file");
  gen->add_option("family", go.family, "omega|spindle|glitch|random")
      ->required()
      ->check(CLI::IsMember({"omega", "spindle", "glitch", "random"}));
  gen->add_option("--n", go.n, "Spindle index");
  gen->add_flag("--typed", go.typed, "Random typed term");
  gen->add_option("--size", go.size, "Random term budget");
  gen->add_option("--seed", go.seed, "Seed");
  gen->add_option("-o,--output", go.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kInput;
  }

  try {
    if (*check) return cmd_check(co);
    if (*reduce) return cmd_reduce(ro);
    if (*verify) return cmd_verify(vo);
    if (*gen) return cmd_gen(go);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kInput;
}
