#include "prefal/cli.hpp"

#include <atomic>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "prefal/corpus.hpp"
#include "prefal/dsl.hpp"
#include "prefal/report.hpp"

namespace prefal {

namespace {

struct ResolvedSpec {
  InfiniteWord word;
  std::map<std::size_t, std::string> flags;
  std::string display;
};

ResolvedSpec resolve_spec(const std::string& arg) {
  constexpr std::string_view prefix = "corpus:";
  if (arg.rfind(prefix, 0) == 0) {
    std::string name = arg.substr(prefix.size());
    for (const auto& e : corpus_from_env_or_builtin())
      if (e.name == name)
        return ResolvedSpec{parse_word_spec(e.spec), e.level_flags, e.spec};
    throw parse_error("no corpus entry named '" + name + "'");
  }
  return ResolvedSpec{parse_word_spec(arg), {}, arg};
}

std::optional<SturmianVerdict> sturm_verdict_of(const InfiniteWord& w) {
  const SturmianCarrierInfo* info = w.sturmian_carrier();
  if (!info || !info->spec) return std::nullopt;
  return classify_sturmian(*info->spec);
}

/// True when the two pipelines disagree on a resolved verdict.
bool cross_check_fails(const HierarchyVerdict& h, const SturmianVerdict& s) {
  if (h.kind == HierarchyVerdict::Kind::InPInfinityCertified)
    return !s.in_p_infinity;
  if (h.kind == HierarchyVerdict::Kind::NotInP)
    return s.in_p_infinity || s.not_in_p_n != h.n;
  return false;  // bounded / unresolved carry no claim
}

std::string final_verdict_string(const HierarchyResult& hr,
                                 const std::optional<SturmianVerdict>& sv) {
  return sv ? sturmian_verdict_string(*sv) : verdict_string(hr.verdict);
}

struct ClassifyOutcome {
  int exit_code = 0;
  std::string verdict;
  HierarchyResult result;
  std::optional<SturmianVerdict> sturm;
  std::string cross_check_message;
};

ClassifyOutcome run_classify(const ResolvedSpec& spec,
                             const ChainOptions& base_opt) {
  ChainOptions opt = base_opt;
  opt.level_flags = spec.flags;
  ClassifyOutcome outcome;
  outcome.result = classify_hierarchy(spec.word, opt);
  outcome.sturm = sturm_verdict_of(spec.word);
  if (outcome.sturm && cross_check_fails(outcome.result.verdict,
                                         *outcome.sturm)) {
    outcome.exit_code = 3;
    outcome.cross_check_message =
        "cross-check failure: hierarchy says " +
        verdict_string(outcome.result.verdict) + ", structural says " +
        sturmian_verdict_string(*outcome.sturm);
    return outcome;
  }
  outcome.verdict = final_verdict_string(outcome.result, outcome.sturm);
  if (!outcome.sturm &&
      outcome.result.verdict.kind == HierarchyVerdict::Kind::Unresolved)
    outcome.exit_code = 2;
  return outcome;
}

void print_chain_text(std::ostream& out, const DerivedChain& chain) {
  for (std::size_t k = 0; k < chain.levels.size(); ++k) {
    const ChainLevel& level = chain.levels[k];
    out << "level " << k << ": " << level.word.describe() << "\n";
    if (level.analysis) {
      const UPAnalysis& a = *level.analysis;
      out << "  up_set:";
      for (const auto& w : a.up_set)
        out << " " << render(w, level.word.glyphs());
      out << "  N=" << a.N << "  ["
          << (a.certified() ? "certified" : "bounded") << "]\n";
      out << "  up_prime:";
      for (const auto& w : a.up_prime)
        out << " " << render(w, level.word.glyphs());
      out << "\n";
      std::size_t shown = 48;
      if (level.word.try_ensure(shown))
        out << "  prefix: " << level.word.render_prefix(shown) << "\n";
    }
    if (level.refutes_p1) out << "  refutes membership: " << level.note << "\n";
  }
  out << "nu:";
  for (const auto& e : chain.nu)
    out << " " << (e.exact ? "" : ">=") << e.value;
  out << "\n";
  if (chain.cycle)
    out << "cycle: levels " << chain.cycle->first << " and "
        << chain.cycle->second << " (" << chain.cycle_kind << ")\n";
  if (chain.stalled_level)
    out << "stall: level " << *chain.stalled_level << ": "
        << chain.stall_note << "\n";
}

struct CorpusRunResult {
  std::string line;
  int exit_code = 0;
  json report;
};

CorpusRunResult run_corpus_entry(const CorpusEntry& e,
                                 const ChainOptions& base_opt) {
  CorpusRunResult r;
  ResolvedSpec spec{parse_word_spec(e.spec), e.level_flags, e.spec};
  ClassifyOutcome outcome = run_classify(spec, base_opt);
  r.report = word_report(e.spec, outcome.result, base_opt, outcome.sturm);
  r.report["name"] = e.name;
  std::vector<std::string> problems;
  if (outcome.exit_code == 3) problems.push_back(outcome.cross_check_message);
  if (e.expect_verdict && outcome.verdict != *e.expect_verdict)
    problems.push_back("verdict " + outcome.verdict + " != expected " +
                       *e.expect_verdict);
  const DerivedChain& chain = outcome.result.chain;
  for (std::size_t i = 0; i < e.expect_nu.size(); ++i) {
    if (i >= chain.nu.size() || chain.nu[i].value != e.expect_nu[i]) {
      problems.push_back("nu mismatch at level " + std::to_string(i));
      break;
    }
  }
  if (!e.expect_up_set.empty() || !e.expect_up_prime.empty()) {
    if (chain.levels.empty() || !chain.levels[0].analysis) {
      problems.push_back("missing level-0 analysis");
    } else {
      const UPAnalysis& a = *chain.levels[0].analysis;
      auto rendered = [&](const std::vector<FiniteWord>& ws) {
        std::vector<std::string> out;
        for (const auto& w : ws)
          out.push_back(render(w, chain.levels[0].word.glyphs()));
        return out;
      };
      if (!e.expect_up_set.empty() && rendered(a.up_set) != e.expect_up_set)
        problems.push_back("up_set mismatch");
      if (!e.expect_up_prime.empty() &&
          rendered(a.up_prime) != e.expect_up_prime)
        problems.push_back("up_prime mismatch");
    }
  }
  if (problems.empty()) {
    r.line = "ok       " + e.name + ": " + outcome.verdict;
    r.exit_code = 0;
  } else {
    std::string joined;
    for (const auto& p : problems)
      joined += (joined.empty() ? "" : "; ") + p;
    r.line = "MISMATCH " + e.name + ": " + joined;
    r.exit_code = outcome.exit_code == 3 ? 3 : 3;
  }
  r.report["status"] = problems.empty() ? "ok" : "mismatch";
  return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"prefixal-factorization analyzer"};
  app.require_subcommand(1);

  std::size_t scan_bound = 256, verify_len = 4096, depth = 4,
              frontier_len = 128, frontier_window = 0, jobs = 1, count = 0,
              levels = 4;
  std::string format = "text", spec_arg, coloring_arg;

  auto add_bounds = [&](CLI::App* cmd) {
    cmd->add_option("--scan-bound", scan_bound,
                    "unbordered-prefix scan bound");
    cmd->add_option("--verify-len", verify_len,
                    "certificate verification length");
    cmd->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* generate = app.add_subcommand("generate", "print a prefix");
  generate->add_option("spec", spec_arg, "word spec")->required();
  generate->add_option("n", count, "prefix length")->required();

  CLI::App* derive_cmd =
      app.add_subcommand("derive", "derivation chain report");
  derive_cmd->add_option("spec", spec_arg, "word spec")->required();
  derive_cmd->add_option("--levels", levels, "chain depth");
  add_bounds(derive_cmd);

  CLI::App* classify =
      app.add_subcommand("classify", "hierarchy classification");
  classify->add_option("spec", spec_arg, "word spec")->required();
  classify->add_option("--depth", depth, "chain depth");
  add_bounds(classify);

  CLI::App* color_cmd =
      app.add_subcommand("color", "monochromatic-factorization frontier");
  color_cmd->add_option("spec", spec_arg, "word spec")->required();
  color_cmd->add_option("coloring", coloring_arg, "coloring spec")
      ->required();
  color_cmd->add_option("--frontier-len", frontier_len, "frontier length");
  color_cmd->add_option("--frontier-window", frontier_window,
                        "death window (default: half the length)");
  add_bounds(color_cmd);

  CLI::App* corpus_cmd =
      app.add_subcommand("corpus-run", "run every corpus entry");
  corpus_cmd->add_option("--jobs", jobs, "parallel workers");
  corpus_cmd->add_option("--depth", depth, "chain depth");
  add_bounds(corpus_cmd);

  std::vector<const char*> argv;
  argv.push_back("prefal");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()),
              const_cast<char**>(argv.data()));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (generate->parsed()) {
      ResolvedSpec spec = resolve_spec(spec_arg);
      out << spec.word.render_prefix(count) << "\n";
      return 0;
    }

    if (derive_cmd->parsed()) {
      ResolvedSpec spec = resolve_spec(spec_arg);
      ChainOptions opt{levels, scan_bound, verify_len, spec.flags};
      DerivedChain chain = derived_chain(spec.word, opt);
      if (format == "json")
        out << chain_json(chain).dump(2) << "\n";
      else
        print_chain_text(out, chain);
      return chain.stalled_level ? 2 : 0;
    }

    if (classify->parsed()) {
      ResolvedSpec spec = resolve_spec(spec_arg);
      ChainOptions opt{depth, scan_bound, verify_len, spec.flags};
      ClassifyOutcome outcome = run_classify(spec, opt);
      if (outcome.exit_code == 3) {
        err << outcome.cross_check_message << "\n";
        return 3;
      }
      if (format == "json") {
        out << word_report(spec.display, outcome.result, opt, outcome.sturm)
                   .dump(2)
            << "\n";
      } else {
        out << "verdict: " << outcome.verdict << "\n";
        if (!outcome.result.verdict.detail.empty())
          out << "  " << outcome.result.verdict.detail << "\n";
        if (outcome.sturm && outcome.sturm->nf.singular())
          out << "  normal form: u="
              << render(outcome.sturm->nf.u, kBinaryGlyphs) << " over "
              << outcome.sturm->nf.directive.to_string() << "\n";
        print_chain_text(out, outcome.result.chain);
      }
      return outcome.exit_code;
    }

    if (color_cmd->parsed()) {
      ResolvedSpec spec = resolve_spec(spec_arg);
      Coloring coloring =
          parse_coloring_spec(coloring_arg, spec.word.glyphs());
      FrontierReport report =
          frontier(spec.word, coloring, frontier_len, frontier_window);
      if (format == "json") {
        out << frontier_json(report).dump(2) << "\n";
      } else {
        out << "frontier over prefix(" << report.n << "), window "
            << report.window << ":\n";
        for (const auto& [color, f] : report.per_color) {
          out << "  " << color << ": "
              << (f.dead ? "FrontierDead(" + std::to_string(f.dead_at) + ")"
                         : "FrontierAlive")
              << "  last cut " << f.last;
          if (f.sustained)
            out << "  sustained last " << f.sustained->back();
          out << "\n";
        }
        out << "(bounded evidence, not a proof)\n";
      }
      return 0;
    }

    if (corpus_cmd->parsed()) {
      auto entries = corpus_from_env_or_builtin();
      ChainOptions opt{depth, scan_bound, verify_len, {}};
      std::vector<CorpusRunResult> results(entries.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&]() {
        while (true) {
          std::size_t i = next.fetch_add(1);
          if (i >= entries.size()) break;
          try {
            results[i] = run_corpus_entry(entries[i], opt);
          } catch (const std::exception& e) {
            results[i].line =
                "MISMATCH " + entries[i].name + ": " + e.what();
            results[i].exit_code = 3;
          }
        }
      };
      std::size_t n_threads = std::max<std::size_t>(1, jobs);
      std::vector<std::thread> pool;
      for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();

      int exit_code = 0;
      if (format == "json") {
        json all = json::array();
        for (auto& r : results) all.push_back(std::move(r.report));
        out << all.dump(2) << "\n";
      }
      for (const auto& r : results) {
        if (format == "text") out << r.line << "\n";
        exit_code = std::max(exit_code, r.exit_code);
      }
      if (format == "text")
        out << (exit_code == 0 ? "all entries ok" : "corpus mismatches found")
            << " (" << results.size() << " entries)\n";
      return exit_code;
    }
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const stall_error& e) {
    err << "unresolved: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace prefal
