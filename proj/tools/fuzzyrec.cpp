#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fuzzyrec/ensemble.hpp"
#include "fuzzyrec/errors.hpp"
#include "fuzzyrec/metrics.hpp"
#include "fuzzyrec/report.hpp"
#include "fuzzyrec/synth.hpp"
#include "fuzzyrec/wordlist.hpp"

namespace {

using namespace fuzzyrec;

struct Options {
  std::string input;
  std::string output;
  std::string proto;
  std::string spec_path;
  EnsembleConfig cfg;
  bool bare = false;
  bool size_columns = false;
};

void add_io_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("-i,--input", opt.input, "Input wordlist TSV")->required();
  cmd->add_option("-o,--output", opt.output,
                  "Output path (stdout when omitted)");
}

void add_model_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--proto", opt.proto, "Doculect holding the gold proto-forms")
      ->required();
  cmd->add_option("--samples", opt.cfg.samples, "Number of resampled models")
      ->capture_default_str();
  cmd->add_option("--dropout", opt.cfg.dropout,
                  "Fraction of word forms withheld per sample")
      ->capture_default_str();
  cmd->add_option("--seed", opt.cfg.seed, "Run seed")->capture_default_str();
  cmd->add_option("--epochs", opt.cfg.epochs, "Training epochs per model")
      ->capture_default_str();
}

Wordlist load_wordlist(const Options& opt) {
  ParseReport report = parse_wordlist_file(
      opt.input, opt.proto.empty()
                     ? std::nullopt
                     : std::optional<std::string>(opt.proto));
  for (const std::string& warning : report.warnings)
    std::cerr << "warning: " << warning << '\n';
  if (report.wordlist.sets.empty())
    throw DataError("no usable cognate sets in " + opt.input);
  return std::move(report.wordlist);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write output file: " + path);
  out << content;
  out.flush();
  if (!out) throw DataError("error while writing output file: " + path);
}

std::string dataset_name(const std::string& input) {
  const std::string stem = std::filesystem::path(input).stem().string();
  return stem.empty() ? std::string("dataset") : stem;
}

std::vector<FuzzyReconstruction> run_pipeline(const Wordlist& wl,
                                              const EnsembleConfig& cfg) {
  const std::vector<LinearModel> models = train_ensemble(wl, cfg);
  return reconstruct_all(wl, models);
}

std::string join_tokens(const std::vector<Token>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::string reconstruction_tsv(std::span<const FuzzyReconstruction> frs,
                               bool bare) {
  std::string out = "COGID\tCONCEPT\tFUZZY\tCONSENSUS\tCERTAIN\tN_OPTIONS\n";
  for (const FuzzyReconstruction& fr : frs) {
    out += fr.cogid;
    out += '\t';
    out += fr.gloss;
    out += '\t';
    out += render_fuzzy(fr, bare);
    out += '\t';
    out += join_tokens(consensus(fr));
    out += '\t';
    out += fr.certain ? '1' : '0';
    out += '\t';
    out += std::to_string(expansion_count(fr));
    out += '\n';
  }
  return out;
}

int run_selftest() {
  int failures = 0;
  auto check = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "pass " : "FAIL ") << what << '\n';
    if (!ok) ++failures;
  };

  {
    const std::vector<Token> pat{"p", "a", "t"};
    const std::vector<Token> pit{"p", "i", "t"};
    const std::vector<Token> pad{"p", "a", "d"};
    const std::vector<Token> pid{"p", "i", "d"};
    const std::vector<Token> pet{"p", "e", "t"};
    const std::string pattern = "p a|i t|d";
    const bool ok = expansion_count(pattern) == 4 && matches(pattern, pat) &&
                    matches(pattern, pit) && matches(pattern, pad) &&
                    matches(pattern, pid) && !matches(pattern, pet) &&
                    !matches(pattern, std::vector<Token>{"p", "a"});
    check(ok, "notation: 'p a|i t|d' expands to four matching forms");
  }

  const SynthResult clean = generate(demo_spec());
  {
    std::string offending;
    check(is_conflict_free(clean.wordlist, &offending),
          "clean data is conflict-free " + offending);
  }
  EnsembleConfig cfg;
  {
    const std::vector<FuzzyReconstruction> frs =
        run_pipeline(clean.wordlist, cfg);
    const OracleReport report = oracle_check(clean, frs);
    for (const std::string& line : report.lines)
      std::cout << "  " << line << '\n';
    check(report.passed, "clean scenario oracle");
  }
  {
    const SynthResult noisy = generate(demo_spec(20));
    const std::vector<FuzzyReconstruction> frs =
        run_pipeline(noisy.wordlist, cfg);
    const OracleReport report = oracle_check(noisy, frs);
    for (const std::string& line : report.lines)
      std::cout << "  " << line << '\n';
    check(report.passed, "noise scenario oracle");
  }
  {
    EnsembleConfig zero = cfg;
    zero.dropout = 0.0;
    const std::vector<FuzzyReconstruction> a =
        run_pipeline(clean.wordlist, zero);
    const std::vector<FuzzyReconstruction> b =
        run_pipeline(clean.wordlist, zero);
    bool all_certain = true;
    for (const FuzzyReconstruction& fr : a) all_certain &= fr.certain;
    check(all_certain, "dropout 0: every reconstruction certain");
    check(reconstruction_tsv(a, false) == reconstruction_tsv(b, false),
          "dropout 0: repeated runs byte-identical");
  }

  std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy proto-form reconstruction from aligned cognate data"};
  app.require_subcommand(1);

  Options opt;

  CLI::App* reconstruct =
      app.add_subcommand("reconstruct", "Write fuzzy reconstructions as TSV");
  add_io_flags(reconstruct, opt);
  add_model_flags(reconstruct, opt);
  reconstruct->add_flag("--bare", opt.bare,
                        "Render options without ensemble counts");

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Score reconstructions against the gold "
                                     "proto-forms, TSV summary");
  add_io_flags(evaluate, opt);
  add_model_flags(evaluate, opt);
  evaluate->add_flag("--alignment-size-columns", opt.size_columns,
                     "Report alignment size as column count instead of "
                     "reflex count");

  CLI::App* confusions = app.add_subcommand(
      "confusions", "Rank co-proposed proto-sound pairs, TSV");
  add_io_flags(confusions, opt);
  add_model_flags(confusions, opt);

  CLI::App* report_cmd =
      app.add_subcommand("report", "Render alignments, summaries, and "
                                   "quintile grids as standalone HTML");
  add_io_flags(report_cmd, opt);
  add_model_flags(report_cmd, opt);

  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Generate a synthetic wordlist from a spec");
  synth_cmd->add_option("--spec", opt.spec_path, "Synthesis spec file")
      ->required();
  synth_cmd->add_option("-o,--output", opt.output,
                        "Output path (stdout when omitted)");

  CLI::App* selftest =
      app.add_subcommand("selftest", "Run the built-in oracle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (reconstruct->parsed()) {
      const Wordlist wl = load_wordlist(opt);
      const std::vector<FuzzyReconstruction> frs = run_pipeline(wl, opt.cfg);
      write_output(opt.output, reconstruction_tsv(frs, opt.bare));
    } else if (evaluate->parsed()) {
      const Wordlist wl = load_wordlist(opt);
      const std::vector<FuzzyReconstruction> frs = run_pipeline(wl, opt.cfg);
      const SummaryScores scores = score_predictions(
          frs, wl,
          opt.size_columns ? SizeMode::AlignmentColumns
                           : SizeMode::ReflexRows);
      write_output(opt.output, evaluate_tsv(dataset_name(opt.input), scores));
    } else if (confusions->parsed()) {
      const Wordlist wl = load_wordlist(opt);
      const std::vector<FuzzyReconstruction> frs = run_pipeline(wl, opt.cfg);
      const std::vector<ConfusedPair> pairs = confused_pairs(frs);
      write_output(opt.output, confusions_tsv(dataset_name(opt.input), pairs));
    } else if (report_cmd->parsed()) {
      const Wordlist wl = load_wordlist(opt);
      const std::vector<FuzzyReconstruction> frs = run_pipeline(wl, opt.cfg);
      write_output(opt.output,
                   emit_report(wl, frs, dataset_name(opt.input)));
    } else if (synth_cmd->parsed()) {
      const SynthSpec spec = parse_synth_spec_file(opt.spec_path);
      const SynthResult result = generate(spec);
      write_output(opt.output, to_tsv(result.wordlist));
    } else if (selftest->parsed()) {
      return run_selftest();
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
