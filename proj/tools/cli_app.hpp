#pragma once

// Command-line front end. run() is kept free of process state so tests can
// drive it with string streams.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <eawg/eawg.hpp>
#include <eawg/verify.hpp>

namespace eawg::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kInconsistent = 3, kResourceLimit = 4 };

inline constexpr int kMaxVerifyRank = 6;

struct Globals {
  bool json = false;
  std::string supp;
  std::string supp_file;
};

inline std::string read_all(std::istream& is) { return {std::istreambuf_iterator<char>(is), {}}; }

inline SemilatticeContext load_context(const Globals& g, std::istream& in) {
  if (!g.supp.empty() && !g.supp_file.empty()) throw Error(ErrorKind::SyntaxError, "give either --supp or --supp-file");
  if (!g.supp.empty()) return build_context(parse_supp_any(g.supp));
  if (g.supp_file.empty()) throw Error(ErrorKind::SyntaxError, "a class is required (--supp or --supp-file)");
  std::string text;
  if (g.supp_file == "-") {
    text = read_all(in);
  } else {
    std::ifstream f(g.supp_file, std::ios::binary);
    if (!f) throw Error(ErrorKind::IoError, "cannot read " + g.supp_file);
    text = read_all(f);
  }
  return build_context(parse_supp_any(text));
}

inline std::string members_text(const std::vector<SubsetMask>& ms) {
  std::string s;
  for (auto m : ms) s += (s.empty() ? "" : ",") + to_string(m);
  return s.empty() ? "(none)" : s;
}

// ---------------------------------------------------------------------------

inline int cmd_analyze(const Globals& g, std::istream& in, std::ostream& out) {
  const auto ctx = load_context(g, in);
  const int nu = ctx.rank();
  const auto canon = serialize_supp(canonical_form(ctx.supp()));
  if (g.json) {
    nlohmann::json delta = nlohmann::json::array();
    for (int r = 0; r < nu; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int s = 0; s < nu; ++s) row.push_back(r == s ? 0 : ctx.delta(r, s));
      delta.push_back(row);
    }
    nlohmann::json es = nlohmann::json::array();
    for (auto J : ctx.esupp()) es.push_back(mask_to_json(J));
    auto j = supp_to_json(ctx.supp());
    j["index"] = ctx.index();
    j["esupp"] = es;
    j["delta"] = delta;
    j["canonical"] = canon;
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "rank: " << nu << '\n';
  out << "index: " << ctx.index() << '\n';
  out << "supp: " << serialize_supp(ctx.supp()) << '\n';
  out << "Esupp: " << members_text(ctx.esupp()) << '\n';
  out << "canonical: " << canon << '\n';
  out << "delta:\n";
  out << "   ";
  for (int s = 0; s < nu; ++s) out << ' ' << (s + 1);
  out << '\n';
  for (int r = 0; r < nu; ++r) {
    out << ' ' << (r + 1) << ' ';
    for (int s = 0; s < nu; ++s) out << ' ' << (r == s ? std::string("-") : std::to_string(ctx.delta(r, s)));
    out << '\n';
  }
  return kOk;
}

inline int cmd_decide(const Globals& g, std::istream& in, std::ostream& out) {
  const auto ctx = load_context(g, in);
  const auto rep = decide(ctx);
  bool consistent = !rep.witness || rep.witness->word_verified;
  for (const auto& n : rep.corollary_notes) consistent = consistent && n.consistent;
  if (g.json) {
    out << to_json(ctx, rep).dump(2) << '\n';
  } else {
    out << "verdict: " << to_string(rep.verdict) << '\n';
    out << "rank: " << rep.rank << "  index: " << rep.index << "  |Esupp|: " << rep.esupp_size << "  n0: " << rep.n0
        << '\n';
    for (std::size_t i = 0; i < rep.kernel_basis.size(); ++i)
      out << "kernel[" << i << "]: " << to_string(ctx, rep.kernel_basis[i].element) << '\n';
    if (rep.witness) {
      const auto& w = *rep.witness;
      out << "witness J0: " << to_string(w.j0) << '\n';
      out << "  z" << to_string(w.j0) << " =";
      for (std::size_t i = 0; i < w.decomposition.generators.size(); ++i)
        out << (i ? " *" : "") << " z" << to_string(w.decomposition.generators[i]) << "^" << w.decomposition.coeffs[i];
      out << '\n';
      out << "  word: " << to_string(w.word) << '\n';
      out << "  word check: " << (w.word_verified ? "ok" : "FAILED") << '\n';
    }
    for (const auto& n : rep.corollary_notes)
      out << "note " << n.name << ": predicted " << n.predicted << (n.consistent ? " (consistent)" : " (INCONSISTENT)")
          << '\n';
  }
  return consistent ? kOk : kInconsistent;
}

inline int cmd_calc(const Globals& g, std::istream& in, std::ostream& out, const std::string& word_text, bool with_hat,
                    bool with_matrix) {
  const auto ctx = load_context(g, in);
  const auto word = parse_word(ctx, word_text);
  const auto w = fold_word(ctx, word);
  bool ok = true;
  nlohmann::json j = {{"word", to_string(word)}, {"weyl", to_string(w)}};
  if (!g.json) out << "weyl: " << to_string(w) << '\n';
  if (with_hat) {
    const auto h = fold_hat_word(ctx, word);
    const bool eq = psi(ctx, h) == w;
    ok = ok && eq;
    j["hat"] = to_string(ctx, h);
    j["psiCheck"] = eq;
    if (!g.json) out << "hat: " << to_string(ctx, h) << "\npsi check: " << (eq ? "ok" : "MISMATCH") << '\n';
  }
  if (with_matrix) {
    const auto m = to_matrix(w);
    const bool eq = m == word_matrix(ctx, word);
    ok = ok && eq;
    std::ostringstream grid;
    print_matrix(grid, m);
    j["matrix"] = grid.str();
    j["matrixCheck"] = eq;
    if (!g.json) out << "matrix:\n" << grid.str() << "matrix check: " << (eq ? "ok" : "MISMATCH") << '\n';
  }
  if (g.json) out << j.dump(2) << '\n';
  return ok ? kOk : kInconsistent;
}

inline int cmd_verify(const Globals& g, std::istream& in, std::ostream& out, int rank, int samples, std::uint64_t seed) {
  std::vector<SemilatticeContext> classes;
  SplitMix64 rng(seed);
  if (!g.supp.empty() || !g.supp_file.empty()) {
    classes.push_back(load_context(g, in));
    rank = classes.front().rank();
  } else {
    if (rank < 1) throw Error(ErrorKind::RankOutOfRange, "rank must be positive");
    if (rank > kMaxVerifyRank)
      throw Error(ErrorKind::RankTooLarge, "verify supports rank <= " + std::to_string(kMaxVerifyRank));
    classes.push_back(build_context(lattice_class(rank)));
    if (rank >= 2) classes.push_back(build_context(minimal_class(rank)));
    for (int i = 0; i < 3 && rank >= 2; ++i) classes.push_back(build_context(random_class(rank, rng)));
  }
  if (rank > kMaxVerifyRank)
    throw Error(ErrorKind::RankTooLarge, "verify supports rank <= " + std::to_string(kMaxVerifyRank));
  if (samples < 0) throw Error(ErrorKind::IndexOutOfRange, "samples must be non-negative");

  bool all_ok = true;
  nlohmann::json jclasses = nlohmann::json::array();
  for (const auto& ctx : classes) {
    const auto results = run_suites(ctx, rng, samples);
    nlohmann::json js = nlohmann::json::array();
    if (!g.json) out << "class " << serialize_supp(ctx.supp()) << "  (n0=" << n0(ctx) << ")\n";
    for (const auto& r : results) {
      all_ok = all_ok && r.ok();
      js.push_back({{"suite", r.name}, {"passed", r.passed}, {"total", r.total}, {"ok", r.ok()}});
      if (!g.json) {
        out << "  " << r.name << ": " << r.passed << "/" << r.total << (r.ok() ? " ok" : " FAILED");
        if (!r.ok()) out << "  first failure: " << r.first_failure;
        out << '\n';
      }
    }
    jclasses.push_back({{"supp", serialize_supp(ctx.supp())}, {"suites", js}});
  }
  if (g.json)
    out << nlohmann::json{{"seed", seed}, {"samples", samples}, {"classes", jclasses}, {"ok", all_ok}}.dump(2) << '\n';
  else
    out << (all_ok ? "all suites passed" : "FAILURES detected") << '\n';
  return all_ok ? kOk : kInconsistent;
}

inline int cmd_enumerate(const Globals& g, std::ostream& out, std::ostream& err, int rank, bool dedup, bool allow_large,
                         unsigned workers, const std::string& path, const std::string& format) {
  SweepOptions opt;
  opt.rank = rank;
  opt.dedup = dedup;
  opt.allow_large = allow_large;
  opt.workers = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
  if (rank >= kLargeSweepRank) {
    std::uint64_t last_pct = 101;
    opt.progress = [&err, last_pct](std::uint64_t done, std::uint64_t total) mutable {
      const auto pct = done * 100 / total;
      if (pct != last_pct) {
        last_pct = pct;
        err << "\rprogress: " << pct << "%" << (done == total ? "\n" : "") << std::flush;
      }
    };
  }
  const auto res = sweep(opt);
  if (!path.empty()) {
    std::string fmt = format;
    if (fmt.empty()) fmt = path.size() >= 5 && path.substr(path.size() - 5) == ".json" ? "json" : "csv";
    export_result(res, path, fmt == "json" ? ExportFormat::Json : ExportFormat::Csv);
  }
  if (g.json) {
    out << to_json(res).dump(2) << '\n';
  } else {
    out << "rank: " << res.rank << "  classes: " << res.total_classes << '\n';
    if (res.dedup) out << "classes up to permutation: " << res.deduped_total << '\n';
    out << to_csv(res);
    std::uint64_t lacking = 0;
    for (const auto& [idx, c] : res.failures_by_index) lacking += c;
    out << "lacking presentation: " << lacking << '\n';
  }
  return kOk;
}

inline int cmd_make_example(const Globals& g, std::ostream& out, int rank, int index) {
  const auto cls = make_family(rank, index);
  if (g.json)
    out << supp_to_json(cls).dump() << '\n';
  else
    out << serialize_supp(cls) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::RankTooLarge:
    case ErrorKind::TooLarge:
    case ErrorKind::Overflow: return kResourceLimit;
    default: return kInputError;
  }
}

inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Normal forms, presentations and class sweeps for reflection groups of type A1 with nullity nu"};
  app.name("eawg");
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "JSON output");
  app.add_option("--supp", g.supp, "class as text 'rank=3; {1,2},...' or JSON");
  app.add_option("--supp-file", g.supp_file, "file holding the class (text or JSON); '-' reads stdin");

  auto* analyze = app.add_subcommand("analyze", "rank, index, Esupp and delta table of a class");
  auto* decide_cmd = app.add_subcommand("decide", "decide the presentation by conjugation");

  auto* calc = app.add_subcommand("calc", "fold a reflection word into normal form");
  std::string word;
  bool with_hat = false, with_matrix = false;
  calc->add_option("word,--word", word, "tokens r[+1;a1,...,an] separated by spaces")->required();
  calc->add_flag("--hat", with_hat, "also fold in the presented group and compare through psi");
  calc->add_flag("--matrix", with_matrix, "also print the matrix and compare with the direct product");

  auto* verify = app.add_subcommand("verify", "randomized oracle suites");
  int vrank = 3, samples = 200;
  std::uint64_t seed = 1;
  verify->add_option("--rank", vrank, "rank of the generated classes");
  verify->add_option("--samples", samples, "samples per suite and class");
  verify->add_option("--seed", seed, "PRNG seed");

  auto* enumerate = app.add_subcommand("enumerate", "sweep every class of a rank");
  int erank = 3;
  bool dedup = false, allow_large = false;
  unsigned workers = 0;
  std::string out_path, format;
  enumerate->add_option("--rank", erank, "rank")->required();
  enumerate->add_flag("--dedup", dedup, "also count classes up to coordinate permutation");
  enumerate->add_flag("--allow-large", allow_large, "permit the rank-5 sweep");
  enumerate->add_option("--workers", workers, "threads (0 = hardware)");
  enumerate->add_option("--out", out_path, "export path");
  enumerate->add_option("--format", format, "csv or json (default from extension)")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* make_example = app.add_subcommand("make-example", "class of given index lacking the presentation");
  int mrank = 4, mindex = 8;
  make_example->add_option("--rank", mrank, "rank (>= 3)")->required();
  make_example->add_option("--index", mindex, "index in rank+4 .. 2^rank-1")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(g, in, out);
    if (decide_cmd->parsed()) return cmd_decide(g, in, out);
    if (calc->parsed()) return cmd_calc(g, in, out, word, with_hat, with_matrix);
    if (verify->parsed()) return cmd_verify(g, in, out, vrank, samples, seed);
    if (enumerate->parsed()) return cmd_enumerate(g, out, err, erank, dedup, allow_large, workers, out_path, format);
    if (make_example->parsed()) return cmd_make_example(g, out, mrank, mindex);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::logic_error& e) {
    err << "internal inconsistency: " << e.what() << '\n';
    return kInconsistent;
  }
  return kInputError;
}

}  // namespace eawg::cli
