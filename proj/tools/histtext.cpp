// histtext: command-line front end to the corpus analyses and the JSON API.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "histtext/collocations.hpp"
#include "histtext/corpus.hpp"
#include "histtext/error.hpp"
#include "histtext/export.hpp"
#include "histtext/freqstrings.hpp"
#include "histtext/narrative.hpp"
#include "histtext/project.hpp"
#include "histtext/ranking.hpp"
#include "histtext/service.hpp"
#include "histtext/suffix_index.hpp"
#include "histtext/trends.hpp"
#include "histtext/utf8.hpp"
#include "histtext/zipf.hpp"

using namespace histtext;
using exporting::Json;

namespace {

enum class Format { Csv, Json };

struct Source {
  std::string manifest;
  std::string project;
  std::string corpus;
  std::string name;
  bool keep_ascii = false;
  bool keep_whitespace = false;
  bool keep_punctuation = false;
};

void add_source(CLI::App* cmd, Source& src) {
  cmd->add_option("manifest", src.manifest, "Corpus manifest (JSON Lines)");
  cmd->add_option("--project", src.project, "Project file; corpora and keyword sets come from here");
  cmd->add_option("--corpus", src.corpus, "Corpus name inside the project");
  cmd->add_option("--name", src.name, "Corpus name (defaults to the manifest stem)");
  cmd->add_flag("--keep-ascii", src.keep_ascii, "Keep ASCII characters");
  cmd->add_flag("--keep-whitespace", src.keep_whitespace, "Keep whitespace");
  cmd->add_flag("--keep-punctuation", src.keep_punctuation, "Keep CJK punctuation");
}

void add_format(CLI::App* cmd, Format& fmt) {
  cmd->add_option_function<std::string>(
         "--out", [&fmt](const std::string& v) { fmt = v == "json" ? Format::Json : Format::Csv; },
         "Output format")
      ->transform(CLI::IsMember({"csv", "json"}, CLI::ignore_case).description(""))
      ->type_name("csv|json")
      ->default_str("csv");
}

std::optional<Project> project_of(const Source& src) {
  if (src.project.empty()) return std::nullopt;
  return load_project(src.project);
}

Corpus load_corpus(const Source& src) {
  if (!src.project.empty()) {
    const auto project = load_project(src.project);
    if (project.corpora.empty()) fail(ErrorCode::NotFound, "project has no corpora");
    std::string name = src.corpus;
    if (name.empty()) {
      if (project.corpora.size() != 1) fail(ErrorCode::InvalidArgument, "project has several corpora; pass --corpus");
      name = project.corpora.begin()->first;
    }
    auto it = project.corpora.find(name);
    if (it == project.corpora.end()) fail(ErrorCode::NotFound, "project has no corpus '" + name + "'");
    return ingest_corpus(resolve_manifest(src.project, it->second), it->second.policy, name);
  }
  if (src.manifest.empty()) fail(ErrorCode::InvalidArgument, "give a manifest or --project");
  NormalizationPolicy policy;
  policy.strip_ascii = !src.keep_ascii;
  policy.strip_whitespace = !src.keep_whitespace;
  policy.strip_cjk_punctuation = !src.keep_punctuation;
  return ingest_corpus(src.manifest, policy,
                       src.name.empty() ? std::nullopt : std::optional<std::string>(src.name));
}

std::vector<std::u32string> split_keywords(const std::string& list) {
  std::vector<std::u32string> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = std::min(list.find(',', start), list.size());
    if (comma > start) out.push_back(utf8::decode_or_throw(list.substr(start, comma - start), "--keywords"));
    start = comma + 1;
  }
  return out;
}

KeywordSet keyword_set_of(const Source& src, const std::string& keywords, const std::string& set_name) {
  if (!keywords.empty()) return make_keyword_set("cli", split_keywords(keywords));
  if (set_name.empty()) fail(ErrorCode::InvalidArgument, "give --keywords or --set");
  const auto project = project_of(src);
  if (!project) fail(ErrorCode::InvalidArgument, "--set needs --project");
  auto it = project->keyword_sets.find(set_name);
  if (it == project->keyword_sets.end()) fail(ErrorCode::NotFound, "unknown keyword set '" + set_name + "'");
  return it->second;
}

AnalysisConfig config_of(const Source& src) {
  auto project = project_of(src);
  return project ? project->analysis : AnalysisConfig{};
}

void emit(Format fmt, const Json& json, const std::string& csv) {
  if (fmt == Format::Json) {
    std::cout << json.dump(2) << "\n";
  } else {
    std::cout << csv;
  }
}

struct ExtractOpts {
  std::optional<std::int64_t> min_freq;
  std::optional<std::size_t> min_len;
  std::optional<std::size_t> max_len;
  bool maximal = false;
};

void add_extract(CLI::App* cmd, ExtractOpts& o) {
  cmd->add_option("--min-freq", o.min_freq, "Minimum occurrences (default 11)");
  cmd->add_option("--min-len", o.min_len, "Minimum length in characters (default 1)");
  cmd->add_option("--max-len", o.max_len, "Maximum length in characters (default 8)");
  cmd->add_flag("--maximal", o.maximal, "Keep only strings not subsumed by an equally frequent extension");
}

ExtractionParams params_of(const ExtractOpts& o, const AnalysisConfig& cfg) {
  auto p = cfg.extraction;
  if (o.min_freq) p.min_freq = *o.min_freq;
  if (o.min_len) p.min_len = *o.min_len;
  if (o.max_len) p.max_len = *o.max_len;
  p.maximal_only = o.maximal || p.maximal_only;
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequent-string, trend, collocation and chapter analyses over unsegmented historical text"};
  app.require_subcommand(1);

  Source src;
  Format fmt = Format::Csv;
  ExtractOpts ex;

  auto* ingest = app.add_subcommand("ingest", "Validate a manifest and report its statistics; optionally register it");
  add_source(ingest, src);
  add_format(ingest, fmt);
  std::string register_as;
  ingest->add_option("--register", register_as, "Add the corpus to --project under this name");

  auto* stats = app.add_subcommand("stats", "Collection statistics including the pseudoword count");
  add_source(stats, src);
  add_format(stats, fmt);
  add_extract(stats, ex);

  auto* pw = app.add_subcommand("pseudowords", "Frequent strings ranked by frequency");
  add_source(pw, src);
  add_format(pw, fmt);
  add_extract(pw, ex);
  std::size_t limit = 0;
  pw->add_option("--limit", limit, "Print at most this many rows (0 = all)");

  auto* zipf = app.add_subcommand("zipf", "Rank-frequency curve and power-law fit");
  add_source(zipf, src);
  add_format(zipf, fmt);
  add_extract(zipf, ex);
  bool raw = false;
  std::optional<std::int64_t> fit_lo, fit_hi;
  zipf->add_flag("--raw", raw, "Plot raw frequencies instead of f/N");
  zipf->add_option("--fit-lo", fit_lo, "First rank of the fit");
  zipf->add_option("--fit-hi", fit_hi, "Last rank of the fit");

  std::string keywords, set_name;
  auto add_keywords = [&](CLI::App* cmd) {
    cmd->add_option("--keywords", keywords, "Comma-separated keywords");
    cmd->add_option("--set", set_name, "Keyword set from --project");
  };

  auto* trends = app.add_subcommand("trends", "Annual keyword counts, percentages and special years");
  add_source(trends, src);
  add_format(trends, fmt);
  add_keywords(trends);
  std::optional<double> lambda;
  std::string table_kind = "counts";
  std::string baseline = "selected";
  trends->add_option("--lambda", lambda, "Specialness threshold (default 1.1)");
  trends->add_option("--table", table_kind, "CSV table: counts, ratios or special")
      ->check(CLI::IsMember({"counts", "ratios", "special"}));
  trends->add_option("--baseline", baseline, "Total curve from the selected keywords or all pseudowords")
      ->check(CLI::IsMember({"selected", "all"}));
  add_extract(trends, ex);

  auto* collocate = app.add_subcommand("collocate", "Co-occurrences of two keywords within a window, per year");
  add_source(collocate, src);
  add_format(collocate, fmt);
  std::string kw_a, kw_b, mode = "pairs";
  std::optional<int> window;
  std::vector<int> windows;
  collocate->add_option("-a,--a", kw_a, "First keyword")->required();
  collocate->add_option("-b,--b", kw_b, "Second keyword")->required();
  collocate->add_option("--window", window, "Characters between the keywords (default 30)");
  collocate->add_option("--windows", windows, "Window sweep, ascending")->delimiter(',');
  collocate->add_option("--mode", mode, "pairs or events")->check(CLI::IsMember({"pairs", "events"}));

  auto* rank = app.add_subcommand("rank", "Documents ranked by keyword weight");
  add_source(rank, src);
  add_format(rank, fmt);
  add_keywords(rank);
  std::string scheme;
  std::optional<int> year;
  bool drop_zero = false;
  rank->add_option("--scheme", scheme, "tf_sum, distinct_count or tf_sum_normalized");
  rank->add_option("--year", year, "Only documents from this year");
  rank->add_flag("--drop-zero", drop_zero, "Omit documents without keywords");

  auto* narrative = app.add_subcommand("narrative", "Per-chapter frequency, length, proportion and event ratio");
  add_source(narrative, src);
  add_format(narrative, fmt);
  std::string pattern, event;
  narrative->add_option("--pattern", pattern, "Base pattern, e.g. a name")->required();
  narrative->add_option("--event", event, "Event pattern containing the base pattern");

  auto* concord = app.add_subcommand("concord", "Keyword-in-context lines");
  add_source(concord, src);
  add_format(concord, fmt);
  std::string needle;
  std::size_t context = 10;
  std::size_t concord_limit = 0;
  concord->add_option("--pattern", needle, "String to look up")->required();
  concord->add_option("--context", context, "Characters on each side");
  concord->add_option("--limit", concord_limit, "Print at most this many lines (0 = all)");

  auto* serve_cmd = app.add_subcommand("serve", "Serve the project over the HTTP JSON API");
  std::string serve_project;
  ServeOptions serve_opts;
  serve_cmd->add_option("--project", serve_project, "Project file")->required();
  serve_cmd->add_option("--host", serve_opts.host, "Bind address");
  serve_cmd->add_option("--port", serve_opts.port, "Port");
  serve_cmd->add_option("--threads", serve_opts.threads, "Worker threads");
  serve_cmd->add_option("--queue", serve_opts.max_queued, "Requests allowed to wait for a worker");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      const auto corpus = load_corpus(src);
      const auto s = corpus_stats(corpus);
      emit(fmt, {{"name", corpus.name()}, {"chaptered", corpus.chaptered()}, {"stats", exporting::to_json(s)}},
           exporting::to_csv(s));
      if (!register_as.empty()) {
        if (src.project.empty() || src.manifest.empty()) {
          fail(ErrorCode::InvalidArgument, "--register needs a manifest and --project");
        }
        Project project = std::filesystem::exists(src.project) ? load_project(src.project) : Project{};
        if (project.name.empty()) project.name = std::filesystem::path(src.project).stem().string();
        CorpusEntry entry;
        entry.manifest = std::filesystem::absolute(src.manifest).string();
        entry.policy.strip_ascii = !src.keep_ascii;
        entry.policy.strip_whitespace = !src.keep_whitespace;
        entry.policy.strip_cjk_punctuation = !src.keep_punctuation;
        project.corpora[register_as] = entry;
        save_project(project, src.project);
      }
    } else if (*stats || *pw || *zipf) {
      const auto corpus = load_corpus(src);
      const auto params = params_of(ex, config_of(src));
      SuffixIndex index(corpus);
      auto table = extract_pseudowords(index, params, corpus.name());
      if (*stats) {
        const auto s = corpus_stats(corpus, &table);
        emit(fmt, exporting::to_json(s), exporting::to_csv(s));
      } else if (*pw) {
        table = annotate_doc_frequencies(index, std::move(table));
        if (limit > 0 && table.entries.size() > limit) table.entries.resize(limit);
        emit(fmt, exporting::to_json(table), exporting::to_csv(table.entries));
      } else {
        if (table.entries.empty()) fail(ErrorCode::Undefined, "no pseudowords at these thresholds");
        const auto curve = rank_frequency(table, !raw, static_cast<std::int64_t>(corpus.total_chars()));
        Json fit = nullptr;
        if (fit_lo || fit_hi) {
          fit = exporting::to_json(
              fit_powerlaw(curve, RankRange{fit_lo.value_or(1), fit_hi.value_or(curve.points.back().rank)}));
        } else if (curve.points.size() >= 2) {
          fit = exporting::to_json(fit_powerlaw(curve));
        }
        emit(fmt, {{"curve", exporting::to_json(curve)}, {"fit", fit}}, exporting::to_csv(curve));
      }
    } else if (*trends) {
      const auto corpus = load_corpus(src);
      const auto set = keyword_set_of(src, keywords, set_name);
      const auto cfg = config_of(src);
      TrendTable table;
      if (baseline == "all") {
        SuffixIndex index(corpus);
        const auto pseudo = extract_pseudowords(index, params_of(ex, cfg), corpus.name());
        table = build_trend_table(corpus, set, index, pseudo);
      } else {
        table = build_trend_table(corpus, set);
      }
      const auto report = special_years(table, lambda.value_or(cfg.lambda));
      std::string csv = table_kind == "ratios"    ? exporting::trend_ratios_csv(table)
                        : table_kind == "special" ? exporting::to_csv(report)
                                                  : exporting::trend_counts_csv(table);
      emit(fmt, {{"table", exporting::to_json(table)}, {"special", exporting::to_json(report)}}, csv);
    } else if (*collocate) {
      const auto corpus = load_corpus(src);
      const auto a = utf8::decode_or_throw(kw_a, "--a");
      const auto b = utf8::decode_or_throw(kw_b, "--b");
      const auto m = mode == "events" ? CollocationMode::Events : CollocationMode::Pairs;
      if (!windows.empty()) {
        const auto sweep = window_sweep(corpus, a, b, windows, m);
        Json out = Json::array();
        for (const auto& s : sweep) out.push_back(exporting::to_json(s));
        emit(fmt, {{"sweep", out}}, exporting::sweep_csv(sweep));
      } else {
        const auto series = collocation_trend(corpus, {a, b, window.value_or(config_of(src).window), m});
        emit(fmt, exporting::to_json(series), exporting::to_csv(series));
      }
    } else if (*rank) {
      const auto corpus = load_corpus(src);
      const auto set = keyword_set_of(src, keywords, set_name);
      RankingOptions opts;
      opts.scheme = config_of(src).scheme;
      if (!scheme.empty()) {
        auto s = parse_ranking_scheme(scheme);
        if (!s) fail(ErrorCode::InvalidArgument, "unknown ranking scheme '" + scheme + "'");
        opts.scheme = *s;
      }
      opts.year = year;
      opts.drop_zero = drop_zero;
      const auto ranked = rank_documents(corpus, set, opts);
      emit(fmt, exporting::to_json(ranked, set), exporting::to_csv(ranked));
    } else if (*narrative) {
      const auto corpus = load_corpus(src);
      const auto rows = narrative_table(corpus, utf8::decode_or_throw(pattern, "--pattern"),
                                        utf8::decode_or_throw(event, "--event"));
      emit(fmt, exporting::to_json(rows), exporting::to_csv(rows));
    } else if (*concord) {
      const auto corpus = load_corpus(src);
      auto lines = concordance(corpus, utf8::decode_or_throw(needle, "--pattern"), context);
      if (concord_limit > 0 && lines.size() > concord_limit) lines.resize(concord_limit);
      emit(fmt, exporting::to_json(lines), exporting::to_csv(lines));
    } else if (*serve_cmd) {
      auto service = Service::open(serve_project);
      std::cerr << "listening on http://" << serve_opts.host << ":" << serve_opts.port << "/api/v1/\n";
      serve(*service, serve_opts);
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return 2;
  }
  return 0;
}
