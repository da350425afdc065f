#include "histtext/export.hpp"

#include <charconv>
#include <cmath>

#include "histtext/utf8.hpp"

namespace histtext::exporting {

std::string format_number(double value) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::string u8(std::u32string_view s) { return utf8::encode(s); }

std::string csv_text(std::u32string_view text) { return csv_field(u8(text)); }

template <typename T>
std::string num(T v) {
  if constexpr (std::is_floating_point_v<T>) {
    return format_number(v);
  } else {
    return std::to_string(v);
  }
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const CollectionStats& stats) {
  return {{"pseudowords", stats.pseudowords},
          {"total_chars", stats.total_chars},
          {"distinct_chars", stats.distinct_chars},
          {"documents", stats.documents}};
}

std::string to_csv(const CollectionStats& stats) {
  return "pseudowords,total_chars,distinct_chars,documents\n" + num(stats.pseudowords) + "," +
         num(stats.total_chars) + "," + num(stats.distinct_chars) + "," + num(stats.documents) + "\n";
}

Json to_json(const Pseudoword& word) {
  return {{"string", u8(word.text)},
          {"length", word.length()},
          {"total_freq", word.total_freq},
          {"doc_freq", word.doc_freq}};
}

Json to_json(const PseudowordTable& table) {
  Json entries = Json::array();
  for (const auto& w : table.entries) entries.push_back(to_json(w));
  return {{"corpus", table.corpus_name},
          {"params",
           {{"min_freq", table.params.min_freq},
            {"min_len", table.params.min_len},
            {"max_len", table.params.max_len},
            {"maximal_only", table.params.maximal_only}}},
          {"doc_freq_annotated", table.doc_freq_annotated},
          {"entries", std::move(entries)}};
}

std::string to_csv(std::span<const Pseudoword> words) {
  std::string out = "string,length,total_freq,doc_freq\n";
  for (const auto& w : words) {
    out += csv_text(w.text) + "," + num(w.length()) + "," + num(w.total_freq) + "," + num(w.doc_freq) + "\n";
  }
  return out;
}

Json to_json(const ZipfCurve& curve) {
  Json points = Json::array();
  for (const auto& p : curve.points) {
    points.push_back({{"rank", p.rank},
                      {"freq", p.freq},
                      {"value", p.value},
                      {"log_rank", p.log_rank},
                      {"log_value", p.log_value}});
  }
  return {{"normalized", curve.normalization == ZipfNormalization::ByCorpusSize},
          {"corpus_size", curve.corpus_size},
          {"points", std::move(points)}};
}

Json to_json(const PowerLawFit& fit) {
  return {{"slope", fit.slope},
          {"intercept", fit.intercept},
          {"r_squared", fit.r_squared},
          {"rank_lo", fit.rank_lo},
          {"rank_hi", fit.rank_hi}};
}

std::string to_csv(const ZipfCurve& curve) {
  std::string out = "rank,freq,value,log_rank,log_value\n";
  for (const auto& p : curve.points) {
    out += num(p.rank) + "," + num(p.freq) + "," + num(p.value) + "," + num(p.log_rank) + "," +
           num(p.log_value) + "\n";
  }
  return out;
}

Json to_json(const TrendTable& table) {
  Json keywords = Json::array();
  for (std::size_t w = 0; w < table.keywords.size(); ++w) {
    Json ratios = nullptr;
    if (!table.absent(w)) {
      ratios = Json::array();
      for (const auto& p : annual_percentage(table, table.keywords[w])) ratios.push_back(p.y);
    }
    keywords.push_back({{"keyword", u8(table.keywords[w])},
                        {"counts", table.counts[w]},
                        {"total", table.keyword_totals[w]},
                        {"absent", table.absent(w)},
                        {"ratios", std::move(ratios)}});
  }
  Json baseline_ratios = nullptr;
  if (table.baseline_total > 0) {
    baseline_ratios = Json::array();
    for (const auto& p : baseline_percentage(table)) baseline_ratios.push_back(p.y);
  }
  return {{"years", table.years},
          {"baseline",
           {{"kind", table.baseline_kind == TrendBaseline::SelectedKeywords ? "selected_keywords" : "all_pseudowords"},
            {"counts", table.baseline},
            {"total", table.baseline_total},
            {"ratios", std::move(baseline_ratios)}}},
          {"keywords", std::move(keywords)}};
}

namespace {

std::string trend_header(const TrendTable& table) {
  std::string out = "year,total";
  for (const auto& k : table.keywords) out += "," + csv_text(k);
  return out + "\n";
}

}  // namespace

std::string trend_counts_csv(const TrendTable& table) {
  std::string out = trend_header(table);
  for (std::size_t n = 0; n < table.years.size(); ++n) {
    out += num(table.years[n]) + "," + num(table.baseline[n]);
    for (const auto& row : table.counts) out += "," + num(row[n]);
    out += "\n";
  }
  return out;
}

std::string trend_ratios_csv(const TrendTable& table) {
  std::vector<std::vector<SeriesPoint>> series;
  for (std::size_t w = 0; w < table.keywords.size(); ++w) {
    series.push_back(table.absent(w) ? std::vector<SeriesPoint>{} : annual_percentage(table, table.keywords[w]));
  }
  const auto total = table.baseline_total > 0 ? baseline_percentage(table) : std::vector<SeriesPoint>{};
  std::string out = trend_header(table);
  for (std::size_t n = 0; n < table.years.size(); ++n) {
    out += num(table.years[n]) + ",";
    if (!total.empty()) out += num(total[n].y);
    for (const auto& s : series) out += "," + (s.empty() ? std::string() : num(s[n].y));
    out += "\n";
  }
  return out;
}

Json to_json(const SpecialYearReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"keyword", u8(e.keyword)},
                       {"year", e.year},
                       {"keyword_ratio", e.keyword_ratio},
                       {"baseline_ratio", e.baseline_ratio},
                       {"special", e.special}});
  }
  return {{"lambda", report.lambda}, {"entries", std::move(entries)}};
}

std::string to_csv(const SpecialYearReport& report) {
  std::string out = "keyword,year,keyword_ratio,baseline_ratio,special\n";
  for (const auto& e : report.entries) {
    out += csv_text(e.keyword) + "," + num(e.year) + "," + num(e.keyword_ratio) + "," + num(e.baseline_ratio) + "," +
           (e.special ? "true" : "false") + "\n";
  }
  return out;
}

Json to_json(const CollocationSeries& series) {
  return {{"keyword_a", u8(series.spec.keyword_a)},
          {"keyword_b", u8(series.spec.keyword_b)},
          {"window", series.spec.window},
          {"mode", series.spec.mode == CollocationMode::Pairs ? "pairs" : "events"},
          {"years", series.years},
          {"counts", series.counts},
          {"total", series.total},
          {"ratios", series.ratios ? Json(*series.ratios) : Json(nullptr)}};
}

namespace {

void append_series_rows(std::string& out, const CollocationSeries& series, const std::string& prefix) {
  for (std::size_t n = 0; n < series.years.size(); ++n) {
    out += prefix + num(series.years[n]) + "," + num(series.counts[n]) + ",";
    if (series.ratios) out += num((*series.ratios)[n]);
    out += "\n";
  }
}

}  // namespace

std::string to_csv(const CollocationSeries& series) {
  std::string out = "year,count,ratio\n";
  append_series_rows(out, series, "");
  return out;
}

std::string sweep_csv(std::span<const CollocationSeries> sweep) {
  std::string out = "window,year,count,ratio\n";
  for (const auto& s : sweep) append_series_rows(out, s, num(s.spec.window) + ",");
  return out;
}

Json to_json(std::span<const RankedDoc> ranked, const KeywordSet& set) {
  Json docs = Json::array();
  for (const auto& r : ranked) {
    Json breakdown = Json::object();
    for (std::size_t w = 0; w < set.keywords.size() && w < r.breakdown.size(); ++w) {
      breakdown[u8(set.keywords[w].text)] = r.breakdown[w];
    }
    docs.push_back({{"rank", r.rank},
                    {"weight", r.weight},
                    {"doc_id", r.doc_id},
                    {"year", r.stamp},
                    {"author", r.author},
                    {"title", r.title},
                    {"breakdown", std::move(breakdown)}});
  }
  return docs;
}

std::string to_csv(std::span<const RankedDoc> ranked) {
  std::string out = "rank,weight,doc_id,year,author,title\n";
  for (const auto& r : ranked) {
    out += num(r.rank) + "," + num(r.weight) + "," + csv_field(r.doc_id) + "," + num(r.stamp) + "," +
           csv_field(r.author) + "," + csv_field(r.title) + "\n";
  }
  return out;
}

Json to_json(const SegmentSeries& series) {
  Json values = Json::array();
  for (const auto& v : series.values) values.push_back(optional_number(v));
  return {{"kind", std::string(to_string(series.kind))}, {"segments", series.segments}, {"values", std::move(values)}};
}

std::string to_csv(const SegmentSeries& series) {
  std::string out = "segment,value\n";
  for (std::size_t t = 0; t < series.segments.size(); ++t) {
    out += num(series.segments[t]) + ",";
    if (series.values[t]) out += num(*series.values[t]);
    out += "\n";
  }
  return out;
}

Json to_json(std::span<const NarrativeRow> rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back({{"segment", r.segment},
                   {"f", r.f},
                   {"l", r.l},
                   {"f_over_l", r.f_over_l},
                   {"s", r.s ? Json(*r.s) : Json(nullptr)},
                   {"m", r.s ? Json(r.f) : Json(nullptr)},
                   {"ratio", optional_number(r.ratio)}});
  }
  return out;
}

std::string to_csv(std::span<const NarrativeRow> rows) {
  std::string out = "segment,f,l,f_over_l,s,m,ratio\n";
  for (const auto& r : rows) {
    out += num(r.segment) + "," + num(r.f) + "," + num(r.l) + "," + num(r.f_over_l) + ",";
    if (r.s) out += num(*r.s) + "," + num(r.f);
    else out += ",";
    out += ",";
    if (r.ratio) out += num(*r.ratio);
    out += "\n";
  }
  return out;
}

Json to_json(std::span<const ConcordanceLine> lines) {
  Json out = Json::array();
  for (const auto& l : lines) {
    out.push_back({{"doc_id", l.doc_id},
                   {"position", l.position},
                   {"left", u8(l.left)},
                   {"match", u8(l.match)},
                   {"right", u8(l.right)}});
  }
  return out;
}

std::string to_csv(std::span<const ConcordanceLine> lines) {
  std::string out = "doc_id,position,left,match,right\n";
  for (const auto& l : lines) {
    out += csv_field(l.doc_id) + "," + num(l.position) + "," + csv_text(l.left) + "," + csv_text(l.match) + "," +
           csv_text(l.right) + "\n";
  }
  return out;
}

}  // namespace histtext::exporting
