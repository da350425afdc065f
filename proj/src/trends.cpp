#include "histtext/trends.hpp"

#include <algorithm>
#include <unordered_set>

#include "histtext/corpus.hpp"
#include "histtext/error.hpp"
#include "histtext/freqstrings.hpp"
#include "histtext/suffix_index.hpp"
#include "histtext/utf8.hpp"

namespace histtext {

void KeywordSet::validate() const {
  std::unordered_set<std::u32string> seen;
  for (const auto& kw : keywords) {
    if (kw.text.empty()) fail(ErrorCode::InvalidArgument, "keyword set '" + name + "' has an empty keyword");
    if (!seen.insert(kw.text).second) {
      fail(ErrorCode::InvalidArgument,
           "keyword set '" + name + "' repeats '" + utf8::encode(kw.text) + "'");
    }
  }
}

std::vector<std::u32string> KeywordSet::texts() const {
  std::vector<std::u32string> out;
  out.reserve(keywords.size());
  for (const auto& kw : keywords) out.push_back(kw.text);
  return out;
}

KeywordSet make_keyword_set(std::string name, const std::vector<std::u32string>& keywords) {
  KeywordSet set{std::move(name), {}};
  for (const auto& k : keywords) set.keywords.push_back({k, {}});
  set.validate();
  return set;
}

std::vector<std::vector<std::int64_t>> count_by_document(const Corpus& corpus,
                                                         const std::vector<std::u32string>& keywords) {
  std::vector<std::vector<std::int64_t>> counts(keywords.size(),
                                                std::vector<std::int64_t>(corpus.doc_count(), 0));
  for (std::size_t w = 0; w < keywords.size(); ++w) {
    if (keywords[w].empty()) fail(ErrorCode::InvalidArgument, "keyword must be non-empty");
    for (std::size_t d = 0; d < corpus.doc_count(); ++d) {
      counts[w][d] = count_in(corpus.document(d).text, keywords[w]);
    }
  }
  return counts;
}

std::optional<std::size_t> TrendTable::keyword_index(std::u32string_view keyword) const {
  for (std::size_t w = 0; w < keywords.size(); ++w) {
    if (keywords[w] == keyword) return w;
  }
  return std::nullopt;
}

namespace {

TrendTable keyword_counts(const Corpus& corpus, const KeywordSet& set) {
  if (corpus.stamp_kind() != StampKind::Year) {
    fail(ErrorCode::InvalidArgument, "corpus '" + corpus.name() + "' has no years");
  }
  if (set.keywords.empty()) fail(ErrorCode::InvalidArgument, "keyword set '" + set.name + "' is empty");
  set.validate();

  TrendTable table;
  const auto stamps = corpus.stamps();
  for (int y = stamps.front(); y <= stamps.back(); ++y) table.years.push_back(y);
  table.keywords = set.texts();

  const auto per_doc = count_by_document(corpus, table.keywords);
  table.counts.assign(table.keywords.size(), std::vector<std::int64_t>(table.years.size(), 0));
  for (std::size_t d = 0; d < corpus.doc_count(); ++d) {
    const auto n = static_cast<std::size_t>(corpus.document(d).stamp - table.years.front());
    for (std::size_t w = 0; w < table.keywords.size(); ++w) table.counts[w][n] += per_doc[w][d];
  }
  table.keyword_totals.assign(table.keywords.size(), 0);
  for (std::size_t w = 0; w < table.keywords.size(); ++w) {
    for (auto k : table.counts[w]) table.keyword_totals[w] += k;
  }
  return table;
}

}  // namespace

TrendTable build_trend_table(const Corpus& corpus, const KeywordSet& set) {
  auto table = keyword_counts(corpus, set);
  table.baseline_kind = TrendBaseline::SelectedKeywords;
  table.baseline.assign(table.years.size(), 0);
  for (std::size_t n = 0; n < table.years.size(); ++n) {
    for (const auto& row : table.counts) table.baseline[n] += row[n];
    table.baseline_total += table.baseline[n];
  }
  return table;
}

TrendTable build_trend_table(const Corpus& corpus, const KeywordSet& set, const SuffixIndex& index,
                             const PseudowordTable& pseudowords) {
  if (index.doc_count() != corpus.doc_count()) {
    fail(ErrorCode::InvalidArgument, "index was not built from this corpus");
  }
  auto table = keyword_counts(corpus, set);
  table.baseline_kind = TrendBaseline::AllPseudowords;
  table.baseline.assign(table.years.size(), 0);
  const auto sa = index.suffix_array();
  for (const auto& entry : pseudowords.entries) {
    auto [lo, hi] = index.locate(entry.text);
    for (std::size_t r = lo; r < hi; ++r) {
      const auto doc = index.doc_of(static_cast<std::size_t>(sa[r]));
      ++table.baseline[corpus.document(doc).stamp - table.years.front()];
    }
  }
  for (auto t : table.baseline) table.baseline_total += t;
  return table;
}

std::vector<SeriesPoint> annual_percentage(const TrendTable& table, std::u32string_view keyword) {
  const auto w = table.keyword_index(keyword);
  if (!w) fail(ErrorCode::NotFound, "keyword '" + utf8::encode(keyword) + "' is not in the table");
  const auto total = table.keyword_totals[*w];
  if (total == 0) fail(ErrorCode::Undefined, "keyword never occurs: '" + utf8::encode(keyword) + "'");
  std::vector<SeriesPoint> out;
  out.reserve(table.years.size());
  for (std::size_t n = 0; n < table.years.size(); ++n) {
    out.push_back({table.years[n], static_cast<double>(table.counts[*w][n]) / static_cast<double>(total)});
  }
  return out;
}

std::vector<SeriesPoint> baseline_percentage(const TrendTable& table) {
  if (table.baseline_total == 0) fail(ErrorCode::Undefined, "no keyword occurs in the corpus");
  std::vector<SeriesPoint> out;
  out.reserve(table.years.size());
  for (std::size_t n = 0; n < table.years.size(); ++n) {
    out.push_back({table.years[n],
                   static_cast<double>(table.baseline[n]) / static_cast<double>(table.baseline_total)});
  }
  return out;
}

SpecialYearReport special_years(const TrendTable& table, double lambda) {
  if (!(lambda > 0)) fail(ErrorCode::InvalidArgument, "lambda must be > 0");
  if (table.baseline_total <= 0) fail(ErrorCode::Undefined, "baseline total T is zero");
  SpecialYearReport report;
  report.lambda = lambda;
  const auto T = table.baseline_total;
  for (std::size_t w = 0; w < table.keywords.size(); ++w) {
    const auto K = table.keyword_totals[w];
    if (K == 0) continue;
    for (std::size_t n = 0; n < table.years.size(); ++n) {
      const auto k = table.counts[w][n];
      const auto t = table.baseline[n];
      // k/K >= lambda * t/T, cross-multiplied so lambda = 1 compares exactly.
      const auto lhs = static_cast<long double>(static_cast<__int128>(k) * T);
      const auto rhs = static_cast<long double>(lambda) * static_cast<long double>(static_cast<__int128>(t) * K);
      report.entries.push_back(SpecialYearEntry{
          .keyword = table.keywords[w],
          .year = table.years[n],
          .keyword_ratio = static_cast<double>(k) / static_cast<double>(K),
          .baseline_ratio = static_cast<double>(t) / static_cast<double>(T),
          .special = lhs >= rhs,
      });
    }
  }
  return report;
}

}  // namespace histtext
