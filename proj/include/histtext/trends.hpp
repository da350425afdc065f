#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace histtext {

class Corpus;
class SuffixIndex;
struct PseudowordTable;

struct SeriesPoint {
  int x = 0;  // year or segment index
  double y = 0;

  bool operator==(const SeriesPoint&) const = default;
};

struct Keyword {
  std::u32string text;
  std::string note;  // provenance, free text

  bool operator==(const Keyword&) const = default;
};

/// A curated, ordered list of distinct non-empty keywords.
struct KeywordSet {
  std::string name;
  std::vector<Keyword> keywords;

  void validate() const;
  std::vector<std::u32string> texts() const;
  bool operator==(const KeywordSet&) const = default;
};

KeywordSet make_keyword_set(std::string name, const std::vector<std::u32string>& keywords);

/// counts[w][d]: overlapping occurrences of keyword w in document d.
std::vector<std::vector<std::int64_t>> count_by_document(const Corpus& corpus,
                                                         const std::vector<std::u32string>& keywords);

enum class TrendBaseline {
  SelectedKeywords,  // t_n = sum over the set of k_{w,n}
  AllPseudowords,    // t_n = occurrences of every extracted pseudoword in year n
};

struct TrendTable {
  std::vector<int> years;  // every year from the first to the last stamp
  std::vector<std::u32string> keywords;
  std::vector<std::vector<std::int64_t>> counts;  // k_{w,n}, [keyword][year]
  std::vector<std::int64_t> keyword_totals;       // K_w
  std::vector<std::int64_t> baseline;             // t_n
  std::int64_t baseline_total = 0;                // T
  TrendBaseline baseline_kind = TrendBaseline::SelectedKeywords;

  std::optional<std::size_t> keyword_index(std::u32string_view keyword) const;
  bool absent(std::size_t w) const { return keyword_totals[w] == 0; }
};

TrendTable build_trend_table(const Corpus& corpus, const KeywordSet& set);

/// Baseline taken from every pseudoword of `table` instead of the set.
TrendTable build_trend_table(const Corpus& corpus, const KeywordSet& set, const SuffixIndex& index,
                             const PseudowordTable& table);

/// k_{w,n} / K_w per year. Throws Undefined when the keyword never occurs.
std::vector<SeriesPoint> annual_percentage(const TrendTable& table, std::u32string_view keyword);
/// t_n / T per year (the "Total" curve).
std::vector<SeriesPoint> baseline_percentage(const TrendTable& table);

struct SpecialYearEntry {
  std::u32string keyword;
  int year = 0;
  double keyword_ratio = 0;   // k_n / K
  double baseline_ratio = 0;  // t_n / T
  bool special = false;       // k_n / K >= lambda * t_n / T
};

struct SpecialYearReport {
  double lambda = 1.1;
  std::vector<SpecialYearEntry> entries;  // keywords with K > 0, every year
};

inline constexpr double kDefaultLambda = 1.1;

SpecialYearReport special_years(const TrendTable& table, double lambda = kDefaultLambda);

}  // namespace histtext
