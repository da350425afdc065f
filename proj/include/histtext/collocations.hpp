#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace histtext {

class Corpus;

enum class CollocationMode {
  Pairs,   // each (a occurrence, b occurrence) pair within the window
  Events,  // each occurrence of a or b with at least one partner in the window
};

inline constexpr int kDefaultWindow = 30;

struct CollocationSpec {
  std::u32string keyword_a;
  std::u32string keyword_b;
  int window = kDefaultWindow;
  CollocationMode mode = CollocationMode::Pairs;

  void validate() const;
};

/// Characters strictly between the two occurrences; 0 when they touch or
/// overlap.
std::int64_t occurrence_gap(std::size_t pos_a, std::size_t len_a, std::size_t pos_b, std::size_t len_b);

struct CollocationCounts {
  std::vector<std::int64_t> per_doc;  // corpus document order
  std::vector<int> stamps;            // every year from the first to the last
  std::vector<std::int64_t> per_stamp;
  std::int64_t total = 0;
};

CollocationCounts count_collocations(const Corpus& corpus, const CollocationSpec& spec);

/// Collocation count inside one text.
std::int64_t count_in_text(std::u32string_view text, const CollocationSpec& spec);

struct CollocationSeries {
  CollocationSpec spec;
  std::vector<int> years;
  std::vector<std::int64_t> counts;  // c_n
  std::int64_t total = 0;            // C
  /// c_n / C; nullopt when C = 0 ("no co-occurrences").
  std::optional<std::vector<double>> ratios;
};

CollocationSeries collocation_trend(const Corpus& corpus, const CollocationSpec& spec);

/// One series per window; `windows` must be ascending.
std::vector<CollocationSeries> window_sweep(const Corpus& corpus, const std::u32string& a,
                                            const std::u32string& b, std::span<const int> windows,
                                            CollocationMode mode = CollocationMode::Pairs);

/// Several collocations plus their per-year sum, the collocation analogue of
/// the keyword "Total" baseline.
struct CollocationSetTrend {
  std::vector<CollocationSeries> series;
  std::vector<int> years;
  std::vector<std::int64_t> baseline;
  std::int64_t baseline_total = 0;
};

CollocationSetTrend collocation_set_trend(const Corpus& corpus, std::span<const CollocationSpec> specs);

}  // namespace histtext
