#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace histtext {

struct PseudowordTable;

enum class ZipfNormalization { None, ByCorpusSize };

struct ZipfPoint {
  std::int64_t rank = 0;
  std::int64_t freq = 0;
  double value = 0;  // freq, or freq / N
  double log_rank = 0;
  double log_value = 0;  // log10(value)
};

struct ZipfCurve {
  std::vector<ZipfPoint> points;
  ZipfNormalization normalization = ZipfNormalization::None;
  std::int64_t corpus_size = 0;
};

struct RankRange {
  std::int64_t lo = 1;
  std::int64_t hi = 1;
};

struct PowerLawFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
  std::int64_t rank_lo = 0;
  std::int64_t rank_hi = 0;
};

/// Ranks follow the table's order (frequency descending, ties consecutive).
ZipfCurve rank_frequency(const PseudowordTable& table, bool normalize, std::int64_t corpus_size);

/// Same, from bare frequencies; they are ranked in descending order.
ZipfCurve rank_frequency(std::span<const std::int64_t> freqs, bool normalize,
                         std::int64_t corpus_size);

/// Ordinary least squares of log_value on log_rank over `range`.
PowerLawFit fit_powerlaw(const ZipfCurve& curve, std::optional<RankRange> range = std::nullopt);

/// Largest |log_value| gap over ranks present in both curves, optionally
/// limited to ranks <= max_rank.
double curve_distance(const ZipfCurve& a, const ZipfCurve& b,
                      std::optional<std::int64_t> max_rank = std::nullopt);

}  // namespace histtext
