#include "histtext/zipf.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "histtext/error.hpp"
#include "histtext/freqstrings.hpp"

namespace histtext {

namespace {

ZipfCurve build_curve(std::span<const std::int64_t> sorted_freqs, bool normalize,
                      std::int64_t corpus_size) {
  if (sorted_freqs.empty()) fail(ErrorCode::InvalidArgument, "cannot rank an empty table");
  if (normalize && corpus_size < 1) {
    fail(ErrorCode::InvalidArgument, "corpus size must be >= 1 for normalization");
  }
  ZipfCurve curve;
  curve.normalization = normalize ? ZipfNormalization::ByCorpusSize : ZipfNormalization::None;
  curve.corpus_size = corpus_size;
  curve.points.reserve(sorted_freqs.size());
  std::int64_t rank = 0;
  for (std::int64_t f : sorted_freqs) {
    ZipfPoint p;
    p.rank = ++rank;
    p.freq = f;
    p.value = normalize ? static_cast<double>(f) / static_cast<double>(corpus_size)
                        : static_cast<double>(f);
    p.log_rank = std::log10(static_cast<double>(p.rank));
    p.log_value = std::log10(p.value);
    curve.points.push_back(p);
  }
  return curve;
}

}  // namespace

ZipfCurve rank_frequency(const PseudowordTable& table, bool normalize, std::int64_t corpus_size) {
  std::vector<std::int64_t> freqs;
  freqs.reserve(table.entries.size());
  for (const auto& e : table.entries) freqs.push_back(e.total_freq);
  return build_curve(freqs, normalize, corpus_size);
}

ZipfCurve rank_frequency(std::span<const std::int64_t> freqs, bool normalize,
                         std::int64_t corpus_size) {
  // Types never observed have no rank.
  std::vector<std::int64_t> sorted;
  sorted.reserve(freqs.size());
  for (std::int64_t f : freqs) {
    if (f > 0) sorted.push_back(f);
  }
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  return build_curve(sorted, normalize, corpus_size);
}

PowerLawFit fit_powerlaw(const ZipfCurve& curve, std::optional<RankRange> range) {
  std::int64_t lo = 1;
  std::int64_t hi = static_cast<std::int64_t>(curve.points.size());
  if (range) {
    lo = std::max<std::int64_t>(range->lo, 1);
    hi = std::min(range->hi, hi);
  }
  const std::int64_t count = hi - lo + 1;
  if (count < 2) fail(ErrorCode::InvalidArgument, "power-law fit needs at least 2 points");

  // Two-pass OLS around the means for numerical stability.
  double mean_x = 0, mean_y = 0;
  for (std::int64_t r = lo; r <= hi; ++r) {
    mean_x += curve.points[r - 1].log_rank;
    mean_y += curve.points[r - 1].log_value;
  }
  mean_x /= static_cast<double>(count);
  mean_y /= static_cast<double>(count);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::int64_t r = lo; r <= hi; ++r) {
    const double dx = curve.points[r - 1].log_rank - mean_x;
    const double dy = curve.points[r - 1].log_value - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }

  PowerLawFit fit;
  fit.rank_lo = lo;
  fit.rank_hi = hi;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  double ss_res = 0;
  for (std::int64_t r = lo; r <= hi; ++r) {
    const auto& p = curve.points[r - 1];
    const double e = p.log_value - (fit.intercept + fit.slope * p.log_rank);
    ss_res += e * e;
  }
  // A flat curve is fitted exactly by slope 0.
  fit.r_squared = syy > 0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

double curve_distance(const ZipfCurve& a, const ZipfCurve& b, std::optional<std::int64_t> max_rank) {
  if (a.normalization != b.normalization) {
    fail(ErrorCode::InvalidArgument, "curves are normalized differently");
  }
  auto shared = static_cast<std::int64_t>(std::min(a.points.size(), b.points.size()));
  if (max_rank) shared = std::min(shared, *max_rank);
  if (shared < 1) fail(ErrorCode::InvalidArgument, "curves share no ranks");
  double gap = 0;
  for (std::int64_t r = 0; r < shared; ++r) {
    gap = std::max(gap, std::abs(a.points[r].log_value - b.points[r].log_value));
  }
  return gap;
}

}  // namespace histtext
