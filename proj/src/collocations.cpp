#include "histtext/collocations.hpp"

#include <algorithm>

#include "histtext/corpus.hpp"
#include "histtext/error.hpp"

namespace histtext {

void CollocationSpec::validate() const {
  if (keyword_a.empty() || keyword_b.empty()) {
    fail(ErrorCode::InvalidArgument, "collocation keywords must be non-empty");
  }
  if (keyword_a == keyword_b) {
    fail(ErrorCode::InvalidArgument, "self-collocation is undefined (keyword_a == keyword_b)");
  }
  if (window < 0) fail(ErrorCode::InvalidArgument, "window must be >= 0");
}

std::int64_t occurrence_gap(std::size_t pos_a, std::size_t len_a, std::size_t pos_b, std::size_t len_b) {
  const auto start = static_cast<std::int64_t>(std::max(pos_a, pos_b));
  const auto end = static_cast<std::int64_t>(std::min(pos_a + len_a, pos_b + len_b));
  return std::max<std::int64_t>(0, start - end);
}

namespace {

using Positions = std::vector<std::size_t>;

// Partners of an anchor at `pos` (length `len`) are the occurrences starting
// in [pos - window - partner_len, pos + len + window].
std::pair<Positions::const_iterator, Positions::const_iterator> partners(
    const Positions& others, std::size_t other_len, std::size_t pos, std::size_t len, int window) {
  const auto reach = static_cast<std::int64_t>(window);
  const std::int64_t lo = static_cast<std::int64_t>(pos) - reach - static_cast<std::int64_t>(other_len);
  const std::int64_t hi = static_cast<std::int64_t>(pos + len) + reach;
  auto first = lo <= 0 ? others.begin()
                       : std::lower_bound(others.begin(), others.end(), static_cast<std::size_t>(lo));
  auto last = std::upper_bound(first, others.end(), static_cast<std::size_t>(hi));
  return {first, last};
}

std::int64_t count_events(const Positions& anchors, std::size_t anchor_len, const Positions& others,
                          std::size_t other_len, int window) {
  std::int64_t n = 0;
  for (auto pos : anchors) {
    auto [first, last] = partners(others, other_len, pos, anchor_len, window);
    if (first != last) ++n;
  }
  return n;
}

}  // namespace

std::int64_t count_in_text(std::u32string_view text, const CollocationSpec& spec) {
  const auto pa = find_all(text, spec.keyword_a);
  if (pa.empty()) return 0;
  const auto pb = find_all(text, spec.keyword_b);
  if (pb.empty()) return 0;
  const auto la = spec.keyword_a.size();
  const auto lb = spec.keyword_b.size();

  if (spec.mode == CollocationMode::Events) {
    return count_events(pa, la, pb, lb, spec.window) + count_events(pb, lb, pa, la, spec.window);
  }
  std::int64_t n = 0;
  for (auto pos : pa) {
    auto [first, last] = partners(pb, lb, pos, la, spec.window);
    n += last - first;
  }
  return n;
}

CollocationCounts count_collocations(const Corpus& corpus, const CollocationSpec& spec) {
  spec.validate();
  CollocationCounts out;
  const auto stamps = corpus.stamps();
  for (int s = stamps.front(); s <= stamps.back(); ++s) out.stamps.push_back(s);
  out.per_stamp.assign(out.stamps.size(), 0);
  out.per_doc.reserve(corpus.doc_count());
  for (const auto& doc : corpus.documents()) {
    const auto c = count_in_text(doc.text, spec);
    out.per_doc.push_back(c);
    out.per_stamp[doc.stamp - stamps.front()] += c;
    out.total += c;
  }
  return out;
}

CollocationSeries collocation_trend(const Corpus& corpus, const CollocationSpec& spec) {
  if (corpus.stamp_kind() != StampKind::Year) {
    fail(ErrorCode::InvalidArgument, "corpus '" + corpus.name() + "' has no years");
  }
  auto counts = count_collocations(corpus, spec);
  CollocationSeries series;
  series.spec = spec;
  series.years = std::move(counts.stamps);
  series.counts = std::move(counts.per_stamp);
  series.total = counts.total;
  if (series.total > 0) {
    std::vector<double> ratios;
    ratios.reserve(series.counts.size());
    for (auto c : series.counts) {
      ratios.push_back(static_cast<double>(c) / static_cast<double>(series.total));
    }
    series.ratios = std::move(ratios);
  }
  return series;
}

std::vector<CollocationSeries> window_sweep(const Corpus& corpus, const std::u32string& a,
                                            const std::u32string& b, std::span<const int> windows,
                                            CollocationMode mode) {
  if (!std::is_sorted(windows.begin(), windows.end())) {
    fail(ErrorCode::InvalidArgument, "windows must be sorted ascending");
  }
  std::vector<CollocationSeries> out;
  out.reserve(windows.size());
  for (int w : windows) out.push_back(collocation_trend(corpus, CollocationSpec{a, b, w, mode}));
  return out;
}

CollocationSetTrend collocation_set_trend(const Corpus& corpus, std::span<const CollocationSpec> specs) {
  if (specs.empty()) fail(ErrorCode::InvalidArgument, "no collocations requested");
  CollocationSetTrend out;
  for (const auto& spec : specs) out.series.push_back(collocation_trend(corpus, spec));
  out.years = out.series.front().years;
  out.baseline.assign(out.years.size(), 0);
  for (const auto& s : out.series) {
    for (std::size_t n = 0; n < s.counts.size(); ++n) out.baseline[n] += s.counts[n];
    out.baseline_total += s.total;
  }
  return out;
}

}  // namespace histtext
