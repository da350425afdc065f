#include "histtext/narrative.hpp"

#include <algorithm>

#include "histtext/corpus.hpp"
#include "histtext/error.hpp"
#include "histtext/utf8.hpp"

namespace histtext {

std::string_view to_string(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::RawFreq: return "raw_freq";
    case SegmentKind::Length: return "length";
    case SegmentKind::Normalized: return "normalized";
    case SegmentKind::EventFreq: return "event_freq";
    case SegmentKind::Ratio: return "ratio";
  }
  return "raw_freq";
}

std::optional<double> SegmentSeries::at(int segment) const {
  auto it = std::lower_bound(segments.begin(), segments.end(), segment);
  if (it == segments.end() || *it != segment) return std::nullopt;
  return values[it - segments.begin()];
}

namespace {

void require_chaptered(const Corpus& corpus) {
  if (!corpus.chaptered()) {
    fail(ErrorCode::InvalidArgument, "corpus '" + corpus.name() + "' is not chaptered");
  }
}

// Sums a per-document quantity into the corpus's segments.
template <typename PerDoc>
std::vector<std::int64_t> per_segment(const Corpus& corpus, const std::vector<int>& segments,
                                      PerDoc&& value) {
  std::vector<std::int64_t> out(segments.size(), 0);
  for (const auto& doc : corpus.documents()) {
    const auto t = std::lower_bound(segments.begin(), segments.end(), doc.stamp) - segments.begin();
    out[t] += value(doc);
  }
  return out;
}

SegmentSeries from_counts(SegmentKind kind, std::vector<int> segments, const std::vector<std::int64_t>& counts) {
  SegmentSeries s{kind, std::move(segments), {}};
  s.values.reserve(counts.size());
  for (auto c : counts) s.values.emplace_back(static_cast<double>(c));
  return s;
}

std::vector<std::int64_t> pattern_counts(const Corpus& corpus, const std::vector<int>& segments,
                                         std::u32string_view pattern) {
  if (pattern.empty()) fail(ErrorCode::InvalidArgument, "pattern must be non-empty");
  return per_segment(corpus, segments, [&](const Document& d) { return count_in(d.text, pattern); });
}

std::vector<std::int64_t> length_counts(const Corpus& corpus, const std::vector<int>& segments) {
  return per_segment(corpus, segments,
                     [](const Document& d) { return static_cast<std::int64_t>(d.text.size()); });
}

}  // namespace

SegmentSeries segment_frequencies(const Corpus& corpus, std::u32string_view pattern) {
  require_chaptered(corpus);
  auto segments = corpus.stamps();
  const auto counts = pattern_counts(corpus, segments, pattern);
  return from_counts(SegmentKind::RawFreq, std::move(segments), counts);
}

SegmentSeries segment_lengths(const Corpus& corpus) {
  require_chaptered(corpus);
  auto segments = corpus.stamps();
  const auto counts = length_counts(corpus, segments);
  return from_counts(SegmentKind::Length, std::move(segments), counts);
}

SegmentSeries normalized_frequencies(const SegmentSeries& freqs, const SegmentSeries& lengths) {
  if (freqs.segments != lengths.segments) {
    fail(ErrorCode::InvalidArgument, "frequency and length series cover different segments");
  }
  SegmentSeries out{SegmentKind::Normalized, freqs.segments, {}};
  for (std::size_t t = 0; t < freqs.values.size(); ++t) {
    const auto& l = lengths.values[t];
    if (!l || *l <= 0) fail(ErrorCode::InvalidArgument, "segment lengths must be positive");
    const auto& f = freqs.values[t];
    out.values.emplace_back(f ? std::optional<double>(*f / *l) : std::nullopt);
  }
  return out;
}

SegmentSeries conditional_ratio(const Corpus& corpus, std::u32string_view base,
                                std::u32string_view event) {
  require_chaptered(corpus);
  if (base.empty() || event.empty()) fail(ErrorCode::InvalidArgument, "patterns must be non-empty");
  if (event.find(base) == std::u32string_view::npos) {
    fail(ErrorCode::InvalidArgument, "event must embed base ('" + utf8::encode(event) +
                                         "' does not contain '" + utf8::encode(base) + "')");
  }
  auto segments = corpus.stamps();
  const auto m = pattern_counts(corpus, segments, base);
  const auto s = pattern_counts(corpus, segments, event);
  SegmentSeries out{SegmentKind::Ratio, std::move(segments), {}};
  for (std::size_t t = 0; t < m.size(); ++t) {
    if (m[t] == 0) {
      out.values.emplace_back(std::nullopt);
    } else {
      out.values.emplace_back(static_cast<double>(s[t]) / static_cast<double>(m[t]));
    }
  }
  return out;
}

std::vector<NarrativeRow> narrative_table(const Corpus& corpus, std::u32string_view pattern,
                                          std::u32string_view event) {
  require_chaptered(corpus);
  if (!event.empty() && event.find(pattern) == std::u32string_view::npos) {
    fail(ErrorCode::InvalidArgument, "event must embed base ('" + utf8::encode(event) +
                                         "' does not contain '" + utf8::encode(pattern) + "')");
  }
  const auto segments = corpus.stamps();
  const auto f = pattern_counts(corpus, segments, pattern);
  const auto l = length_counts(corpus, segments);
  std::vector<std::int64_t> s;
  if (!event.empty()) s = pattern_counts(corpus, segments, event);

  std::vector<NarrativeRow> rows;
  rows.reserve(segments.size());
  for (std::size_t t = 0; t < segments.size(); ++t) {
    NarrativeRow row;
    row.segment = segments[t];
    row.f = f[t];
    row.l = l[t];
    row.f_over_l = static_cast<double>(f[t]) / static_cast<double>(l[t]);
    if (!event.empty()) {
      row.s = s[t];
      if (f[t] > 0) row.ratio = static_cast<double>(s[t]) / static_cast<double>(f[t]);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace histtext
