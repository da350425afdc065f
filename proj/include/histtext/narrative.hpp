#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace histtext {

class Corpus;

enum class SegmentKind { RawFreq, Length, Normalized, EventFreq, Ratio };

std::string_view to_string(SegmentKind kind);

/// Per-chapter values. A segment made of several documents is aggregated.
struct SegmentSeries {
  SegmentKind kind = SegmentKind::RawFreq;
  std::vector<int> segments;                  // ascending segment indices
  std::vector<std::optional<double>> values;  // nullopt where undefined

  std::optional<double> at(int segment) const;
};

/// f_t: occurrences of `pattern` per segment.
SegmentSeries segment_frequencies(const Corpus& corpus, std::u32string_view pattern);

/// l_t: normalized characters per segment.
SegmentSeries segment_lengths(const Corpus& corpus);

/// f_t / l_t. Throws when the segment lists differ.
SegmentSeries normalized_frequencies(const SegmentSeries& freqs, const SegmentSeries& lengths);

/// s_t / m_t where m_t counts `base` and s_t counts `event`; null when
/// m_t = 0. `event` must contain `base`, which bounds the ratio by 1.
SegmentSeries conditional_ratio(const Corpus& corpus, std::u32string_view base,
                                std::u32string_view event);

struct NarrativeRow {
  int segment = 0;
  std::int64_t f = 0;
  std::int64_t l = 0;
  double f_over_l = 0;
  std::optional<std::int64_t> s;  // present when an event pattern was given
  std::optional<double> ratio;
};

/// Everything above in one table. `event` may be empty.
std::vector<NarrativeRow> narrative_table(const Corpus& corpus, std::u32string_view pattern,
                                          std::u32string_view event = {});

}  // namespace histtext
