#include "histtext/freqstrings.hpp"

#include <algorithm>

#include "histtext/error.hpp"

namespace histtext {

void ExtractionParams::validate() const {
  if (min_freq < 2) fail(ErrorCode::InvalidArgument, "min_freq must be >= 2");
  if (min_len < 1) fail(ErrorCode::InvalidArgument, "min_len must be >= 1");
  if (max_len < min_len) fail(ErrorCode::InvalidArgument, "max_len must be >= min_len");
}

bool ranks_before(const Pseudoword& a, const Pseudoword& b) {
  if (a.total_freq != b.total_freq) return a.total_freq > b.total_freq;
  return a.text < b.text;
}

namespace {

// Preceding-character summary of an interval's occurrences.
constexpr std::int32_t kNoLeaves = -2;
constexpr std::int32_t kDiverse = -1;

std::int32_t merge_left(std::int32_t a, std::int32_t b) {
  if (a == kNoLeaves) return b;
  if (b == kNoLeaves || a == b) return a;
  return kDiverse;
}

struct Frame {
  std::int32_t depth;
  std::size_t lb;
  std::int32_t left;
};

}  // namespace

PseudowordTable extract_pseudowords(const SuffixIndex& index, const ExtractionParams& params,
                                    std::string corpus_name) {
  params.validate();
  const auto text = index.symbols();
  const auto sa = index.suffix_array();
  const auto lcp = index.lcp();
  const std::size_t n = sa.size();
  const auto cap = static_cast<std::int32_t>(params.max_len);

  auto left_of = [&](std::int32_t pos) {
    if (pos == 0 || text[pos - 1] == SuffixIndex::kSeparator) return kDiverse;
    return text[pos - 1];
  };

  PseudowordTable table;
  table.corpus_name = std::move(corpus_name);
  table.params = params;

  // Every lcp-interval [lb, rb] of depth d groups the strings of lengths
  // (parent depth, d] that occur exactly rb - lb + 1 times.
  auto emit = [&](const Frame& f, std::size_t rb, std::int32_t parent_depth) {
    const auto freq = static_cast<std::int64_t>(rb - f.lb + 1);
    if (freq < params.min_freq) return;
    const auto lo = std::max<std::int32_t>(parent_depth + 1, static_cast<std::int32_t>(params.min_len));
    for (std::int32_t len = lo; len <= f.depth; ++len) {
      if (params.maximal_only) {
        const bool right_extends = len < f.depth;
        const bool left_extends = f.left != kDiverse && len + 1 <= cap;
        if (right_extends || left_extends) continue;
      }
      Pseudoword w;
      w.text.reserve(len);
      const auto start = static_cast<std::size_t>(sa[f.lb]);
      for (std::int32_t k = 0; k < len; ++k) w.text.push_back(index.codepoint(text[start + k]));
      w.total_freq = freq;
      table.entries.push_back(std::move(w));
    }
  };

  std::vector<Frame> stack;
  stack.push_back({0, 0, kNoLeaves});
  for (std::size_t i = 1; i <= n; ++i) {
    const std::int32_t h = i < n ? std::min(lcp[i], cap) : 0;
    // Suffix sa[i-1] belongs to the deepest interval containing it: a new
    // child when h exceeds the current depth, otherwise the current top.
    const std::int32_t leaf = left_of(sa[i - 1]);
    if (h > stack.back().depth) {
      stack.push_back({h, i - 1, leaf});
      continue;
    }
    stack.back().left = merge_left(stack.back().left, leaf);
    std::size_t lb = i - 1;
    std::int32_t carry = kNoLeaves;
    while (h < stack.back().depth) {
      Frame f = stack.back();
      stack.pop_back();
      emit(f, i - 1, std::max(h, stack.back().depth));
      lb = f.lb;
      if (h <= stack.back().depth) {
        stack.back().left = merge_left(stack.back().left, f.left);
      } else {
        carry = f.left;
      }
    }
    if (h > stack.back().depth) stack.push_back({h, lb, carry});
  }

  std::sort(table.entries.begin(), table.entries.end(), ranks_before);
  return table;
}

PseudowordTable annotate_doc_frequencies(const SuffixIndex& index, PseudowordTable table) {
  const auto sa = index.suffix_array();
  std::vector<std::int64_t> last_seen(index.doc_count(), -1);
  std::int64_t stamp = 0;
  for (auto& entry : table.entries) {
    auto [lo, hi] = index.locate(entry.text);
    std::int64_t docs = 0;
    for (std::size_t r = lo; r < hi; ++r) {
      const auto doc = index.doc_of(static_cast<std::size_t>(sa[r]));
      if (last_seen[doc] != stamp) {
        last_seen[doc] = stamp;
        ++docs;
      }
    }
    entry.doc_freq = docs;
    ++stamp;
  }
  table.doc_freq_annotated = true;
  return table;
}

}  // namespace histtext
