#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace histtext {

class Corpus;

struct IndexLimits {
  /// Upper bound on the index footprint, checked before any allocation.
  std::size_t memory_budget_bytes = std::size_t{3} << 30;
};

/// Suffix array + LCP over the concatenation of all documents, with a
/// separator symbol after each document. LCP values never extend across a
/// separator, so no prefix shared by two suffixes can span a document
/// boundary.
class SuffixIndex {
 public:
  /// Rough peak bytes needed to index `chars` characters.
  static std::size_t estimated_bytes(std::size_t chars);

  explicit SuffixIndex(const Corpus& corpus, const IndexLimits& limits = {});

  static constexpr std::int32_t kSeparator = 0;

  std::size_t size() const { return text_.size(); }
  std::size_t doc_count() const { return doc_starts_.size(); }

  /// Dense symbols: kSeparator between documents, 1.. for characters in
  /// codepoint order (so symbol order equals codepoint order).
  std::span<const std::int32_t> symbols() const { return text_; }
  std::span<const std::int32_t> suffix_array() const { return sa_; }
  /// lcp()[i] = common prefix of suffixes sa[i-1] and sa[i]; lcp()[0] = 0.
  std::span<const std::int32_t> lcp() const { return lcp_; }

  char32_t codepoint(std::int32_t symbol) const { return alphabet_[symbol]; }
  /// Symbol for a codepoint, or -1 when it never occurs in the corpus.
  std::int32_t symbol_of(char32_t cp) const;

  /// Document containing global position `pos` (must not be a separator).
  std::size_t doc_of(std::size_t pos) const;
  std::size_t doc_start(std::size_t doc) const { return doc_starts_[doc]; }

  /// Half-open suffix-array range of suffixes starting with `pattern`.
  std::pair<std::size_t, std::size_t> locate(std::u32string_view pattern) const;
  std::int64_t count(std::u32string_view pattern) const;

  std::u32string substring(std::size_t pos, std::size_t len) const;

 private:
  std::vector<std::int32_t> text_;
  std::vector<std::int32_t> sa_;
  std::vector<std::int32_t> lcp_;
  std::vector<char32_t> alphabet_;  // symbol -> codepoint, [0] unused
  std::vector<std::size_t> doc_starts_;
};

namespace detail {
/// SA-IS suffix sorting over symbols in [0, upper].
std::vector<std::int32_t> suffix_array(std::span<const std::int32_t> s, std::int32_t upper);
}  // namespace detail

}  // namespace histtext
