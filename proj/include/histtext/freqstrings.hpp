#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "histtext/suffix_index.hpp"

namespace histtext {

struct Pseudoword {
  std::u32string text;
  std::int64_t total_freq = 0;
  std::int64_t doc_freq = 0;  // 0 until annotate_doc_frequencies runs

  std::size_t length() const { return text.size(); }
  bool operator==(const Pseudoword&) const = default;
};

struct ExtractionParams {
  std::int64_t min_freq = 11;  // "more than 10 times"
  std::size_t min_len = 1;
  std::size_t max_len = 8;
  bool maximal_only = false;

  void validate() const;
  bool operator==(const ExtractionParams&) const = default;
};

struct PseudowordTable {
  std::string corpus_name;
  ExtractionParams params;
  bool doc_freq_annotated = false;
  /// total_freq descending, then codepoint order.
  std::vector<Pseudoword> entries;
};

/// Ranked-output order shared by every table.
bool ranks_before(const Pseudoword& a, const Pseudoword& b);

/// All distinct substrings s with min_len <= |s| <= max_len occurring at
/// least min_freq times (overlaps counted, never spanning documents).
///
/// With maximal_only, s is dropped when a one-character extension s' (left
/// or right) with |s'| <= max_len occurs exactly as often: every occurrence
/// of s then sits inside an occurrence of s'.
PseudowordTable extract_pseudowords(const SuffixIndex& index, const ExtractionParams& params,
                                    std::string corpus_name = {});

/// Fills doc_freq for every entry. Pure: returns an annotated copy.
PseudowordTable annotate_doc_frequencies(const SuffixIndex& index, PseudowordTable table);

}  // namespace histtext
