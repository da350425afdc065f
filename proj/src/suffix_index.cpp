#include "histtext/suffix_index.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "histtext/corpus.hpp"
#include "histtext/error.hpp"

namespace histtext {

namespace detail {
namespace {

using Symbols = std::span<const std::int32_t>;

std::vector<std::int32_t> naive_suffix_array(Symbols s) {
  const auto n = static_cast<std::int32_t>(s.size());
  std::vector<std::int32_t> sa(n);
  std::iota(sa.begin(), sa.end(), 0);
  std::sort(sa.begin(), sa.end(), [&](std::int32_t l, std::int32_t r) {
    return std::lexicographical_compare(s.begin() + l, s.end(), s.begin() + r, s.end());
  });
  return sa;
}

// Induced sorting (Nong, Zhang & Chan). `upper` is the largest symbol.
std::vector<std::int32_t> sa_is(Symbols s, std::int32_t upper) {
  const auto n = static_cast<std::int32_t>(s.size());
  if (n == 0) return {};
  if (n < 10) return naive_suffix_array(s);

  std::vector<std::int32_t> sa(n);
  std::vector<bool> is_s(n, false);  // S-type suffix flags; the last is L-type
  for (std::int32_t i = n - 2; i >= 0; --i) {
    is_s[i] = s[i] == s[i + 1] ? is_s[i + 1] : s[i] < s[i + 1];
  }

  // bucket_l[c]: first slot of bucket c; bucket_s[c]: first S slot of c.
  std::vector<std::int32_t> bucket_l(upper + 2, 0), bucket_s(upper + 2, 0);
  for (std::int32_t i = 0; i < n; ++i) {
    if (!is_s[i]) {
      ++bucket_s[s[i]];
    } else {
      ++bucket_l[s[i] + 1];
    }
  }
  for (std::int32_t c = 0; c <= upper; ++c) {
    bucket_s[c] += bucket_l[c];
    if (c < upper) bucket_l[c + 1] += bucket_s[c];
  }

  auto induce = [&](const std::vector<std::int32_t>& lms) {
    std::fill(sa.begin(), sa.end(), -1);
    std::vector<std::int32_t> cursor(bucket_s.begin(), bucket_s.end());
    for (std::int32_t d : lms) {
      if (d == n) continue;
      sa[cursor[s[d]]++] = d;
    }
    std::copy(bucket_l.begin(), bucket_l.end(), cursor.begin());
    sa[cursor[s[n - 1]]++] = n - 1;
    for (std::int32_t i = 0; i < n; ++i) {
      const std::int32_t v = sa[i];
      if (v >= 1 && !is_s[v - 1]) sa[cursor[s[v - 1]]++] = v - 1;
    }
    std::copy(bucket_l.begin(), bucket_l.end(), cursor.begin());
    for (std::int32_t i = n - 1; i >= 0; --i) {
      const std::int32_t v = sa[i];
      if (v >= 1 && is_s[v - 1]) sa[--cursor[s[v - 1] + 1]] = v - 1;
    }
  };

  std::vector<std::int32_t> lms_rank(n + 1, -1);
  std::vector<std::int32_t> lms;
  for (std::int32_t i = 1; i < n; ++i) {
    if (!is_s[i - 1] && is_s[i]) {
      lms_rank[i] = static_cast<std::int32_t>(lms.size());
      lms.push_back(i);
    }
  }
  const auto m = static_cast<std::int32_t>(lms.size());

  induce(lms);
  if (m == 0) return sa;

  std::vector<std::int32_t> sorted_lms;
  sorted_lms.reserve(m);
  for (std::int32_t v : sa) {
    if (lms_rank[v] != -1) sorted_lms.push_back(v);
  }

  // Name LMS substrings; equal substrings share a name.
  std::vector<std::int32_t> reduced(m);
  std::int32_t reduced_upper = 0;
  reduced[lms_rank[sorted_lms[0]]] = 0;
  for (std::int32_t i = 1; i < m; ++i) {
    std::int32_t l = sorted_lms[i - 1];
    std::int32_t r = sorted_lms[i];
    const std::int32_t end_l = lms_rank[l] + 1 < m ? lms[lms_rank[l] + 1] : n;
    const std::int32_t end_r = lms_rank[r] + 1 < m ? lms[lms_rank[r] + 1] : n;
    bool same = true;
    if (end_l - l != end_r - r) {
      same = false;
    } else {
      while (l < end_l && s[l] == s[r]) {
        ++l;
        ++r;
      }
      if (l == n || s[l] != s[r]) same = false;
    }
    if (!same) ++reduced_upper;
    reduced[lms_rank[sorted_lms[i]]] = reduced_upper;
  }

  const auto reduced_sa = sa_is(reduced, reduced_upper);
  for (std::int32_t i = 0; i < m; ++i) sorted_lms[i] = lms[reduced_sa[i]];
  induce(sorted_lms);
  return sa;
}

}  // namespace

std::vector<std::int32_t> suffix_array(std::span<const std::int32_t> s, std::int32_t upper) {
  return sa_is(s, upper);
}

}  // namespace detail

std::size_t SuffixIndex::estimated_bytes(std::size_t chars) {
  // text, sa, lcp and rank arrays (4 bytes each), SA-IS scratch (lms rank
  // and recursion), plus the document map.
  return chars * 4 * 4 + chars * 6 + (std::size_t{1} << 20);
}

SuffixIndex::SuffixIndex(const Corpus& corpus, const IndexLimits& limits) {
  std::size_t n = corpus.doc_count();  // one separator per document
  for (const auto& doc : corpus.documents()) n += doc.text.size();
  if (n >= static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
    fail(ErrorCode::Capacity, "corpus of " + std::to_string(n) + " symbols exceeds the 32-bit index");
  }
  const auto need = estimated_bytes(n);
  if (need > limits.memory_budget_bytes) {
    fail(ErrorCode::Capacity, "index for " + std::to_string(n) + " symbols needs ~" +
                                  std::to_string(need >> 20) + " MiB, budget is " +
                                  std::to_string(limits.memory_budget_bytes >> 20) + " MiB");
  }

  alphabet_.push_back(0);
  for (const auto& doc : corpus.documents()) {
    alphabet_.insert(alphabet_.end(), doc.text.begin(), doc.text.end());
  }
  std::sort(alphabet_.begin() + 1, alphabet_.end());
  alphabet_.erase(std::unique(alphabet_.begin() + 1, alphabet_.end()), alphabet_.end());

  text_.reserve(n);
  doc_starts_.reserve(corpus.doc_count());
  for (const auto& doc : corpus.documents()) {
    doc_starts_.push_back(text_.size());
    for (char32_t cp : doc.text) text_.push_back(symbol_of(cp));
    text_.push_back(kSeparator);
  }

  const auto upper = static_cast<std::int32_t>(alphabet_.size() - 1);
  sa_ = detail::suffix_array(text_, upper);

  // Kasai, stopping at separators.
  const auto len = static_cast<std::int32_t>(text_.size());
  std::vector<std::int32_t> rank(len);
  for (std::int32_t i = 0; i < len; ++i) rank[sa_[i]] = i;
  lcp_.assign(len, 0);
  std::int32_t h = 0;
  for (std::int32_t i = 0; i < len; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::int32_t j = sa_[rank[i] - 1];
    while (i + h < len && j + h < len && text_[i + h] == text_[j + h] &&
           text_[i + h] != kSeparator) {
      ++h;
    }
    lcp_[rank[i]] = h;
    if (h > 0) --h;
  }
}

std::int32_t SuffixIndex::symbol_of(char32_t cp) const {
  auto it = std::lower_bound(alphabet_.begin() + 1, alphabet_.end(), cp);
  if (it == alphabet_.end() || *it != cp) return -1;
  return static_cast<std::int32_t>(it - alphabet_.begin());
}

std::size_t SuffixIndex::doc_of(std::size_t pos) const {
  auto it = std::upper_bound(doc_starts_.begin(), doc_starts_.end(), pos);
  return static_cast<std::size_t>(it - doc_starts_.begin()) - 1;
}

std::pair<std::size_t, std::size_t> SuffixIndex::locate(std::u32string_view pattern) const {
  std::vector<std::int32_t> key;
  key.reserve(pattern.size());
  for (char32_t cp : pattern) {
    const auto sym = symbol_of(cp);
    if (sym < 0) return {0, 0};
    key.push_back(sym);
  }
  if (key.empty()) return {0, sa_.size()};

  // Compare the first |key| symbols of a suffix against the key.
  auto compare = [&](std::int32_t suffix) {
    const std::size_t start = static_cast<std::size_t>(suffix);
    for (std::size_t k = 0; k < key.size(); ++k) {
      if (start + k >= text_.size()) return -1;
      const auto c = text_[start + k];
      if (c != key[k]) return c < key[k] ? -1 : 1;
    }
    return 0;
  };
  auto lo = std::partition_point(sa_.begin(), sa_.end(),
                                 [&](std::int32_t suf) { return compare(suf) < 0; });
  auto hi = std::partition_point(lo, sa_.end(), [&](std::int32_t suf) { return compare(suf) == 0; });
  return {static_cast<std::size_t>(lo - sa_.begin()), static_cast<std::size_t>(hi - sa_.begin())};
}

std::int64_t SuffixIndex::count(std::u32string_view pattern) const {
  auto [lo, hi] = locate(pattern);
  return static_cast<std::int64_t>(hi - lo);
}

std::u32string SuffixIndex::substring(std::size_t pos, std::size_t len) const {
  std::u32string out;
  out.reserve(len);
  for (std::size_t k = 0; k < len; ++k) out.push_back(alphabet_[text_[pos + k]]);
  return out;
}

}  // namespace histtext
