#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "histtext/corpus.hpp"
#include "histtext/error.hpp"
#include "histtext/freqstrings.hpp"
#include "histtext/suffix_index.hpp"
#include "support/oracles.hpp"

using namespace histtext;
using testing::corpus_of;

namespace {

std::map<std::u32string, std::int64_t> as_map(const PseudowordTable& t) {
  std::map<std::u32string, std::int64_t> m;
  for (const auto& e : t.entries) m[e.text] = e.total_freq;
  return m;
}

std::map<std::u32string, std::int64_t> brute_table(const std::vector<std::u32string>& docs,
                                                   const ExtractionParams& p) {
  std::map<std::u32string, std::int64_t> out;
  for (auto& [s, f] : testing::brute_ngrams(docs, p.min_len, p.max_len)) {
    if (f >= p.min_freq) out[s] = f;
  }
  return out;
}

// The maximality rule applied to a brute-force table of every n-gram.
std::map<std::u32string, std::int64_t> brute_maximal(const std::vector<std::u32string>& docs,
                                                     const ExtractionParams& p) {
  const auto all = testing::brute_ngrams(docs, 1, p.max_len);
  std::set<char32_t> alphabet;
  for (const auto& d : docs) alphabet.insert(d.begin(), d.end());
  std::map<std::u32string, std::int64_t> out;
  for (auto& [s, f] : brute_table(docs, p)) {
    bool subsumed = false;
    if (s.size() + 1 <= p.max_len) {
      for (char32_t c : alphabet) {
        for (const auto& ext : {s + c, std::u32string(1, c) + s}) {
          auto it = all.find(ext);
          if (it != all.end() && it->second == f) subsumed = true;
        }
      }
    }
    if (!subsumed) out[s] = f;
  }
  return out;
}

}  // namespace

TEST_CASE("suffix array matches naive sorting") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    std::uniform_int_distribution<int> len_dist(1, 300);
    std::uniform_int_distribution<int> sym(0, 1 + round % 5);
    std::vector<std::int32_t> s(len_dist(rng));
    for (auto& c : s) c = sym(rng);
    const auto upper = *std::max_element(s.begin(), s.end());
    auto sa = detail::suffix_array(s, upper);
    std::vector<std::int32_t> expected(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) expected[i] = static_cast<std::int32_t>(i);
    std::sort(expected.begin(), expected.end(), [&](int l, int r) {
      return std::lexicographical_compare(s.begin() + l, s.end(), s.begin() + r, s.end());
    });
    REQUIRE(sa == expected);
  }
}

TEST_CASE("index of a single document 'ab'") {
  const auto c = corpus_of({U"ab"});
  SuffixIndex index(c);
  // "ab#", "b#", "#": the separator sorts first.
  const auto sa = index.suffix_array();
  REQUIRE(sa.size() == 3);
  CHECK(sa[0] == 2);
  CHECK(sa[1] == 0);
  CHECK(sa[2] == 1);
}

TEST_CASE("lcp never crosses a separator and matches direct comparison") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 50; ++round) {
    std::vector<std::u32string> docs;
    for (int d = 0; d < 1 + round % 6; ++d) docs.push_back(testing::random_text(rng, 1 + rng() % 40, 3));
    SuffixIndex index(corpus_of(docs));
    const auto text = index.symbols();
    const auto sa = index.suffix_array();
    const auto lcp = index.lcp();
    for (std::size_t i = 1; i < sa.size(); ++i) {
      std::int32_t h = 0;
      while (static_cast<std::size_t>(sa[i] + h) < text.size() &&
             static_cast<std::size_t>(sa[i - 1] + h) < text.size() && text[sa[i] + h] == text[sa[i - 1] + h] &&
             text[sa[i] + h] != SuffixIndex::kSeparator) {
        ++h;
      }
      REQUIRE(lcp[i] == h);
    }
  }
}

TEST_CASE("index counts equal brute force for every substring (corpora <= 1000 chars)") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 10; ++round) {
    std::vector<std::u32string> docs;
    std::size_t total = 0;
    while (total < 900) {
      docs.push_back(testing::random_text(rng, 50 + rng() % 100, 4));
      total += docs.back().size();
    }
    SuffixIndex index(corpus_of(docs));
    for (auto& [s, f] : testing::brute_ngrams(docs, 1, 6)) REQUIRE(index.count(s) == f);
    CHECK(index.count(U"zz") == 0);
  }
}

TEST_CASE("two documents 'aa' / 'aa': no spanning candidate") {
  const auto c = corpus_of({U"aa", U"aa"});
  SuffixIndex index(c);
  ExtractionParams p{.min_freq = 2, .min_len = 1, .max_len = 4, .maximal_only = false};
  const auto m = as_map(extract_pseudowords(index, p));
  CHECK(m.at(U"aa") == 2);
  CHECK(m.at(U"a") == 4);
  CHECK(m.size() == 2);
}

TEST_CASE("extraction example: 甲乙甲乙甲乙") {
  SuffixIndex index(corpus_of({U"甲乙甲乙甲乙"}));
  ExtractionParams p{.min_freq = 2, .min_len = 1, .max_len = 3, .maximal_only = false};
  const auto t = extract_pseudowords(index, p, "toy");
  const std::map<std::u32string, std::int64_t> expected{
      {U"甲", 3}, {U"乙", 3}, {U"甲乙", 3}, {U"乙甲", 2}, {U"甲乙甲", 2}, {U"乙甲乙", 2}};
  CHECK(as_map(t) == expected);
  CHECK(t.corpus_name == "toy");
  // Frequency descending, then codepoint order (乙 U+4E59 < 甲 U+7532).
  REQUIRE(t.entries.size() == 6);
  std::vector<std::u32string> order;
  for (const auto& e : t.entries) order.push_back(e.text);
  CHECK(order == std::vector<std::u32string>{U"乙", U"甲", U"甲乙", U"乙甲", U"乙甲乙", U"甲乙甲"});

  p.maximal_only = true;
  const auto maximal = as_map(extract_pseudowords(index, p));
  const std::map<std::u32string, std::int64_t> survivors{{U"甲乙", 3}, {U"甲乙甲", 2}, {U"乙甲乙", 2}};
  CHECK(maximal == survivors);
}

TEST_CASE("default extraction parameters") {
  ExtractionParams p;
  CHECK(p.min_freq == 11);
  CHECK(p.min_len == 1);
  CHECK(p.max_len == 8);
  SuffixIndex index(corpus_of({U"甲"}));
  CHECK_THROWS_AS(extract_pseudowords(index, {.min_freq = 1}), Error);
  CHECK_THROWS_AS(extract_pseudowords(index, {.min_freq = 2, .min_len = 0}), Error);
  CHECK_THROWS_AS(extract_pseudowords(index, {.min_freq = 2, .min_len = 3, .max_len = 2}), Error);
}

TEST_CASE("extraction equals a hash-map n-gram counter; maximal subset; monotone in min_freq") {
  std::mt19937_64 rng(1234);
  for (int seed = 0; seed < 20; ++seed) {
    std::vector<std::u32string> docs;
    std::size_t total = 0;
    while (total < 1500) {
      docs.push_back(testing::random_text(rng, 20 + rng() % 200, 3 + seed % 4));
      total += docs.back().size();
    }
    SuffixIndex index(corpus_of(docs));
    ExtractionParams p{.min_freq = 2 + seed % 3, .min_len = static_cast<std::size_t>(1 + seed % 2), .max_len = 5, .maximal_only = false};
    const auto full = extract_pseudowords(index, p);
    REQUIRE(as_map(full) == brute_table(docs, p));
    CHECK(std::is_sorted(full.entries.begin(), full.entries.end(), ranks_before));

    auto pm = p;
    pm.maximal_only = true;
    const auto maximal = as_map(extract_pseudowords(index, pm));
    const auto expected_maximal = brute_maximal(docs, pm);
    CHECK(maximal == expected_maximal);
    if (maximal != expected_maximal) {
      for (auto& [s, f] : maximal) if (!expected_maximal.count(s)) MESSAGE("extra len " << s.size() << " f " << f << " min_len " << pm.min_len);
      for (auto& [s, f] : expected_maximal) if (!maximal.count(s)) MESSAGE("missing len " << s.size() << " f " << f << " min_len " << pm.min_len);
    }
    for (auto& [s, f] : maximal) CHECK(as_map(full).count(s) == 1);

    auto p2 = p;
    p2.min_freq += 1;
    const auto raised = as_map(extract_pseudowords(index, p2));
    const auto base = as_map(full);
    for (auto& [s, f] : raised) CHECK(base.count(s) == 1);

    // Re-count each reported string per document.
    for (const auto& e : full.entries) {
      std::int64_t sum = 0;
      for (const auto& d : docs) sum += testing::naive_count(d, e.text);
      CHECK(sum == e.total_freq);
    }
  }
}

TEST_CASE("doc frequencies") {
  {
    SuffixIndex index(corpus_of({U"甲乙甲乙甲乙"}));
    auto t = annotate_doc_frequencies(index, extract_pseudowords(index, {.min_freq = 2, .max_len = 3}));
    CHECK(t.doc_freq_annotated);
    for (const auto& e : t.entries) CHECK(e.doc_freq == 1);
  }
  {
    SuffixIndex index(corpus_of({U"aa", U"ab"}));
    auto t = annotate_doc_frequencies(index, extract_pseudowords(index, {.min_freq = 2, .max_len = 2}));
    REQUIRE(t.entries.size() == 1);
    CHECK(t.entries[0].text == U"a");
    CHECK(t.entries[0].total_freq == 3);
    CHECK(t.entries[0].doc_freq == 2);
  }
  std::mt19937_64 rng(8);
  for (int round = 0; round < 10; ++round) {
    std::vector<std::u32string> docs;
    for (int d = 0; d < 12; ++d) docs.push_back(testing::random_text(rng, 60, 5));
    SuffixIndex index(corpus_of(docs));
    auto t = annotate_doc_frequencies(index, extract_pseudowords(index, {.min_freq = 2, .max_len = 4}));
    for (const auto& e : t.entries) {
      std::int64_t docs_with = 0;
      for (const auto& d : docs) docs_with += testing::naive_count(d, e.text) > 0 ? 1 : 0;
      CHECK(e.doc_freq == docs_with);
      CHECK(e.doc_freq <= e.total_freq);
      CHECK(e.doc_freq <= static_cast<std::int64_t>(docs.size()));
    }
  }
}

TEST_CASE("memory budget violation is an explicit capacity error") {
  const auto c = corpus_of({U"甲乙丙丁戊己庚辛"});
  try {
    SuffixIndex index(c, IndexLimits{.memory_budget_bytes = 64});
    FAIL("expected capacity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Capacity);
  }
}
