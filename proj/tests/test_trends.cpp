#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "histtext/corpus.hpp"
#include "histtext/error.hpp"
#include "histtext/freqstrings.hpp"
#include "histtext/suffix_index.hpp"
#include "histtext/trends.hpp"
#include "support/oracles.hpp"

using namespace histtext;
using testing::make_doc;

namespace {

Corpus toy() {
  // a = 官制 (1905:2, 1906:0), b = 立宪 (1905:0, 1906:3)
  return Corpus("toy", {make_doc("x", 1905, U"官制甲官制"), make_doc("y", 1906, U"立宪立宪乙立宪")});
}

Corpus random_year_corpus(std::mt19937_64& rng, int docs) {
  std::vector<Document> out;
  std::uniform_int_distribution<int> year(1900, 1909);
  for (int d = 0; d < docs; ++d) {
    out.push_back(make_doc("d" + std::to_string(d), year(rng), testing::random_text(rng, 80, 4)));
  }
  return Corpus("rand", std::move(out));
}

std::set<std::pair<std::u32string, int>> special_set(const SpecialYearReport& r) {
  std::set<std::pair<std::u32string, int>> out;
  for (const auto& e : r.entries) {
    if (e.special) out.insert({e.keyword, e.year});
  }
  return out;
}

}  // namespace

TEST_CASE("toy table: per-year baseline and totals") {
  const auto t = build_trend_table(toy(), make_keyword_set("qing", {U"官制", U"立宪"}));
  CHECK(t.years == std::vector<int>{1905, 1906});
  CHECK(t.counts[0] == std::vector<std::int64_t>{2, 0});
  CHECK(t.counts[1] == std::vector<std::int64_t>{0, 3});
  CHECK(t.baseline == std::vector<std::int64_t>{2, 3});
  CHECK(t.baseline_total == 5);

  const auto total = baseline_percentage(t);
  REQUIRE(total.size() == 2);
  CHECK(total[0].y == doctest::Approx(0.4));
  CHECK(total[1].y == doctest::Approx(0.6));
}

TEST_CASE("a keyword in a single year has ratio 1 there") {
  const Corpus c("c", {make_doc("a", 1906, U"甲"), make_doc("b", 1908, U"官制"), make_doc("e", 1910, U"乙")});
  const auto t = build_trend_table(c, make_keyword_set("s", {U"官制"}));
  CHECK(t.years == std::vector<int>{1906, 1907, 1908, 1909, 1910});
  const auto series = annual_percentage(t, U"官制");
  for (const auto& p : series) CHECK(p.y == (p.x == 1908 ? 1.0 : 0.0));
}

TEST_CASE("annual percentage examples and errors") {
  const Corpus c("c", {make_doc("a", 1, U"甲"), make_doc("b", 2, U"甲甲"), make_doc("e", 3, U"甲甲甲"),
                       make_doc("f", 4, U"甲甲甲甲")});
  const auto t = build_trend_table(c, make_keyword_set("s", {U"甲", U"乙"}));
  const auto s = annual_percentage(t, U"甲");
  CHECK(s[0].y == doctest::Approx(0.1));
  CHECK(s[1].y == doctest::Approx(0.2));
  CHECK(s[2].y == doctest::Approx(0.3));
  CHECK(s[3].y == doctest::Approx(0.4));

  CHECK(t.absent(1));
  try {
    annual_percentage(t, U"乙");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Undefined);
    CHECK(std::string(e.what()).find("keyword never occurs") != std::string::npos);
  }
  CHECK_THROWS_AS(annual_percentage(t, U"丙"), Error);
}

TEST_CASE("build_trend_table preconditions") {
  CHECK_THROWS_AS(build_trend_table(toy(), KeywordSet{"empty", {}}), Error);
  CHECK_THROWS_AS(make_keyword_set("dup", {U"甲", U"甲"}), Error);
  CHECK_THROWS_AS(make_keyword_set("blank", {U""}), Error);
  const auto chaptered = testing::corpus_of({U"甲"}, 1, StampKind::Segment);
  CHECK_THROWS_AS(build_trend_table(chaptered, make_keyword_set("s", {U"甲"})), Error);
}

TEST_CASE("special years: inclusive boundary and λ preconditions") {
  // A single keyword is its own baseline: k/K = t/T everywhere.
  std::vector<Document> flat;
  for (int y = 1901; y <= 1905; ++y) flat.push_back(make_doc("f" + std::to_string(y), y, U"甲"));
  const auto ft = build_trend_table(Corpus("flat", flat), make_keyword_set("s", {U"甲"}));
  for (const auto& e : special_years(ft, 1.1).entries) CHECK_FALSE(e.special);
  for (const auto& e : special_years(ft, 1.0).entries) CHECK(e.special);

  CHECK_THROWS_AS(special_years(ft, 0.0), Error);
  CHECK_THROWS_AS(special_years(ft, -1.0), Error);
}

TEST_CASE("special years against a uniform baseline over five years") {
  // 甲 only in 1903; 乙 fills the other years so that t_n is uniform.
  std::vector<Document> docs;
  for (int y = 1901; y <= 1905; ++y) docs.push_back(make_doc("d" + std::to_string(y), y, y == 1903 ? U"甲" : U"乙"));
  const auto t = build_trend_table(Corpus("c", docs), make_keyword_set("s", {U"甲", U"乙"}));
  for (auto v : t.baseline) CHECK(v == 1);
  const auto r = special_years(t, 1.1);
  for (const auto& e : r.entries) {
    if (e.keyword == U"甲") {
      CHECK(e.special == (e.year == 1903));
      if (e.year == 1903) {
        CHECK(e.keyword_ratio == 1.0);
        CHECK(e.baseline_ratio == doctest::Approx(0.2));
      }
    }
  }
}

TEST_CASE("trend identities, normalization and λ monotonicity on random tables") {
  std::mt19937_64 rng(42);
  const std::vector<double> grid{1.0, 1.1, 1.5, 2.0};
  for (int round = 0; round < 100; ++round) {
    const auto c = random_year_corpus(rng, 5 + round % 20);
    const auto set = make_keyword_set("r", {U"一", U"丁一", U"丂丂", U"一丁丂"});
    const auto t = build_trend_table(c, set);
    for (std::size_t w = 0; w < t.keywords.size(); ++w) {
      CHECK(std::accumulate(t.counts[w].begin(), t.counts[w].end(), std::int64_t{0}) == t.keyword_totals[w]);
      CHECK(t.baseline_total >= t.keyword_totals[w]);
      std::int64_t naive = 0;
      for (const auto& d : c.documents()) naive += testing::naive_count(d.text, t.keywords[w]);
      CHECK(naive == t.keyword_totals[w]);
    }
    CHECK(std::accumulate(t.baseline.begin(), t.baseline.end(), std::int64_t{0}) == t.baseline_total);
    for (std::size_t n = 0; n < t.years.size(); ++n) {
      std::int64_t sum = 0;
      for (const auto& row : t.counts) sum += row[n];
      CHECK(sum == t.baseline[n]);
    }
    for (std::size_t w = 0; w < t.keywords.size(); ++w) {
      if (t.absent(w)) continue;
      double sum = 0;
      for (const auto& p : annual_percentage(t, t.keywords[w])) sum += p.y;
      CHECK(std::abs(sum - 1.0) <= 1e-9);
    }
    for (std::size_t g = 1; g < grid.size(); ++g) {
      const auto looser = special_set(special_years(t, grid[g - 1]));
      const auto stricter = special_set(special_years(t, grid[g]));
      for (const auto& e : stricter) CHECK(looser.count(e) == 1);
    }
  }
}

TEST_CASE("annual percentage is invariant under duplicating every document") {
  std::mt19937_64 rng(9);
  const auto c = random_year_corpus(rng, 12);
  std::vector<Document> doubled;
  for (const auto& d : c.documents()) {
    doubled.push_back(d);
    auto copy = d;
    copy.doc_id += "_copy";
    doubled.push_back(copy);
  }
  const auto set = make_keyword_set("r", {U"一", U"丁丂"});
  const auto a = build_trend_table(c, set);
  const auto b = build_trend_table(Corpus("twice", doubled), set);
  for (std::size_t w = 0; w < a.keywords.size(); ++w) {
    if (a.absent(w)) continue;
    const auto sa = annual_percentage(a, a.keywords[w]);
    const auto sb = annual_percentage(b, b.keywords[w]);
    REQUIRE(sa.size() == sb.size());
    for (std::size_t n = 0; n < sa.size(); ++n) CHECK(sa[n].y == doctest::Approx(sb[n].y));
  }
}

TEST_CASE("all-pseudoword baseline") {
  const Corpus c("c", {make_doc("a", 1900, U"甲乙甲乙"), make_doc("b", 1901, U"甲乙丙")});
  SuffixIndex index(c);
  const auto table = extract_pseudowords(index, {.min_freq = 2, .max_len = 2});
  const auto t = build_trend_table(c, make_keyword_set("s", {U"丙"}), index, table);
  CHECK(t.baseline_kind == TrendBaseline::AllPseudowords);
  // Pseudowords: 甲(3), 乙(3), 甲乙(3).
  std::int64_t expected_1900 = 0, expected_1901 = 0;
  for (const auto& e : table.entries) {
    expected_1900 += testing::naive_count(U"甲乙甲乙", e.text);
    expected_1901 += testing::naive_count(U"甲乙丙", e.text);
  }
  CHECK(t.baseline == std::vector<std::int64_t>{expected_1900, expected_1901});
  CHECK(t.baseline_total == expected_1900 + expected_1901);
  CHECK(t.counts[0] == std::vector<std::int64_t>{0, 1});
}
