#include <doctest.h>

#include <random>

#include "histtext/corpus.hpp"
#include "histtext/error.hpp"
#include "histtext/narrative.hpp"
#include "support/oracles.hpp"

using namespace histtext;
using testing::make_doc;

namespace {

Corpus chapters(const std::vector<std::u32string>& texts) {
  return testing::corpus_of(texts, 1, StampKind::Segment);
}

}  // namespace

TEST_CASE("raw frequencies, lengths and normalization") {
  const auto c = chapters({U"寶玉笑道寶玉", U"黛玉", U"寶玉寶玉寶玉寶釵"});
  const auto f = segment_frequencies(c, U"寶玉");
  CHECK(f.kind == SegmentKind::RawFreq);
  CHECK(f.segments == std::vector<int>{1, 2, 3});
  CHECK(f.at(1) == 2.0);
  CHECK(f.at(2) == 0.0);
  CHECK(f.at(3) == 3.0);
  CHECK_FALSE(f.at(4).has_value());

  const auto l = segment_lengths(c);
  CHECK(l.at(1) == 6.0);
  CHECK(l.at(2) == 2.0);
  CHECK(l.at(3) == 8.0);

  const auto n = normalized_frequencies(f, l);
  CHECK(n.kind == SegmentKind::Normalized);
  CHECK(*n.at(1) == doctest::Approx(2.0 / 6.0));
  CHECK(*n.at(2) == 0.0);
  CHECK(*n.at(3) == doctest::Approx(3.0 / 8.0));
}

TEST_CASE("single 100-char segment") {
  const auto c = chapters({std::u32string(100, U'之')});
  const auto l = segment_lengths(c);
  CHECK(l.values.size() == 1);
  CHECK(l.at(1) == 100.0);
}

TEST_CASE("mismatched segment ranges are rejected") {
  const auto a = chapters({U"甲", U"乙"});
  const auto b = chapters({U"甲"});
  CHECK_THROWS_AS(normalized_frequencies(segment_frequencies(a, U"甲"), segment_lengths(b)), Error);
}

TEST_CASE("conditional ratio") {
  const auto c = chapters({U"寶玉笑道寶玉", U"黛玉", U"寶玉寶玉寶玉寶玉"});
  const auto r = conditional_ratio(c, U"寶玉", U"寶玉笑道");
  CHECK(r.kind == SegmentKind::Ratio);
  CHECK(*r.at(1) == doctest::Approx(0.5));
  CHECK_FALSE(r.at(2).has_value());
  CHECK(*r.at(3) == 0.0);

  try {
    conditional_ratio(c, U"寶玉", U"黛玉笑道");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("event must embed base") != std::string::npos);
  }
}

TEST_CASE("narrative requires a chaptered corpus") {
  const auto years = testing::corpus_of({U"甲"});
  CHECK_THROWS_AS(segment_frequencies(years, U"甲"), Error);
  CHECK_THROWS_AS(segment_lengths(years), Error);
  CHECK_THROWS_AS(conditional_ratio(years, U"甲", U"甲乙"), Error);
}

TEST_CASE("documents sharing a segment are aggregated") {
  const Corpus c("c", {make_doc("a", 2, U"寶玉", StampKind::Segment), make_doc("b", 2, U"寶玉寶玉", StampKind::Segment),
                       make_doc("e", 5, U"之", StampKind::Segment)});
  const auto f = segment_frequencies(c, U"寶玉");
  CHECK(f.segments == std::vector<int>{2, 5});
  CHECK(f.at(2) == 3.0);
  CHECK(segment_lengths(c).at(2) == 6.0);
}

TEST_CASE("random chaptered corpora: oracle, partition identity, ratio bounds, scale invariance") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 30; ++round) {
    std::vector<std::u32string> texts;
    for (int t = 0; t < 3 + round % 8; ++t) texts.push_back(testing::random_text(rng, 20 + rng() % 200, 4));
    const auto c = chapters(texts);
    const std::u32string base = U"一丁";
    const std::u32string event = U"一丁丂";

    const auto f = segment_frequencies(c, base);
    const auto l = segment_lengths(c);
    std::int64_t total_f = 0;
    std::int64_t total_l = 0;
    for (std::size_t t = 0; t < texts.size(); ++t) {
      CHECK(f.values[t] == static_cast<double>(testing::naive_count(texts[t], base)));
      total_f += static_cast<std::int64_t>(*f.values[t]);
      total_l += static_cast<std::int64_t>(*l.values[t]);
    }
    CHECK(total_f == count_occurrences(c, base).total);
    CHECK(total_l == static_cast<std::int64_t>(c.total_chars()));

    const auto r = conditional_ratio(c, base, event);
    for (std::size_t t = 0; t < texts.size(); ++t) {
      const auto m = testing::naive_count(texts[t], base);
      if (m == 0) {
        CHECK_FALSE(r.values[t].has_value());
      } else {
        REQUIRE(r.values[t].has_value());
        CHECK(*r.values[t] >= 0.0);
        CHECK(*r.values[t] <= 1.0);
      }
    }

    std::vector<std::u32string> tripled;
    for (const auto& t : texts) tripled.push_back(t + t + t);
    const auto c3 = chapters(tripled);
    // A single character, so concatenation cannot create new matches at the seams.
    const auto n3 = normalized_frequencies(segment_frequencies(c3, U"一"), segment_lengths(c3));
    const auto n1_single = normalized_frequencies(segment_frequencies(c, U"一"), l);
    for (std::size_t t = 0; t < texts.size(); ++t) CHECK(*n3.values[t] == doctest::Approx(*n1_single.values[t]));
  }
}

TEST_CASE("narrative table combines the series") {
  const auto c = chapters({U"寶玉笑道寶玉", U"黛玉"});
  const auto rows = narrative_table(c, U"寶玉", U"寶玉笑道");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].segment == 1);
  CHECK(rows[0].f == 2);
  CHECK(rows[0].l == 6);
  CHECK(rows[0].f_over_l == doctest::Approx(2.0 / 6.0));
  CHECK(rows[0].s == 1);
  CHECK(*rows[0].ratio == doctest::Approx(0.5));
  CHECK(rows[1].f == 0);
  CHECK_FALSE(rows[1].ratio.has_value());

  const auto plain = narrative_table(c, U"寶玉");
  CHECK_FALSE(plain[0].s.has_value());
}
