#include <doctest.h>

#include "histtext/collocations.hpp"
#include "histtext/export.hpp"
#include "histtext/narrative.hpp"
#include "histtext/trends.hpp"
#include "support/oracles.hpp"

using namespace histtext;
using namespace histtext::exporting;
using testing::make_doc;

TEST_CASE("numbers use the shortest round-trip form") {
  CHECK(format_number(0.4) == "0.4");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-1.0 / 3.0) == "-0.3333333333333333");
}

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("pseudoword csv") {
  const std::vector<Pseudoword> words{{U"甲乙", 3, 1}, {U"乙", 2, 1}};
  CHECK(to_csv(words) == "string,length,total_freq,doc_freq\n甲乙,2,3,1\n乙,1,2,1\n");
}

TEST_CASE("trend csv is wide with the total column first") {
  const Corpus c("c", {make_doc("x", 1905, U"官制官制"), make_doc("y", 1906, U"立宪立宪立宪")});
  const auto t = build_trend_table(c, make_keyword_set("s", {U"官制", U"立宪", U"保护"}));
  CHECK(trend_counts_csv(t) == "year,total,官制,立宪,保护\n1905,2,2,0,0\n1906,3,0,3,0\n");
  CHECK(trend_ratios_csv(t) == "year,total,官制,立宪,保护\n1905,0.4,1,0,\n1906,0.6,0,1,\n");
}

TEST_CASE("collocation csv leaves ratios empty without co-occurrences") {
  const Corpus c("c", {make_doc("x", 1900, U"保护华工"), make_doc("y", 1901, U"之")});
  const auto s = collocation_trend(c, {U"保护", U"华工", 30});
  CHECK(to_csv(s) == "year,count,ratio\n1900,1,1\n1901,0,0\n");
  const auto none = collocation_trend(c, {U"保护", U"立宪", 30});
  CHECK(to_csv(none) == "year,count,ratio\n1900,0,\n1901,0,\n");
  const std::vector<CollocationSeries> sweep{s};
  CHECK(sweep_csv(sweep) == "window,year,count,ratio\n30,1900,1,1\n30,1901,0,0\n");
}

TEST_CASE("narrative csv renders nulls as empty fields") {
  const auto c = testing::corpus_of({U"寶玉笑道寶玉", U"黛玉"}, 1, StampKind::Segment);
  const auto rows = narrative_table(c, U"寶玉", U"寶玉笑道");
  CHECK(to_csv(rows) == "segment,f,l,f_over_l,s,m,ratio\n1,2,6,0.3333333333333333,1,2,0.5\n2,0,2,0,0,0,\n");
  const auto plain = narrative_table(c, U"寶玉");
  CHECK(to_csv(plain) == "segment,f,l,f_over_l,s,m,ratio\n1,2,6,0.3333333333333333,,,\n2,0,2,0,,,\n");
  CHECK(to_csv(conditional_ratio(c, U"寶玉", U"寶玉笑道")) == "segment,value\n1,0.5\n2,\n");
}
