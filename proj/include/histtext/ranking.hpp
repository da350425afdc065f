#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace histtext {

class Corpus;
struct KeywordSet;

enum class RankingScheme {
  TfSum,            // total keyword occurrences
  DistinctCount,    // keywords occurring at least once
  TfSumNormalized,  // TfSum / document length
};

std::string_view to_string(RankingScheme scheme);
std::optional<RankingScheme> parse_ranking_scheme(std::string_view name);

struct RankedDoc {
  std::size_t rank = 0;  // 1-based
  std::string doc_id;
  double weight = 0;
  int stamp = 0;
  std::string author;
  std::string title;
  std::vector<std::int64_t> breakdown;  // occurrences per keyword, set order
};

struct RankingOptions {
  RankingScheme scheme = RankingScheme::TfSum;
  std::optional<int> year;  // keep only documents stamped with this year
  bool drop_zero = false;
};

/// Weight descending, ties by doc_id.
std::vector<RankedDoc> rank_documents(const Corpus& corpus, const KeywordSet& set,
                                      const RankingOptions& options = {});

}  // namespace histtext
