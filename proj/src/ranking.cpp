#include "histtext/ranking.hpp"

#include <algorithm>

#include "histtext/corpus.hpp"
#include "histtext/error.hpp"
#include "histtext/trends.hpp"

namespace histtext {

std::string_view to_string(RankingScheme scheme) {
  switch (scheme) {
    case RankingScheme::TfSum: return "tf_sum";
    case RankingScheme::DistinctCount: return "distinct_count";
    case RankingScheme::TfSumNormalized: return "tf_sum_normalized";
  }
  return "tf_sum";
}

std::optional<RankingScheme> parse_ranking_scheme(std::string_view name) {
  for (auto s : {RankingScheme::TfSum, RankingScheme::DistinctCount, RankingScheme::TfSumNormalized}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<RankedDoc> rank_documents(const Corpus& corpus, const KeywordSet& set,
                                      const RankingOptions& options) {
  if (set.keywords.empty()) fail(ErrorCode::InvalidArgument, "keyword set '" + set.name + "' is empty");
  set.validate();
  const auto counts = count_by_document(corpus, set.texts());

  std::vector<RankedDoc> ranked;
  for (std::size_t d = 0; d < corpus.doc_count(); ++d) {
    const auto& doc = corpus.document(d);
    if (options.year && (doc.stamp_kind != StampKind::Year || doc.stamp != *options.year)) continue;

    RankedDoc r;
    r.doc_id = doc.doc_id;
    r.stamp = doc.stamp;
    r.author = doc.author;
    r.title = doc.title;
    std::int64_t tf = 0;
    std::int64_t distinct = 0;
    for (const auto& row : counts) {
      r.breakdown.push_back(row[d]);
      tf += row[d];
      distinct += row[d] > 0 ? 1 : 0;
    }
    switch (options.scheme) {
      case RankingScheme::TfSum:
        r.weight = static_cast<double>(tf);
        break;
      case RankingScheme::DistinctCount:
        r.weight = static_cast<double>(distinct);
        break;
      case RankingScheme::TfSumNormalized:
        r.weight = static_cast<double>(tf) / static_cast<double>(doc.text.size());
        break;
    }
    if (options.drop_zero && tf == 0) continue;
    ranked.push_back(std::move(r));
  }

  std::sort(ranked.begin(), ranked.end(), [](const RankedDoc& a, const RankedDoc& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.doc_id < b.doc_id;
  });
  for (std::size_t i = 0; i < ranked.size(); ++i) ranked[i].rank = i + 1;
  return ranked;
}

}  // namespace histtext
