#pragma once

// CSV and JSON renderings shared by the CLI and the HTTP service. Output is
// deterministic: rows follow the input order and numbers use the shortest
// round-trip form.

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "histtext/collocations.hpp"
#include "histtext/corpus.hpp"
#include "histtext/freqstrings.hpp"
#include "histtext/narrative.hpp"
#include "histtext/ranking.hpp"
#include "histtext/trends.hpp"
#include "histtext/zipf.hpp"

namespace histtext::exporting {

using Json = nlohmann::ordered_json;

/// Shortest decimal that reads back to the same double.
std::string format_number(double value);
/// Quotes a CSV field when it holds a comma, quote or line break.
std::string csv_field(std::string_view text);

Json to_json(const CollectionStats& stats);
std::string to_csv(const CollectionStats& stats);

Json to_json(const Pseudoword& word);
Json to_json(const PseudowordTable& table);
/// `string,length,total_freq,doc_freq`
std::string to_csv(std::span<const Pseudoword> words);

Json to_json(const ZipfCurve& curve);
Json to_json(const PowerLawFit& fit);
/// `rank,freq,value,log_rank,log_value`
std::string to_csv(const ZipfCurve& curve);

Json to_json(const TrendTable& table);
/// Wide `year,total,<kw...>` of counts.
std::string trend_counts_csv(const TrendTable& table);
/// Wide `year,total,<kw...>` of annual ratios; never-occurring keywords are
/// left empty.
std::string trend_ratios_csv(const TrendTable& table);
Json to_json(const SpecialYearReport& report);
/// `keyword,year,keyword_ratio,baseline_ratio,special`
std::string to_csv(const SpecialYearReport& report);

Json to_json(const CollocationSeries& series);
/// `year,count,ratio`; ratio empty when the series has no co-occurrences.
std::string to_csv(const CollocationSeries& series);
/// `window,year,count,ratio`
std::string sweep_csv(std::span<const CollocationSeries> sweep);

Json to_json(std::span<const RankedDoc> ranked, const KeywordSet& set);
/// `rank,weight,doc_id,year,author,title`
std::string to_csv(std::span<const RankedDoc> ranked);

Json to_json(const SegmentSeries& series);
/// `segment,value`; nulls as empty fields.
std::string to_csv(const SegmentSeries& series);
Json to_json(std::span<const NarrativeRow> rows);
/// `segment,f,l,f_over_l,s,m,ratio`
std::string to_csv(std::span<const NarrativeRow> rows);

Json to_json(std::span<const ConcordanceLine> lines);
/// `doc_id,position,left,match,right`
std::string to_csv(std::span<const ConcordanceLine> lines);

}  // namespace histtext::exporting
