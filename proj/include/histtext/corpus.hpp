#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace histtext {

/// Characters dropped before analysis. Everything downstream counts
/// Unicode scalar values of the normalized text.
struct NormalizationPolicy {
  bool strip_whitespace = true;
  bool strip_ascii = true;
  bool strip_cjk_punctuation = true;
  std::set<char32_t> custom_keep;  // wins over every drop rule
  std::set<char32_t> custom_drop;

  bool keeps(char32_t cp) const;
  std::u32string apply(std::u32string_view text) const;

  bool operator==(const NormalizationPolicy&) const = default;
};

bool is_whitespace(char32_t cp);
bool is_cjk_punctuation(char32_t cp);

enum class StampKind { Year, Segment };

struct Document {
  std::string doc_id;
  StampKind stamp_kind = StampKind::Year;
  int stamp = 0;  // Gregorian year or 1-based segment (chapter) index
  std::string title;
  std::string author;
  std::u32string text;
  std::size_t raw_length = 0;

  std::optional<int> year() const {
    return stamp_kind == StampKind::Year ? std::optional<int>(stamp) : std::nullopt;
  }
  std::optional<int> segment_index() const {
    return stamp_kind == StampKind::Segment ? std::optional<int>(stamp) : std::nullopt;
  }

  bool operator==(const Document&) const = default;
};

/// Immutable after construction; safe to share between reader threads.
class Corpus {
 public:
  /// Validates: at least one document, unique ids, non-empty texts, and one
  /// stamp kind across the whole collection.
  Corpus(std::string name, std::vector<Document> documents);

  const std::string& name() const { return name_; }
  const std::vector<Document>& documents() const { return documents_; }
  const Document& document(std::size_t i) const { return documents_.at(i); }
  std::size_t doc_count() const { return documents_.size(); }
  std::size_t total_chars() const { return total_chars_; }
  std::size_t distinct_chars() const { return distinct_chars_; }
  StampKind stamp_kind() const { return documents_.front().stamp_kind; }
  bool chaptered() const { return stamp_kind() == StampKind::Segment; }

  std::optional<std::size_t> find(std::string_view doc_id) const;

  /// Distinct stamps (years or segment indices), ascending.
  std::vector<int> stamps() const;

  bool operator==(const Corpus&) const = default;

 private:
  std::string name_;
  std::vector<Document> documents_;
  std::size_t total_chars_ = 0;
  std::size_t distinct_chars_ = 0;
};

/// Reads a JSON-lines manifest. Each non-blank line is an object with
/// `doc_id`, `file`, exactly one of `year` / `segment_index`, and optional
/// `title` and `author`. Unknown keys are ignored; `file` is resolved
/// relative to the manifest's directory. The corpus is named after the
/// manifest stem (or its directory, for a file called manifest.jsonl) unless
/// `name` is given.
Corpus ingest_corpus(const std::filesystem::path& manifest,
                     const NormalizationPolicy& policy = {},
                     std::optional<std::string> name = std::nullopt);

struct CollectionStats {
  std::size_t pseudowords = 0;
  std::size_t total_chars = 0;
  std::size_t distinct_chars = 0;
  std::size_t documents = 0;

  bool operator==(const CollectionStats&) const = default;
};

struct PseudowordTable;
CollectionStats corpus_stats(const Corpus& corpus, const PseudowordTable* table = nullptr);

struct DocMatches {
  std::size_t doc = 0;  // index into Corpus::documents()
  std::vector<std::size_t> positions;
};

struct Occurrences {
  std::vector<DocMatches> per_doc;  // one entry per document, in corpus order
  std::int64_t total = 0;
};

/// Overlapping matches are all reported; positions are 0-based offsets into
/// the normalized text. Throws InvalidArgument on an empty pattern.
Occurrences count_occurrences(const Corpus& corpus, std::u32string_view pattern);

/// Overlapping occurrence positions of `pattern` in one text.
std::vector<std::size_t> find_all(std::u32string_view text, std::u32string_view pattern);
std::int64_t count_in(std::u32string_view text, std::u32string_view pattern);

struct ConcordanceLine {
  std::string doc_id;
  std::size_t position = 0;
  std::u32string left;
  std::u32string match;
  std::u32string right;
};

std::vector<ConcordanceLine> concordance(const Corpus& corpus, std::u32string_view pattern,
                                         std::size_t context);

}  // namespace histtext
