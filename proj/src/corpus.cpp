#include "histtext/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "histtext/error.hpp"
#include "histtext/freqstrings.hpp"
#include "histtext/utf8.hpp"

namespace histtext {

bool is_whitespace(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000: case 0xFEFF:
      return true;
    default:
      // U+2000..U+200A spaces, U+200B..U+200D zero-width characters
      return cp >= 0x2000 && cp <= 0x200D;
  }
}

bool is_cjk_punctuation(char32_t cp) {
  if (cp == 0x00B7) return true;                   // middle dot used in names
  if (cp >= 0x2010 && cp <= 0x2027) return true;   // dashes, quotes, ellipsis
  if (cp >= 0x2030 && cp <= 0x205E) return true;
  if (cp >= 0x3001 && cp <= 0x3003) return true;   // 、。〃
  if (cp >= 0x3008 && cp <= 0x3011) return true;   // 〈〉《》「」『』【】
  if (cp >= 0x3014 && cp <= 0x301F) return true;
  if (cp == 0x3030 || cp == 0x303D) return true;
  if (cp >= 0xFE10 && cp <= 0xFE19) return true;   // vertical forms
  if (cp >= 0xFE30 && cp <= 0xFE4F) return true;   // compatibility forms
  if (cp >= 0xFE50 && cp <= 0xFE6B) return true;   // small forms
  // Fullwidth ASCII punctuation; fullwidth letters and digits are kept.
  if (cp >= 0xFF01 && cp <= 0xFF0F) return true;
  if (cp >= 0xFF1A && cp <= 0xFF20) return true;
  if (cp >= 0xFF3B && cp <= 0xFF40) return true;
  if (cp >= 0xFF5B && cp <= 0xFF65) return true;
  return false;
}

bool NormalizationPolicy::keeps(char32_t cp) const {
  if (custom_keep.contains(cp)) return true;
  if (custom_drop.contains(cp)) return false;
  if (strip_whitespace && is_whitespace(cp)) return false;
  if (strip_ascii && cp < 0x80) return false;
  if (strip_cjk_punctuation && is_cjk_punctuation(cp)) return false;
  return true;
}

std::u32string NormalizationPolicy::apply(std::u32string_view text) const {
  std::u32string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (keeps(cp)) out.push_back(cp);
  }
  return out;
}

Corpus::Corpus(std::string name, std::vector<Document> documents)
    : name_(std::move(name)), documents_(std::move(documents)) {
  if (documents_.empty()) {
    fail(ErrorCode::InvalidArgument, "corpus '" + name_ + "' has no documents");
  }
  std::unordered_set<std::string> ids;
  std::unordered_set<char32_t> chars;
  const StampKind kind = documents_.front().stamp_kind;
  for (const auto& doc : documents_) {
    if (!ids.insert(doc.doc_id).second) {
      fail(ErrorCode::DuplicateId, "duplicate doc_id '" + doc.doc_id + "'");
    }
    if (doc.text.empty()) {
      fail(ErrorCode::EmptyDocument, "document '" + doc.doc_id + "' is empty after normalization");
    }
    if (doc.stamp_kind != kind) {
      fail(ErrorCode::InvalidArgument,
           "document '" + doc.doc_id + "' mixes year and segment_index stamps");
    }
    if (kind == StampKind::Segment && doc.stamp < 1) {
      fail(ErrorCode::InvalidArgument, "document '" + doc.doc_id + "' has segment_index < 1");
    }
    total_chars_ += doc.text.size();
    chars.insert(doc.text.begin(), doc.text.end());
  }
  distinct_chars_ = chars.size();
}

std::optional<std::size_t> Corpus::find(std::string_view doc_id) const {
  for (std::size_t i = 0; i < documents_.size(); ++i) {
    if (documents_[i].doc_id == doc_id) return i;
  }
  return std::nullopt;
}

std::vector<int> Corpus::stamps() const {
  std::vector<int> out;
  out.reserve(documents_.size());
  for (const auto& doc : documents_) out.push_back(doc.stamp);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot read file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string row_label(const std::filesystem::path& manifest, std::size_t line) {
  return manifest.string() + ":" + std::to_string(line);
}

std::string optional_string(const nlohmann::json& row, const char* key, const std::string& where) {
  if (!row.contains(key) || row[key].is_null()) return {};
  if (!row[key].is_string()) {
    fail(ErrorCode::ParseError, "manifest row " + where + ": '" + key + "' must be a string");
  }
  return row[key].get<std::string>();
}

}  // namespace

Corpus ingest_corpus(const std::filesystem::path& manifest, const NormalizationPolicy& policy,
                     std::optional<std::string> name) {
  std::ifstream in(manifest, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot read manifest '" + manifest.string() + "'");
  const auto base = manifest.parent_path();

  std::vector<Document> docs;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto where = row_label(manifest, line_no);

    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorCode::ParseError, "malformed manifest row " + where + ": " + e.what());
    }
    if (!row.is_object()) fail(ErrorCode::ParseError, "manifest row " + where + " is not an object");
    if (!row.contains("doc_id") || !row["doc_id"].is_string() ||
        row["doc_id"].get<std::string>().empty()) {
      fail(ErrorCode::ParseError, "manifest row " + where + ": missing string 'doc_id'");
    }
    if (!row.contains("file") || !row["file"].is_string()) {
      fail(ErrorCode::ParseError, "manifest row " + where + ": missing string 'file'");
    }
    const bool has_year = row.contains("year") && !row["year"].is_null();
    const bool has_segment = row.contains("segment_index") && !row["segment_index"].is_null();
    if (has_year == has_segment) {
      fail(ErrorCode::ParseError,
           "manifest row " + where + ": exactly one of 'year' or 'segment_index' is required");
    }
    const auto& stamp = has_year ? row["year"] : row["segment_index"];
    if (!stamp.is_number_integer()) {
      fail(ErrorCode::ParseError, "manifest row " + where + ": stamp must be an integer");
    }

    Document doc;
    doc.doc_id = row["doc_id"].get<std::string>();
    doc.stamp_kind = has_year ? StampKind::Year : StampKind::Segment;
    doc.stamp = stamp.get<int>();
    doc.title = optional_string(row, "title", where);
    doc.author = optional_string(row, "author", where);
    if (!ids.insert(doc.doc_id).second) {
      fail(ErrorCode::DuplicateId, "duplicate doc_id '" + doc.doc_id + "' at " + where);
    }

    const auto file = base / std::filesystem::path(row["file"].get<std::string>());
    auto raw = utf8::decode_or_throw(read_file(file), "file '" + file.string() + "'");
    if (!raw.empty() && raw.front() == 0xFEFF) raw.erase(0, 1);
    doc.raw_length = raw.size();
    doc.text = policy.apply(raw);
    if (doc.text.empty()) {
      fail(ErrorCode::EmptyDocument,
           "document '" + doc.doc_id + "' (" + file.string() + ") is empty after normalization");
    }
    docs.push_back(std::move(doc));
  }
  if (docs.empty()) fail(ErrorCode::ParseError, "manifest '" + manifest.string() + "' lists no documents");
  if (!name) {
    // "novel/manifest.jsonl" is named "novel".
    name = manifest.stem().string();
    const auto parent = std::filesystem::absolute(manifest).parent_path().filename().string();
    if (*name == "manifest" && !parent.empty()) name = parent;
  }
  return Corpus(*name, std::move(docs));
}

CollectionStats corpus_stats(const Corpus& corpus, const PseudowordTable* table) {
  return CollectionStats{
      .pseudowords = table ? table->entries.size() : 0,
      .total_chars = corpus.total_chars(),
      .distinct_chars = corpus.distinct_chars(),
      .documents = corpus.doc_count(),
  };
}

std::vector<std::size_t> find_all(std::u32string_view text, std::u32string_view pattern) {
  std::vector<std::size_t> out;
  if (pattern.empty()) return out;
  for (auto pos = text.find(pattern); pos != std::u32string_view::npos;
       pos = text.find(pattern, pos + 1)) {
    out.push_back(pos);
  }
  return out;
}

std::int64_t count_in(std::u32string_view text, std::u32string_view pattern) {
  std::int64_t n = 0;
  if (pattern.empty()) return 0;
  for (auto pos = text.find(pattern); pos != std::u32string_view::npos;
       pos = text.find(pattern, pos + 1)) {
    ++n;
  }
  return n;
}

Occurrences count_occurrences(const Corpus& corpus, std::u32string_view pattern) {
  if (pattern.empty()) fail(ErrorCode::InvalidArgument, "pattern must be non-empty");
  Occurrences out;
  out.per_doc.reserve(corpus.doc_count());
  for (std::size_t i = 0; i < corpus.doc_count(); ++i) {
    DocMatches m{i, find_all(corpus.document(i).text, pattern)};
    out.total += static_cast<std::int64_t>(m.positions.size());
    out.per_doc.push_back(std::move(m));
  }
  return out;
}

std::vector<ConcordanceLine> concordance(const Corpus& corpus, std::u32string_view pattern,
                                         std::size_t context) {
  const auto occ = count_occurrences(corpus, pattern);
  std::vector<ConcordanceLine> lines;
  lines.reserve(static_cast<std::size_t>(occ.total));
  for (const auto& dm : occ.per_doc) {
    const auto& doc = corpus.document(dm.doc);
    std::u32string_view text = doc.text;
    for (std::size_t pos : dm.positions) {
      const std::size_t left_begin = pos >= context ? pos - context : 0;
      const std::size_t right_begin = pos + pattern.size();
      lines.push_back(ConcordanceLine{
          .doc_id = doc.doc_id,
          .position = pos,
          .left = std::u32string(text.substr(left_begin, pos - left_begin)),
          .match = std::u32string(pattern),
          .right = std::u32string(text.substr(right_begin, context)),
      });
    }
  }
  return lines;
}

}  // namespace histtext
