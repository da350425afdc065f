#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "histtext/collocations.hpp"
#include "histtext/corpus.hpp"
#include "histtext/freqstrings.hpp"
#include "histtext/ranking.hpp"
#include "histtext/trends.hpp"

namespace histtext {

inline constexpr int kProjectSchemaVersion = 1;

struct CorpusEntry {
  std::string manifest;  // as written; relative paths resolve against the project file
  NormalizationPolicy policy;

  bool operator==(const CorpusEntry&) const = default;
};

struct AnalysisConfig {
  double lambda = kDefaultLambda;
  int window = kDefaultWindow;
  std::vector<int> windows{10, 20, 30};
  RankingScheme scheme = RankingScheme::TfSum;
  ExtractionParams extraction;

  void validate() const;
  bool operator==(const AnalysisConfig&) const = default;
};

struct Project {
  int schema_version = kProjectSchemaVersion;
  std::string name;
  std::map<std::string, CorpusEntry> corpora;
  std::map<std::string, KeywordSet> keyword_sets;  // keyed by set name
  AnalysisConfig analysis;

  bool operator==(const Project&) const = default;
};

/// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string serialize_project(const Project& project);

/// Parses without touching the filesystem. `what` names the source in errors.
Project parse_project(std::string_view text, std::string_view what = "project");

/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never observe a partial file.
void save_project(const Project& project, const std::filesystem::path& path);

/// Parses and checks that every referenced manifest exists.
Project load_project(const std::filesystem::path& path);

std::filesystem::path resolve_manifest(const std::filesystem::path& project_path, const CorpusEntry& entry);

}  // namespace histtext
