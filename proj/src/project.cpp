#include "histtext/project.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "histtext/error.hpp"
#include "histtext/utf8.hpp"

namespace histtext {

using Json = nlohmann::json;

void AnalysisConfig::validate() const {
  if (!(lambda > 0)) fail(ErrorCode::InvalidArgument, "lambda must be > 0");
  if (window < 0) fail(ErrorCode::InvalidArgument, "window must be >= 0");
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (windows[i] < 0) fail(ErrorCode::InvalidArgument, "windows must be >= 0");
    if (i > 0 && windows[i] < windows[i - 1]) fail(ErrorCode::InvalidArgument, "windows must be ascending");
  }
  extraction.validate();
}

namespace {

Json chars_to_json(const std::set<char32_t>& chars) {
  Json out = Json::array();
  for (char32_t c : chars) out.push_back(utf8::encode(std::u32string(1, c)));
  return out;
}

Json policy_to_json(const NormalizationPolicy& p) {
  return {{"strip_whitespace", p.strip_whitespace},
          {"strip_ascii", p.strip_ascii},
          {"strip_cjk_punctuation", p.strip_cjk_punctuation},
          {"custom_keep", chars_to_json(p.custom_keep)},
          {"custom_drop", chars_to_json(p.custom_drop)}};
}

Json to_json(const Project& p) {
  Json corpora = Json::object();
  for (const auto& [name, entry] : p.corpora) {
    corpora[name] = {{"manifest", entry.manifest}, {"normalization", policy_to_json(entry.policy)}};
  }
  Json sets = Json::object();
  for (const auto& [name, set] : p.keyword_sets) {
    Json keywords = Json::array();
    for (const auto& k : set.keywords) keywords.push_back({{"text", utf8::encode(k.text)}, {"note", k.note}});
    sets[name] = {{"keywords", std::move(keywords)}};
  }
  const auto& a = p.analysis;
  return {{"schema_version", p.schema_version},
          {"name", p.name},
          {"corpora", std::move(corpora)},
          {"keyword_sets", std::move(sets)},
          {"analysis",
           {{"lambda", a.lambda},
            {"window", a.window},
            {"windows", a.windows},
            {"ranking_scheme", std::string(to_string(a.scheme))},
            {"min_freq", a.extraction.min_freq},
            {"min_len", a.extraction.min_len},
            {"max_len", a.extraction.max_len},
            {"maximal_only", a.extraction.maximal_only}}}};
}

// Field access with errors that name the offending key.
class Reader {
 public:
  explicit Reader(std::string_view what) : what_(what) {}

  const Json& at(const Json& obj, const std::string& key, const std::string& where) const {
    if (!obj.is_object()) bad(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) bad(where, "missing '" + key + "'");
    return *it;
  }

  template <typename T>
  T get(const Json& obj, const std::string& key, const std::string& where) const {
    const auto& v = at(obj, key, where);
    try {
      return v.get<T>();
    } catch (const Json::exception&) {
      bad(where + "." + key, "wrong type");
    }
  }

  std::u32string text(const Json& v, const std::string& where) const {
    if (!v.is_string()) bad(where, "expected a string");
    return utf8::decode_or_throw(v.get<std::string>(), what_ + ": " + where);
  }

  [[noreturn]] void bad(const std::string& where, const std::string& msg) const {
    fail(ErrorCode::ParseError, what_ + ": " + where + ": " + msg);
  }

 private:
  std::string what_;
};

std::set<char32_t> chars_from_json(const Reader& r, const Json& v, const std::string& where) {
  if (!v.is_array()) r.bad(where, "expected an array");
  std::set<char32_t> out;
  for (const auto& item : v) {
    const auto s = r.text(item, where);
    if (s.size() != 1) r.bad(where, "entries must be single characters");
    out.insert(s[0]);
  }
  return out;
}

}  // namespace

std::string serialize_project(const Project& project) { return to_json(project).dump(2) + "\n"; }

Project parse_project(std::string_view text, std::string_view what) {
  const Reader r(what);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string(what) + ": malformed JSON: " + e.what());
  }
  if (!doc.is_object()) r.bad("$", "expected an object");

  Project p;
  p.schema_version = r.get<int>(doc, "schema_version", "$");
  if (p.schema_version != kProjectSchemaVersion) {
    fail(ErrorCode::VersionMismatch, std::string(what) + ": schema version " + std::to_string(p.schema_version) +
                                         " is not supported (this build reads version " +
                                         std::to_string(kProjectSchemaVersion) + "); migrate the file first");
  }
  p.name = r.get<std::string>(doc, "name", "$");

  const auto& corpora = r.at(doc, "corpora", "$");
  if (!corpora.is_object()) r.bad("corpora", "expected an object");
  for (const auto& [name, entry] : corpora.items()) {
    const auto where = "corpora." + name;
    CorpusEntry c;
    c.manifest = r.get<std::string>(entry, "manifest", where);
    const auto& pol = r.at(entry, "normalization", where);
    const auto pw = where + ".normalization";
    c.policy.strip_whitespace = r.get<bool>(pol, "strip_whitespace", pw);
    c.policy.strip_ascii = r.get<bool>(pol, "strip_ascii", pw);
    c.policy.strip_cjk_punctuation = r.get<bool>(pol, "strip_cjk_punctuation", pw);
    c.policy.custom_keep = chars_from_json(r, r.at(pol, "custom_keep", pw), pw + ".custom_keep");
    c.policy.custom_drop = chars_from_json(r, r.at(pol, "custom_drop", pw), pw + ".custom_drop");
    p.corpora.emplace(name, std::move(c));
  }

  const auto& sets = r.at(doc, "keyword_sets", "$");
  if (!sets.is_object()) r.bad("keyword_sets", "expected an object");
  for (const auto& [name, body] : sets.items()) {
    const auto where = "keyword_sets." + name;
    KeywordSet set;
    set.name = name;
    const auto& keywords = r.at(body, "keywords", where);
    if (!keywords.is_array()) r.bad(where + ".keywords", "expected an array");
    for (const auto& k : keywords) {
      set.keywords.push_back({r.text(r.at(k, "text", where), where + ".text"), r.get<std::string>(k, "note", where)});
    }
    try {
      set.validate();
    } catch (const Error& e) {
      r.bad(where, e.what());
    }
    p.keyword_sets.emplace(name, std::move(set));
  }

  const auto& a = r.at(doc, "analysis", "$");
  p.analysis.lambda = r.get<double>(a, "lambda", "analysis");
  p.analysis.window = r.get<int>(a, "window", "analysis");
  p.analysis.windows = r.get<std::vector<int>>(a, "windows", "analysis");
  const auto scheme = r.get<std::string>(a, "ranking_scheme", "analysis");
  if (auto s = parse_ranking_scheme(scheme)) {
    p.analysis.scheme = *s;
  } else {
    r.bad("analysis.ranking_scheme", "unknown scheme '" + scheme + "'");
  }
  p.analysis.extraction.min_freq = r.get<std::int64_t>(a, "min_freq", "analysis");
  p.analysis.extraction.min_len = r.get<std::size_t>(a, "min_len", "analysis");
  p.analysis.extraction.max_len = r.get<std::size_t>(a, "max_len", "analysis");
  p.analysis.extraction.maximal_only = r.get<bool>(a, "maximal_only", "analysis");
  try {
    p.analysis.validate();
  } catch (const Error& e) {
    r.bad("analysis", e.what());
  }
  return p;
}

void save_project(const Project& project, const std::filesystem::path& path) {
  project.analysis.validate();
  for (const auto& [name, set] : project.keyword_sets) {
    if (name != set.name) fail(ErrorCode::InvalidArgument, "keyword set key '" + name + "' differs from its name");
    set.validate();
  }
  const auto text = serialize_project(project);

  std::random_device rd;
  auto tmp = path;
  tmp += ".tmp-" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      fail(ErrorCode::IoError, "short write to " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    fail(ErrorCode::IoError, "cannot replace " + path.string() + ": " + ec.message());
  }
}

std::filesystem::path resolve_manifest(const std::filesystem::path& project_path, const CorpusEntry& entry) {
  std::filesystem::path m(entry.manifest);
  if (m.is_absolute()) return m;
  return project_path.parent_path() / m;
}

Project load_project(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open project file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  auto project = parse_project(buf.str(), path.filename().string());
  for (const auto& [name, entry] : project.corpora) {
    const auto manifest = resolve_manifest(path, entry);
    if (!std::filesystem::exists(manifest)) {
      fail(ErrorCode::NotFound, path.filename().string() + ": corpus '" + name + "' references missing manifest " +
                                    manifest.string());
    }
  }
  return project;
}

}  // namespace histtext
