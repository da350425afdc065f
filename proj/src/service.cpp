#include "histtext/service.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>
#include <numeric>

#include <httplib.h>

#include "histtext/collocations.hpp"
#include "histtext/error.hpp"
#include "histtext/export.hpp"
#include "histtext/narrative.hpp"
#include "histtext/ranking.hpp"
#include "histtext/trends.hpp"
#include "histtext/utf8.hpp"
#include "histtext/zipf.hpp"

namespace histtext {

using exporting::Json;

CorpusState::CorpusState(Corpus c, const ExtractionParams& params)
    : corpus(std::move(c)), index(corpus) {
  auto full = params;
  full.maximal_only = false;
  table = annotate_doc_frequencies(index, extract_pseudowords(index, full, corpus.name()));
  auto maximal = params;
  maximal.maximal_only = true;
  maximal_table = annotate_doc_frequencies(index, extract_pseudowords(index, maximal, corpus.name()));
}

struct Service::Impl {
  Project project;  // keyword_sets guarded by mutex; the rest is fixed
  std::map<std::string, std::unique_ptr<CorpusState>> corpora;
  std::optional<std::filesystem::path> persist;
  mutable std::shared_mutex mutex;
};

Service::Service(Project project, std::map<std::string, Corpus> corpora)
    : Service(std::move(project), std::move(corpora), std::nullopt) {}

Service::Service(Project project, std::map<std::string, Corpus> corpora,
                 std::optional<std::filesystem::path> persist)
    : impl_(std::make_shared<Impl>()) {
  project.analysis.validate();
  impl_->persist = std::move(persist);
  for (auto& [name, corpus] : corpora) {
    impl_->corpora.emplace(name, std::make_unique<CorpusState>(std::move(corpus), project.analysis.extraction));
  }
  impl_->project = std::move(project);
}

std::unique_ptr<Service> Service::open(const std::filesystem::path& project_path) {
  auto project = load_project(project_path);
  std::map<std::string, Corpus> corpora;
  for (const auto& [name, entry] : project.corpora) {
    corpora.emplace(name, ingest_corpus(resolve_manifest(project_path, entry), entry.policy, name));
  }
  return std::unique_ptr<Service>(new Service(std::move(project), std::move(corpora), project_path));
}

Project Service::project_snapshot() const {
  std::shared_lock lock(impl_->mutex);
  return impl_->project;
}

namespace {

int status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::ParseError:
    case ErrorCode::EmptyDocument:
      return 400;
    case ErrorCode::NotFound: return 404;
    case ErrorCode::Conflict:
    case ErrorCode::DuplicateId:
    case ErrorCode::VersionMismatch:
      return 409;
    case ErrorCode::Undefined: return 422;
    case ErrorCode::Capacity: return 507;
    case ErrorCode::IoError: return 500;
  }
  return 500;
}

Response json_response(const Json& body, int status = 200) {
  Response r;
  r.status = status;
  r.body = body.dump();
  return r;
}

Response error_response(int status, std::string_view code, std::string_view message) {
  return json_response(Json{{"error", {{"code", code}, {"message", message}}}}, status);
}

// Query parameter access with typed parsing.
class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& q) : q_(q) {}

  std::optional<std::string> str(const std::string& key) const {
    auto it = q_.find(key);
    if (it == q_.end()) return std::nullopt;
    return it->second;
  }

  std::string required(const std::string& key) const {
    auto v = str(key);
    if (!v || v->empty()) fail(ErrorCode::InvalidArgument, "missing query parameter '" + key + "'");
    return *v;
  }

  std::u32string text(const std::string& key) const {
    return utf8::decode_or_throw(required(key), "query parameter '" + key + "'");
  }

  std::optional<long long> integer(const std::string& key) const {
    auto v = str(key);
    if (!v) return std::nullopt;
    long long out = 0;
    auto [end, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc{} || end != v->data() + v->size()) {
      fail(ErrorCode::InvalidArgument, "query parameter '" + key + "' must be an integer");
    }
    return out;
  }

  std::optional<double> real(const std::string& key) const {
    auto v = str(key);
    if (!v) return std::nullopt;
    try {
      std::size_t used = 0;
      const double out = std::stod(*v, &used);
      if (used == v->size()) return out;
    } catch (const std::exception&) {
    }
    fail(ErrorCode::InvalidArgument, "query parameter '" + key + "' must be a number");
  }

  bool flag(const std::string& key, bool fallback) const {
    auto v = str(key);
    if (!v) return fallback;
    if (*v == "1" || *v == "true") return true;
    if (*v == "0" || *v == "false") return false;
    fail(ErrorCode::InvalidArgument, "query parameter '" + key + "' must be true/false");
  }

  std::vector<int> int_list(const std::string& key) const {
    std::vector<int> out;
    auto v = str(key);
    if (!v) return out;
    std::size_t start = 0;
    while (start <= v->size()) {
      const auto comma = std::min(v->find(',', start), v->size());
      int x = 0;
      auto [end, ec] = std::from_chars(v->data() + start, v->data() + comma, x);
      if (ec != std::errc{} || end != v->data() + comma) {
        fail(ErrorCode::InvalidArgument, "query parameter '" + key + "' must be a comma-separated integer list");
      }
      out.push_back(x);
      start = comma + 1;
    }
    return out;
  }

 private:
  const std::map<std::string, std::string>& q_;
};

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < path.size()) {
    auto slash = path.find('/', start);
    if (slash == std::string_view::npos) slash = path.size();
    if (slash > start) out.emplace_back(path.substr(start, slash - start));
    start = slash + 1;
  }
  return out;
}

Json keyword_set_json(const KeywordSet& set) {
  Json keywords = Json::array();
  for (const auto& k : set.keywords) keywords.push_back({{"text", utf8::encode(k.text)}, {"note", k.note}});
  return {{"name", set.name}, {"keywords", std::move(keywords)}};
}

KeywordSet keyword_set_from_body(const std::string& name, const nlohmann::json& body) {
  if (name.empty()) fail(ErrorCode::InvalidArgument, "keyword set name must be non-empty");
  if (!body.is_object() || !body.contains("keywords") || !body["keywords"].is_array()) {
    fail(ErrorCode::InvalidArgument, "body must be an object with a 'keywords' array");
  }
  KeywordSet set;
  set.name = name;
  for (const auto& k : body["keywords"]) {
    Keyword kw;
    if (k.is_string()) {
      kw.text = utf8::decode_or_throw(k.get<std::string>(), "keyword");
    } else if (k.is_object() && k.contains("text") && k["text"].is_string()) {
      kw.text = utf8::decode_or_throw(k["text"].get<std::string>(), "keyword");
      if (k.contains("note")) {
        if (!k["note"].is_string()) fail(ErrorCode::InvalidArgument, "keyword note must be a string");
        kw.note = k["note"].get<std::string>();
      }
    } else {
      fail(ErrorCode::InvalidArgument, "keywords must be strings or {text, note} objects");
    }
    set.keywords.push_back(std::move(kw));
  }
  set.validate();
  return set;
}

nlohmann::json parse_body(const std::string& body) {
  try {
    return nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string("request body is not valid JSON: ") + e.what());
  }
}

CollocationMode parse_mode(const std::optional<std::string>& s) {
  if (!s || *s == "pairs") return CollocationMode::Pairs;
  if (*s == "events") return CollocationMode::Events;
  fail(ErrorCode::InvalidArgument, "mode must be 'pairs' or 'events'");
}

class Router {
 public:
  explicit Router(Service::Impl& impl) : impl_(impl) {}

  Response route(const Request& req) {
    const auto segs = split_path(req.path);
    if (segs.size() < 2 || segs[0] != "api" || segs[1] != "v1") {
      return error_response(404, "not_found", "no such endpoint: " + req.path);
    }
    const std::vector<std::string> rest(segs.begin() + 2, segs.end());
    const Params q(req.query);

    if (rest.size() == 1 && rest[0] == "project") return only_get(req, [&] { return project(); });
    if (!rest.empty() && rest[0] == "keyword-sets") return keyword_sets(req, rest);
    if (!rest.empty() && rest[0] == "corpora") {
      if (rest.size() == 1) return only_get(req, [&] { return list_corpora(); });
      const auto& state = corpus(rest[1]);
      if (rest.size() == 2 || (rest.size() == 3 && rest[2] == "stats")) {
        return only_get(req, [&] { return json_response(corpus_summary(rest[1], state)); });
      }
      if (rest.size() == 3) {
        const auto& op = rest[2];
        if (op == "pseudowords") return only_get(req, [&] { return pseudowords(state, q); });
        if (op == "trends") return only_get(req, [&] { return trends(state, q, true); });
        if (op == "special-years") return only_get(req, [&] { return trends(state, q, false); });
        if (op == "collocations") return only_get(req, [&] { return collocations(state, q); });
        if (op == "ranking") return only_get(req, [&] { return ranking(state, q); });
        if (op == "concordance") return only_get(req, [&] { return concordance_of(state, q); });
        if (op == "narrative") return only_get(req, [&] { return narrative(state, q); });
        if (op == "zipf") return only_get(req, [&] { return zipf(state, q); });
      }
    }
    return error_response(404, "not_found", "no such endpoint: " + req.path);
  }

 private:
  template <typename F>
  Response only_get(const Request& req, F&& f) {
    if (req.method != "GET") return error_response(405, "method_not_allowed", req.method + " not allowed here");
    return f();
  }

  const CorpusState& corpus(const std::string& name) const {
    auto it = impl_.corpora.find(name);
    if (it == impl_.corpora.end()) fail(ErrorCode::NotFound, "unknown corpus '" + name + "'");
    return *it->second;
  }

  KeywordSet keyword_set(const std::string& name) const {
    std::shared_lock lock(impl_.mutex);
    auto it = impl_.project.keyword_sets.find(name);
    if (it == impl_.project.keyword_sets.end()) fail(ErrorCode::NotFound, "unknown keyword set '" + name + "'");
    return it->second;
  }

  const AnalysisConfig& analysis() const { return impl_.project.analysis; }

  Response project() const {
    std::shared_lock lock(impl_.mutex);
    const auto& p = impl_.project;
    Json corpora = Json::array();
    for (const auto& [name, _] : p.corpora) corpora.push_back(name);
    Json sets = Json::array();
    for (const auto& [name, _] : p.keyword_sets) sets.push_back(name);
    const auto& a = p.analysis;
    return json_response({{"name", p.name},
                          {"schema_version", p.schema_version},
                          {"corpora", std::move(corpora)},
                          {"keyword_sets", std::move(sets)},
                          {"analysis",
                           {{"lambda", a.lambda},
                            {"window", a.window},
                            {"windows", a.windows},
                            {"ranking_scheme", std::string(to_string(a.scheme))},
                            {"min_freq", a.extraction.min_freq},
                            {"min_len", a.extraction.min_len},
                            {"max_len", a.extraction.max_len}}}});
  }

  static Json corpus_summary(const std::string& name, const CorpusState& s) {
    const auto stamps = s.corpus.stamps();
    auto stats = exporting::to_json(corpus_stats(s.corpus, &s.table));
    return {{"name", name},
            {"stamp_kind", s.corpus.chaptered() ? "segment" : "year"},
            {"first_stamp", stamps.front()},
            {"last_stamp", stamps.back()},
            {"stats", std::move(stats)}};
  }

  Response list_corpora() const {
    Json out = Json::array();
    for (const auto& [name, state] : impl_.corpora) out.push_back(corpus_summary(name, *state));
    return json_response(out);
  }

  Response pseudowords(const CorpusState& s, const Params& q) const {
    const bool maximal = q.flag("maximal", false);
    const auto& table = maximal ? s.maximal_table : s.table;
    const auto floor = table.params.min_freq;
    const auto min_freq = q.integer("min_freq").value_or(floor);
    if (min_freq < floor) {
      fail(ErrorCode::InvalidArgument,
           "min_freq " + std::to_string(min_freq) + " is below the extraction threshold " + std::to_string(floor));
    }
    const auto min_len = q.integer("min_len").value_or(1);
    const auto max_len = q.integer("max_len").value_or(static_cast<long long>(table.params.max_len));
    const auto page = q.integer("page").value_or(1);
    const auto page_size = q.integer("page_size").value_or(50);
    if (page < 1) fail(ErrorCode::InvalidArgument, "page must be >= 1");
    if (page_size < 1 || page_size > 1000) fail(ErrorCode::InvalidArgument, "page_size must be in [1, 1000]");
    std::u32string needle;
    if (auto raw = q.str("q")) needle = utf8::decode_or_throw(*raw, "query parameter 'q'");

    std::vector<const Pseudoword*> matches;
    for (const auto& w : table.entries) {
      const auto len = static_cast<long long>(w.length());
      if (w.total_freq < min_freq || len < min_len || len > max_len) continue;
      if (!needle.empty() && w.text.find(needle) == std::u32string::npos) continue;
      matches.push_back(&w);
    }
    const auto first = std::min<std::size_t>(matches.size(), static_cast<std::size_t>((page - 1) * page_size));
    const auto last = std::min<std::size_t>(matches.size(), first + static_cast<std::size_t>(page_size));
    Json entries = Json::array();
    for (auto i = first; i < last; ++i) entries.push_back(exporting::to_json(*matches[i]));
    auto r = json_response({{"corpus", s.corpus.name()},
                            {"total", matches.size()},
                            {"page", page},
                            {"page_size", page_size},
                            {"entries", std::move(entries)}});
    r.headers["X-Total-Count"] = std::to_string(matches.size());
    return r;
  }

  Response trends(const CorpusState& s, const Params& q, bool with_table) const {
    const auto set = keyword_set(q.required("set"));
    const double lambda = q.real("lambda").value_or(analysis().lambda);
    const auto baseline = q.str("baseline").value_or("selected");
    TrendTable table;
    if (baseline == "selected") {
      table = build_trend_table(s.corpus, set);
    } else if (baseline == "all") {
      table = build_trend_table(s.corpus, set, s.index, s.table);
    } else {
      fail(ErrorCode::InvalidArgument, "baseline must be 'selected' or 'all'");
    }
    const auto report = special_years(table, lambda);
    if (!with_table) return json_response(exporting::to_json(report));

    bool keyword_sums = true;
    for (std::size_t w = 0; w < table.keywords.size(); ++w) {
      keyword_sums &= std::accumulate(table.counts[w].begin(), table.counts[w].end(), std::int64_t{0}) ==
                      table.keyword_totals[w];
    }
    const bool baseline_sum =
        std::accumulate(table.baseline.begin(), table.baseline.end(), std::int64_t{0}) == table.baseline_total;
    return json_response({{"set", set.name},
                          {"table", exporting::to_json(table)},
                          {"special", exporting::to_json(report)},
                          {"identities", {{"keyword_totals", keyword_sums}, {"baseline_total", baseline_sum}}}});
  }

  Response collocations(const CorpusState& s, const Params& q) const {
    const auto a = q.text("a");
    const auto b = q.text("b");
    const auto mode = parse_mode(q.str("mode"));
    const auto windows = q.int_list("windows");
    if (!windows.empty()) {
      const auto sweep = window_sweep(s.corpus, a, b, windows, mode);
      Json out = Json::array();
      for (const auto& series : sweep) out.push_back(exporting::to_json(series));
      return json_response({{"sweep", std::move(out)}});
    }
    const auto window = static_cast<int>(q.integer("window").value_or(analysis().window));
    return json_response(exporting::to_json(collocation_trend(s.corpus, {a, b, window, mode})));
  }

  Response ranking(const CorpusState& s, const Params& q) const {
    const auto set = keyword_set(q.required("set"));
    RankingOptions opts;
    opts.scheme = analysis().scheme;
    if (auto name = q.str("scheme")) {
      auto scheme = parse_ranking_scheme(*name);
      if (!scheme) fail(ErrorCode::InvalidArgument, "unknown ranking scheme '" + *name + "'");
      opts.scheme = *scheme;
    }
    if (auto year = q.integer("year")) opts.year = static_cast<int>(*year);
    opts.drop_zero = q.flag("drop_zero", false);
    const auto ranked = rank_documents(s.corpus, set, opts);
    return json_response({{"set", set.name},
                          {"scheme", std::string(to_string(opts.scheme))},
                          {"documents", exporting::to_json(ranked, set)}});
  }

  Response concordance_of(const CorpusState& s, const Params& q) const {
    const auto pattern = q.text("q");
    const auto context = q.integer("context").value_or(10);
    const auto limit = q.integer("limit").value_or(100);
    if (context < 0) fail(ErrorCode::InvalidArgument, "context must be >= 0");
    if (limit < 1) fail(ErrorCode::InvalidArgument, "limit must be >= 1");
    auto lines = concordance(s.corpus, pattern, static_cast<std::size_t>(context));
    const auto total = lines.size();
    if (lines.size() > static_cast<std::size_t>(limit)) lines.resize(static_cast<std::size_t>(limit));
    auto r = json_response({{"total", total}, {"lines", exporting::to_json(lines)}});
    r.headers["X-Total-Count"] = std::to_string(total);
    return r;
  }

  Response narrative(const CorpusState& s, const Params& q) const {
    const auto pattern = q.text("pattern");
    std::u32string event;
    if (auto e = q.str("event"); e && !e->empty()) event = utf8::decode_or_throw(*e, "query parameter 'event'");
    const auto rows = narrative_table(s.corpus, pattern, event);
    const auto f = segment_frequencies(s.corpus, pattern);
    const auto l = segment_lengths(s.corpus);
    Json series = {{"raw_freq", exporting::to_json(f)},
                   {"length", exporting::to_json(l)},
                   {"normalized", exporting::to_json(normalized_frequencies(f, l))}};
    if (!event.empty()) {
      series["event_freq"] = exporting::to_json(segment_frequencies(s.corpus, event));
      series["ratio"] = exporting::to_json(conditional_ratio(s.corpus, pattern, event));
    }
    return json_response({{"rows", exporting::to_json(rows)}, {"series", std::move(series)}});
  }

  Response zipf(const CorpusState& s, const Params& q) const {
    const bool normalize = q.flag("normalize", true);
    const auto& table = q.flag("maximal", false) ? s.maximal_table : s.table;
    if (table.entries.empty()) fail(ErrorCode::Undefined, "corpus has no pseudowords at the extraction threshold");
    const auto curve = rank_frequency(table, normalize, static_cast<std::int64_t>(s.corpus.total_chars()));
    const auto lo = q.integer("lo");
    const auto hi = q.integer("hi");
    Json fit = nullptr;
    if (lo || hi) {
      fit = exporting::to_json(fit_powerlaw(curve, RankRange{lo.value_or(1), hi.value_or(curve.points.back().rank)}));
    } else if (curve.points.size() >= 2) {
      fit = exporting::to_json(fit_powerlaw(curve));
    }
    return json_response({{"curve", exporting::to_json(curve)}, {"fit", std::move(fit)}});
  }

  Response keyword_sets(const Request& req, const std::vector<std::string>& rest) {
    if (rest.size() == 1) {
      if (req.method == "GET") {
        std::shared_lock lock(impl_.mutex);
        Json out = Json::array();
        for (const auto& [_, set] : impl_.project.keyword_sets) out.push_back(keyword_set_json(set));
        return json_response(out);
      }
      if (req.method == "POST") {
        const auto body = parse_body(req.body);
        if (!body.is_object() || !body.contains("name") || !body["name"].is_string()) {
          fail(ErrorCode::InvalidArgument, "body must carry a string 'name'");
        }
        auto set = keyword_set_from_body(body["name"].get<std::string>(), body);
        return mutate([&](Project& p) {
          if (p.keyword_sets.count(set.name)) fail(ErrorCode::Conflict, "keyword set '" + set.name + "' already exists");
          p.keyword_sets.emplace(set.name, set);
          return json_response(keyword_set_json(set), 201);
        });
      }
      return error_response(405, "method_not_allowed", req.method + " not allowed here");
    }
    if (rest.size() != 2) return error_response(404, "not_found", "no such endpoint: " + req.path);
    const auto& name = rest[1];
    if (req.method == "GET") return json_response(keyword_set_json(keyword_set(name)));
    if (req.method == "PUT") {
      auto set = keyword_set_from_body(name, parse_body(req.body));
      return mutate([&](Project& p) {
        const bool created = p.keyword_sets.count(name) == 0;
        p.keyword_sets.insert_or_assign(name, set);
        return json_response(keyword_set_json(set), created ? 201 : 200);
      });
    }
    if (req.method == "DELETE") {
      return mutate([&](Project& p) {
        if (p.keyword_sets.erase(name) == 0) fail(ErrorCode::NotFound, "unknown keyword set '" + name + "'");
        return json_response({{"deleted", name}});
      });
    }
    return error_response(405, "method_not_allowed", req.method + " not allowed here");
  }

  // Applies `change` to a copy, persists it, then publishes it; a failed
  // write leaves the served state untouched.
  template <typename F>
  Response mutate(F&& change) {
    std::unique_lock lock(impl_.mutex);
    auto next = impl_.project;
    auto response = change(next);
    if (impl_.persist) save_project(next, *impl_.persist);
    impl_.project = std::move(next);
    return response;
  }

  Service::Impl& impl_;
};

}  // namespace

Response Service::handle(const Request& request) const {
  try {
    return Router(*impl_).route(request);
  } catch (const Error& e) {
    return error_response(status_of(e.code()), to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal", e.what());
  }
}

struct HttpServer::State {
  State(Service& s, ServeOptions o) : service(s), options(std::move(o)) {}
  Service& service;
  ServeOptions options;
  httplib::Server server;
  int port = -1;
};

HttpServer::HttpServer(Service& service, ServeOptions options)
    : state_(std::make_unique<State>(service, std::move(options))) {
  auto& server = state_->server;
  const auto threads = std::max<std::size_t>(1, state_->options.threads);
  const auto queued = state_->options.max_queued;
  server.new_task_queue = [threads, queued] { return new httplib::ThreadPool(threads, queued); };

  auto adapter = [&service](const httplib::Request& req, httplib::Response& res) {
    Request r;
    r.method = req.method;
    r.path = req.path;
    for (const auto& [k, v] : req.params) r.query[k] = v;
    r.body = req.body;
    const auto out = service.handle(r);
    res.status = out.status;
    for (const auto& [k, v] : out.headers) res.set_header(k, v);
    res.set_content(out.body, "application/json; charset=utf-8");
  };
  const std::string pattern = R"(/api/v1/.*)";
  server.Get(pattern, adapter);
  server.Post(pattern, adapter);
  server.Put(pattern, adapter);
  server.Delete(pattern, adapter);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
  if (state_->port >= 0) return state_->port;
  const auto& o = state_->options;
  const int port = o.port == 0 ? state_->server.bind_to_any_port(o.host)
                               : (state_->server.bind_to_port(o.host, o.port) ? o.port : -1);
  if (port < 0) fail(ErrorCode::IoError, "cannot listen on " + o.host + ":" + std::to_string(o.port));
  state_->port = port;
  return port;
}

void HttpServer::run() {
  bind();
  if (!state_->server.listen_after_bind()) {
    fail(ErrorCode::IoError, "server on port " + std::to_string(state_->port) + " stopped with an error");
  }
}

void HttpServer::stop() {
  if (state_->server.is_running()) state_->server.stop();
}

bool HttpServer::running() const { return state_->server.is_running(); }

void serve(Service& service, const ServeOptions& options) {
  HttpServer server(service, options);
  server.bind();
  server.run();
}

}  // namespace histtext
