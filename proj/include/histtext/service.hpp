#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>

#include "histtext/corpus.hpp"
#include "histtext/freqstrings.hpp"
#include "histtext/project.hpp"
#include "histtext/suffix_index.hpp"

namespace histtext {

struct Request {
  std::string method = "GET";
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;  // JSON
  std::map<std::string, std::string> headers;
};

/// One ingested corpus with its index and pseudoword tables, built once and
/// read-only afterwards.
struct CorpusState {
  Corpus corpus;
  SuffixIndex index;
  PseudowordTable table;          // every pseudoword, doc frequencies filled
  PseudowordTable maximal_table;  // maximal strings only

  CorpusState(Corpus c, const ExtractionParams& params);
};

/// The JSON API under /api/v1/. `handle` needs no network, so tests and the
/// HTTP front end share it. Corpus state is immutable; keyword sets are the
/// only mutable state and sit behind a single-writer, many-reader lock.
class Service {
 public:
  /// Loads the project, ingests every corpus and builds the indexes. Keyword
  /// set changes are written back to `project_path`.
  static std::unique_ptr<Service> open(const std::filesystem::path& project_path);

  /// In-memory service; keyword set changes are not persisted.
  Service(Project project, std::map<std::string, Corpus> corpora);

  /// Safe to call from many threads at once.
  Response handle(const Request& request) const;

  Project project_snapshot() const;

  struct Impl;

 private:
  Service(Project project, std::map<std::string, Corpus> corpora, std::optional<std::filesystem::path> persist);

  std::shared_ptr<Impl> impl_;
};

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t threads = 4;
  std::size_t max_queued = 64;  // further requests are refused with 503
};

/// HTTP front end for a Service. bind() reserves the socket (port 0 picks a
/// free one), run() serves until stop() is called from another thread.
class HttpServer {
 public:
  HttpServer(Service& service, ServeOptions options);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Returns the bound port.
  int bind();
  void run();
  void stop();
  bool running() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

/// bind() + run(); blocks until the process is stopped.
void serve(Service& service, const ServeOptions& options);

}  // namespace histtext
