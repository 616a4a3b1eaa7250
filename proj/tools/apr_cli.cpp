// apr: architectural pattern recommender command line.

#include <unistd.h>

#include <csignal>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "apr/ekdb/lsi_index.hpp"
#include "apr/ekdb/posts.hpp"
#include "apr/errors.hpp"
#include "apr/service/config.hpp"
#include "apr/service/http_api.hpp"
#include "apr/service/json_io.hpp"
#include "apr/service/pipeline.hpp"
#include "apr/service/project_store.hpp"
#include "apr/text.hpp"

namespace {

using namespace apr;
using namespace apr::service;

struct Common {
  std::string data_dir = APR_DATA_DIR;
  std::string config_path;
  std::string catalog;
  std::string index_dir;

  PipelineConfig config() const { return config_path.empty() ? PipelineConfig{} : load_config(config_path); }

  DataPaths paths() const {
    auto p = DataPaths::under(data_dir);
    if (!catalog.empty()) {
      p.catalog = catalog;
    }
    return p;
  }

  KnowledgeBase knowledge_base() const {
    auto kb = KnowledgeBase::load(paths());
    if (!index_dir.empty()) {
      kb.index = std::make_shared<const ekdb::LsiIndex>(ekdb::LsiIndex::load(index_dir));
    }
    return kb;
  }
};

std::map<std::string, int> parse_priorities(const std::vector<std::string>& entries) {
  std::map<std::string, int> out;
  for (const auto& e : entries) {
    const auto eq = e.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::validation, "priority \"" + e + "\" must look like name=number");
    }
    try {
      out[e.substr(0, eq)] = std::stoi(e.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::validation, "priority \"" + e + "\" must look like name=number");
    }
  }
  return out;
}

std::map<std::string, int> prompt_priorities(const std::vector<NfrPair>& pairs, std::map<std::string, int> have) {
  std::set<std::string> names;
  for (const auto& [a, b] : pairs) {
    names.insert(a);
    names.insert(b);
  }
  std::cerr << "These NFRs conflict:";
  for (const auto& [a, b] : pairs) {
    std::cerr << " (" << a << ", " << b << ")";
  }
  std::cerr << "\nGive each a distinct priority; 1 is the most important.\n";
  for (const auto& name : names) {
    if (have.count(name) > 0) {
      continue;
    }
    while (true) {
      std::cerr << "  priority for " << name << ": " << std::flush;
      std::string line;
      if (!std::getline(std::cin, line)) {
        throw ResolutionRequiredError(pairs);
      }
      try {
        have[name] = std::stoi(line);
        break;
      } catch (const std::exception&) {
        std::cerr << "  please enter an integer\n";
      }
    }
  }
  return have;
}

int run_ingest(const Common& common, const std::string& dump, std::vector<std::string> tags, const std::string& out) {
  const auto config = common.config();
  ekdb::TagFilter filter(tags.begin(), tags.end());
  if (filter.empty()) {
    filter = config.tag_filter;
  }
  const auto corpus = ekdb::ingest_posts(dump, filter);
  ekdb::save_corpus(corpus, out);
  std::cout << "ingested " << corpus.posts.size() << " posts from " << corpus.rows_read << " rows";
  if (corpus.malformed_rows > 0) {
    std::cout << " (" << corpus.malformed_rows << " malformed rows skipped)";
  }
  std::cout << " -> " << out << '\n';
  return 0;
}

int run_index(const Common& common, const std::string& corpus_dir, std::size_t rank_k, const std::string& out) {
  auto config = common.config();
  if (rank_k > 0) {
    config.rank_k = rank_k;
  }
  auto corpus = ekdb::load_corpus(corpus_dir);
  const auto stop = StopList::load(common.paths().stop_words);
  const auto index = ekdb::LsiIndex::build(std::move(corpus.posts), stop, config.indexing());
  index.save(out);
  std::cout << "indexed " << index.size() << " documents, " << index.vocabulary().size() << " terms, rank "
            << index.rank() << " (" << index.svd_iterations() << " sweeps) -> " << out << '\n';
  return 0;
}

int run_recommend(const Common& common, const std::string& spec_path, std::size_t top, bool trace,
                  const std::string& format, const std::vector<std::string>& priority_args, bool non_interactive,
                  const std::string& trace_out) {
  auto config = common.config();
  if (top > 0) {
    config.top_n = top;
  }
  if (common.index_dir.empty()) {
    throw Error(ErrorKind::config, "--index is required");
  }
  const auto kb = common.knowledge_base();
  const auto spec = load_spec(spec_path);
  auto priorities = parse_priorities(priority_args);

  RecommendationSet set;
  try {
    set = recommend(spec, kb, config, priorities);
  } catch (const ResolutionRequiredError& e) {
    if (non_interactive || !isatty(STDIN_FILENO)) {
      throw;
    }
    priorities = prompt_priorities(e.pairs(), priorities);
    set = recommend(spec, kb, config, priorities);
  }

  if (!trace_out.empty()) {
    write_text_file(trace_out, dump_machine(trace_to_json(set.trace)));
  }
  if (format == "machine") {
    std::cout << dump_machine(recommendation_set_to_json(set));
  } else {
    std::cout << format_recommendations_text(set, trace);
  }
  return 0;
}

int run_eval(const Common& common, const std::string& cases_dir, const std::string& format) {
  if (common.index_dir.empty()) {
    throw Error(ErrorKind::config, "--index is required");
  }
  const auto kb = common.knowledge_base();
  const auto cases = load_eval_cases(cases_dir);
  const auto report = evaluate(cases, kb, common.config());
  if (format == "machine") {
    std::cout << dump_machine(report_to_json(report));
  } else {
    std::cout << format_report_text(report);
  }
  return 0;
}

ApiServer* g_server = nullptr;

void handle_signal(int) {
  if (g_server != nullptr) {
    g_server->stop();
  }
}

int run_serve(const Common& common, const std::string& host, int port, const std::string& projects) {
  if (common.index_dir.empty()) {
    throw Error(ErrorKind::config, "--index is required");
  }
  const auto kb = common.knowledge_base();
  ProjectStore store(projects);
  ApiServer server(kb, common.config(), store);
  const int bound = server.bind(host, port);
  if (bound < 0) {
    throw Error(ErrorKind::io, "cannot bind " + host + ":" + std::to_string(port));
  }
  g_server = &server;
  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);
  std::cout << "listening on http://" << host << ":" << bound << std::endl;
  server.serve();
  g_server = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Architectural pattern recommender"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--data-dir", common.data_dir, "Directory with catalog, lexicon, taxonomy and stop words");
  app.add_option("--config", common.config_path, "Pipeline config (JSON)");

  auto* ingest = app.add_subcommand("ingest", "Filter a Stack Exchange posts dump into a corpus");
  std::string dump, ingest_out;
  std::vector<std::string> tags;
  ingest->add_option("--dump", dump, "Posts.xml or line-delimited JSON dump")->required();
  ingest->add_option("--tags", tags, "Relevance tags (default: config tag_filter)")->delimiter(',');
  ingest->add_option("--out", ingest_out, "Corpus directory")->required();

  auto* index = app.add_subcommand("index", "Build the LSI index of a corpus");
  std::string corpus_dir, index_out;
  std::size_t rank_k = 0;
  index->add_option("--corpus", corpus_dir, "Corpus directory")->required();
  index->add_option("--rank-k", rank_k, "Truncation rank (default: config rank_k)");
  index->add_option("--out", index_out, "Index directory")->required();

  auto* rec = app.add_subcommand("recommend", "Rank patterns for a requirements spec");
  std::string spec_path, format = "text", trace_out;
  std::size_t top = 0;
  bool trace = false, non_interactive = false;
  std::vector<std::string> priority_args;
  rec->add_option("--spec", spec_path, "Requirements spec (JSON)")->required();
  rec->add_option("--catalog", common.catalog, "Pattern catalog (default: bundled)");
  rec->add_option("--index", common.index_dir, "LSI index directory")->required();
  rec->add_option("--top", top, "Number of recommendations (1-3)")->check(CLI::Range(1, 3));
  rec->add_flag("--trace", trace, "Print per-term scores");
  rec->add_option("--trace-out", trace_out, "Write the scoring trace as JSON");
  rec->add_option("--format", format, "text | machine")->check(CLI::IsMember({"text", "machine"}));
  rec->add_option("--priority", priority_args, "NFR priority, name=n (1 = highest)");
  rec->add_flag("--non-interactive", non_interactive, "Fail instead of prompting on NFR conflicts");

  auto* eval = app.add_subcommand("eval", "Score the pipeline on ground-truth cases");
  std::string cases_dir, eval_format = "text";
  eval->add_option("--cases", cases_dir, "Directory of eval case files")->required();
  eval->add_option("--catalog", common.catalog, "Pattern catalog (default: bundled)");
  eval->add_option("--index", common.index_dir, "LSI index directory")->required();
  eval->add_option("--format", eval_format, "text | machine")->check(CLI::IsMember({"text", "machine"}));

  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  std::string host = "127.0.0.1", projects = "projects";
  int port = 8080;
  serve->add_option("--port", port, "Port (0 picks a free one)");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--catalog", common.catalog, "Pattern catalog (default: bundled)");
  serve->add_option("--index", common.index_dir, "LSI index directory")->required();
  serve->add_option("--projects", projects, "Project store directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) return run_ingest(common, dump, tags, ingest_out);
    if (*index) return run_index(common, corpus_dir, rank_k, index_out);
    if (*rec) return run_recommend(common, spec_path, top, trace, format, priority_args, non_interactive, trace_out);
    if (*eval) return run_eval(common, cases_dir, eval_format);
    if (*serve) return run_serve(common, host, port, projects);
  } catch (const ValidationError& e) {
    std::cerr << "error: validation failed\n";
    for (const auto& fe : e.errors()) {
      std::cerr << "  " << fe.field << ": " << fe.message << '\n';
    }
    return exit_code(e.kind());
  } catch (const ResolutionRequiredError& e) {
    std::cerr << "error: conflicting NFRs need priorities (use --priority name=n):\n";
    for (const auto& [a, b] : e.pairs()) {
      std::cerr << "  " << a << " <-> " << b << '\n';
    }
    return exit_code(e.kind());
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
