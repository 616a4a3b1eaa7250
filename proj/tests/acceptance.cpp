// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "apr/ekdb/lsi_index.hpp"
#include "apr/ekdb/posts.hpp"
#include "apr/entailment.hpp"
#include "apr/errors.hpp"
#include "apr/recommender.hpp"
#include "apr/sentiment.hpp"
#include "apr/service/config.hpp"
#include "apr/service/json_io.hpp"
#include "apr/service/pipeline.hpp"
#include "support.hpp"

using namespace apr;
using nlohmann::json;
namespace oracle = apr::test::oracle;

namespace {

std::string g_cli;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Accumulates failure reasons for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
  }
};

int g_failed = 0;

void criterion(const std::string& name, const std::function<void(Check&)>& body) {
  Check c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  if (c.failures.empty()) {
    std::cout << "PASS  " << name << (c.detail.empty() ? "" : "  (" + c.detail + ")") << '\n';
  } else {
    ++g_failed;
    std::cout << "FAIL  " << name;
    for (const auto& f : c.failures) std::cout << "\n        " << f;
    std::cout << '\n';
  }
}

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = "'" + g_cli + "' " + args + " </dev/null 2>/dev/null";
  Run r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

StopList stop_list() { return StopList::load(test::data_dir() / "stopwords.txt"); }

std::set<std::string> ref_stop() { return oracle::stop_words(test::data_dir() / "stopwords.txt"); }

const PatternCatalog& catalog() {
  static const PatternCatalog c = load_catalog(test::data_dir() / "catalog" / "posa_catalog.json");
  return c;
}

std::vector<RequirementsSpec> fixture_specs() {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(test::fixture("specs"))) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<RequirementsSpec> out;
  for (const auto& f : files) out.push_back(service::load_spec(f));
  return out;
}

ScoringOptions scoring(bool flow) {
  ScoringOptions o;
  o.entailment.stop_words = stop_list();
  o.include_flow_term = flow;
  return o;
}

ConfidenceTable score(const RequirementsSpec& spec, bool flow = false) {
  return score_patterns(spec, aggregate_fields(spec.use_cases), catalog(), scoring(flow));
}

std::vector<std::string> random_tokens(std::mt19937_64& rng, std::size_t max_len, int alphabet) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> sym(0, alphabet - 1);
  std::vector<std::string> out(len(rng));
  for (auto& t : out) t = "w" + std::to_string(sym(rng));
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& t : v) s += (s.empty() ? "" : " ") + t;
  return s;
}

void entailment_properties(Check& c) {
  const auto t0 = Clock::now();
  EntailmentConfig cfg;
  cfg.stop_words = stop_list();
  const auto stop = ref_stop();
  c.expect(text_entail("model view controller", "model view controller", cfg).value == 1.0, "identity != 1");
  c.expect(text_entail("alpha beta", "gamma delta", cfg).value == 0.0, "disjoint != 0");

  // Exhaustive edit distance over a three-token alphabet up to length 6.
  std::vector<std::vector<std::string>> all{{}};
  for (std::size_t len = 1; len <= 6; ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto& v : all) {
      if (v.size() != len - 1) continue;
      for (const char* t : {"a", "b", "c"}) {
        auto w = v;
        w.push_back(t);
        next.push_back(w);
      }
    }
    all.insert(all.end(), next.begin(), next.end());
  }
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (const auto& b : all) {
      ++pairs;
      if (levenshtein(all[i], b) != oracle::levenshtein(all[i], b)) {
        c.expect(false, "edit distance mismatch on " + join(all[i]) + " / " + join(b));
      }
    }
  }

  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 3000; ++i) {
    const auto a = random_tokens(rng, 12, 5);
    const auto b = random_tokens(rng, 12, 5);
    c.expect(levenshtein(a, b) == oracle::levenshtein(a, b), "random edit distance mismatch");
  }

  std::uniform_real_distribution<double> alpha(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const auto t = join(random_tokens(rng, 12, 8));
    const auto h = join(random_tokens(rng, 12, 8));
    cfg.alpha = alpha(rng);
    const double v = text_entail(t, h, cfg).value;
    c.expect(v >= 0.0 && v <= 1.0, "value out of [0, 1]");
    c.expect(std::abs(v - oracle::entail(t, h, cfg.alpha, stop)) <= 1e-12, "random pair differs from oracle");
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 10.0, "took " + fmt(secs) + " s");
  c.detail = std::to_string(pairs) + " exhaustive pairs, " + fmt(secs) + " s";
}

void oracle_equivalence(Check& c) {
  const auto t0 = Clock::now();
  const auto stop = ref_stop();
  double worst = 0.0;
  std::size_t cells = 0;
  for (bool flow : {false, true}) {
    for (const auto& spec : fixture_specs()) {
      const auto table = score(spec, flow);
      const auto ref = oracle::scores(spec, catalog(), 0.8, stop, flow);
      c.expect(table.size() == catalog().size(), "table size");
      for (const auto& row : table.rows) {
        const auto& expect = ref.at(row.pattern_name);
        double total = 0.0;
        for (std::size_t k = 0; k < expect.size(); ++k) {
          worst = std::max(worst, std::abs(row.terms[k] - expect[k]));
          total += expect[k];
          ++cells;
        }
        worst = std::max(worst, std::abs(row.confidence - total));
      }
    }
  }
  const double secs = seconds_since(t0);
  c.expect(worst <= 1e-12, "max deviation " + sci(worst));
  c.expect(secs < 5.0, "took " + fmt(secs) + " s");
  c.detail = std::to_string(cells) + " terms, max deviation " + sci(worst) + ", " + fmt(secs) + " s";
}

void importance_laws(Check& c) {
  for (const auto& spec : fixture_specs()) {
    const auto base = score(spec);
    auto extra = spec;
    extra.use_cases.push_back(
        {"UC99", "ignored", "a entirely separate objective about layers and brokers", "operator", "pre", "post",
         "constraint", "flow", 0.0});
    const auto with_zero = score(extra);
    for (std::size_t i = 0; i < base.size(); ++i) {
      c.expect(base.rows[i].terms == with_zero.rows[i].terms && base.rows[i].confidence == with_zero.rows[i].confidence,
               "importance 0 use case changed " + base.rows[i].pattern_name);
    }
    auto halved = spec;
    for (auto& u : halved.use_cases) u.importance_score = u.importance() * 0.5;
    const auto half = score(halved);
    for (std::size_t i = 0; i < base.size(); ++i) {
      for (auto term : {ScoreTerm::obj_forces, ScoreTerm::act_solution, ScoreTerm::cst_forces,
                        ScoreTerm::precon_context, ScoreTerm::postcon_consequences}) {
        c.expect(half.rows[i].term(term) == 0.5 * base.rows[i].term(term),
                 std::string("halving importance did not halve ") + to_string(term));
      }
    }
  }
  c.detail = std::to_string(fixture_specs().size()) + " specs";
}

void lsi_fidelity(Check& c) {
  const auto t0 = Clock::now();
  auto posts = ekdb::load_corpus(test::fixture("corpus")).posts;
  c.expect(posts.size() == 12, "corpus has " + std::to_string(posts.size()) + " docs");
  std::vector<std::string> bodies;
  for (const auto& p : posts) bodies.push_back(p.body);
  ekdb::IndexOptions opt;
  opt.rank_k = posts.size();
  const auto idx = ekdb::LsiIndex::build(posts, stop_list(), opt);
  const auto ref = oracle::tfidf(bodies, ref_stop());
  double worst = 0.0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const auto x = idx.doc_latent(a);
    for (std::size_t b = 0; b < idx.size(); ++b) {
      const auto y = idx.doc_latent(b);
      const double got = oracle::cosine(std::vector<double>(x.begin(), x.end()), std::vector<double>(y.begin(), y.end()));
      worst = std::max(worst, std::abs(got - oracle::cosine(ref[a], ref[b])));
    }
    const auto r = idx.query(idx.documents()[a].body, {50, -1.0});
    c.expect(!r.empty() && r.front().doc == a, "document " + std::to_string(a) + " is not its own top hit");
  }
  const double secs = seconds_since(t0);
  c.expect(worst <= 1e-6, "max cosine deviation " + sci(worst));
  c.expect(secs < 5.0, "took " + fmt(secs) + " s");
  c.detail = "max deviation " + sci(worst) + ", " + fmt(secs) + " s";
}

SentimentLabel reference_bucket(long t) {
  if (t >= 8) return SentimentLabel::strongly_positive;
  if (t >= 3) return SentimentLabel::positive;
  if (t >= 1) return SentimentLabel::slightly_positive;
  if (t == 0) return SentimentLabel::neutral;
  if (t >= -2) return SentimentLabel::slightly_negative;
  if (t >= -7) return SentimentLabel::negative;
  return SentimentLabel::strongly_negative;
}

void sentiment_properties(Check& c) {
  const std::vector<std::filesystem::path> paths{test::data_dir() / "lexicon" / "AFINN-111.txt",
                                                 test::data_dir() / "lexicon" / "domain-extension.txt"};
  const auto lex = SentimentLexicon::load(paths);
  c.expect(aggregate_sentiment({}, lex) == SentimentTally{0, 0}, "empty retrieval has a nonzero tally");
  c.expect(bucket(0, 0) == SentimentLabel::neutral, "empty retrieval is not neutral");
  for (long t = -12; t <= 12; ++t) {
    c.expect(bucket(t, 1) == reference_bucket(t), "bucket of " + std::to_string(t));
  }

  auto posts = ekdb::load_corpus(test::fixture("corpus")).posts;
  ekdb::IndexOptions opt;
  opt.rank_k = posts.size();
  const auto idx = ekdb::LsiIndex::build(posts, stop_list(), opt);
  auto results = idx.query("model view controller pipes filters layers", {50, -1.0});
  const auto base = aggregate_sentiment(results, lex);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    std::shuffle(results.begin(), results.end(), rng);
    c.expect(aggregate_sentiment(results, lex) == base, "shuffled evidence changed the tally");
  }
  c.detail = std::to_string(results.size()) + " results, total " + std::to_string(base.total);
}

void ground_truth(Check& c) {
  test::TempDir tmp;
  const auto ing = run_cli("ingest --dump " + q(test::fixture("dumps/ekdb_posts.xml")) + " --out " + q(tmp / "corpus"));
  c.expect(ing.code == 0, "ingest exited " + std::to_string(ing.code));
  const auto idx = run_cli("index --corpus " + q(tmp / "corpus") + " --out " + q(tmp / "index"));
  c.expect(idx.code == 0, "index exited " + std::to_string(idx.code));

  const auto cases = service::load_eval_cases(test::fixture("eval"));
  const auto taxonomy = Taxonomy::load(test::data_dir() / "taxonomy.json");
  std::set<std::string> leaves;
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& ec : cases) {
    leaves.insert(ec.spec.software_type);
    pairs.insert({taxonomy.resolve(ec.spec.software_type).label, ec.expected_pattern});
  }
  c.expect(cases.size() >= 10, "only " + std::to_string(cases.size()) + " cases");
  c.expect(leaves.size() >= 5, "only " + std::to_string(leaves.size()) + " software types");
  c.expect(pairs.count({"Content Management System", "MVC"}) == 1, "no CMS -> MVC case");
  c.expect(pairs.count({"Shell and Terminal Emulator", "Pipes-and-Filters"}) == 1, "no shell -> Pipes-and-Filters case");
  c.expect(pairs.count({"Development Environment Tool", "Microkernel"}) == 1, "no environment tool -> Microkernel case");

  const auto t0 = Clock::now();
  const auto ev = run_cli("eval --cases " + q(test::fixture("eval")) + " --index " + q(tmp / "index") +
                          " --format machine");
  const double secs = seconds_since(t0);
  c.expect(ev.code == 0, "eval exited " + std::to_string(ev.code));
  if (ev.code != 0) return;
  const auto report = json::parse(ev.out);
  const double top1 = report["top1_percent"].get<double>();
  const double top3 = report["top3_percent"].get<double>();
  c.expect(report["valid_cases"].get<std::size_t>() >= 10, "fewer than 10 valid cases");
  c.expect(top3 >= 80.0, "top-3 " + fmt(top3, 1) + "% < 80%");
  c.expect(top1 >= 60.0, "top-1 " + fmt(top1, 1) + "% < 60%");
  c.expect(secs < 30.0, "eval took " + fmt(secs) + " s");
  c.detail = std::to_string(report["valid_cases"].get<int>()) + " cases, " + std::to_string(leaves.size()) +
             " types, top-1 " + fmt(top1, 1) + "%, top-3 " + fmt(top3, 1) + "%, " + fmt(secs) + " s";
}

void validation_limits(Check& c) {
  const auto taxonomy = Taxonomy::load(test::data_dir() / "taxonomy.json");
  const auto base = fixture_specs().front();
  auto words = [](int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s += "word ";
    return s;
  };
  auto expect_field = [&](const RequirementsSpec& s, const std::string& field, const std::string& what) {
    try {
      validate_spec(s, taxonomy);
      c.expect(false, what + " accepted");
    } catch (const ValidationError& e) {
      const bool located = std::any_of(e.errors().begin(), e.errors().end(),
                                       [&](const FieldError& fe) { return fe.field == field; });
      c.expect(located, what + " not located at " + field);
    }
  };
  auto s = base;
  s.short_description = words(26);
  expect_field(s, "short_description", "26-word short description");
  s.short_description = words(25);
  try {
    validate_spec(s, taxonomy);
  } catch (const Error&) {
    c.expect(false, "25-word short description rejected");
  }
  s = base;
  s.detailed_description = words(501);
  expect_field(s, "detailed_description", "501-word detailed description");
  s = base;
  s.use_cases.clear();
  expect_field(s, "use_cases", "no use cases");
  s = base;
  while (s.use_cases.size() < 21) {
    auto u = base.use_cases.front();
    u.id = "X" + std::to_string(s.use_cases.size());
    s.use_cases.push_back(u);
  }
  expect_field(s, "use_cases", "21 use cases");
  for (double bad : {-0.1, 1.1}) {
    s = base;
    s.use_cases[0].importance_score = bad;
    expect_field(s, "use_cases[0].importance_score", "importance " + fmt(bad, 1));
  }
}

void determinism(Check& c) {
  test::TempDir tmp;
  run_cli("ingest --dump " + q(test::fixture("dumps/ekdb_posts.xml")) + " --out " + q(tmp / "corpus"));
  run_cli("index --corpus " + q(tmp / "corpus") + " --out " + q(tmp / "index"));
  const std::string args = "recommend --format machine --non-interactive --spec " +
                           q(test::fixture("specs/cms_university.json")) + " --index " + q(tmp / "index");
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  c.expect(a.code == 0 && b.code == 0, "recommend failed");
  c.expect(!a.out.empty() && a.out == b.out, "outputs differ");
  c.detail = std::to_string(a.out.size()) + " bytes";
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") g_cli = argv[i + 1];
  }
  if (g_cli.empty()) {
    std::cerr << "usage: apr_acceptance --cli <path to apr>\n";
    return 2;
  }
  criterion("entailment identity, disjointness, bounds and edit distance", entailment_properties);
  criterion("confidence equals the hand-composed oracle within 1e-12", oracle_equivalence);
  criterion("importance-zero and importance-scaling laws", importance_laws);
  criterion("full-rank LSI matches tf-idf cosines within 1e-6 and self-retrieves", lsi_fidelity);
  criterion("sentiment buckets, empty evidence and order independence", sentiment_properties);
  criterion("ground-truth evaluation reaches top-3 >= 80% and top-1 >= 60%", ground_truth);
  criterion("input validation limits report the offending field", validation_limits);
  criterion("machine output is byte-identical across runs", determinism);
  return g_failed == 0 ? 0 : 1;
}
