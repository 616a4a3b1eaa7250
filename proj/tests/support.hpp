#pragma once

// Test helpers and independent reference implementations. The oracles here
// deliberately avoid the library's own tokenizer, entailment and linear
// algebra so agreement is evidence rather than tautology.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "apr/input_model.hpp"
#include "apr/spdb.hpp"

namespace apr::test {

inline std::filesystem::path data_dir() { return APR_DATA_DIR; }
inline std::filesystem::path fixture(const std::string& rel) { return data_dir() / "fixtures" / rel; }

/// Fresh scratch directory under the build tree, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::path(APR_TEST_TMP) /
            ("t" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace oracle {

inline std::set<std::string> stop_words(const std::filesystem::path& p) {
  std::set<std::string> out;
  std::ifstream in(p);
  std::string w;
  while (in >> w) {
    out.insert(w);
  }
  return out;
}

inline std::vector<std::string> words(const std::string& text, const std::set<std::string>& stop) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty() && stop.count(cur) == 0) {
      out.push_back(cur);
    }
    cur.clear();
  };
  for (unsigned char ch : text) {
    if (ch >= 0x80 || std::isalnum(ch)) {
      cur.push_back(static_cast<char>(std::tolower(ch)));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

/// Full-table edit distance, no row recycling.
inline std::size_t levenshtein(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, sub});
    }
  }
  return d[a.size()][b.size()];
}

inline double entail(const std::string& t, const std::string& h, double alpha, const std::set<std::string>& stop) {
  const auto tw = words(t, stop);
  const auto hw = words(h, stop);
  const std::set<std::string> ts(tw.begin(), tw.end());
  const std::set<std::string> hs(hw.begin(), hw.end());
  double coverage = 0.0;
  if (!hs.empty()) {
    std::size_t shared = 0;
    for (const auto& w : hs) shared += ts.count(w);
    coverage = double(shared) / double(hs.size());
  }
  double editsim;
  if (tw.empty() && hw.empty()) {
    editsim = 1.0;
  } else if (tw.empty() || hw.empty()) {
    editsim = 0.0;
  } else {
    editsim = 1.0 - double(levenshtein(tw, hw)) / double(std::max(tw.size(), hw.size()));
  }
  return std::clamp(alpha * coverage + (1.0 - alpha) * editsim, 0.0, 1.0);
}

/// Nine-term confidence of every pattern, summed by hand. Returns
/// pattern name -> term values (same order as ScoreTerm).
inline std::map<std::string, std::vector<double>> scores(const RequirementsSpec& spec, const PatternCatalog& catalog,
                                                         double alpha, const std::set<std::string>& stop,
                                                         bool flow_term) {
  std::vector<UseCase> ucs = spec.use_cases;
  std::stable_sort(ucs.begin(), ucs.end(), [](const UseCase& a, const UseCase& b) { return a.id < b.id; });

  using Pairs = std::vector<std::pair<std::string, double>>;
  auto collect = [&](std::string UseCase::*field) {
    Pairs out;
    for (const auto& u : ucs) {
      const std::string& text = u.*field;
      const double is = u.importance_score ? *u.importance_score : 1.0;
      if (text.empty()) continue;
      if (std::find(out.begin(), out.end(), std::make_pair(text, is)) == out.end()) out.emplace_back(text, is);
    }
    return out;
  };
  const Pairs obj = collect(&UseCase::objective);
  const Pairs act = collect(&UseCase::actors);
  const Pairs cst = collect(&UseCase::constraints);
  const Pairs pre = collect(&UseCase::pre_conditions);
  const Pairs post = collect(&UseCase::post_conditions);
  const Pairs flo = collect(&UseCase::normal_flow);

  auto weighted = [&](const Pairs& tuples, const std::string& attr) {
    double s = 0.0;
    for (const auto& [text, is] : tuples) s += entail(text, attr, alpha, stop) * is;
    return s;
  };

  std::map<std::string, std::vector<double>> out;
  for (const auto& p : catalog) {
    double nfr = 0.0;
    for (const auto& n : spec.nfrs) {
      const std::string text = n.free_text.empty() ? n.name : n.name + " " + n.free_text;
      nfr += entail(text, p.forces, alpha, stop);
    }
    out[p.pattern_name] = {
        entail(spec.detailed_description, p.basic_definition, alpha, stop),
        entail(spec.short_description, p.known_applications, alpha, stop),
        nfr,
        weighted(obj, p.forces),
        weighted(act, p.solution),
        weighted(cst, p.forces),
        weighted(pre, p.context),
        weighted(post, p.consequences),
        flow_term ? weighted(flo, p.solution) : 0.0,
    };
  }
  return out;
}

/// Plain TF-IDF document vectors over a private vocabulary.
inline std::vector<std::map<std::string, double>> tfidf(const std::vector<std::string>& docs,
                                                       const std::set<std::string>& stop) {
  std::vector<std::map<std::string, double>> tf(docs.size());
  std::map<std::string, int> df;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& w : words(docs[d], stop)) tf[d][w] += 1.0;
    for (const auto& [w, _] : tf[d]) df[w] += 1;
  }
  const double n = double(docs.size());
  for (auto& doc : tf) {
    for (auto& [w, v] : doc) v *= std::log(n / df[w]);
  }
  return tf;
}

inline double cosine(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [w, v] : a) {
    na += v * v;
    if (auto it = b.find(w); it != b.end()) dot += v * it->second;
  }
  for (const auto& [w, v] : b) nb += v * v;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace oracle
}  // namespace apr::test
