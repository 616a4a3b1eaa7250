#include "apr/service/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "apr/errors.hpp"
#include "apr/service/json_io.hpp"
#include "apr/text.hpp"

namespace apr::service {

RecommendationSet recommend(const RequirementsSpec& raw_spec, const KnowledgeBase& kb, const PipelineConfig& config,
                            const std::map<std::string, int>& priorities) {
  config.validate();
  if (kb.catalog.empty()) {
    throw Error(ErrorKind::config, "pattern catalog is missing or empty");
  }
  if (!kb.index) {
    throw Error(ErrorKind::config, "experiential knowledge index is not loaded");
  }

  RequirementsSpec spec = validate_spec(raw_spec, kb.taxonomy);
  const auto conflicts = check_nfr_conflicts(spec.nfrs, kb.conflicts);
  RecommendationSet set;
  if (!conflicts.empty()) {
    auto merged = item_priorities(spec.nfrs);
    for (const auto& [name, p] : priorities) {
      merged[name] = p;
    }
    auto kept = resolve_nfr_conflicts(spec.nfrs, conflicts, merged);
    for (const auto& n : spec.nfrs) {
      if (std::none_of(kept.begin(), kept.end(), [&](const NfrItem& k) { return k.name == n.name; })) {
        set.dropped_nfrs.push_back(n.name);
      }
    }
    spec.nfrs = std::move(kept);
  }

  const auto fields = aggregate_fields(spec.use_cases);
  set.trace = score_patterns(spec, fields, kb.catalog, config.scoring(kb.stop_words));
  set.software_type = spec.software_type;
  set.software_type_label = kb.taxonomy.resolve(spec.software_type).label;
  set.config = config;

  for (const auto& ranked : rank_top(set.trace, config.top_n)) {
    const auto s = sentiment_for(ranked.pattern_name, set.software_type_label, *kb.index, kb.lexicon,
                                 config.retrieval(), config.thresholds);
    set.recommendations.push_back(
        {ranked.rank, ranked.pattern_name, ranked.confidence, s.label, s.total, s.evidence_count});
  }
  return set;
}

double EvalReport::top1_percent() const {
  return valid_cases == 0 ? 0.0 : 100.0 * static_cast<double>(rank_hits[0]) / static_cast<double>(valid_cases);
}

double EvalReport::top3_percent() const {
  if (valid_cases == 0) {
    return 0.0;
  }
  const auto hits = rank_hits[0] + rank_hits[1] + rank_hits[2];
  return 100.0 * static_cast<double>(hits) / static_cast<double>(valid_cases);
}

EvalReport evaluate(std::span<const EvalCase> cases, const KnowledgeBase& kb, const PipelineConfig& config) {
  if (cases.empty()) {
    throw Error(ErrorKind::validation, "evaluation needs at least one case");
  }
  EvalReport report;
  report.cases_total = cases.size();
  for (const auto& c : cases) {
    RecommendationSet set;
    try {
      set = recommend(c.spec, kb, config);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::config || e.kind() == ErrorKind::io) {
        throw;
      }
      report.warnings.push_back(c.name + ": " + e.what());
      continue;
    }
    ++report.valid_cases;
    CaseOutcome outcome;
    outcome.name = c.name;
    outcome.expected_pattern = c.expected_pattern;
    for (const auto& r : set.recommendations) {
      outcome.ranked.push_back(r.pattern_name);
      outcome.labels.push_back(r.sentiment_label);
      if (r.rank <= 3) {
        report.positive_by_rank[r.rank - 1] += is_positive(r.sentiment_label) ? 1 : 0;
        report.negative_by_rank[r.rank - 1] += is_negative(r.sentiment_label) ? 1 : 0;
      }
      if (outcome.found_rank == 0 && r.pattern_name == c.expected_pattern) {
        outcome.found_rank = r.rank;
      }
    }
    report.rank_hits[outcome.found_rank == 0 ? 3 : outcome.found_rank - 1] += 1;
    report.outcomes.push_back(std::move(outcome));
  }
  return report;
}

std::vector<EvalCase> load_eval_cases(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorKind::io, dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<EvalCase> cases;
  for (const auto& f : files) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_text_file(f));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::format, f.filename().string() + ": " + e.what());
    }
    auto c = eval_case_from_json(j);
    if (c.name.empty()) {
      c.name = f.stem().string();
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) {
    s.append(width - s.size(), ' ');
  }
  return s;
}

}  // namespace

std::string format_recommendations_text(const RecommendationSet& set, bool with_trace) {
  std::ostringstream out;
  out << "software type: " << set.software_type_label << " (" << set.software_type << ")\n";
  if (!set.dropped_nfrs.empty()) {
    out << "dropped NFRs:";
    for (const auto& n : set.dropped_nfrs) {
      out << ' ' << n;
    }
    out << '\n';
  }
  out << pad("rank", 6) << pad("pattern", 22) << pad("confidence", 12) << pad("sentiment", 20) << "evidence\n";
  for (const auto& r : set.recommendations) {
    out << pad(std::to_string(r.rank), 6) << pad(r.pattern_name, 22) << pad(fixed(r.confidence, 4), 12)
        << pad(display_name(r.sentiment_label), 20) << r.evidence_count << " posts (score " << r.sentiment_score
        << ")\n";
  }
  if (with_trace) {
    out << "\ntrace\n" << pad("pattern", 22);
    const char* heads[] = {"DD>BD", "SD>KA", "NFR>F", "Obj>F", "Act>Sol", "Cst>F", "Pre>Ctx", "Post>Cq", "Flo>Sol"};
    for (const char* h : heads) {
      out << pad(h, 9);
    }
    out << "total\n";
    for (const auto& row : set.trace.rows) {
      out << pad(row.pattern_name, 22);
      for (double v : row.terms) {
        out << pad(fixed(v, 4), 9);
      }
      out << fixed(row.confidence, 4) << '\n';
    }
  }
  return out.str();
}

std::string format_report_text(const EvalReport& report) {
  std::ostringstream out;
  out << pad("", 10) << pad("Expected Output", 18) << pad("Positive Sentiment", 21) << "Negative Sentiment\n";
  const char* rows[] = {"1st rank", "2nd rank", "3rd rank"};
  for (std::size_t r = 0; r < 3; ++r) {
    out << pad(rows[r], 10) << pad(std::to_string(report.rank_hits[r]), 18)
        << pad(std::to_string(report.positive_by_rank[r]), 21) << report.negative_by_rank[r] << '\n';
  }
  out << pad("miss", 10) << report.rank_hits[3] << '\n';
  out << "\ncases: " << report.valid_cases << " valid of " << report.cases_total;
  out << "   top-1: " << fixed(report.top1_percent(), 1) << "%   top-3: " << fixed(report.top3_percent(), 1) << "%\n";
  for (const auto& o : report.outcomes) {
    out << "  " << pad(o.name, 34) << pad(o.expected_pattern, 20)
        << pad(o.found_rank == 0 ? std::string("miss") : "rank " + std::to_string(o.found_rank), 9) << "[";
    for (std::size_t i = 0; i < o.ranked.size(); ++i) {
      out << (i ? ", " : "") << o.ranked[i];
    }
    out << "]\n";
  }
  for (const auto& w : report.warnings) {
    out << "warning: " << w << '\n';
  }
  return out.str();
}

}  // namespace apr::service
