#include "apr/sentiment.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_set>

#include "apr/errors.hpp"
#include "apr/text.hpp"

namespace apr {

namespace {

std::string join(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) {
      out.push_back(' ');
    }
    out += tokens[i];
  }
  return out;
}

}  // namespace

void SentimentLexicon::add(std::string_view term, int valence) {
  if (valence < -5 || valence > 5) {
    throw Error(ErrorKind::validation, "valence for \"" + std::string(term) + "\" is outside [-5, 5]");
  }
  const auto tokens = tokenize(term);
  if (tokens.empty()) {
    throw Error(ErrorKind::validation, "lexicon term \"" + std::string(term) + "\" has no word characters");
  }
  max_phrase_tokens_ = std::max(max_phrase_tokens_, tokens.size());
  entries_[join(tokens)] = valence;
}

void SentimentLexicon::add_entries(std::string_view document, std::string_view origin) {
  std::istringstream in{std::string(document)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty() || line[0] == '#') {
      continue;
    }
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorKind::format, std::string(origin) + ":" + std::to_string(line_no) + ": expected term<TAB>valence");
    }
    int valence = 0;
    const auto* first = line.data() + tab + 1;
    const auto* last = line.data() + line.size();
    if (*first == '+') {
      ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, valence);
    if (ec != std::errc{} || ptr != last) {
      throw Error(ErrorKind::format, std::string(origin) + ":" + std::to_string(line_no) + ": bad valence");
    }
    add(std::string_view(line).substr(0, tab), valence);
  }
}

SentimentLexicon SentimentLexicon::load(std::span<const std::filesystem::path> paths) {
  SentimentLexicon lexicon;
  for (const auto& p : paths) {
    lexicon.add_entries(read_text_file(p), p.filename().string());
  }
  return lexicon;
}

int SentimentLexicon::valence(std::string_view term) const {
  const auto it = entries_.find(std::string(term));
  return it == entries_.end() ? 0 : it->second;
}

bool SentimentLexicon::contains(std::string_view term) const { return entries_.count(std::string(term)) > 0; }

const char* to_string(SentimentLabel label) {
  switch (label) {
    case SentimentLabel::strongly_positive: return "strongly_positive";
    case SentimentLabel::positive: return "positive";
    case SentimentLabel::slightly_positive: return "slightly_positive";
    case SentimentLabel::neutral: return "neutral";
    case SentimentLabel::slightly_negative: return "slightly_negative";
    case SentimentLabel::negative: return "negative";
    case SentimentLabel::strongly_negative: return "strongly_negative";
  }
  return "neutral";
}

const char* display_name(SentimentLabel label) {
  switch (label) {
    case SentimentLabel::strongly_positive: return "Strongly Positive";
    case SentimentLabel::positive: return "Positive";
    case SentimentLabel::slightly_positive: return "Slightly Positive";
    case SentimentLabel::neutral: return "Neutral";
    case SentimentLabel::slightly_negative: return "Slightly Negative";
    case SentimentLabel::negative: return "Negative";
    case SentimentLabel::strongly_negative: return "Strongly Negative";
  }
  return "Neutral";
}

SentimentLabel parse_sentiment_label(std::string_view id) {
  for (auto label : kAllSentimentLabels) {
    if (id == to_string(label)) {
      return label;
    }
  }
  throw Error(ErrorKind::format, "unknown sentiment label \"" + std::string(id) + "\"");
}

bool is_positive(SentimentLabel label) {
  return label == SentimentLabel::strongly_positive || label == SentimentLabel::positive ||
         label == SentimentLabel::slightly_positive;
}

bool is_negative(SentimentLabel label) {
  return label == SentimentLabel::strongly_negative || label == SentimentLabel::negative ||
         label == SentimentLabel::slightly_negative;
}

void BucketThresholds::validate() const {
  if (!(strongly_positive_min > positive_min && positive_min > slightly_positive_min && slightly_positive_min > 0 &&
        0 > slightly_negative_max && slightly_negative_max > negative_max && negative_max > strongly_negative_max)) {
    throw ValidationError("sentiment.thresholds", "bucket bounds must be strictly ordered around 0");
  }
}

std::string synthesize_query(std::string_view pattern_name, std::string_view software_type_label) {
  if (pattern_name.empty() || software_type_label.empty()) {
    throw Error(ErrorKind::validation, "query needs a pattern name and a software type label");
  }
  std::string q(pattern_name);
  q += " for ";
  q += software_type_label;
  return q;
}

long score_text(std::string_view text, const SentimentLexicon& lexicon) {
  const auto tokens = tokenize(text);
  long total = 0;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t matched = 0;
    const std::size_t longest = std::min(lexicon.max_phrase_tokens(), tokens.size() - i);
    for (std::size_t len = longest; len >= 1; --len) {
      const auto candidate = join(std::span<const std::string>(tokens).subspan(i, len));
      if (lexicon.contains(candidate)) {
        total += lexicon.valence(candidate);
        matched = len;
        break;
      }
    }
    i += matched == 0 ? 1 : matched;
  }
  return total;
}

SentimentTally aggregate_sentiment(std::span<const ekdb::QueryResult> results, const SentimentLexicon& lexicon) {
  SentimentTally tally;
  for (const auto& r : results) {
    tally.total += score_text(r.post->body, lexicon);
  }
  tally.evidence_count = results.size();
  return tally;
}

SentimentLabel bucket(long total, std::size_t evidence_count, const BucketThresholds& t) {
  if (evidence_count == 0) {
    return SentimentLabel::neutral;
  }
  if (total >= t.strongly_positive_min) return SentimentLabel::strongly_positive;
  if (total >= t.positive_min) return SentimentLabel::positive;
  if (total >= t.slightly_positive_min) return SentimentLabel::slightly_positive;
  if (total <= t.strongly_negative_max) return SentimentLabel::strongly_negative;
  if (total <= t.negative_max) return SentimentLabel::negative;
  if (total <= t.slightly_negative_max) return SentimentLabel::slightly_negative;
  return SentimentLabel::neutral;
}

std::vector<ekdb::QueryResult> retrieve_evidence(std::string_view pattern_name, std::string_view software_type_label,
                                                 const ekdb::LsiIndex& index, const RetrievalOptions& options) {
  const auto query = synthesize_query(pattern_name, software_type_label);
  auto results = index.query(query, options.query);
  if (options.require_pattern_mention) {
    const auto name_tokens = tokenize(pattern_name, index.stop_words());
    const std::unordered_set<std::string> wanted(name_tokens.begin(), name_tokens.end());
    std::erase_if(results, [&](const ekdb::QueryResult& r) {
      for (const auto& tok : tokenize(r.post->body, index.stop_words())) {
        if (wanted.count(tok) > 0) {
          return false;
        }
      }
      return true;
    });
  }
  return results;
}

SentimentResult sentiment_for(std::string_view pattern_name, std::string_view software_type_label,
                              const ekdb::LsiIndex& index, const SentimentLexicon& lexicon,
                              const RetrievalOptions& options, const BucketThresholds& thresholds) {
  const auto evidence = retrieve_evidence(pattern_name, software_type_label, index, options);
  const auto tally = aggregate_sentiment(evidence, lexicon);
  return {bucket(tally.total, tally.evidence_count, thresholds), tally.total, tally.evidence_count};
}

}  // namespace apr
