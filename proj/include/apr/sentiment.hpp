#pragma once

// Crowd sentiment for a recommended pattern: query the experiential
// knowledge base with "<pattern> for <software type>", score every retrieved
// post with a valence lexicon, add the scores up and bucket the total onto a
// seven-level scale.

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "apr/ekdb/lsi_index.hpp"

namespace apr {

class SentimentLexicon {
 public:
  SentimentLexicon() = default;

  /// Parses `term<TAB>integer` lines. Terms are normalized with the shared
  /// tokenizer, so multi-token terms become phrases. Later entries override
  /// earlier ones.
  void add_entries(std::string_view document, std::string_view origin = "lexicon");
  void add(std::string_view term, int valence);

  /// Base lexicon followed by any number of extension files.
  static SentimentLexicon load(std::span<const std::filesystem::path> paths);

  /// Valence of a single word or space-joined phrase; 0 when absent.
  int valence(std::string_view term) const;
  bool contains(std::string_view term) const;
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t max_phrase_tokens() const noexcept { return max_phrase_tokens_; }

 private:
  std::unordered_map<std::string, int> entries_;
  std::size_t max_phrase_tokens_ = 1;
};

enum class SentimentLabel {
  strongly_positive,
  positive,
  slightly_positive,
  neutral,
  slightly_negative,
  negative,
  strongly_negative,
};

inline constexpr SentimentLabel kAllSentimentLabels[] = {
    SentimentLabel::strongly_positive, SentimentLabel::positive,          SentimentLabel::slightly_positive,
    SentimentLabel::neutral,           SentimentLabel::slightly_negative, SentimentLabel::negative,
    SentimentLabel::strongly_negative,
};

/// "strongly_positive" etc.
const char* to_string(SentimentLabel label);
/// "Strongly Positive" etc.
const char* display_name(SentimentLabel label);
SentimentLabel parse_sentiment_label(std::string_view id);
bool is_positive(SentimentLabel label);
bool is_negative(SentimentLabel label);

/// Inclusive lower bounds for the positive labels and inclusive upper bounds
/// for the negative ones; anything strictly between is neutral.
struct BucketThresholds {
  long strongly_positive_min = 8;
  long positive_min = 3;
  long slightly_positive_min = 1;
  long slightly_negative_max = -1;
  long negative_max = -3;
  long strongly_negative_max = -8;

  /// Throws ValidationError unless the bounds are strictly ordered around 0.
  void validate() const;
};

struct SentimentTally {
  long total = 0;
  std::size_t evidence_count = 0;

  bool operator==(const SentimentTally&) const = default;
};

struct SentimentResult {
  SentimentLabel label = SentimentLabel::neutral;
  long total = 0;
  std::size_t evidence_count = 0;
};

struct RetrievalOptions {
  ekdb::QueryOptions query;
  /// Keep only posts that mention at least one token of the pattern name.
  bool require_pattern_mention = true;
};

/// pattern_name + " for " + software_type_label. Throws on empty input.
std::string synthesize_query(std::string_view pattern_name, std::string_view software_type_label);

/// Lowercased, punctuation-split tokens (stop words kept), greedy
/// longest-phrase-first matching left to right; unmatched tokens score 0.
long score_text(std::string_view text, const SentimentLexicon& lexicon);

SentimentTally aggregate_sentiment(std::span<const ekdb::QueryResult> results, const SentimentLexicon& lexicon);

SentimentLabel bucket(long total, std::size_t evidence_count, const BucketThresholds& thresholds = {});

/// Posts retrieved for the synthesized query, after the pattern-mention filter.
std::vector<ekdb::QueryResult> retrieve_evidence(std::string_view pattern_name, std::string_view software_type_label,
                                                 const ekdb::LsiIndex& index, const RetrievalOptions& options);

SentimentResult sentiment_for(std::string_view pattern_name, std::string_view software_type_label,
                              const ekdb::LsiIndex& index, const SentimentLexicon& lexicon,
                              const RetrievalOptions& options = {}, const BucketThresholds& thresholds = {});

}  // namespace apr
