#pragma once

// Latent Semantic Indexing over the ingested posts.
//
// Term weights are raw count x ln(N / df). The term-document matrix is
// factored by a rank-k truncated SVD A ~ U S V^T. A document's latent vector
// is column j of S V^T, a query q is folded in as U^T q (the fold-in
// S^-1 U^T q rescaled into document coordinates), and retrieval ranks
// documents by cosine in that k-dimensional space.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "apr/ekdb/posts.hpp"
#include "apr/linalg/dense.hpp"
#include "apr/linalg/svd.hpp"
#include "apr/text.hpp"

namespace apr::ekdb {

struct IndexOptions {
  std::size_t rank_k = 100;
  double svd_tolerance = 1e-10;
  int svd_max_iterations = 1000;
};

struct QueryOptions {
  std::size_t max_results = 50;
  double min_similarity = 0.2;
};

struct QueryResult {
  const Post* post = nullptr;
  std::size_t doc = 0;
  double similarity = 0.0;
};

class LsiIndex {
 public:
  /// Throws on an empty corpus or rank_k < 1.
  static LsiIndex build(std::vector<Post> corpus, StopList stop_words, const IndexOptions& options = {});

  /// Ordered by similarity descending, ties by ascending post id.
  std::vector<QueryResult> query(std::string_view text, const QueryOptions& options = {}) const;

  /// Latent vector of a query text; empty when no token is in the vocabulary.
  std::vector<double> fold_in(std::string_view text) const;

  std::size_t rank() const noexcept { return singular_values_.size(); }
  std::size_t size() const noexcept { return documents_.size(); }

  const std::vector<Post>& documents() const noexcept { return documents_; }
  const std::vector<std::string>& vocabulary() const noexcept { return vocabulary_; }
  std::optional<std::size_t> term_id(std::string_view term) const;
  const std::vector<double>& idf() const noexcept { return idf_; }
  const linalg::CscMatrix& tfidf() const noexcept { return tfidf_; }
  const std::vector<double>& singular_values() const noexcept { return singular_values_; }
  const linalg::DenseMatrix& left_factor() const noexcept { return left_; }
  const linalg::DenseMatrix& doc_factor() const noexcept { return right_; }
  std::span<const double> doc_latent(std::size_t doc) const { return doc_latent_.col(doc); }
  const std::vector<double>& doc_norms() const noexcept { return doc_norms_; }
  const StopList& stop_words() const noexcept { return stop_words_; }
  int svd_iterations() const noexcept { return svd_iterations_; }

  /// Directory with manifest.json, documents.jsonl and factors.bin.
  /// Reload is bit-exact.
  void save(const std::filesystem::path& dir) const;
  static LsiIndex load(const std::filesystem::path& dir);

  /// Bitwise comparison of every stored array.
  bool identical_to(const LsiIndex& other) const;

 private:
  void rebuild_lookup();

  std::vector<Post> documents_;
  StopList stop_words_;
  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, std::size_t> term_ids_;
  std::vector<double> idf_;
  linalg::CscMatrix tfidf_;
  std::vector<double> singular_values_;
  linalg::DenseMatrix left_;        // terms x k
  linalg::DenseMatrix right_;       // docs x k
  linalg::DenseMatrix doc_latent_;  // k x docs
  std::vector<double> doc_norms_;
  int svd_iterations_ = 0;
};

/// Dense TF-IDF weight vector of a document, indexed by the index vocabulary.
std::vector<double> tfidf_vector(const LsiIndex& index, std::size_t doc);

}  // namespace apr::ekdb
