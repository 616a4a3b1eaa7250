#include "apr/ekdb/lsi_index.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "apr/errors.hpp"
#include "apr/linalg/kernels.hpp"

namespace apr::ekdb {

using nlohmann::json;

namespace {

constexpr char kMagic[8] = {'A', 'P', 'R', 'L', 'S', 'I', '0', '1'};
constexpr int kFormatVersion = 1;

static_assert(std::endian::native == std::endian::little, "factors.bin is written little-endian");

class BinaryWriter {
 public:
  explicit BinaryWriter(const std::filesystem::path& path) : out_(path, std::ios::binary | std::ios::trunc), path_(path) {
    if (!out_) {
      throw Error(ErrorKind::io, "cannot write " + path.string());
    }
  }
  void bytes(const void* p, std::size_t n) { out_.write(static_cast<const char*>(p), static_cast<std::streamsize>(n)); }
  void u64(std::uint64_t v) { bytes(&v, sizeof v); }
  void doubles(std::span<const double> v) { bytes(v.data(), v.size() * sizeof(double)); }
  void sizes(std::span<const std::size_t> v) {
    for (auto s : v) {
      u64(static_cast<std::uint64_t>(s));
    }
  }
  void finish() {
    out_.flush();
    if (!out_) {
      throw Error(ErrorKind::io, "write failed for " + path_.string());
    }
  }

 private:
  std::ofstream out_;
  std::filesystem::path path_;
};

class BinaryReader {
 public:
  explicit BinaryReader(std::string data) : data_(std::move(data)) {}
  void bytes(void* p, std::size_t n) {
    if (pos_ + n > data_.size()) {
      throw Error(ErrorKind::format, "factors.bin is truncated");
    }
    std::memcpy(p, data_.data() + pos_, n);
    pos_ += n;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    bytes(&v, sizeof v);
    return v;
  }
  void doubles(std::span<double> v) { bytes(v.data(), v.size() * sizeof(double)); }
  void sizes(std::vector<std::size_t>& v) {
    for (auto& s : v) {
      s = static_cast<std::size_t>(u64());
    }
  }
  bool at_end() const { return pos_ == data_.size(); }

 private:
  std::string data_;
  std::size_t pos_ = 0;
};

bool same_bits(std::span<const double> a, std::span<const double> b) {
  return a.size() == b.size() && (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

}  // namespace

LsiIndex LsiIndex::build(std::vector<Post> corpus, StopList stop_words, const IndexOptions& options) {
  if (corpus.empty()) {
    throw Error(ErrorKind::validation, "cannot index an empty corpus");
  }
  if (options.rank_k < 1) {
    throw Error(ErrorKind::validation, "rank_k must be >= 1");
  }
  LsiIndex index;
  index.documents_ = std::move(corpus);
  index.stop_words_ = std::move(stop_words);

  const std::size_t n = index.documents_.size();
  std::vector<std::map<std::string, std::size_t>> counts(n);
  std::map<std::string, std::size_t> df;
  for (std::size_t d = 0; d < n; ++d) {
    for (auto& tok : tokenize(index.documents_[d].body, index.stop_words_)) {
      ++counts[d][tok];
    }
    for (const auto& [term, c] : counts[d]) {
      ++df[term];
    }
  }

  index.vocabulary_.reserve(df.size());
  index.idf_.reserve(df.size());
  for (const auto& [term, f] : df) {
    index.vocabulary_.push_back(term);
    index.idf_.push_back(std::log(static_cast<double>(n) / static_cast<double>(f)));
  }
  index.rebuild_lookup();

  auto& a = index.tfidf_;
  a.rows = index.vocabulary_.size();
  a.cols = n;
  a.col_ptr.assign(1, 0);
  for (std::size_t d = 0; d < n; ++d) {
    for (const auto& [term, c] : counts[d]) {
      const std::size_t t = index.term_ids_.at(term);
      const double w = static_cast<double>(c) * index.idf_[t];
      if (w != 0.0) {
        a.row_idx.push_back(t);
        a.values.push_back(w);
      }
    }
    a.col_ptr.push_back(a.values.size());
  }

  linalg::SvdOptions svd_options;
  svd_options.rank = options.rank_k;
  svd_options.tolerance = options.svd_tolerance;
  svd_options.max_iterations = options.svd_max_iterations;
  auto svd = linalg::truncated_svd(a, svd_options);
  index.svd_iterations_ = svd.iterations;
  index.singular_values_ = std::move(svd.singular_values);
  index.left_ = std::move(svd.left);
  index.right_ = std::move(svd.right);

  const std::size_t k = index.singular_values_.size();
  index.doc_latent_ = linalg::DenseMatrix(k, n);
  index.doc_norms_.assign(n, 0.0);
  for (std::size_t d = 0; d < n; ++d) {
    auto latent = index.doc_latent_.col(d);
    for (std::size_t i = 0; i < k; ++i) {
      latent[i] = index.singular_values_[i] * index.right_(d, i);
    }
    index.doc_norms_[d] = kernels::norm2(latent);
  }
  return index;
}

void LsiIndex::rebuild_lookup() {
  term_ids_.clear();
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
    term_ids_.emplace(vocabulary_[i], i);
  }
}

std::optional<std::size_t> LsiIndex::term_id(std::string_view term) const {
  const auto it = term_ids_.find(std::string(term));
  if (it == term_ids_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::vector<double> LsiIndex::fold_in(std::string_view text) const {
  std::map<std::size_t, double> weights;
  for (const auto& tok : tokenize(text, stop_words_)) {
    if (const auto t = term_id(tok)) {
      weights[*t] += idf_[*t];
    }
  }
  const std::size_t k = rank();
  bool any = false;
  std::vector<double> latent(k, 0.0);
  for (const auto& [t, w] : weights) {
    if (w == 0.0) {
      continue;
    }
    any = true;
    for (std::size_t i = 0; i < k; ++i) {
      latent[i] += left_(t, i) * w;
    }
  }
  if (!any) {
    return {};
  }
  return latent;
}

std::vector<QueryResult> LsiIndex::query(std::string_view text, const QueryOptions& options) const {
  std::vector<QueryResult> results;
  const auto q = fold_in(text);
  if (q.empty() || options.max_results == 0) {
    return results;
  }
  const double q_norm = kernels::norm2(q);
  if (q_norm == 0.0) {
    return results;
  }
  for (std::size_t d = 0; d < documents_.size(); ++d) {
    if (doc_norms_[d] == 0.0) {
      continue;
    }
    double sim = kernels::dot(q, doc_latent(d)) / (q_norm * doc_norms_[d]);
    sim = std::clamp(sim, -1.0, 1.0);
    if (sim >= options.min_similarity) {
      results.push_back({&documents_[d], d, sim});
    }
  }
  std::sort(results.begin(), results.end(), [](const QueryResult& x, const QueryResult& y) {
    if (x.similarity != y.similarity) {
      return x.similarity > y.similarity;
    }
    return x.post->id < y.post->id;
  });
  if (results.size() > options.max_results) {
    results.resize(options.max_results);
  }
  return results;
}

void LsiIndex::save(const std::filesystem::path& dir) const {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorKind::io, "cannot create " + dir.string() + ": " + ec.message());
  }
  const json manifest{{"format", "apr-lsi-index"},
                      {"version", kFormatVersion},
                      {"rank", rank()},
                      {"terms", vocabulary_.size()},
                      {"documents", documents_.size()},
                      {"nonzeros", tfidf_.values.size()},
                      {"svd_iterations", svd_iterations_},
                      {"vocabulary", vocabulary_},
                      {"stop_words", stop_words_.sorted_words()}};
  write_text_file(dir / "manifest.json", manifest.dump(1) + "\n");

  std::string lines;
  for (const auto& p : documents_) {
    lines += post_to_json_line(p);
    lines += '\n';
  }
  write_text_file(dir / "documents.jsonl", lines);

  BinaryWriter out(dir / "factors.bin");
  out.bytes(kMagic, sizeof kMagic);
  out.u64(vocabulary_.size());
  out.u64(documents_.size());
  out.u64(rank());
  out.u64(tfidf_.values.size());
  out.doubles(idf_);
  out.sizes(tfidf_.col_ptr);
  out.sizes(tfidf_.row_idx);
  out.doubles(tfidf_.values);
  out.doubles(singular_values_);
  out.doubles(left_.data());
  out.doubles(right_.data());
  out.doubles(doc_latent_.data());
  out.doubles(doc_norms_);
  out.finish();
}

LsiIndex LsiIndex::load(const std::filesystem::path& dir) {
  const auto manifest = json::parse(read_text_file(dir / "manifest.json"), nullptr, false);
  if (manifest.is_discarded() || !manifest.is_object() || manifest.value("format", "") != "apr-lsi-index") {
    throw Error(ErrorKind::format, dir.string() + " is not an LSI index directory");
  }
  if (manifest.value("version", 0) != kFormatVersion) {
    throw Error(ErrorKind::format, "unsupported index version " + std::to_string(manifest.value("version", 0)));
  }

  LsiIndex index;
  try {
    index.vocabulary_ = manifest.at("vocabulary").get<std::vector<std::string>>();
    const auto stop = manifest.at("stop_words").get<std::vector<std::string>>();
    index.stop_words_ = StopList(std::unordered_set<std::string>(stop.begin(), stop.end()));
    index.svd_iterations_ = manifest.value("svd_iterations", 0);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::format, std::string("bad index manifest: ") + e.what());
  }
  index.rebuild_lookup();

  std::istringstream docs(read_text_file(dir / "documents.jsonl"));
  std::string line;
  while (std::getline(docs, line)) {
    if (!line.empty()) {
      index.documents_.push_back(post_from_json_line(line));
    }
  }

  BinaryReader in(read_text_file(dir / "factors.bin"));
  char magic[8];
  in.bytes(magic, sizeof magic);
  if (std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw Error(ErrorKind::format, "factors.bin has a bad magic number");
  }
  const auto m = static_cast<std::size_t>(in.u64());
  const auto n = static_cast<std::size_t>(in.u64());
  const auto k = static_cast<std::size_t>(in.u64());
  const auto nnz = static_cast<std::size_t>(in.u64());
  if (m != index.vocabulary_.size() || n != index.documents_.size() || k > std::min(m, n)) {
    throw Error(ErrorKind::format, "index files disagree on dimensions");
  }
  index.idf_.resize(m);
  in.doubles(index.idf_);
  auto& a = index.tfidf_;
  a.rows = m;
  a.cols = n;
  a.col_ptr.resize(n + 1);
  in.sizes(a.col_ptr);
  a.row_idx.resize(nnz);
  in.sizes(a.row_idx);
  a.values.resize(nnz);
  in.doubles(a.values);
  index.singular_values_.resize(k);
  in.doubles(index.singular_values_);
  index.left_ = linalg::DenseMatrix(m, k);
  in.doubles(index.left_.data());
  index.right_ = linalg::DenseMatrix(n, k);
  in.doubles(index.right_.data());
  index.doc_latent_ = linalg::DenseMatrix(k, n);
  in.doubles(index.doc_latent_.data());
  index.doc_norms_.resize(n);
  in.doubles(index.doc_norms_);
  if (!in.at_end()) {
    throw Error(ErrorKind::format, "factors.bin has trailing bytes");
  }
  if (a.col_ptr.back() != nnz ||
      std::any_of(a.row_idx.begin(), a.row_idx.end(), [&](std::size_t r) { return r >= m; })) {
    throw Error(ErrorKind::format, "factors.bin has an inconsistent sparse matrix");
  }
  return index;
}

bool LsiIndex::identical_to(const LsiIndex& other) const {
  return documents_ == other.documents_ && vocabulary_ == other.vocabulary_ &&
         stop_words_.sorted_words() == other.stop_words_.sorted_words() && same_bits(idf_, other.idf_) &&
         tfidf_.rows == other.tfidf_.rows && tfidf_.cols == other.tfidf_.cols &&
         tfidf_.col_ptr == other.tfidf_.col_ptr && tfidf_.row_idx == other.tfidf_.row_idx &&
         same_bits(tfidf_.values, other.tfidf_.values) && same_bits(singular_values_, other.singular_values_) &&
         same_bits(left_.data(), other.left_.data()) && same_bits(right_.data(), other.right_.data()) &&
         same_bits(doc_latent_.data(), other.doc_latent_.data()) && same_bits(doc_norms_, other.doc_norms_);
}

std::vector<double> tfidf_vector(const LsiIndex& index, std::size_t doc) {
  const auto& a = index.tfidf();
  std::vector<double> v(a.rows, 0.0);
  for (std::size_t k = a.col_ptr[doc]; k < a.col_ptr[doc + 1]; ++k) {
    v[a.row_idx[k]] = a.values[k];
  }
  return v;
}

}  // namespace apr::ekdb
