#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace apr {

/// Immutable set of lowercase stop words shared by the entailment scorer and
/// the LSI index. Copies share the underlying set.
class StopList {
 public:
  StopList();
  explicit StopList(std::unordered_set<std::string> words);

  static StopList load(const std::filesystem::path& path);

  bool contains(std::string_view word) const;
  std::size_t size() const noexcept { return words_->size(); }
  bool empty() const noexcept { return words_->empty(); }

  /// Sorted copy, for persistence.
  std::vector<std::string> sorted_words() const;

 private:
  std::shared_ptr<const std::unordered_set<std::string>> words_;
};

/// Lowercases ASCII letters, splits on runs of non-alphanumeric characters and
/// drops stop words. Bytes >= 0x80 are treated as word characters so UTF-8
/// words stay intact.
std::vector<std::string> tokenize(std::string_view text, const StopList& stop_words);

/// Same split/lowercase rule with nothing dropped.
std::vector<std::string> tokenize(std::string_view text);

/// Number of whitespace-delimited tokens.
std::size_t word_count(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace apr
