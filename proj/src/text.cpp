#include "apr/text.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "apr/errors.hpp"

namespace apr {

namespace {

bool is_word_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

char ascii_lower(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

template <typename Keep>
std::vector<std::string> split_words(std::string_view text, Keep keep) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty() && keep(current)) {
      tokens.push_back(std::move(current));
    }
    current.clear();
  };
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_word_byte(c)) {
      current.push_back(ascii_lower(c));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

}  // namespace

StopList::StopList() : words_(std::make_shared<const std::unordered_set<std::string>>()) {}

StopList::StopList(std::unordered_set<std::string> words)
    : words_(std::make_shared<const std::unordered_set<std::string>>(std::move(words))) {}

StopList StopList::load(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    for (auto& token : tokenize(line)) {
      words.insert(std::move(token));
    }
  }
  return StopList(std::move(words));
}

bool StopList::contains(std::string_view word) const {
  return words_->find(std::string(word)) != words_->end();
}

std::vector<std::string> StopList::sorted_words() const {
  std::vector<std::string> out(words_->begin(), words_->end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> tokenize(std::string_view text, const StopList& stop_words) {
  return split_words(text, [&](const std::string& w) { return !stop_words.contains(w); });
}

std::vector<std::string> tokenize(std::string_view text) {
  return split_words(text, [](const std::string&) { return true; });
}

std::size_t word_count(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (char ch : text) {
    const bool space = is_space(static_cast<unsigned char>(ch));
    if (!space && !in_word) {
      ++count;
    }
    in_word = !space;
  }
  return count;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::io, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::io, "cannot write " + path.string());
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw Error(ErrorKind::io, "write failed for " + path.string());
  }
}

}  // namespace apr
