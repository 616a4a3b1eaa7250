#pragma once

// Stack Exchange dump ingestion for the experiential knowledge base.

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace apr::ekdb {

enum class PostKind { question, answer };

struct Post {
  std::int64_t id = 0;
  std::string title;             // empty for answers
  std::string body;              // plain text, markup stripped
  std::vector<std::string> tags; // sorted, lowercase, unique
  std::int64_t score = 0;
  PostKind kind = PostKind::question;
  std::int64_t parent_id = 0;    // answers only

  bool operator==(const Post&) const = default;
};

using TagFilter = std::set<std::string>;

struct Corpus {
  std::vector<Post> posts;
  std::size_t rows_read = 0;
  std::size_t malformed_rows = 0;
};

/// "<mvc><web>" -> {mvc, web}; lowercased, sorted, deduplicated.
std::vector<std::string> parse_tags(std::string_view encoded);

/// Decodes XML/HTML character references and the common named entities.
std::string decode_entities(std::string_view text);

/// Removes tags, drops the contents of <code> elements, decodes entities and
/// collapses whitespace.
std::string strip_html(std::string_view html);

/// Parses a dump held in memory. Accepts the Posts.xml row format or
/// line-delimited JSON records with the same attribute names. Malformed rows
/// are skipped and counted.
Corpus parse_dump(std::string_view dump, const TagFilter& tag_filter);

/// Questions whose tags intersect `tag_filter`, plus their answers (which
/// inherit the question's tags), in dump order. Throws on an empty filter or
/// an unreadable file.
Corpus ingest_posts(const std::filesystem::path& dump, const TagFilter& tag_filter);

std::string post_to_json_line(const Post& post);
Post post_from_json_line(std::string_view line);

/// Corpus directory: posts.jsonl + manifest.json.
void save_corpus(const Corpus& corpus, const std::filesystem::path& dir);
Corpus load_corpus(const std::filesystem::path& dir);

}  // namespace apr::ekdb
