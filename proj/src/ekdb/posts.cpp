#include "apr/ekdb/posts.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "apr/errors.hpp"
#include "apr/text.hpp"

namespace apr::ekdb {

using nlohmann::json;

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp <= 0x10FFFF) {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

const std::map<std::string_view, std::uint32_t>& named_entities() {
  static const std::map<std::string_view, std::uint32_t> table = {
      {"amp", '&'},     {"lt", '<'},       {"gt", '>'},       {"quot", '"'},     {"apos", '\''},
      {"nbsp", 0xA0},   {"ndash", 0x2013}, {"mdash", 0x2014}, {"hellip", 0x2026}, {"lsquo", 0x2018},
      {"rsquo", 0x2019}, {"ldquo", 0x201C}, {"rdquo", 0x201D}, {"copy", 0xA9},    {"reg", 0xAE},
      {"trade", 0x2122}, {"bull", 0x2022}, {"middot", 0xB7},  {"times", 0xD7},   {"rarr", 0x2192},
  };
  return table;
}

std::optional<std::int64_t> to_int(std::string_view s) {
  std::int64_t v = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || s.empty()) {
    return std::nullopt;
  }
  return v;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    if (is_space(c)) {
      pending = !out.empty();
    } else {
      if (pending) {
        out.push_back(' ');
        pending = false;
      }
      out.push_back(c);
    }
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') {
      c = static_cast<char>(c - 'A' + 'a');
    }
  }
  return out;
}

bool block_tag(std::string_view name) {
  static const std::unordered_set<std::string_view> blocks = {
      "p", "br", "li", "ul", "ol", "div", "pre", "blockquote", "h1", "h2", "h3", "h4", "h5", "h6",
      "hr", "tr", "td", "th", "table", "dd", "dt", "dl"};
  return blocks.count(name) > 0;
}

// Raw attribute bag for one dump row, before relevance filtering.
struct RawRow {
  std::int64_t id = 0;
  int post_type = 0;
  std::int64_t parent_id = 0;
  std::int64_t score = 0;
  std::string title;
  std::string body_html;
  std::string tags;
};

using Attributes = std::unordered_map<std::string, std::string>;

std::optional<RawRow> row_from_attributes(const Attributes& attrs) {
  auto get = [&](const char* key) -> const std::string* {
    const auto it = attrs.find(key);
    return it == attrs.end() ? nullptr : &it->second;
  };
  RawRow row;
  const auto* id = get("Id");
  const auto* type = get("PostTypeId");
  if (id == nullptr || type == nullptr) {
    return std::nullopt;
  }
  const auto id_value = to_int(*id);
  const auto type_value = to_int(*type);
  if (!id_value || !type_value) {
    return std::nullopt;
  }
  row.id = *id_value;
  row.post_type = static_cast<int>(*type_value);
  if (const auto* p = get("ParentId")) {
    const auto v = to_int(*p);
    if (!v) {
      return std::nullopt;
    }
    row.parent_id = *v;
  }
  if (const auto* s = get("Score")) {
    const auto v = to_int(*s);
    if (!v) {
      return std::nullopt;
    }
    row.score = *v;
  }
  if (const auto* t = get("Title")) {
    row.title = *t;
  }
  if (const auto* b = get("Body")) {
    row.body_html = *b;
  }
  if (const auto* t = get("Tags")) {
    row.tags = *t;
  }
  if (row.post_type == 2 && row.parent_id == 0) {
    return std::nullopt;
  }
  return row;
}

// Parses the attributes of one `<row ... />` element starting after "<row".
// Returns nullopt if the element is not well formed.
std::optional<Attributes> parse_row_attributes(std::string_view s, std::size_t& pos) {
  Attributes attrs;
  while (pos < s.size()) {
    while (pos < s.size() && is_space(s[pos])) {
      ++pos;
    }
    if (pos >= s.size()) {
      return std::nullopt;
    }
    if (s.compare(pos, 2, "/>") == 0) {
      pos += 2;
      return attrs;
    }
    if (s[pos] == '>') {
      ++pos;
      const auto close = s.find("</row>", pos);
      if (close == std::string_view::npos) {
        return std::nullopt;
      }
      pos = close + 6;
      return attrs;
    }
    const auto name_start = pos;
    while (pos < s.size() && s[pos] != '=' && !is_space(s[pos]) && s[pos] != '>' && s[pos] != '/') {
      ++pos;
    }
    const std::string name(s.substr(name_start, pos - name_start));
    while (pos < s.size() && is_space(s[pos])) {
      ++pos;
    }
    if (name.empty() || pos >= s.size() || s[pos] != '=') {
      return std::nullopt;
    }
    ++pos;
    while (pos < s.size() && is_space(s[pos])) {
      ++pos;
    }
    if (pos >= s.size() || (s[pos] != '"' && s[pos] != '\'')) {
      return std::nullopt;
    }
    const char quote = s[pos++];
    const auto end = s.find(quote, pos);
    if (end == std::string_view::npos) {
      return std::nullopt;
    }
    const auto raw = s.substr(pos, end - pos);
    if (raw.find('<') != std::string_view::npos) {
      return std::nullopt;
    }
    attrs[name] = decode_entities(raw);
    pos = end + 1;
  }
  return std::nullopt;
}

void parse_xml_rows(std::string_view dump, std::vector<RawRow>& rows, Corpus& corpus) {
  std::size_t pos = 0;
  while (true) {
    const auto start = dump.find("<row", pos);
    if (start == std::string_view::npos) {
      break;
    }
    pos = start + 4;
    if (pos < dump.size() && !is_space(dump[pos]) && dump[pos] != '/' && dump[pos] != '>') {
      continue;  // e.g. <rows>
    }
    ++corpus.rows_read;
    auto attrs = parse_row_attributes(dump, pos);
    if (!attrs) {
      ++corpus.malformed_rows;
      // resynchronise on the next row
      const auto next = dump.find("<row", start + 4);
      pos = next == std::string_view::npos ? dump.size() : next;
      continue;
    }
    auto row = row_from_attributes(*attrs);
    if (!row) {
      ++corpus.malformed_rows;
      continue;
    }
    rows.push_back(std::move(*row));
  }
}

void parse_json_lines(std::string_view dump, std::vector<RawRow>& rows, Corpus& corpus) {
  std::size_t pos = 0;
  while (pos < dump.size()) {
    auto end = dump.find('\n', pos);
    if (end == std::string_view::npos) {
      end = dump.size();
    }
    const auto line = dump.substr(pos, end - pos);
    pos = end + 1;
    if (std::all_of(line.begin(), line.end(), is_space)) {
      continue;
    }
    ++corpus.rows_read;
    const auto j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      ++corpus.malformed_rows;
      continue;
    }
    Attributes attrs;
    bool ok = true;
    for (const auto& [key, value] : j.items()) {
      if (value.is_string()) {
        attrs[key] = value.get<std::string>();
      } else if (value.is_number_integer()) {
        attrs[key] = std::to_string(value.get<std::int64_t>());
      } else if (!value.is_null()) {
        ok = false;
      }
    }
    auto row = ok ? row_from_attributes(attrs) : std::nullopt;
    if (!row) {
      ++corpus.malformed_rows;
      continue;
    }
    rows.push_back(std::move(*row));
  }
}

}  // namespace

std::vector<std::string> parse_tags(std::string_view encoded) {
  std::vector<std::string> tags;
  std::size_t pos = 0;
  while (pos < encoded.size()) {
    const auto open = encoded.find('<', pos);
    if (open == std::string_view::npos) {
      break;
    }
    const auto close = encoded.find('>', open + 1);
    if (close == std::string_view::npos) {
      break;
    }
    auto tag = lower(encoded.substr(open + 1, close - open - 1));
    if (!tag.empty()) {
      tags.push_back(std::move(tag));
    }
    pos = close + 1;
  }
  // "|mvc|web|" is the newer dump encoding
  if (tags.empty() && encoded.find('|') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= encoded.size()) {
      auto bar = encoded.find('|', start);
      if (bar == std::string_view::npos) {
        bar = encoded.size();
      }
      auto tag = lower(encoded.substr(start, bar - start));
      if (!tag.empty()) {
        tags.push_back(std::move(tag));
      }
      start = bar + 1;
    }
  }
  std::sort(tags.begin(), tags.end());
  tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
  return tags;
}

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out.push_back(text[i++]);
      continue;
    }
    const auto semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(text[i++]);
      continue;
    }
    const auto name = text.substr(i + 1, semi - i - 1);
    std::optional<std::uint32_t> cp;
    if (!name.empty() && name[0] == '#') {
      std::uint32_t v = 0;
      const bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
      const auto digits = name.substr(hex ? 2 : 1);
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v, hex ? 16 : 10);
      if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty()) {
        cp = v;
      }
    } else if (const auto it = named_entities().find(name); it != named_entities().end()) {
      cp = it->second;
    }
    if (!cp) {
      out.push_back(text[i++]);
      continue;
    }
    append_utf8(out, *cp);
    i = semi + 1;
  }
  return out;
}

std::string strip_html(std::string_view html) {
  std::string text;
  text.reserve(html.size());
  std::size_t i = 0;
  int code_depth = 0;
  while (i < html.size()) {
    if (html[i] != '<') {
      if (code_depth == 0) {
        text.push_back(html[i]);
      }
      ++i;
      continue;
    }
    const auto close = html.find('>', i + 1);
    if (close == std::string_view::npos) {
      if (code_depth == 0) {
        text.append(html.substr(i));
      }
      break;
    }
    auto inner = html.substr(i + 1, close - i - 1);
    const bool closing = !inner.empty() && inner[0] == '/';
    if (closing) {
      inner.remove_prefix(1);
    }
    std::size_t name_end = 0;
    while (name_end < inner.size() && !is_space(inner[name_end]) && inner[name_end] != '/') {
      ++name_end;
    }
    const auto name = lower(inner.substr(0, name_end));
    if (name == "code") {
      code_depth = closing ? std::max(0, code_depth - 1) : code_depth + 1;
      text.push_back(' ');
    } else if (code_depth == 0 && block_tag(name)) {
      text.push_back(' ');
    }
    i = close + 1;
  }
  return collapse_whitespace(decode_entities(text));
}

Corpus parse_dump(std::string_view dump, const TagFilter& tag_filter) {
  Corpus corpus;
  std::vector<RawRow> rows;
  const auto first = std::find_if_not(dump.begin(), dump.end(), is_space);
  if (first != dump.end() && *first == '{') {
    parse_json_lines(dump, rows, corpus);
  } else {
    parse_xml_rows(dump, rows, corpus);
  }

  std::unordered_set<std::int64_t> seen;
  std::unordered_map<std::int64_t, std::vector<std::string>> relevant_questions;
  std::vector<const RawRow*> unique_rows;
  for (const auto& row : rows) {
    if (!seen.insert(row.id).second) {
      ++corpus.malformed_rows;
      continue;
    }
    unique_rows.push_back(&row);
    if (row.post_type != 1) {
      continue;
    }
    auto tags = parse_tags(row.tags);
    const bool relevant = std::any_of(tags.begin(), tags.end(), [&](const std::string& t) { return tag_filter.count(t) > 0; });
    if (relevant) {
      relevant_questions.emplace(row.id, std::move(tags));
    }
  }

  for (const RawRow* row : unique_rows) {
    std::int64_t question_id = 0;
    if (row->post_type == 1) {
      question_id = row->id;
    } else if (row->post_type == 2) {
      question_id = row->parent_id;
    } else {
      continue;
    }
    const auto q = relevant_questions.find(question_id);
    if (q == relevant_questions.end()) {
      continue;
    }
    Post post;
    post.id = row->id;
    post.kind = row->post_type == 1 ? PostKind::question : PostKind::answer;
    post.parent_id = row->post_type == 2 ? row->parent_id : 0;
    post.title = row->post_type == 1 ? collapse_whitespace(row->title) : std::string{};
    post.body = strip_html(row->body_html);
    post.tags = q->second;
    post.score = row->score;
    corpus.posts.push_back(std::move(post));
  }
  return corpus;
}

Corpus ingest_posts(const std::filesystem::path& dump, const TagFilter& tag_filter) {
  if (tag_filter.empty()) {
    throw Error(ErrorKind::validation, "tag filter must not be empty");
  }
  TagFilter normalized;
  for (const auto& t : tag_filter) {
    normalized.insert(lower(t));
  }
  return parse_dump(read_text_file(dump), normalized);
}

std::string post_to_json_line(const Post& post) {
  json j{{"id", post.id},
         {"kind", post.kind == PostKind::question ? "question" : "answer"},
         {"parent_id", post.parent_id},
         {"score", post.score},
         {"tags", post.tags},
         {"title", post.title},
         {"body", post.body}};
  return j.dump();
}

Post post_from_json_line(std::string_view line) {
  const auto j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorKind::format, "malformed post record");
  }
  try {
    Post p;
    p.id = j.at("id").get<std::int64_t>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind != "question" && kind != "answer") {
      throw Error(ErrorKind::format, "unknown post kind \"" + kind + "\"");
    }
    p.kind = kind == "question" ? PostKind::question : PostKind::answer;
    p.parent_id = j.value("parent_id", std::int64_t{0});
    p.score = j.value("score", std::int64_t{0});
    p.tags = j.value("tags", std::vector<std::string>{});
    p.title = j.value("title", std::string{});
    p.body = j.value("body", std::string{});
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::format, std::string("malformed post record: ") + e.what());
  }
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorKind::io, "cannot create " + dir.string() + ": " + ec.message());
  }
  std::string lines;
  for (const auto& p : corpus.posts) {
    lines += post_to_json_line(p);
    lines += '\n';
  }
  write_text_file(dir / "posts.jsonl", lines);
  const json manifest{{"format", "apr-corpus"},
                      {"version", 1},
                      {"posts", corpus.posts.size()},
                      {"rows_read", corpus.rows_read},
                      {"malformed_rows", corpus.malformed_rows}};
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

Corpus load_corpus(const std::filesystem::path& dir) {
  Corpus corpus;
  const auto manifest = json::parse(read_text_file(dir / "manifest.json"), nullptr, false);
  if (manifest.is_discarded() || manifest.value("format", "") != "apr-corpus") {
    throw Error(ErrorKind::format, dir.string() + " is not a corpus directory");
  }
  if (manifest.value("version", 0) != 1) {
    throw Error(ErrorKind::format, "unsupported corpus version");
  }
  corpus.rows_read = manifest.value("rows_read", std::size_t{0});
  corpus.malformed_rows = manifest.value("malformed_rows", std::size_t{0});
  std::istringstream in(read_text_file(dir / "posts.jsonl"));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) {
      corpus.posts.push_back(post_from_json_line(line));
    }
  }
  return corpus;
}

}  // namespace apr::ekdb
