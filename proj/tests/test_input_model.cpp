#include <doctest.h>

#include <algorithm>

#include "apr/errors.hpp"
#include "apr/input_model.hpp"
#include "apr/service/json_io.hpp"
#include "support.hpp"

using namespace apr;

namespace {

const Taxonomy& taxonomy() {
  static const Taxonomy t = Taxonomy::load(test::data_dir() / "taxonomy.json");
  return t;
}

const ConflictMatrix& matrix() {
  static const ConflictMatrix m = ConflictMatrix::load(test::data_dir() / "nfr_conflicts.json");
  return m;
}

std::string words(std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += (i ? " w" : "w") + std::to_string(i);
  return s;
}

RequirementsSpec minimal_spec() {
  RequirementsSpec s;
  s.short_description = "A small tool";
  s.detailed_description = "It does a thing.";
  s.software_type = "data-dominant/web-application";
  UseCase uc;
  uc.id = "UC1";
  uc.objective = "do the thing";
  s.use_cases.push_back(uc);
  return s;
}

bool has_field(const std::vector<FieldError>& errs, const std::string& field) {
  return std::any_of(errs.begin(), errs.end(), [&](const FieldError& e) { return e.field == field; });
}

std::vector<NfrItem> items(std::initializer_list<const char*> names) {
  std::vector<NfrItem> out;
  for (const char* n : names) out.push_back({n, std::nullopt, ""});
  return out;
}

}  // namespace

TEST_SUITE("input_model") {

TEST_CASE("limits at the boundary are accepted") {
  auto s = minimal_spec();
  s.short_description = words(25);
  s.detailed_description = words(500);
  s.use_cases.resize(20);
  for (std::size_t i = 0; i < 20; ++i) {
    s.use_cases[i].id = "UC" + std::to_string(i);
    s.use_cases[i].objective = "objective";
  }
  s.use_cases[0].importance_score = 0.0;
  s.use_cases[1].importance_score = 1.0;
  CHECK(check_spec(s, taxonomy()).empty());
}

TEST_CASE("limits one past the boundary are rejected with located errors") {
  auto s = minimal_spec();
  s.short_description = words(26);
  auto errs = check_spec(s, taxonomy());
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].field == "short_description");
  CHECK(errs[0].message == "short_description exceeds 25 words");

  s = minimal_spec();
  s.detailed_description = words(501);
  errs = check_spec(s, taxonomy());
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].field == "detailed_description");

  s = minimal_spec();
  s.use_cases.clear();
  CHECK(has_field(check_spec(s, taxonomy()), "use_cases"));

  s = minimal_spec();
  s.use_cases.resize(21);
  for (std::size_t i = 0; i < 21; ++i) {
    s.use_cases[i].id = "UC" + std::to_string(i);
    s.use_cases[i].objective = "o";
  }
  CHECK(has_field(check_spec(s, taxonomy()), "use_cases"));

  for (double bad : {1.2, -0.01}) {
    s = minimal_spec();
    s.use_cases[0].importance_score = bad;
    CHECK(has_field(check_spec(s, taxonomy()), "use_cases[0].importance_score"));
  }
}

TEST_CASE("errors are collected, not fail-fast") {
  auto s = minimal_spec();
  s.short_description = words(30);
  s.detailed_description = words(600);
  s.use_cases[0].importance_score = 3.0;
  s.software_type = "nowhere";
  const auto errs = check_spec(s, taxonomy());
  CHECK(errs.size() == 4);
  try {
    validate_spec(s, taxonomy());
    FAIL("expected validation error");
  } catch (const ValidationError& e) {
    CHECK(e.errors() == errs);
  }
}

TEST_CASE("duplicate ids and empty objectives are rejected") {
  auto s = minimal_spec();
  s.use_cases.push_back(s.use_cases[0]);
  CHECK(has_field(check_spec(s, taxonomy()), "use_cases[1].id"));
  s = minimal_spec();
  s.use_cases[0].objective.clear();
  CHECK(has_field(check_spec(s, taxonomy()), "use_cases[0].objective"));
}

TEST_CASE("importance defaults to one and validation is idempotent") {
  auto s = minimal_spec();
  CHECK_FALSE(s.use_cases[0].importance_score.has_value());
  const auto v = validate_spec(s, taxonomy());
  REQUIRE(v.use_cases[0].importance_score.has_value());
  CHECK(*v.use_cases[0].importance_score == 1.0);
  CHECK(check_spec(v, taxonomy()).empty());
  CHECK(validate_spec(v, taxonomy()) == v);
}

TEST_CASE("bundled fixture specs validate") {
  for (const auto& entry : std::filesystem::directory_iterator(test::fixture("specs"))) {
    CAPTURE(entry.path());
    const auto spec = service::load_spec(entry.path());
    CHECK(check_spec(spec, taxonomy()).empty());
  }
}

TEST_CASE("taxonomy resolution") {
  CHECK(taxonomy().resolve("data-dominant/web-application").label == "Web Based Application");
  CHECK(taxonomy().resolve("/").path == "/");
  CHECK(taxonomy().resolve(Taxonomy::kRootPath).children.size() == 4);
  for (const char* bad : {"", "web-application", "data-dominant/nope", "data-dominant/"}) {
    try {
      taxonomy().resolve(bad);
      FAIL("expected taxonomy error for " << bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::taxonomy);
    }
  }
  std::set<std::string> paths;
  for (const auto& n : taxonomy().nodes()) CHECK(paths.insert(n.path).second);
  CHECK(taxonomy().leaves().size() >= 10);
}

TEST_CASE("malformed taxonomy documents") {
  CHECK_THROWS_AS(Taxonomy::parse("[]"), Error);
  CHECK_THROWS_AS(Taxonomy::parse(R"({"children":[{"label":"no id"}]})"), Error);
  CHECK_THROWS_AS(Taxonomy::parse(R"({"children":[{"id":"a"},{"id":"a"}]})"), Error);
}

TEST_CASE("conflict checking against the bundled matrix") {
  CHECK(check_nfr_conflicts(items({"performance", "security"}), matrix()) ==
        std::vector<NfrPair>{{"performance", "security"}});
  CHECK(check_nfr_conflicts({}, matrix()).empty());
  CHECK(check_nfr_conflicts(items({"performance"}), matrix()).empty());
  CHECK(check_nfr_conflicts(items({"reliability", "maintainability"}), matrix()).empty());
  CHECK(check_nfr_conflicts(items({"performance", "security", "usability"}), matrix()).size() == 3);
  try {
    check_nfr_conflicts(items({"speediness"}), matrix());
    FAIL("expected vocabulary error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::vocabulary);
  }
}

TEST_CASE("matrix is symmetric and irreflexive") {
  for (const auto& a : matrix().labels()) {
    CHECK_FALSE(matrix().conflicts(a, a));
    for (const auto& b : matrix().labels()) CHECK(matrix().conflicts(a, b) == matrix().conflicts(b, a));
  }
  CHECK_THROWS_AS(ConflictMatrix({"a"}, {{"a", "a"}}), Error);
  CHECK_THROWS_AS(ConflictMatrix({"a"}, {{"a", "b"}}), Error);
}

TEST_CASE("resolution removes the lower-priority member") {
  const auto nfrs = items({"performance", "security", "reliability"});
  const auto conflicts = check_nfr_conflicts(nfrs, matrix());
  const auto kept = resolve_nfr_conflicts(nfrs, conflicts, {{"performance", 1}, {"security", 2}});
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].name == "performance");
  CHECK(kept[1].name == "reliability");
  CHECK(check_nfr_conflicts(kept, matrix()).empty());
  CHECK(resolve_nfr_conflicts(items({"reliability"}), {}, {}) == items({"reliability"}));
}

TEST_CASE("three mutually conflicting NFRs leave only the top priority") {
  const auto nfrs = items({"performance", "security", "usability"});
  const auto conflicts = check_nfr_conflicts(nfrs, matrix());
  std::vector<int> p{1, 2, 3};
  do {
    const std::map<std::string, int> pri{{"performance", p[0]}, {"security", p[1]}, {"usability", p[2]}};
    const auto kept = resolve_nfr_conflicts(nfrs, conflicts, pri);
    REQUIRE(kept.size() == 1);
    const auto best = std::min_element(pri.begin(), pri.end(), [](auto& a, auto& b) { return a.second < b.second; });
    CHECK(kept[0].name == best->first);
    CHECK(check_nfr_conflicts(kept, matrix()).empty());
  } while (std::next_permutation(p.begin(), p.end()));
}

TEST_CASE("missing or tied priorities need resolution") {
  const auto nfrs = items({"performance", "security"});
  const auto conflicts = check_nfr_conflicts(nfrs, matrix());
  try {
    resolve_nfr_conflicts(nfrs, conflicts, {{"performance", 1}});
    FAIL("expected resolution error");
  } catch (const ResolutionRequiredError& e) {
    CHECK(e.kind() == ErrorKind::resolution_required);
    CHECK(e.pairs() == conflicts);
  }
  CHECK_THROWS_AS(resolve_nfr_conflicts(nfrs, conflicts, {{"performance", 1}, {"security", 1}}), ValidationError);
}

TEST_CASE("priorities carried on items") {
  std::vector<NfrItem> nfrs{{"performance", 2, ""}, {"security", 1, "encrypt data"}};
  CHECK(item_priorities(nfrs) == std::map<std::string, int>{{"performance", 2}, {"security", 1}});
  CHECK(nfrs[1].text() == "security encrypt data");
  CHECK(nfrs[0].text() == "performance");
}

}
