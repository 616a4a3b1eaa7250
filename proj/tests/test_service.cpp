#include <doctest.h>

#include <thread>

#include "apr/errors.hpp"
#include "apr/service/config.hpp"
#include "apr/service/json_io.hpp"
#include "apr/service/pipeline.hpp"
#include "apr/service/project_store.hpp"
#include "ekdb_fixture.hpp"

using namespace apr;
using namespace apr::service;
using nlohmann::json;

namespace {

RequirementsSpec cms() { return load_spec(test::fixture("specs/cms_university.json")); }

}  // namespace

TEST_SUITE("service") {

TEST_CASE("bundled config equals the defaults") {
  const auto c = load_config(test::data_dir() / "config.json");
  CHECK(config_to_json(c) == config_to_json(PipelineConfig{}));
  CHECK(c.rank_k == 100);
  CHECK(c.max_results == 50);
  CHECK(c.min_similarity == 0.2);
  CHECK(c.tag_filter.size() == 8);
}

TEST_CASE("config rejects unknown keys and bad values") {
  try {
    config_from_json(json{{"alpah", 0.5}});
    FAIL("expected config error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
  }
  CHECK_THROWS_AS(config_from_json(json{{"alpha", 2.0}}).validate(), ValidationError);
  CHECK_THROWS_AS(config_from_json(json{{"top_n", 4}}).validate(), ValidationError);
  CHECK(config_from_json(json{{"include_flow_term", true}}).include_flow_term);
}

TEST_CASE("spec documents round-trip and reject unknown keys") {
  const auto spec = cms();
  CHECK(spec_from_json(spec_to_json(spec)) == spec);
  CHECK(spec.use_cases.size() == 4);
  auto j = spec_to_json(spec);
  j["use_cases"][0]["importance"] = 0.3;
  CHECK_THROWS_AS(spec_from_json(j), Error);
  j = spec_to_json(spec);
  j["extra"] = 1;
  CHECK_THROWS_AS(spec_from_json(j), Error);
  CHECK_THROWS_AS(parse_spec("{not json"), Error);
  const auto withnfr = parse_spec(R"({"short_description":"s","detailed_description":"d","software_type":"/",
      "use_cases":[{"id":"1","objective":"o"}],"nfrs":["security",{"name":"performance","priority":2}]})");
  REQUIRE(withnfr.nfrs.size() == 2);
  CHECK(withnfr.nfrs[1].priority == 2);
}

TEST_CASE("recommend on the CMS spec") {
  const auto set = recommend(cms(), test::knowledge_base(), PipelineConfig{});
  REQUIRE(set.recommendations.size() == 3);
  CHECK(set.recommendations[0].pattern_name == "MVC");
  CHECK(set.recommendations[0].sentiment_label == SentimentLabel::strongly_positive);
  CHECK(set.software_type_label == "Content Management System");
  CHECK(set.trace.size() == 8);
  for (std::size_t i = 1; i < 3; ++i) {
    CHECK(set.recommendations[i].rank == i + 1);
    CHECK(set.recommendations[i - 1].confidence >= set.recommendations[i].confidence);
  }
  for (const auto& r : set.recommendations)
    if (r.pattern_name == "PAC") CHECK(r.sentiment_label == SentimentLabel::neutral);
}

TEST_CASE("top_n limits the list") {
  PipelineConfig c;
  c.top_n = 1;
  CHECK(recommend(cms(), test::knowledge_base(), c).recommendations.size() == 1);
}

TEST_CASE("conflicting NFRs need priorities") {
  auto spec = cms();
  spec.nfrs = {{"performance", std::nullopt, ""}, {"security", std::nullopt, ""}};
  CHECK_THROWS_AS(recommend(spec, test::knowledge_base(), PipelineConfig{}), ResolutionRequiredError);
  const auto set = recommend(spec, test::knowledge_base(), PipelineConfig{}, {{"performance", 2}, {"security", 1}});
  CHECK(set.dropped_nfrs == std::vector<std::string>{"performance"});
  spec.nfrs[0].priority = 1;
  spec.nfrs[1].priority = 2;
  CHECK(recommend(spec, test::knowledge_base(), PipelineConfig{}).dropped_nfrs ==
        std::vector<std::string>{"security"});
}

TEST_CASE("missing knowledge is a config error") {
  KnowledgeBase kb = test::knowledge_base();
  kb.index.reset();
  try {
    recommend(cms(), kb, PipelineConfig{});
    FAIL("expected config error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
  }
}

TEST_CASE("evaluation arithmetic") {
  const auto set = recommend(cms(), test::knowledge_base(), PipelineConfig{});
  std::string absent;
  for (const auto& row : set.trace.rows) {
    bool ranked = false;
    for (const auto& r : set.recommendations) ranked |= r.pattern_name == row.pattern_name;
    if (!ranked) absent = row.pattern_name;
  }
  const std::vector<EvalCase> cases{{"a", "MVC", cms()},
                                    {"b", "MVC", cms()},
                                    {"c", set.recommendations[1].pattern_name, cms()},
                                    {"d", absent, cms()}};
  const auto report = evaluate(cases, test::knowledge_base(), PipelineConfig{});
  CHECK(report.valid_cases == 4);
  CHECK(report.rank_hits == std::array<std::size_t, 4>{2, 1, 0, 1});
  CHECK(report.top1_percent() == 50.0);
  CHECK(report.top3_percent() == 75.0);
  CHECK(report.positive_by_rank[0] == 4);
}

TEST_CASE("invalid cases are excluded with a warning") {
  auto bad = cms();
  bad.use_cases.clear();
  const std::vector<EvalCase> cases{{"good", "MVC", cms()}, {"bad", "MVC", bad}};
  const auto report = evaluate(cases, test::knowledge_base(), PipelineConfig{});
  CHECK(report.cases_total == 2);
  CHECK(report.valid_cases == 1);
  CHECK(report.warnings.size() == 1);
  CHECK(report.top1_percent() == 100.0);
  CHECK_THROWS_AS(evaluate({}, test::knowledge_base(), PipelineConfig{}), Error);
}

TEST_CASE("bundled eval cases load") {
  const auto cases = load_eval_cases(test::fixture("eval"));
  CHECK(cases.size() >= 10);
  for (const auto& c : cases) {
    CHECK_FALSE(c.name.empty());
    CHECK(get_pattern(test::knowledge_base().catalog, c.expected_pattern).has_value());
  }
}

TEST_CASE("report text has the analysis table shape") {
  const std::vector<EvalCase> cases{{"a", "MVC", cms()}};
  const auto text = format_report_text(evaluate(cases, test::knowledge_base(), PipelineConfig{}));
  CHECK(text.find("Expected Output") != std::string::npos);
  CHECK(text.find("Positive Sentiment") != std::string::npos);
  CHECK(text.find("1st rank") != std::string::npos);
  CHECK(text.find("top-1: 100.0%") != std::string::npos);
}

TEST_CASE("machine output is stable") {
  const auto a = dump_machine(recommendation_set_to_json(recommend(cms(), test::knowledge_base(), PipelineConfig{})));
  const auto b = dump_machine(recommendation_set_to_json(recommend(cms(), test::knowledge_base(), PipelineConfig{})));
  CHECK(a == b);
  CHECK(json::parse(a)["recommendations"][0]["pattern_name"] == "MVC");
}

TEST_CASE("project store persists and updates") {
  test::TempDir tmp;
  std::string id;
  {
    ProjectStore store(tmp.path());
    const auto rec = store.create(cms());
    id = rec.id;
    CHECK(id == "p-0001");
    CHECK(rec.last_recommendation.is_null());
    CHECK(store.create(cms()).id == "p-0002");
    store.set_recommendation(id, json{{"x", 1}});
  }
  ProjectStore reopened(tmp.path());
  const auto got = reopened.get(id);
  REQUIRE(got.has_value());
  CHECK(got->spec == cms());
  CHECK(got->last_recommendation == json{{"x", 1}});
  CHECK(reopened.create(cms()).id == "p-0003");
  CHECK_FALSE(reopened.get("p-9999").has_value());
  CHECK_FALSE(reopened.get("../etc/passwd").has_value());
  auto changed = cms();
  changed.short_description = "changed";
  CHECK(reopened.update_spec(id, changed).spec.short_description == "changed");
  CHECK_THROWS_AS(reopened.update_spec("p-9999", changed), Error);
}

TEST_CASE("concurrent writes to one project are serialized") {
  test::TempDir tmp;
  ProjectStore store(tmp.path());
  const auto id = store.create(cms()).id;
  std::vector<std::thread> pool;
  for (int t = 0; t < 8; ++t) {
    pool.emplace_back([&, t] {
      for (int i = 0; i < 20; ++i) store.set_recommendation(id, json{{"t", t}, {"i", i}});
    });
  }
  for (auto& th : pool) th.join();
  const auto got = store.get(id);
  REQUIRE(got.has_value());
  CHECK(got->last_recommendation["i"] == 19);
}

}
