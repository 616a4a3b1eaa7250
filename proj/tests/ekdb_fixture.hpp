#pragma once

// Builds the sentiment knowledge base from the bundled forum dump once per process.

#include <memory>

#include "apr/ekdb/lsi_index.hpp"
#include "apr/ekdb/posts.hpp"
#include "apr/service/config.hpp"
#include "support.hpp"

namespace apr::test {

inline std::shared_ptr<const ekdb::LsiIndex> ekdb_index() {
  static const auto index = [] {
    const service::PipelineConfig config;
    auto corpus = ekdb::ingest_posts(fixture("dumps/ekdb_posts.xml"), config.tag_filter);
    return std::make_shared<const ekdb::LsiIndex>(ekdb::LsiIndex::build(
        std::move(corpus.posts), StopList::load(data_dir() / "stopwords.txt"), config.indexing()));
  }();
  return index;
}

inline const service::KnowledgeBase& knowledge_base() {
  static const service::KnowledgeBase kb = [] {
    auto k = service::KnowledgeBase::load(service::DataPaths::under(data_dir()));
    k.index = ekdb_index();
    return k;
  }();
  return kb;
}

}  // namespace apr::test
