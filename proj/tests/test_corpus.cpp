#include <doctest.h>

#include "corpus_oracle.hpp"

TEST_CASE("extractor agrees with every hand-written corpus label") {
  corpus::Corpus c = corpus::load(std::string(SLINK_TEST_DATA_DIR) + "/sql_corpus.json");
  CHECK(c.queries.size() >= 50);
  auto mismatches = corpus::run(c);
  for (const auto& m : mismatches)
    MESSAGE("corpus query ", m.id, ": ", m.detail);
  CHECK(mismatches.empty());
}
