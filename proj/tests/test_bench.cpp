#include <doctest.h>

#include "ibac/bench.hpp"
#include "ibac/dominance.hpp"

using namespace ibac;

TEST_CASE("reference pairs are ten-label tokens") {
  for (const auto& p : reference_pairs()) {
    CHECK(p.subject_bits.size() == 10);
    CHECK(p.object_bits.size() == 10);
    CHECK(p.subject_primes.size() == 10);
  }
}

TEST_CASE("benchmark verdicts match the oracle and zero counts are skipped") {
  BenchConfig config;
  config.counts = {0, 10, 100};
  config.repetitions = 3;
  config.warmup = 10;
  const auto report = bench_dominance(config);
  REQUIRE(report.tables.size() == 2);
  CHECK(report.tables[0].pair == "dense");
  CHECK_FALSE(report.tables[0].and_holds);
  CHECK_FALSE(report.tables[0].modulo_holds);
  CHECK(report.tables[1].and_holds);
  CHECK(report.tables[1].modulo_holds);
  for (const auto& t : report.tables) {
    CHECK(t.and_holds == t.oracle_holds);
    CHECK(t.modulo_holds == t.oracle_holds);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].reads == 10);
    for (const auto& r : t.rows) {
      CHECK(r.and_seconds >= 0.0);
      CHECK(r.modulo_seconds >= 0.0);
    }
  }
}

TEST_CASE("both encodings of each reference pair give the same verdict") {
  BenchConfig config;
  config.counts = {1};
  config.warmup = 0;
  for (const auto& t : bench_dominance(config).tables) CHECK(t.and_holds == t.modulo_holds);
}
