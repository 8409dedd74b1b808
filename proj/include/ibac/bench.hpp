#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ibac/bigint.hpp"

namespace ibac {

/// One fixed (subject, object) pair in both encodings.
struct BenchPair {
  std::string name;
  std::string subject_bits;  // most significant first
  std::string object_bits;
  std::vector<std::uint64_t> subject_primes;
  std::vector<std::uint64_t> object_primes;
};

/// Dense (non-dominating) and sparse (dominating) pairs over ten labels.
std::vector<BenchPair> reference_pairs();

struct BenchConfig {
  std::vector<std::size_t> counts{1'000, 10'000, 100'000, 1'000'000};
  unsigned repetitions = 5;
  std::size_t warmup = 1'000;
  std::vector<BenchPair> pairs = reference_pairs();
};

struct BenchRow {
  std::size_t reads = 0;
  double and_seconds = 0.0;      // median over repetitions
  double modulo_seconds = 0.0;   // median over repetitions
  double ratio_percent = 0.0;    // modulo as % of AND
};

struct BenchTable {
  std::string pair;
  bool and_holds = false;
  bool modulo_holds = false;
  bool oracle_holds = false;
  std::vector<BenchRow> rows;
};

struct BenchReport {
  std::vector<BenchTable> tables;
};

/// Verifies every pair's verdicts against a set-inclusion oracle, then times
/// N evaluations of bit-AND and prime-modulo dominance per count.
/// Single-threaded; steady clock; warm-up excluded.
BenchReport bench_dominance(const BenchConfig& config);

}  // namespace ibac
