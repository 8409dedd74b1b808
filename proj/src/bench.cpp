#include "ibac/bench.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>

#include "ibac/dominance.hpp"

namespace ibac {

std::vector<BenchPair> reference_pairs() {
  const std::vector<std::uint64_t> user{2, 5, 7, 11, 13, 17, 19, 23, 31, 61};
  return {
      {"dense", "1011111111", "1110111111", user, {2, 3, 5, 13, 17, 19, 23, 31, 37, 61}},
      {"sparse", "1011111111", "1000000001", user, {2, 61}},
  };
}

namespace {

// Keeps the optimizer from hoisting the loop body.
template <typename T>
inline void escape(T* p) {
  asm volatile("" : : "g"(p) : "memory");
}

template <typename Predicate>
double time_reads(std::size_t reads, const BigInt& subject, const BigInt& object, Predicate predicate) {
  std::size_t hits = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < reads; ++i) {
    const BigInt* s = &subject;
    const BigInt* o = &object;
    escape(s);
    escape(o);
    hits += predicate(*s, *o) ? 1 : 0;
  }
  const auto stop = std::chrono::steady_clock::now();
  escape(&hits);
  return std::chrono::duration<double>(stop - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::set<std::size_t> set_bits(const std::string& bits) {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[bits.size() - 1 - i] == '1') out.insert(i);
  }
  return out;
}

BigInt product(const std::vector<std::uint64_t>& primes) {
  BigInt p = 1;
  for (auto q : primes) p *= q;
  return p;
}

}  // namespace

BenchReport bench_dominance(const BenchConfig& config) {
  BenchReport report;
  const unsigned reps = std::max(1u, config.repetitions);
  for (const auto& pair : config.pairs) {
    const BigInt subject_bits = parse_binary(pair.subject_bits);
    const BigInt object_bits = parse_binary(pair.object_bits);
    const BigInt subject_primes = product(pair.subject_primes);
    const BigInt object_primes = product(pair.object_primes);

    BenchTable table;
    table.pair = pair.name;
    table.and_holds = bits_dominate(subject_bits, object_bits);
    table.modulo_holds = modulo_dominates(subject_primes, object_primes);

    const auto sb = set_bits(pair.subject_bits);
    const auto ob = set_bits(pair.object_bits);
    const std::set<std::uint64_t> sp(pair.subject_primes.begin(), pair.subject_primes.end());
    const std::set<std::uint64_t> op(pair.object_primes.begin(), pair.object_primes.end());
    const bool bits_oracle = std::includes(sb.begin(), sb.end(), ob.begin(), ob.end());
    const bool primes_oracle = std::includes(sp.begin(), sp.end(), op.begin(), op.end());
    if (table.and_holds != bits_oracle || table.modulo_holds != primes_oracle) {
      throw std::logic_error("benchmark pair " + pair.name + ": verdict disagrees with the set oracle");
    }
    table.oracle_holds = bits_oracle;

    time_reads(config.warmup, subject_bits, object_bits, bits_dominate);
    time_reads(config.warmup, subject_primes, object_primes, modulo_dominates);

    for (auto reads : config.counts) {
      if (reads == 0) continue;
      std::vector<double> and_times, mod_times;
      for (unsigned r = 0; r < reps; ++r) {
        and_times.push_back(time_reads(reads, subject_bits, object_bits, bits_dominate));
        mod_times.push_back(time_reads(reads, subject_primes, object_primes, modulo_dominates));
      }
      BenchRow row;
      row.reads = reads;
      row.and_seconds = median(and_times);
      row.modulo_seconds = median(mod_times);
      row.ratio_percent = row.and_seconds > 0 ? 100.0 * row.modulo_seconds / row.and_seconds : 0.0;
      table.rows.push_back(row);
    }
    report.tables.push_back(std::move(table));
  }
  return report;
}

}  // namespace ibac
