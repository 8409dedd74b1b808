// Independent oracles and random generators shared by the unit and acceptance tests.
// Nothing here calls the library's own encoders or dominance tests.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ibac/bigint.hpp"
#include "ibac/schema.hpp"

namespace testsupport {

using Names = std::set<std::string>;

inline bool subset_of(const Names& small, const Names& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline Names names_of(const ibac::LabelSet& s) { return s.names(); }

// Sum of base^k by repeated multiplication of a plain accumulator, digit by digit.
inline ibac::BigInt expsum_value(const std::vector<unsigned>& exponents, unsigned base) {
  ibac::BigInt total = 0;
  for (auto k : exponents) {
    ibac::BigInt term = 1;
    for (unsigned i = 0; i < k; ++i) term *= base;
    total += term;
  }
  return total;
}

// Base-b digits, least significant first.
inline std::vector<unsigned> digits(ibac::BigInt x, unsigned base) {
  std::vector<unsigned> out;
  while (x > 0) {
    out.push_back(static_cast<unsigned>(x % base));
    x /= base;
  }
  return out;
}

// Exponents present in an exponent-sum value, highest first, by reading base-b digits.
inline std::vector<unsigned> digit_indices(const ibac::BigInt& x, unsigned base) {
  const auto d = digits(x, base);
  std::vector<unsigned> out;
  for (std::size_t i = d.size(); i-- > 0;) {
    for (unsigned r = 0; r < d[i]; ++r) out.push_back(static_cast<unsigned>(i));
  }
  return out;
}

// Trial-division factorisation with multiplicity.
inline std::vector<std::uint64_t> factor(ibac::BigInt x) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; x > 1; ++p) {
    while (x % p == 0) {
      out.push_back(p);
      x /= p;
    }
  }
  return out;
}

inline bool naive_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }
  template <typename T>
  void shuffle(std::vector<T>& v) { std::shuffle(v.begin(), v.end(), gen_); }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// A schema with one level and n-1 compartments; codes are shuffled so that
// universe order and code order disagree.
inline ibac::PolicySchema flat_schema(std::size_t n, unsigned base, Rng& rng, const std::string& id = "gen") {
  ibac::PolicySchema s;
  s.id = id;
  s.base = base;
  s.levels = {"L0"};
  for (std::size_t i = 1; i < n; ++i) s.compartments.push_back("c" + std::to_string(i));
  const auto universe = s.universe();

  std::vector<unsigned> slots(n);
  for (std::size_t i = 0; i < n; ++i) slots[i] = static_cast<unsigned>(i);
  rng.shuffle(slots);
  for (std::size_t i = 0; i < n; ++i) s.assignments.bit_positions[universe[i]] = slots[i];
  rng.shuffle(slots);
  for (std::size_t i = 0; i < n; ++i) s.assignments.exponents[universe[i]] = slots[i];

  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 3; primes.size() < n; p += 2) {
    if (naive_prime(p)) primes.push_back(p);
  }
  rng.shuffle(primes);
  for (std::size_t i = 0; i < n; ++i) s.assignments.primes[universe[i]] = primes[i];
  return s;
}

inline Names subset_from_mask(const std::vector<std::string>& universe, std::uint64_t mask) {
  Names out;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (mask >> i & 1u) out.insert(universe[i]);
  }
  return out;
}

inline Names random_subset(const std::vector<std::string>& universe, Rng& rng, double p = 0.5) {
  Names out;
  for (const auto& n : universe) {
    if (rng.coin(p)) out.insert(n);
  }
  return out;
}

// Directed graph as adjacency lists, for path-enumeration oracles.
using Adjacency = std::map<std::string, std::vector<std::string>>;

// u dominates v iff every simple path entry -> v contains u (vacuously true when
// v is unreachable). Enumerates all paths.
inline bool path_dominates(const Adjacency& adj, const std::string& entry, const std::string& u, const std::string& v) {
  if (u == v) return true;
  bool all_through_u = true;
  Names on_path{entry};
  auto dfs = [&](auto&& self, const std::string& at) -> void {
    if (at == v) {
      if (!on_path.count(u)) all_through_u = false;
      return;
    }
    const auto it = adj.find(at);
    if (it == adj.end()) return;
    for (const auto& next : it->second) {
      if (on_path.count(next)) continue;
      on_path.insert(next);
      self(self, next);
      on_path.erase(next);
    }
  };
  dfs(dfs, entry);
  return all_through_u;
}

// Seven-label staff policy with codes in declaration order:
// bits/exponents TopSecret 0 .. MI6 6, primes TopSecret 3 .. MI6 19.
inline ibac::PolicySchema mi_schema() {
  return ibac::parse_policy(R"({
    "id": "mi", "base": 3,
    "levels": ["TopSecret", "Secret", "Protected", "Public"],
    "compartments": ["GCHQ", "MI5", "MI6"]
  })");
}

// Three labels A, B, C with primes 3, 5, 7.
inline ibac::PolicySchema abc_schema() {
  return ibac::parse_policy(R"({"id": "abc", "levels": ["A"], "compartments": ["B", "C"]})");
}

// Downward closure computed from the schema's declarations by fixed-point iteration.
inline Names included_oracle(const ibac::PolicySchema& schema, const Names& label) {
  Names out = label;
  std::size_t top = schema.levels.size();
  for (std::size_t i = 0; i < schema.levels.size(); ++i) {
    if (label.count(schema.levels[i])) top = std::min(top, i);
  }
  for (std::size_t i = top; i < schema.levels.size(); ++i) out.insert(schema.levels[i]);
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& e : schema.project_edges) {
      if (out.count(e.parent)) grew |= out.insert(e.child).second;
    }
  }
  return out;
}

}  // namespace testsupport
