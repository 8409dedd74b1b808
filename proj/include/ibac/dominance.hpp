#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ibac/bigint.hpp"
#include "ibac/codec.hpp"
#include "ibac/labels.hpp"
#include "ibac/schema.hpp"

namespace ibac {

/// holds == !witness. The witness is the lexicographically least object
/// label missing from the subject.
struct DominanceVerdict {
  bool holds = true;
  std::optional<std::string> witness;

  friend bool operator==(const DominanceVerdict&, const DominanceVerdict&) = default;
};

/// Reference answer: object is a subset of the subject's included form.
DominanceVerdict oracle_subset(const PolicySchema& schema, const LabelSet& subject_included,
                               const LabelSet& object);

/// subject AND object == object.
DominanceVerdict test_bitvec_and(const PolicySchema& schema, const Token& subject, const Token& object);

/// Sum over the universe of complement(subject)_i * object_i, where each
/// present component carries its codec value (1, base^k or prime).
BigInt complement_dot(const PolicySchema& schema, const Token& subject, const Token& object);
DominanceVerdict test_complement_dot(const PolicySchema& schema, const Token& subject, const Token& object);

/// Index walk over both exponent-sum tokens; fails at the first object index
/// the subject does not carry.
DominanceVerdict test_expsum_decode(const PolicySchema& schema, const Token& subject, const Token& object);

/// subject mod object == 0.
DominanceVerdict test_prime_modulo(const PolicySchema& schema, const Token& subject, const Token& object);

/// The scheme's native test: AND, index walk or modulo.
DominanceVerdict dominates(const PolicySchema& schema, const Token& subject, const Token& object);

// Schema-free predicates on raw token values.
bool bits_dominate(const BigInt& subject, const BigInt& object);
bool modulo_dominates(const BigInt& subject, const BigInt& object);
/// First object exponent missing from the subject, or nullopt when dominance holds.
std::optional<unsigned> expsum_first_unmatched(const BigInt& subject, const BigInt& object, unsigned base);

struct CrossCheckReport {
  DominanceVerdict verdict;
  std::vector<std::pair<std::string, DominanceVerdict>> results;
  bool unanimous = true;
  std::string detail;
};

/// Runs the oracle and every token test under every applicable scheme.
CrossCheckReport cross_check(const PolicySchema& schema, const LabelSet& subject_included,
                             const LabelSet& object);
CrossCheckReport cross_check(const PolicySchema& schema, const SubjectClearance& subject,
                             const LabelSet& object);

}  // namespace ibac
