#include "ibac/dominance.hpp"

#include "ibac/error.hpp"

namespace ibac {

namespace {

DominanceVerdict verdict_from_missing(const LabelSet& missing) {
  if (missing.empty()) return {true, std::nullopt};
  return {false, *missing.begin()};
}

void require_scheme(const Token& subject, const Token& object, Scheme scheme, const char* test) {
  if (subject.scheme != scheme || object.scheme != scheme) {
    throw Error(ErrorCode::scheme_mismatch, std::string(test) + " needs two " + to_string(scheme) + " tokens");
  }
}

void require_pair(const PolicySchema& schema, const Token& subject, const Token& object) {
  require_same_schema(schema, subject);
  require_same_schema(schema, object);
  if (!subject.schema_id.empty() && !object.schema_id.empty() && subject.schema_id != object.schema_id) {
    throw Error(ErrorCode::schema_mismatch, "subject and object tokens come from different schemas");
  }
}

// Object exponents the subject lacks, walking both descending index sequences.
// Stops at the first miss when `first_only` is set.
std::vector<unsigned> unmatched_indices(const BigInt& subject, const BigInt& object, unsigned base, bool first_only) {
  std::vector<unsigned> missing;
  BigInt a = subject;
  BigInt b = object;
  std::optional<PowerFloor> head_a;
  std::optional<unsigned> last_a;
  std::optional<unsigned> last_b;

  auto advance_a = [&] {
    head_a.reset();
    if (a < 1) return;
    head_a = floor_power(a, base);
    if (last_a && head_a->exponent >= *last_a) throw Error(ErrorCode::malformed_token, "subject index repeats");
    last_a = head_a->exponent;
  };
  advance_a();

  while (b >= 1) {
    const auto head_b = floor_power(b, base);
    if (last_b && head_b.exponent >= *last_b) throw Error(ErrorCode::malformed_token, "object index repeats");
    last_b = head_b.exponent;

    while (head_a && head_a->exponent > head_b.exponent) {
      a -= head_a->power;
      advance_a();
    }
    if (!head_a || head_a->exponent != head_b.exponent) {
      missing.push_back(head_b.exponent);
      if (first_only) return missing;
    } else {
      a -= head_a->power;
      advance_a();
    }
    b -= head_b.power;
  }
  return missing;
}

}  // namespace

DominanceVerdict oracle_subset(const PolicySchema& schema, const LabelSet& subject_included, const LabelSet& object) {
  require_known(schema, subject_included);
  require_known(schema, object);
  LabelSet missing;
  for (const auto& name : object) {
    if (!subject_included.contains(name)) missing.insert(name);
  }
  return verdict_from_missing(missing);
}

bool bits_dominate(const BigInt& subject, const BigInt& object) {
  return (subject & object) == object;
}

bool modulo_dominates(const BigInt& subject, const BigInt& object) {
  return subject % object == 0;
}

std::optional<unsigned> expsum_first_unmatched(const BigInt& subject, const BigInt& object, unsigned base) {
  const auto missing = unmatched_indices(subject, object, base, true);
  if (missing.empty()) return std::nullopt;
  return missing.front();
}

DominanceVerdict test_bitvec_and(const PolicySchema& schema, const Token& subject, const Token& object) {
  require_scheme(subject, object, Scheme::bitvec, "bit-vector AND");
  require_pair(schema, subject, object);
  if (bits_dominate(subject.value, object.value)) return {true, std::nullopt};
  Token encroachment = object;
  encroachment.value = object.value - (object.value & subject.value);
  return verdict_from_missing(decode(schema, encroachment));
}

BigInt complement_dot(const PolicySchema& schema, const Token& subject, const Token& object) {
  if (subject.scheme != object.scheme) throw Error(ErrorCode::scheme_mismatch, "complement dot needs tokens of one scheme");
  require_pair(schema, subject, object);
  const auto user = decode(schema, subject);
  const auto obj = decode(schema, object);
  BigInt dot = 0;
  for (const auto& name : schema.universe()) {
    if (user.contains(name) || !obj.contains(name)) continue;
    // complement component and object component carry the same code
    BigInt code;
    switch (subject.scheme) {
      case Scheme::bitvec: code = 1; break;
      case Scheme::expsum: code = ipow(schema.base, schema.exponent_of(name)); break;
      case Scheme::primeprod: code = schema.prime_of(name); break;
    }
    dot += code * code;
  }
  return dot;
}

DominanceVerdict test_complement_dot(const PolicySchema& schema, const Token& subject, const Token& object) {
  if (complement_dot(schema, subject, object) == 0) return {true, std::nullopt};
  const auto user = decode(schema, subject);
  LabelSet encroachment;
  for (const auto& name : decode(schema, object)) {
    if (!user.contains(name)) encroachment.insert(name);
  }
  return verdict_from_missing(encroachment);
}

DominanceVerdict test_expsum_decode(const PolicySchema& schema, const Token& subject, const Token& object) {
  require_scheme(subject, object, Scheme::expsum, "exponent-sum walk");
  require_pair(schema, subject, object);
  if (subject.base != object.base) throw Error(ErrorCode::scheme_mismatch, "exponent-sum tokens use different bases");
  if (!expsum_first_unmatched(subject.value, object.value, subject.base)) return {true, std::nullopt};

  if (subject.base != schema.base) throw Error(ErrorCode::scheme_mismatch, "token base differs from schema base");
  std::map<unsigned, std::string> names;
  for (const auto& [name, k] : schema.assignments.exponents) names.emplace(k, name);
  LabelSet missing;
  for (unsigned k : unmatched_indices(subject.value, object.value, subject.base, false)) {
    const auto it = names.find(k);
    if (it == names.end()) throw Error(ErrorCode::malformed_token, "index " + std::to_string(k) + " has no label");
    missing.insert(it->second);
  }
  return verdict_from_missing(missing);
}

DominanceVerdict test_prime_modulo(const PolicySchema& schema, const Token& subject, const Token& object) {
  require_scheme(subject, object, Scheme::primeprod, "prime modulo");
  require_pair(schema, subject, object);
  if (object.value == 0) throw Error(ErrorCode::malformed_token, "object token value 0");
  if (modulo_dominates(subject.value, object.value)) return {true, std::nullopt};
  LabelSet missing;
  for (const auto& [name, prime] : schema.assignments.primes) {
    if (object.value % prime == 0 && subject.value % prime != 0) missing.insert(name);
  }
  if (missing.empty()) throw Error(ErrorCode::malformed_token, "object token has factors outside the schema");
  return verdict_from_missing(missing);
}

DominanceVerdict dominates(const PolicySchema& schema, const Token& subject, const Token& object) {
  switch (object.scheme) {
    case Scheme::bitvec: return test_bitvec_and(schema, subject, object);
    case Scheme::expsum: return test_expsum_decode(schema, subject, object);
    case Scheme::primeprod: return test_prime_modulo(schema, subject, object);
  }
  return {false, std::nullopt};
}

CrossCheckReport cross_check(const PolicySchema& schema, const LabelSet& subject_included, const LabelSet& object) {
  CrossCheckReport report;
  report.verdict = oracle_subset(schema, subject_included, object);
  report.results.emplace_back("oracle", report.verdict);

  auto run = [&](Scheme scheme, auto&& test, const char* name) {
    const auto s = encode(schema, scheme, subject_included);
    const auto o = encode(schema, scheme, object);
    report.results.emplace_back(name, test(schema, s, o));
  };
  run(Scheme::bitvec, test_bitvec_and, "bitvec-and");
  run(Scheme::bitvec, test_complement_dot, "complement-dot/bitvec");
  run(Scheme::expsum, test_complement_dot, "complement-dot/expsum");
  run(Scheme::primeprod, test_complement_dot, "complement-dot/primeprod");
  run(Scheme::expsum, test_expsum_decode, "expsum-walk");
  run(Scheme::primeprod, test_prime_modulo, "prime-modulo");

  for (const auto& [name, verdict] : report.results) {
    if (verdict == report.verdict) continue;
    report.unanimous = false;
    report.detail += name + " says " + (verdict.holds ? "holds" : "fails");
    if (verdict.witness) report.detail += " (" + *verdict.witness + ")";
    report.detail += "; ";
  }
  return report;
}

CrossCheckReport cross_check(const PolicySchema& schema, const SubjectClearance& subject, const LabelSet& object) {
  return cross_check(schema, subject.included, object);
}

}  // namespace ibac
