#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ibac/bigint.hpp"
#include "ibac/labels.hpp"
#include "ibac/schema.hpp"

namespace ibac {

/// An encoded label set.
///   expsum:    value = sum of base^k over distinct schema exponents k
///   primeprod: value = product of distinct schema primes (1 when empty)
///   bitvec:    value = OR of 2^position
struct Token {
  Scheme scheme = Scheme::primeprod;
  BigInt value = 0;
  unsigned base = 0;  // expsum only
  std::string schema_id;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Serialized form shared by the CLI, store files and fixtures:
///   "p:124355", "e3:1011", "b:0b0110110".
/// Bit-vectors are padded to `bit_width` digits when it is non-zero.
std::string format_token(const Token& token, unsigned bit_width = 0);
/// Pads bit-vectors to the schema's label count.
std::string format_token(const PolicySchema& schema, const Token& token);
Token parse_token(std::string_view text, std::string schema_id = {});

Token empty_token(const PolicySchema& schema, Scheme scheme);
Token encode(const PolicySchema& schema, Scheme scheme, const LabelSet& labels);
LabelSet decode(const PolicySchema& schema, const Token& token);

struct DecodeStats {
  std::size_t iterations = 0;
};

/// Repeatedly strips the largest power of `base`:
///   x <- x - base^floor(log_base(x))  while x >= 1
/// returning the stripped exponents in extraction order. Work is one
/// iteration per encoded index, independent of the universe size.
std::vector<unsigned> deconstruct(const BigInt& value, unsigned base, DecodeStats* stats = nullptr);

Token add_label(const PolicySchema& schema, const Token& token, const std::string& label);
Token remove_label(const PolicySchema& schema, const Token& token, const std::string& label);

enum class Obfuscation { subtract_prime, divide_prime, hidden_base };

const char* to_string(Obfuscation transform);

struct ObfuscatedToken {
  Scheme scheme = Scheme::primeprod;
  Obfuscation transform = Obfuscation::subtract_prime;
  BigInt value = 0;
  std::string schema_id;
};

/// Shared-key transforms for tokens in transit. Not encryption.
///   subtract_prime: value - key
///   divide_prime:   value * key (deobfuscation divides exactly)
///   hidden_base:    expsum indices re-summed under the secret base `key`
ObfuscatedToken obfuscate(const PolicySchema& schema, const Token& token, Obfuscation transform,
                          std::uint64_t key);
Token deobfuscate(const PolicySchema& schema, const ObfuscatedToken& token, std::uint64_t key);

struct StorageRow {
  Scheme scheme;
  BigInt full_value;
  unsigned bits;
};

/// Minimal bit width of the full-universe token under each scheme.
std::vector<StorageRow> storage_report(const PolicySchema& schema);

/// Throws Error(schema_mismatch) if the token is bound to a different schema.
void require_same_schema(const PolicySchema& schema, const Token& token);

}  // namespace ibac
