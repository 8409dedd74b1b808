#include "ibac/codec.hpp"

#include <map>

#include "ibac/error.hpp"

namespace ibac {

std::string format_token(const Token& token, unsigned bit_width) {
  switch (token.scheme) {
    case Scheme::bitvec: return "b:0b" + to_binary(token.value, bit_width);
    case Scheme::expsum: return "e" + std::to_string(token.base) + ":" + token.value.str();
    case Scheme::primeprod: return "p:" + token.value.str();
  }
  return {};
}

std::string format_token(const PolicySchema& schema, const Token& token) {
  return format_token(token, static_cast<unsigned>(schema.label_count()));
}

Token parse_token(std::string_view text, std::string schema_id) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw Error(ErrorCode::parse_error, "token needs a scheme prefix: " + std::string(text));
  }
  const auto prefix = text.substr(0, colon);
  const auto body = text.substr(colon + 1);
  Token token;
  token.schema_id = std::move(schema_id);
  if (prefix == "p") {
    token.scheme = Scheme::primeprod;
    token.value = parse_decimal(body);
  } else if (prefix == "b") {
    if (body.substr(0, 2) != "0b") throw Error(ErrorCode::parse_error, "bit-vector token must start with 0b: " + std::string(text));
    token.scheme = Scheme::bitvec;
    token.value = parse_binary(body.substr(2));
  } else if (prefix[0] == 'e' && prefix.size() > 1) {
    token.scheme = Scheme::expsum;
    const auto base = parse_decimal(prefix.substr(1));
    if (base < 2 || base > 1'000'000) throw Error(ErrorCode::parse_error, "bad expsum base in " + std::string(text));
    token.base = base.convert_to<unsigned>();
    token.value = parse_decimal(body);
  } else {
    throw Error(ErrorCode::parse_error, "unknown token prefix: " + std::string(prefix));
  }
  return token;
}

void require_same_schema(const PolicySchema& schema, const Token& token) {
  if (!token.schema_id.empty() && !schema.id.empty() && token.schema_id != schema.id) {
    throw Error(ErrorCode::schema_mismatch, "token bound to schema '" + token.schema_id + "', not '" + schema.id + "'");
  }
}

namespace {

BigInt code_value(const PolicySchema& schema, Scheme scheme, const std::string& name) {
  switch (scheme) {
    case Scheme::bitvec: return BigInt(1) << schema.bit_of(name);
    case Scheme::expsum: return ipow(schema.base, schema.exponent_of(name));
    case Scheme::primeprod: return BigInt(schema.prime_of(name));
  }
  return 0;
}

template <typename Code>
std::map<Code, std::string> reverse(const std::map<std::string, Code>& forward) {
  std::map<Code, std::string> out;
  for (const auto& [name, code] : forward) out.emplace(code, name);
  return out;
}

void require_expsum_base(const PolicySchema& schema, const Token& token) {
  if (token.base != schema.base) {
    throw Error(ErrorCode::scheme_mismatch, "expsum token base " + std::to_string(token.base) +
                                                " does not match schema base " + std::to_string(schema.base));
  }
}

// Exponents of an exponent-sum value, validated as distinct (every digit 0 or 1).
std::vector<unsigned> distinct_indices(const BigInt& value, unsigned base) {
  if (value < 0) throw Error(ErrorCode::malformed_token, "negative token value");
  auto indices = deconstruct(value, base);
  for (std::size_t i = 1; i < indices.size(); ++i) {
    if (indices[i] >= indices[i - 1]) {
      throw Error(ErrorCode::malformed_token,
                  "residue after extraction: index " + std::to_string(indices[i]) + " repeats in base " + std::to_string(base));
    }
  }
  return indices;
}

}  // namespace

Token empty_token(const PolicySchema& schema, Scheme scheme) {
  Token token{scheme, scheme == Scheme::primeprod ? BigInt(1) : BigInt(0), 0, schema.id};
  if (scheme == Scheme::expsum) token.base = schema.base;
  return token;
}

Token encode(const PolicySchema& schema, Scheme scheme, const LabelSet& labels) {
  require_known(schema, labels);
  Token token = empty_token(schema, scheme);
  for (const auto& name : labels) {
    const auto code = code_value(schema, scheme, name);
    if (scheme == Scheme::primeprod) {
      token.value *= code;
    } else {
      token.value += code;
    }
  }
  return token;
}

std::vector<unsigned> deconstruct(const BigInt& value, unsigned base, DecodeStats* stats) {
  std::vector<unsigned> indices;
  BigInt rest = value;
  while (rest >= 1) {
    const auto step = floor_power(rest, base);
    indices.push_back(step.exponent);
    rest -= step.power;
    if (stats) ++stats->iterations;
  }
  return indices;
}

LabelSet decode(const PolicySchema& schema, const Token& token) {
  require_same_schema(schema, token);
  LabelSet out;
  switch (token.scheme) {
    case Scheme::bitvec: {
      if (token.value < 0) throw Error(ErrorCode::malformed_token, "negative token value");
      const auto names = reverse(schema.assignments.bit_positions);
      const unsigned width = bit_length(token.value);
      for (unsigned bit = 0; bit < width; ++bit) {
        if (!boost::multiprecision::bit_test(token.value, bit)) continue;
        const auto it = names.find(bit);
        if (it == names.end()) throw Error(ErrorCode::malformed_token, "bit " + std::to_string(bit) + " has no label");
        out.insert(it->second);
      }
      break;
    }
    case Scheme::expsum: {
      require_expsum_base(schema, token);
      const auto names = reverse(schema.assignments.exponents);
      for (unsigned index : distinct_indices(token.value, token.base)) {
        const auto it = names.find(index);
        if (it == names.end()) throw Error(ErrorCode::malformed_token, "index " + std::to_string(index) + " has no label");
        out.insert(it->second);
      }
      break;
    }
    case Scheme::primeprod: {
      if (token.value < 1) throw Error(ErrorCode::malformed_token, "prime-product token must be at least 1");
      BigInt rest = token.value;
      for (const auto& [name, prime] : schema.assignments.primes) {
        if (rest % prime != 0) continue;
        rest /= prime;
        if (rest % prime == 0) throw Error(ErrorCode::malformed_token, "prime " + std::to_string(prime) + " repeats");
        out.insert(name);
      }
      if (rest != 1) throw Error(ErrorCode::malformed_token, "residue " + rest.str() + " after trial division");
      break;
    }
  }
  return out;
}

Token add_label(const PolicySchema& schema, const Token& token, const std::string& label) {
  require_known(schema, LabelSet{label});
  if (decode(schema, token).contains(label)) throw Error(ErrorCode::label_present, "label already present: " + label);
  Token out = token;
  const auto code = code_value(schema, token.scheme, label);
  if (token.scheme == Scheme::primeprod) {
    out.value *= code;
  } else {
    out.value += code;
  }
  return out;
}

Token remove_label(const PolicySchema& schema, const Token& token, const std::string& label) {
  require_known(schema, LabelSet{label});
  if (!decode(schema, token).contains(label)) throw Error(ErrorCode::label_absent, "label not present: " + label);
  Token out = token;
  const auto code = code_value(schema, token.scheme, label);
  if (token.scheme == Scheme::primeprod) {
    out.value /= code;
  } else {
    out.value -= code;
  }
  return out;
}

const char* to_string(Obfuscation transform) {
  switch (transform) {
    case Obfuscation::subtract_prime: return "subtract-prime";
    case Obfuscation::divide_prime: return "divide-prime";
    case Obfuscation::hidden_base: return "hidden-base";
  }
  return "?";
}

namespace {

void check_key(const PolicySchema& schema, Obfuscation transform, std::uint64_t key) {
  if (transform == Obfuscation::hidden_base) {
    if (key < 2) throw Error(ErrorCode::invalid_key, "hidden base must be at least 2");
    if (key == schema.base) throw Error(ErrorCode::key_collision, "key in schema: hidden base equals the schema base");
    return;
  }
  if (!is_prime(key)) throw Error(ErrorCode::invalid_key, "obfuscation key " + std::to_string(key) + " is not prime");
  for (const auto& [name, prime] : schema.assignments.primes) {
    if (prime == key) throw Error(ErrorCode::key_collision, "key in schema: " + std::to_string(key) + " is the code of " + name);
  }
}

BigInt resum(const std::vector<unsigned>& indices, unsigned base) {
  BigInt value = 0;
  for (unsigned k : indices) value += ipow(base, k);
  return value;
}

}  // namespace

ObfuscatedToken obfuscate(const PolicySchema& schema, const Token& token, Obfuscation transform,
                          std::uint64_t key) {
  check_key(schema, transform, key);
  decode(schema, token);
  ObfuscatedToken out{token.scheme, transform, 0, token.schema_id};
  switch (transform) {
    case Obfuscation::subtract_prime: out.value = token.value - key; break;
    case Obfuscation::divide_prime: out.value = token.value * key; break;
    case Obfuscation::hidden_base:
      if (token.scheme != Scheme::expsum) throw Error(ErrorCode::scheme_mismatch, "hidden-base applies to expsum tokens only");
      out.value = resum(distinct_indices(token.value, token.base), static_cast<unsigned>(key));
      break;
  }
  return out;
}

Token deobfuscate(const PolicySchema& schema, const ObfuscatedToken& token, std::uint64_t key) {
  check_key(schema, token.transform, key);
  Token out{token.scheme, 0, token.scheme == Scheme::expsum ? schema.base : 0u, token.schema_id};
  switch (token.transform) {
    case Obfuscation::subtract_prime: out.value = token.value + key; break;
    case Obfuscation::divide_prime:
      if (token.value % key != 0) throw Error(ErrorCode::malformed_token, "obfuscated value is not a multiple of the key");
      out.value = token.value / key;
      break;
    case Obfuscation::hidden_base:
      if (token.scheme != Scheme::expsum) throw Error(ErrorCode::scheme_mismatch, "hidden-base applies to expsum tokens only");
      out.value = resum(distinct_indices(token.value, static_cast<unsigned>(key)), schema.base);
      break;
  }
  decode(schema, out);
  return out;
}

std::vector<StorageRow> storage_report(const PolicySchema& schema) {
  LabelSet all;
  for (const auto& name : schema.universe()) all.insert(name);
  std::vector<StorageRow> rows;
  for (auto scheme : {Scheme::bitvec, Scheme::expsum, Scheme::primeprod}) {
    const auto token = encode(schema, scheme, all);
    rows.push_back({scheme, token.value, bit_length(token.value)});
  }
  return rows;
}

}  // namespace ibac
