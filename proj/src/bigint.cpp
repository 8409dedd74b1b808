#include "ibac/bigint.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include "ibac/error.hpp"

namespace ibac {

PowerFloor floor_power(const BigInt& x, unsigned base) {
  if (base < 2) throw Error(ErrorCode::invalid_policy, "base must be at least 2");
  if (x < 1) throw Error(ErrorCode::malformed_token, "floor_log of a value below 1");
  PowerFloor result;
  BigInt next = base;
  while (next <= x) {
    result.power = next;
    ++result.exponent;
    next *= base;
  }
  return result;
}

BigInt ipow(unsigned base, unsigned exponent) {
  return boost::multiprecision::pow(BigInt(base), exponent);
}

unsigned bit_length(const BigInt& x) {
  if (x <= 0) return 0;
  return static_cast<unsigned>(boost::multiprecision::msb(x)) + 1;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  return boost::multiprecision::miller_rabin_test(BigInt(n), 25);
}

std::vector<std::uint64_t> odd_primes(std::size_t count) {
  std::vector<std::uint64_t> primes;
  primes.reserve(count);
  for (std::uint64_t n = 3; primes.size() < count; n += 2) {
    if (is_prime(n)) primes.push_back(n);
  }
  return primes;
}

BigInt parse_decimal(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::parse_error, "empty integer");
  BigInt value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw Error(ErrorCode::parse_error, "not a decimal integer: " + std::string(text));
    value = value * 10 + (c - '0');
  }
  return value;
}

BigInt parse_binary(std::string_view digits) {
  if (digits.empty()) throw Error(ErrorCode::parse_error, "empty bit string");
  BigInt value = 0;
  for (char c : digits) {
    if (c != '0' && c != '1') throw Error(ErrorCode::parse_error, "not a bit string: " + std::string(digits));
    value <<= 1;
    if (c == '1') value |= 1;
  }
  return value;
}

std::string to_binary(const BigInt& x, unsigned width) {
  const unsigned len = bit_length(x);
  std::string out;
  const unsigned digits = std::max({len, width, 1u});
  out.reserve(digits);
  for (unsigned i = digits; i-- > 0;) out.push_back(boost::multiprecision::bit_test(x, i) ? '1' : '0');
  return out;
}

}  // namespace ibac
