#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ibac {

using BigInt = boost::multiprecision::cpp_int;

/// Largest power of `base` that does not exceed a positive value, with its exponent.
struct PowerFloor {
  unsigned exponent = 0;
  BigInt power = 1;
};

/// floor(log_base(x)) by exact integer arithmetic. Requires x >= 1 and base >= 2.
PowerFloor floor_power(const BigInt& x, unsigned base);

BigInt ipow(unsigned base, unsigned exponent);

/// Number of binary digits of a non-negative value; 0 for 0.
unsigned bit_length(const BigInt& x);

bool is_prime(std::uint64_t n);

/// The first `count` odd primes: 3, 5, 7, 11, ...
std::vector<std::uint64_t> odd_primes(std::size_t count);

BigInt parse_decimal(std::string_view text);
BigInt parse_binary(std::string_view digits);

/// Binary digits, most significant first, left-padded with zeros to `width`.
std::string to_binary(const BigInt& x, unsigned width = 0);

}  // namespace ibac
