#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace perlab {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Error hierarchy. The CLI maps these onto exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FormMismatchError : Error {
    using Error::Error;
};
struct DivisionByZeroError : Error {
    using Error::Error;
};
struct DegreeCapError : Error {
    using Error::Error;
};
struct ResourceError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};
// Raised when an input violates a theorem hypothesis (e.g. preimage target
// inside the exceptional set).
struct HypothesisError : Error {
    using Error::Error;
};

// Parses "p", "-p", "p/q" into a canonical rational.
BigRat parse_rational(const std::string& s);
std::string rational_string(const BigRat& x);

// log(|x|) for nonzero integers, 0 for x = 0; accurate to double precision.
double log_abs(const BigInt& x);
// log2 of |x|, -inf for 0.
double log2_abs(const BigInt& x);

// 64-bit deterministic Miller-Rabin.
bool is_prime_u64(std::uint64_t n);
// Smallest prime >= n.
std::uint64_t next_prime_u64(std::uint64_t n);

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m);

// Factors |n| into primes with multiplicity (trial division + Pollard-Brent).
std::vector<std::pair<BigInt, int>> factor_integer(const BigInt& n);

// Euler phi of n >= 1 via factor_integer.
BigInt euler_phi(const BigInt& n);

}  // namespace perlab
