#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace abelphi {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m);
// Throws DomainError when gcd(a, m) != 1.
u64 invmod(u64 a, u64 m);
u64 gcd(u64 a, u64 b);
u64 lcm(u64 a, u64 b);
// Non-negative residue of a (possibly negative) integer.
u64 mod_floor(i64 a, u64 m);

bool is_prime(u64 n);
u64 next_prime(u64 n);  // smallest prime > n

using Factorization = std::vector<std::pair<u64, int>>;
Factorization factorize(u64 n);  // ascending primes
std::vector<u64> divisors(u64 n);  // ascending
u64 euler_phi(u64 n);
int mobius(u64 n);
int valuation(u64 n, u64 p);  // n > 0
int valuation(const mpz_class& n, u64 p);  // n != 0
u64 ipow(u64 b, unsigned e);  // throws on overflow
bool is_prime_power(u64 n, u64* prime = nullptr);
bool is_power_of(u64 n, u64 p);  // n = p^k, k >= 0
u64 mult_order(u64 a, u64 m);  // gcd(a, m) = 1
u64 primitive_root_prime_power(u64 q, int k);  // smallest generator of (Z/q^k)^x, q odd
u64 isqrt(u64 n);
bool is_square(u64 n);

// x = a mod m1, x = b mod m2, m1 and m2 coprime; result in [0, m1 m2).
u64 crt_pair(u64 a, u64 m1, u64 b, u64 m2);

}  // namespace abelphi
