#pragma once

// Small exact integer helpers shared by the group, field and inertia code.

#include <cstdint>
#include <numeric>
#include <vector>

namespace cmtwist {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }
inline u64 lcm(u64 a, u64 b) { return std::lcm(a, b); }

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);

/// Euler's totient by trial factorization.
u64 euler_phi(u64 n);

/// All positive divisors of n, ascending. n = 0 yields an empty list.
std::vector<u64> divisors(u64 n);

/// Distinct prime factors, ascending.
std::vector<u64> prime_factors(u64 n);

bool is_prime(u64 n);
bool is_squarefree(i64 n);

/// Multiplicative order of a modulo m; requires gcd(a, m) = 1, m >= 2.
u64 multiplicative_order(u64 a, u64 m);

/// Kronecker symbol (d / n) for n > 0.
int kronecker(i64 d, u64 n);

/// Discriminant of Q(sqrt(d)) for squarefree d != 0, 1.
i64 quadratic_discriminant(i64 d);

}  // namespace cmtwist
