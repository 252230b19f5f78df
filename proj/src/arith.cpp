#include "cmtwist/arith.hpp"

#include "cmtwist/errors.hpp"

namespace cmtwist {

__extension__ typedef unsigned __int128 u128;

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

u64 euler_phi(u64 n) {
    if (n == 0) return 0;
    u64 result = n;
    for (u64 p : prime_factors(n)) result = result / p * (p - 1);
    return result;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> small;
    std::vector<u64> large;
    for (u64 d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

bool is_squarefree(i64 n) {
    if (n == 0) return false;
    u64 a = n < 0 ? static_cast<u64>(-n) : static_cast<u64>(n);
    for (u64 p = 2; p * p <= a; ++p)
        if (a % (p * p) == 0) return false;
    return true;
}

u64 multiplicative_order(u64 a, u64 m) {
    if (m < 2 || gcd(a % m, m) != 1)
        throw InputError("multiplicative_order: " + std::to_string(a) + " is not a unit mod " +
                         std::to_string(m));
    u64 order = 1;
    u64 x = a % m;
    while (x != 1) {
        x = mulmod(x, a, m);
        ++order;
    }
    return order;
}

namespace {

// Jacobi symbol (a / n) for odd n > 0.
int jacobi(i64 a_signed, u64 n) {
    i64 nn = static_cast<i64>(n);
    u64 a = static_cast<u64>(((a_signed % nn) + nn) % nn);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            u64 r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

}  // namespace

int kronecker(i64 d, u64 n) {
    if (n == 0) throw InputError("kronecker: n must be positive");
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        if (d % 2 == 0) return 0;
        i64 r = ((d % 8) + 8) % 8;
        if (r == 3 || r == 5) result = -result;
    }
    if (n == 1) return result;
    return result * jacobi(d, n);
}

i64 quadratic_discriminant(i64 d) {
    if (d == 0 || d == 1 || !is_squarefree(d))
        throw InputError("quadratic: d = " + std::to_string(d) + " must be squarefree and not 0 or 1");
    i64 r = ((d % 4) + 4) % 4;
    return r == 1 ? d : 4 * d;
}

}  // namespace cmtwist
