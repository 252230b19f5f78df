#include <doctest.h>

#include <future>

#include "cmtwist/cft_inertia.hpp"
#include "cmtwist/errors.hpp"

using namespace cmtwist;

namespace {

std::vector<u64> primes_below(u64 n) {
    std::vector<u64> out;
    for (u64 p = 2; p < n; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

// Polynomials over F_p as coefficient vectors, lowest degree first.
using Poly = std::vector<u64>;

// Remainder of a modulo a monic b.
Poly poly_mod(Poly a, const Poly& b, u64 p) {
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const u64 lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

// Phi_7 has a monic factor of degree 1, 2 or 3 over F_p, found by exhaustive search.
bool phi7_has_small_factor(u64 p) {
    const Poly phi7(7, 1);
    for (std::size_t deg = 1; deg <= 3; ++deg) {
        Poly f(deg + 1, 0);
        f[deg] = 1;
        while (true) {
            if (poly_mod(phi7, f, p).empty()) return true;
            std::size_t i = 0;
            while (i < deg && ++f[i] == p) f[i++] = 0;
            if (i == deg) break;
        }
    }
    return false;
}

bool same(const InertiaCertificate& a, const InertiaCertificate& b) {
    if (a.checks.size() != b.checks.size() || a.conclusion != b.conclusion || a.failed_check != b.failed_check)
        return false;
    for (std::size_t i = 0; i < a.checks.size(); ++i) {
        const auto& x = a.checks[i];
        const auto& y = b.checks[i];
        if (x.name != y.name || x.pass != y.pass || x.witness != y.witness || x.anchor != y.anchor) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("residue order mod 7") {
    CHECK(residue_order_mod7(3) == 6);
    CHECK(requires_p_3_mod_7(3));
    CHECK(residue_order_mod7(2) == 3);
    CHECK_FALSE(requires_p_3_mod_7(2));
    CHECK(residue_order_mod7(5) == 6);
    CHECK_FALSE(requires_p_3_mod_7(5));
    CHECK_THROWS_AS(residue_order_mod7(7), InputError);
    CHECK_THROWS_AS(residue_order_mod7(9), InputError);
}

TEST_CASE("inertia order") {
    const auto a = inertia_order(3);
    CHECK(a.order == 56);
    CHECK(a.gcd_value == 13);
    CHECK(a.gcd_matches);
    CHECK(a.divides_p3_minus_1);
    const auto b = inertia_order(17);
    CHECK(b.order == 78624);
    CHECK(b.p2_plus_p_plus_1 == 307);
    CHECK(b.gcd_value == 307);
    CHECK_THROWS_AS(inertia_order(5), HypothesisError);
}

TEST_CASE("inertia identities for p = 3 mod 7 below 10^4") {
    std::size_t count = 0;
    for (u64 p : primes_below(10000)) {
        if (p % 7 != 3) continue;
        ++count;
        const auto io = inertia_order(p);
        const BigInt bp = p;
        const BigInt s = bp * bp + bp + 1;
        CHECK((bp * bp * bp - 1) % s == 0);
        CHECK(boost::multiprecision::gcd(BigInt(pow(bp, 6) - 1), BigInt(pow(bp, 3) * s)) == s);
        CHECK(io.order * s == pow(bp, 6) - 1);
        CHECK(io.gcd_matches);
    }
    CHECK(count > 100);
}

TEST_CASE("frobenius exponents") {
    CHECK(frobenius_exponents(3) == std::array<u64, 3>{6, 4, 5});
    CHECK(frobenius_exponents(17) == std::array<u64, 3>{6, 4, 5});
    CHECK_THROWS_AS(frobenius_exponents(2), HypothesisError);
}

TEST_CASE("unit generator") {
    const auto u = unit_generator_check();
    CHECK(u.reduction_value == 5);
    CHECK(u.reduction_order == 6);
    CHECK(u.identity_holds);
    CHECK(u.surjective());
    CHECK(multiplicative_order(5, 7) == 6);
}

TEST_CASE("F_p[x]/Phi_7 arithmetic") {
    const u64 p = 3;
    const auto x = Fp6Element::x(p);
    auto x7 = Fp6Element::one(p);
    for (int i = 0; i < 7; ++i) x7 = x7 * x;
    CHECK(x7 == Fp6Element::one(p));
    // 1 + x + ... + x^6 = 0
    auto sum = Fp6Element::zero(p);
    auto xi = Fp6Element::one(p);
    for (int i = 0; i < 7; ++i) {
        sum = sum + xi;
        xi = xi * x;
    }
    CHECK(sum == Fp6Element::zero(p));
    CHECK(x.pow(BigInt(3)) == x.galois(3));
    CHECK(x.frobenius(6) == x);
}

TEST_CASE("Phi_7 irreducible iff p has order 6 mod 7, p < 500") {
    for (u64 p : primes_below(500)) {
        if (p == 7) continue;
        const bool order6 = residue_order_mod7(p) == 6;
        INFO("p = " << p);
        CHECK(phi7_irreducible_mod(p) == order6);
        // Frobenius orbit of x in F_p[x]/Phi_7 has the length of the residue degree.
        const auto x = Fp6Element::x(p);
        u64 orbit = 1;
        while (!(x.frobenius(orbit) == x)) ++orbit;
        CHECK(orbit == residue_order_mod7(p));
        if (p < 60) CHECK(phi7_has_small_factor(p) == !order6);
    }
}

TEST_CASE("galois action matches Frobenius powers") {
    const auto a = galois_vs_frobenius(3, 4);
    CHECK(a.agree);
    CHECK(a.d == 4);
    CHECK(a.points_checked >= 6);
    const auto b = galois_vs_frobenius(3, 1);
    CHECK(b.agree);
    CHECK(b.d == 0);
    const auto c = galois_vs_frobenius(17, 6);
    CHECK(c.agree);
    CHECK(c.d == 3);
    CHECK_THROWS_AS(galois_vs_frobenius(2, 1), HypothesisError);
    CHECK_THROWS_AS(galois_vs_frobenius(5, 1), HypothesisError);
    CHECK_THROWS_AS(galois_vs_frobenius(3, 7), InputError);
    for (u64 p : primes_below(500)) {
        if (p % 7 != 3) continue;
        for (u64 i = 1; i <= 6; ++i) CHECK(galois_vs_frobenius(p, i, 4).agree);
    }
}

TEST_CASE("divisibility by 7") {
    const auto a = seven_divisibility(3);
    CHECK_FALSE(a.divides_p2_p_1);
    CHECK_FALSE(a.divides_p2_minus_1);
    const auto b = seven_divisibility(2);
    CHECK(b.divides_p2_p_1);
    CHECK_FALSE(b.divides_p2_minus_1);
    const auto c = seven_divisibility(13);
    CHECK_FALSE(c.divides_p2_p_1);
    CHECK(c.divides_p2_minus_1);
    for (u64 p : primes_below(2000)) {
        if (p == 7) continue;
        const auto d = seven_divisibility(p);
        CHECK(d.divides_p2_p_1 == (p % 7 == 2 || p % 7 == 4));
        CHECK(d.divides_p2_minus_1 == (p % 7 == 1 || p % 7 == 6));
    }
}

TEST_CASE("exponent identity p^3 + p^4 + p^5 = p^3 (1 + p + p^2)") {
    const std::vector<i64> lhs{0, 0, 0, 1, 1, 1};
    const std::vector<i64> cube{0, 0, 0, 1};
    const std::vector<i64> tri{1, 1, 1};
    std::vector<i64> prod(cube.size() + tri.size() - 1, 0);
    for (std::size_t i = 0; i < cube.size(); ++i)
        for (std::size_t j = 0; j < tri.size(); ++j) prod[i + j] += cube[i] * tri[j];
    CHECK(prod == lhs);
}

TEST_CASE("kitself certificates") {
    const auto a = kitself_certificate(3);
    CHECK(a.passed());
    CHECK(a.conclusion == std::string("K' = K"));
    CHECK(std::find(a.assumptions.begin(), a.assumptions.end(), kAssumeClassNumberOne) != a.assumptions.end());
    CHECK(kitself_certificate(17).passed());
    const auto b = kitself_certificate(2);
    CHECK_FALSE(b.passed());
    CHECK(b.failed_check == std::string("congruence_check"));
    const auto c = kitself_certificate(5);
    CHECK(c.failed_check == std::string("congruence_check"));
    CHECK_THROWS_AS(kitself_certificate(21), InputError);
}

TEST_CASE("base certificates") {
    const auto a = base_certificate(3, 17);
    CHECK(a.passed());
    CHECK(a.conclusion == std::string("K_Φ(A) = K = Q_Φ(A)"));
    CHECK_THROWS_AS(base_certificate(3, 3), InputError);
    const auto b = base_certificate(3, 2);
    CHECK_FALSE(b.passed());
    CHECK(b.failed_check == std::string("kitself_q"));
    CHECK(b.cert_q.failed_check == std::string("congruence_check"));
}

TEST_CASE("parallel certification matches sequential") {
    std::vector<u64> ps;
    for (u64 p : primes_below(400))
        if (p != 7) ps.push_back(p);
    std::vector<InertiaCertificate> seq;
    for (u64 p : ps) seq.push_back(kitself_certificate(p));
    std::vector<std::future<InertiaCertificate>> futs;
    for (u64 p : ps) futs.push_back(std::async(std::launch::async, kitself_certificate, p));
    for (std::size_t i = 0; i < ps.size(); ++i) CHECK(same(futs[i].get(), seq[i]));
}
