#include "cmtwist/cft_inertia.hpp"

#include <random>
#include <sstream>

#include "cmtwist/errors.hpp"

namespace cmtwist {

namespace {

std::string str(u64 v) { return std::to_string(v); }
std::string str(const BigInt& v) { return v.str(); }

constexpr u64 kMaxPrime = u64{1} << 31;

void require_prime(u64 p) {
    if (!is_prime(p)) throw InputError(str(p) + " is not prime");
    if (p >= kMaxPrime) throw InputError("prime " + str(p) + " is too large");
}

void require_p_3_mod_7(u64 p) {
    if (!requires_p_3_mod_7(p)) throw HypothesisError("p = 3 (mod 7)", "p = " + str(p) + " = " + str(p % 7) + " mod 7");
}

// ---- dense polynomials over F_p, low degree first, no trailing zeros ----

using Poly = std::vector<u64>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& f, u64 p) {
    trim(a);
    const u64 lead_inv = powmod(f.back(), p - 2, p);
    while (a.size() >= f.size()) {
        const u64 coef = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - f.size();
        for (std::size_t j = 0; j < f.size(); ++j)
            a[shift + j] = (a[shift + j] + p - coef * f[j] % p) % p;
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(out), f, p);
}

Poly poly_powmod(Poly base, u64 e, const Poly& f, u64 p) {
    Poly result{1};
    base = poly_mod(std::move(base), f, p);
    while (e > 0) {
        if (e & 1U) result = poly_mulmod(result, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1U;
    }
    return result;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Poly phi7_mod(u64 p) { return Poly(7, 1 % p); }

// ---- integer polynomials for the unit identity ----

using IntPoly = std::vector<i64>;

IntPoly int_mul(const IntPoly& a, const IntPoly& b) {
    IntPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// Remainder modulo the monic Phi_7, padded to length 6.
IntPoly int_mod_phi7(IntPoly a) {
    for (std::size_t k = a.size(); k-- > 6;) {
        const i64 c = a[k];
        for (std::size_t j = 0; j <= 6; ++j) a[k - 6 + j] -= c;
    }
    a.resize(6, 0);
    return a;
}

// ---- helpers for certificates ----

CertificateCheck check(std::string name, std::string anchor, bool pass, std::string witness) {
    return {std::move(name), std::move(anchor), pass, std::move(witness)};
}

CertificateCheck skipped(std::string name, std::string anchor) {
    return {std::move(name), std::move(anchor), false, "skipped: requires p = 3 (mod 7)"};
}

}  // namespace

// ---------------------------------------------------------------------------
// Fp6Element

Fp6Element::Fp6Element(u64 p, std::array<u64, 6> coeffs) : p_(p), c_(coeffs) {
    if (p < 2 || p >= kMaxPrime) throw InputError("characteristic out of range");
    for (u64& v : c_) v %= p_;
}

Fp6Element Fp6Element::operator+(const Fp6Element& o) const {
    std::array<u64, 6> out{};
    for (std::size_t j = 0; j < 6; ++j) out[j] = (c_[j] + o.c_[j]) % p_;
    return {p_, out};
}

Fp6Element Fp6Element::operator*(const Fp6Element& o) const {
    // Multiply modulo x^7 - 1, then fold x^6 = -(1 + x + ... + x^5).
    std::array<u64, 7> acc{};
    for (std::size_t i = 0; i < 6; ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < 6; ++j) {
            const std::size_t k = (i + j) % 7;
            acc[k] = (acc[k] + c_[i] * o.c_[j]) % p_;
        }
    }
    std::array<u64, 6> out{};
    for (std::size_t j = 0; j < 6; ++j) out[j] = (acc[j] + p_ - acc[6]) % p_;
    return {p_, out};
}

Fp6Element Fp6Element::pow(const BigInt& e) const {
    if (e < 0) throw InputError("negative exponent");
    Fp6Element result = one(p_);
    const std::size_t bits = e == 0 ? 0 : boost::multiprecision::msb(e) + 1;
    for (std::size_t b = bits; b-- > 0;) {
        result = result * result;
        if (boost::multiprecision::bit_test(e, b)) result = result * *this;
    }
    return result;
}

Fp6Element Fp6Element::frobenius(u64 times) const {
    Fp6Element out = *this;
    for (u64 k = 0; k < times; ++k) out = out.pow(BigInt(p_));
    return out;
}

Fp6Element Fp6Element::galois(u64 i) const {
    if (i % 7 == 0) throw InputError("galois: exponent must be a unit mod 7");
    std::array<u64, 7> acc{};
    for (std::size_t j = 0; j < 6; ++j) {
        const std::size_t k = (j * i) % 7;
        acc[k] = (acc[k] + c_[j]) % p_;
    }
    std::array<u64, 6> out{};
    for (std::size_t j = 0; j < 6; ++j) out[j] = (acc[j] + p_ - acc[6]) % p_;
    return {p_, out};
}

// ---------------------------------------------------------------------------
// Scalar checks

u64 residue_order_mod7(u64 p) {
    require_prime(p);
    if (p == 7) throw InputError("p must differ from 7");
    return multiplicative_order(p % 7, 7);
}

bool requires_p_3_mod_7(u64 p) { return p % 7 == 3; }

bool phi7_irreducible_mod(u64 p) {
    require_prime(p);
    const Poly f = phi7_mod(p);
    const Poly x{0, 1};
    Poly h = x;
    for (int k = 1; k <= 3; ++k) {
        h = poly_powmod(h, p, f, p);
        Poly diff = h;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        Poly g = poly_gcd(f, diff, p);
        if (g.size() > 1) return false;
    }
    return true;
}

InertiaOrder inertia_order(u64 p) {
    require_prime(p);
    require_p_3_mod_7(p);
    const BigInt bp(p);
    InertiaOrder out;
    out.p6_minus_1 = boost::multiprecision::pow(bp, 6) - 1;
    out.p2_plus_p_plus_1 = bp * bp + bp + 1;
    out.gcd_value = boost::multiprecision::gcd(out.p6_minus_1, bp * bp * bp * out.p2_plus_p_plus_1);
    out.gcd_matches = out.gcd_value == out.p2_plus_p_plus_1;
    out.divides_p3_minus_1 = (bp * bp * bp - 1) % out.p2_plus_p_plus_1 == 0;
    if (out.p6_minus_1 % out.p2_plus_p_plus_1 != 0)
        throw std::logic_error("p^2 + p + 1 does not divide p^6 - 1");
    out.order = out.p6_minus_1 / out.p2_plus_p_plus_1;
    return out;
}

std::array<u64, 3> frobenius_exponents(u64 p) {
    require_prime(p);
    require_p_3_mod_7(p);
    return {powmod(p, 3, 7), powmod(p, 4, 7), powmod(p, 5, 7)};
}

UnitGeneratorReport unit_generator_check() {
    UnitGeneratorReport rep;
    // -1 - zeta_7 evaluated at zeta_7 = 1, i.e. modulo the prime (1 - zeta_7).
    const IntPoly unit{-1, -1};
    i64 value = 0;
    for (i64 coef : unit) value += coef;
    rep.reduction_value = ((value % 7) + 7) % 7;
    rep.reduction_order = multiplicative_order(static_cast<u64>(rep.reduction_value), 7);
    const IntPoly lhs = int_mod_phi7({1, 0, -1});
    const IntPoly rhs = int_mod_phi7(int_mul({-1, 1}, unit));
    rep.identity_holds = lhs == rhs;
    // prod_{i=1..6} (-1 - zeta^i) = Phi_7(-1)
    i64 norm = 0;
    for (int k = 0, s = 1; k <= 6; ++k, s = -s) norm += s;
    rep.norm = norm;
    return rep;
}

GaloisFrobeniusResult galois_vs_frobenius(u64 p, u64 i, std::size_t trials) {
    require_prime(p);
    if (i < 1 || i > 6) throw InputError("i must lie in 1..6");
    if (!phi7_irreducible_mod(p))
        throw HypothesisError("Phi_7 irreducible mod p", "p = " + str(p) + " is not inert in Q(zeta_7)");
    require_p_3_mod_7(p);

    GaloisFrobeniusResult out;
    out.i = i;
    u64 d = 0;
    while (powmod(p, d, 7) != i) ++d;
    out.d = d;

    std::vector<Fp6Element> points;
    for (std::size_t j = 0; j < 6; ++j) {
        std::array<u64, 6> e{};
        e[j] = 1;
        points.emplace_back(p, e);
    }
    std::mt19937_64 rng(kGaloisSampleSeed ^ (p * 1000003ULL + i));
    std::uniform_int_distribution<u64> coef(0, p - 1);
    for (std::size_t t = 0; t < trials; ++t) {
        std::array<u64, 6> e{};
        for (u64& v : e) v = coef(rng);
        points.emplace_back(p, e);
    }
    out.agree = true;
    for (const auto& u : points)
        if (!(u.galois(i) == u.frobenius(d))) out.agree = false;
    out.points_checked = points.size();
    return out;
}

SevenDivisibility seven_divisibility(u64 p) {
    require_prime(p);
    if (p == 7) throw InputError("p must differ from 7");
    const u64 r = p % 7;
    return {(r * r + r + 1) % 7 == 0, (r * r + 6) % 7 == 0};
}

// ---------------------------------------------------------------------------
// Certificates

InertiaCertificate kitself_certificate(u64 p) {
    require_prime(p);
    InertiaCertificate cert;
    cert.p = p;
    cert.assumptions = {kAssumeClassNumberOne};
    auto& c = cert.checks;

    c.push_back(check("p_prime", "p is a prime", true, str(p) + " is prime"));
    const bool congruent = requires_p_3_mod_7(p);
    c.push_back(check("congruence_check", "p = 3 (mod 7)", congruent,
                      "p mod 7 = " + str(p % 7)));

    if (congruent) {
        const u64 ord = residue_order_mod7(p);
        const bool irreducible = phi7_irreducible_mod(p);
        c.push_back(check("inert_in_K", "p is inert in K/Q; (O_K/pO_K)^x cyclic of order p^6 - 1",
                          ord == 6 && irreducible,
                          "order of p mod 7 = " + str(ord) + "; Phi_7 irreducible mod p: " +
                              (irreducible ? "yes" : "no")));

        const InertiaOrder io = inertia_order(p);
        c.push_back(check("gcd_check", "gcd(p^6 - 1, p^3(p^2 + p + 1)) = p^2 + p + 1",
                          io.gcd_matches && io.divides_p3_minus_1,
                          "gcd = " + str(io.gcd_value) + ", p^2 + p + 1 = " + str(io.p2_plus_p_plus_1) +
                              ", divides p^3 - 1: " + (io.divides_p3_minus_1 ? "yes" : "no")));
        c.push_back(check("inertia_order", "#(I_p) = (p^6 - 1)/(p^2 + p + 1)",
                          io.order * io.p2_plus_p_plus_1 == io.p6_minus_1,
                          str(io.p6_minus_1) + " / " + str(io.p2_plus_p_plus_1) + " = " + str(io.order)));

        const auto fe = frobenius_exponents(p);
        c.push_back(check("frobenius_exponents", "p^3 = 6, p^4 = 4, p^5 = 5 (mod 7)",
                          fe == std::array<u64, 3>{6, 4, 5},
                          "p^3 = " + str(fe[0]) + ", p^4 = " + str(fe[1]) + ", p^5 = " + str(fe[2]) + " mod 7"));

        bool agree = true;
        std::ostringstream w;
        for (u64 i : {4, 5, 6}) {
            const auto r = galois_vs_frobenius(p, i, 8);
            agree = agree && r.agree;
            w << "sigma_" << i << " = Frob^" << r.d << " on " << r.points_checked << " points; ";
        }
        c.push_back(check("frobenius_galois_agreement",
                          "sigma_4(u) = u^{p^4}, sigma_5(u) = u^{p^5}, sigma_6(u) = u^{p^3} mod p", agree,
                          w.str()));

        const BigInt bp(p);
        const BigInt lhs = boost::multiprecision::pow(bp, 3) + boost::multiprecision::pow(bp, 4) +
                           boost::multiprecision::pow(bp, 5);
        const BigInt rhs = boost::multiprecision::pow(bp, 3) * (bp * bp + bp + 1);
        c.push_back(check("eta_exponent", "1/eta(u) = u^{-p^3(p^2 + p + 1)}", lhs == rhs,
                          "p^3 + p^4 + p^5 = " + str(lhs) + " = p^3(p^2 + p + 1)"));

        const auto sd = seven_divisibility(p);
        c.push_back(check("seven_nondivisibility", "7 does not divide p^2 + p + 1", !sd.divides_p2_p_1,
                          "p^2 + p + 1 = " + str(io.p2_plus_p_plus_1) + ", mod 7 = " +
                              str(io.p2_plus_p_plus_1 % 7)));
        const BigInt ell = bp * bp - 1;
        c.push_back(check("elliptic_order", "#(O_k/pO_k)^x = p^2 - 1, not divisible by 7",
                          !sd.divides_p2_minus_1, "p^2 - 1 = " + str(ell) + ", mod 7 = " + str(ell % 7)));
    } else {
        for (auto [name, anchor] : {
                 std::pair{"inert_in_K", "p is inert in K/Q; (O_K/pO_K)^x cyclic of order p^6 - 1"},
                 std::pair{"gcd_check", "gcd(p^6 - 1, p^3(p^2 + p + 1)) = p^2 + p + 1"},
                 std::pair{"inertia_order", "#(I_p) = (p^6 - 1)/(p^2 + p + 1)"},
                 std::pair{"frobenius_exponents", "p^3 = 6, p^4 = 4, p^5 = 5 (mod 7)"},
                 std::pair{"frobenius_galois_agreement",
                           "sigma_4(u) = u^{p^4}, sigma_5(u) = u^{p^5}, sigma_6(u) = u^{p^3} mod p"},
                 std::pair{"eta_exponent", "1/eta(u) = u^{-p^3(p^2 + p + 1)}"},
                 std::pair{"seven_nondivisibility", "7 does not divide p^2 + p + 1"},
                 std::pair{"elliptic_order", "#(O_k/pO_k)^x = p^2 - 1, not divisible by 7"}})
            c.push_back(skipped(name, anchor));
    }

    const auto ug = unit_generator_check();
    c.push_back(check("unit_generator", "-1 - zeta_7 = (1 - zeta_7^2)/(zeta_7 - 1) maps to -2, a generator of (Z/7)^x",
                      ug.surjective(),
                      "reduction = " + std::to_string(ug.reduction_value) + " mod 7 of order " +
                          str(ug.reduction_order) + "; unit identity " + (ug.identity_holds ? "holds" : "fails") +
                          "; norm = " + std::to_string(ug.norm)));
    c.push_back(check("class_number_one", "the class number of K is one", true, "assumed"));

    for (const auto& ch : c) {
        if (!ch.pass) {
            cert.failed_check = ch.name;
            return cert;
        }
    }
    cert.conclusion = "K' = K";
    return cert;
}

BaseCertificate base_certificate(u64 p, u64 q) {
    require_prime(p);
    require_prime(q);
    if (p == q) throw InputError("p and q must be distinct primes, got p = q = " + str(p));
    BaseCertificate cert;
    cert.p = p;
    cert.q = q;
    cert.assumptions = {kAssumeClassNumberOne, kAssumeGoodReduction};
    cert.cert_p = kitself_certificate(p);
    cert.cert_q = kitself_certificate(q);
    auto& c = cert.checks;
    c.push_back(check("distinct_primes", "p and q are distinct", true, "p = " + str(p) + ", q = " + str(q)));
    c.push_back(check("kitself_p", "the only K' with K <= K' <= K(A_p), unramified away from 7, is K",
                      cert.cert_p.passed(),
                      cert.cert_p.passed() ? "K' = K" : "failed at " + cert.cert_p.failed_check.value_or("?")));
    c.push_back(check("kitself_q", "the only K' with K <= K' <= K(A_q), unramified away from 7, is K",
                      cert.cert_q.passed(),
                      cert.cert_q.passed() ? "K' = K" : "failed at " + cert.cert_q.failed_check.value_or("?")));
    c.push_back(check("odd_primes", "p and q are odd primes", p % 2 == 1 && q % 2 == 1,
                      "p = " + str(p) + ", q = " + str(q)));
    c.push_back(check("unramified_intersection", "K(A_p) meet K(A_q) is unramified over K away from 7", true,
                      std::string("assumed: ") + kAssumeGoodReduction));
    c.push_back(check("containment", "K_Phi(A) lies in K(A_n) for every n >= 3", p >= 3 && q >= 3,
                      "n = " + str(p) + " and n = " + str(q)));
    for (const auto& ch : c) {
        if (!ch.pass) {
            cert.failed_check = ch.name;
            return cert;
        }
    }
    cert.conclusion = "K_Φ(A) = K = Q_Φ(A)";
    return cert;
}

}  // namespace cmtwist
