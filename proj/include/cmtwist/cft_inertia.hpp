#pragma once

/**
 * @file cft_inertia.hpp
 * @brief Inertia and Frobenius arithmetic over K = Q(zeta_7) at primes p = 3 mod 7.
 *
 * For such p the prime is inert in K, so O_K/pO_K = F_p[x]/Phi_7(x) is the
 * field with p^6 elements. The certificates below reduce the statement
 * "no extension K'/K inside K(A_p), unramified away from 7, is nontrivial"
 * to checkable integer and finite-field identities:
 *
 *   #I_p = (p^6 - 1) / (p^2 + p + 1),
 *   sigma_4, sigma_5, sigma_6 act as u -> u^{p^4}, u^{p^5}, u^{p^3},
 *   7 does not divide p^2 + p + 1 nor p^2 - 1.
 *
 * Class number one of Q(zeta_7) and good reduction outside 7 are recorded as
 * assumptions, never computed.
 */

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cmtwist/arith.hpp"

namespace cmtwist {

using BigInt = boost::multiprecision::cpp_int;

/// Seed for the pseudo-random sample in galois_vs_frobenius.
inline constexpr u64 kGaloisSampleSeed = 0x7a3c'0617'2025'0003ULL;

/// Element of F_p[x]/(Phi_7), coefficients of 1, x, ..., x^5.
class Fp6Element {
public:
    Fp6Element(u64 p, std::array<u64, 6> coeffs);
    static Fp6Element zero(u64 p) { return {p, {}}; }
    static Fp6Element one(u64 p) { return {p, {1, 0, 0, 0, 0, 0}}; }
    static Fp6Element x(u64 p) { return {p, {0, 1, 0, 0, 0, 0}}; }

    u64 characteristic() const noexcept { return p_; }
    const std::array<u64, 6>& coeffs() const noexcept { return c_; }

    Fp6Element operator+(const Fp6Element& o) const;
    Fp6Element operator*(const Fp6Element& o) const;
    Fp6Element pow(const BigInt& e) const;
    /// u -> u^p, applied `times` times.
    Fp6Element frobenius(u64 times) const;
    /// The ring map x -> x^i (i a unit mod 7).
    Fp6Element galois(u64 i) const;

    friend bool operator==(const Fp6Element&, const Fp6Element&) = default;

private:
    u64 p_;
    std::array<u64, 6> c_;
};

/// Multiplicative order of p mod 7. Throws InputError for p = 7 or p not prime.
u64 residue_order_mod7(u64 p);
bool requires_p_3_mod_7(u64 p);

/// Phi_7 irreducible over F_p, decided by gcd(x^{p^k} - x, Phi_7) = 1 for k = 1, 2, 3.
bool phi7_irreducible_mod(u64 p);

struct InertiaOrder {
    BigInt p6_minus_1;
    BigInt p2_plus_p_plus_1;
    BigInt gcd_value;  ///< gcd(p^6 - 1, p^3 (p^2 + p + 1))
    bool gcd_matches = false;
    bool divides_p3_minus_1 = false;
    BigInt order;  ///< (p^6 - 1) / (p^2 + p + 1)
};

/// Throws HypothesisError unless p = 3 mod 7.
InertiaOrder inertia_order(u64 p);

/// (p^3, p^4, p^5) mod 7; throws HypothesisError unless p = 3 mod 7.
std::array<u64, 3> frobenius_exponents(u64 p);

struct UnitGeneratorReport {
    i64 reduction_value = 0;  ///< -1 - zeta_7 under zeta_7 -> 1, reduced to [0, 7)
    u64 reduction_order = 0;
    bool identity_holds = false;  ///< (1 - x^2) = (x - 1)(-1 - x) in Z[x]/Phi_7
    i64 norm = 0;                 ///< N(-1 - zeta_7) = Phi_7(-1)
    bool surjective() const { return reduction_order == 6 && identity_holds && (norm == 1 || norm == -1); }
};

UnitGeneratorReport unit_generator_check();

struct GaloisFrobeniusResult {
    u64 i = 0;
    u64 d = 0;  ///< p^d = i mod 7
    std::size_t points_checked = 0;
    bool agree = false;
};

/// sigma_i (x -> x^i) against u -> u^{p^d}, on the basis {1..x^5} plus `trials`
/// pseudo-random elements. Throws HypothesisError if p is not 3 mod 7 or Phi_7
/// is reducible mod p.
GaloisFrobeniusResult galois_vs_frobenius(u64 p, u64 i, std::size_t trials = 16);

struct SevenDivisibility {
    bool divides_p2_p_1 = false;  ///< 7 | p^2 + p + 1
    bool divides_p2_minus_1 = false;  ///< 7 | p^2 - 1
};

SevenDivisibility seven_divisibility(u64 p);

struct CertificateCheck {
    std::string name;
    std::string anchor;
    bool pass = false;
    std::string witness;
};

struct InertiaCertificate {
    u64 p = 0;
    std::vector<CertificateCheck> checks;
    std::optional<std::string> conclusion;
    std::optional<std::string> failed_check;
    std::vector<std::string> assumptions;

    bool passed() const { return conclusion.has_value(); }
};

/// Runs every check for one prime; the conclusion is set only if all pass.
InertiaCertificate kitself_certificate(u64 p);

struct BaseCertificate {
    u64 p = 0;
    u64 q = 0;
    std::vector<CertificateCheck> checks;
    InertiaCertificate cert_p;
    InertiaCertificate cert_q;
    std::vector<std::string> assumptions;
    std::optional<std::string> conclusion;
    std::optional<std::string> failed_check;

    bool passed() const { return conclusion.has_value(); }
};

/// Throws InputError if p = q or either is not prime.
BaseCertificate base_certificate(u64 p, u64 q);

inline constexpr const char* kAssumeClassNumberOne = "class number of Q(zeta_7) is 1";
inline constexpr const char* kAssumeGoodReduction = "A has good reduction outside 7";

}  // namespace cmtwist
