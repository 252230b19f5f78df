#pragma once

/**
 * @file twist_calculus.hpp
 * @brief Degree calculus for connectedness extensions of character twists.
 *
 * Given an abelian variety A of Weil type for a CM field k and a character
 * c of order n with values in k^x, the twist B of A by c has connectedness
 * extension F_Phi(B) inside the Z/n-extension M cut out by c. Only what the
 * theorems force is reported: Gal(M/F_Phi(B)) embeds in mu_t(k) with
 * t = gcd(n, 2r), it is exactly {+-1} when t = 2, and F_Phi(B) = M when the
 * bound collapses to 1. Nothing about the l-adic image itself is computed.
 *
 * Hypotheses that cannot be checked from arithmetic data alone (for example
 * F = F_Phi(A)) are passed in as assumption flags and echoed verbatim in
 * every report.
 */

#include <optional>
#include <string>
#include <vector>

#include "cmtwist/cm_types.hpp"

namespace cmtwist {

struct CharacterSpec {
    AbelianField value_field;
    u64 order = 0;
    std::string extension_label;
    u64 extension_degree = 0;
};

/// Character of order n with image mu_n(k); requires n | w(k).
CharacterSpec make_character(const AbelianField& k, u64 n, std::string label);

/// Result of transferring endomorphisms through a cocycle twist.
struct TransferResult {
    /// End_F(A) ~ End_F(B); nullopt when the cocycle is not central (no conclusion).
    std::optional<bool> end_isomorphic;
    /// The cocycle is a homomorphism into the center's units.
    bool cocycle_is_homomorphism = false;
};

TransferResult central_twist_transfer(bool values_central, bool end_a_over_f);

struct DiscondResult {
    u64 n = 0;
    u64 d = 0;
    u64 gal_phi_b_over_f = 0;  ///< order of the cyclic group Gal(F_Phi(B)/F)
    u64 gal_m_over_phi_b = 0;  ///< order of the cyclic group Gal(M/F_Phi(B))
    bool phi_b_equals_m = false;
};

/// Requires d | n.
DiscondResult discond_groups(u64 n, u64 d);

/// Assumptions that are not computable here and are echoed into reports.
struct TwistXAssumptions {
    bool f_equals_end_field = true;  ///< F = F(End(A))
    bool f_phi_a_equals_f = true;    ///< F_Phi(A) = F
    bool iota_c_in_aut = true;       ///< iota o c takes values in Aut(A)
    bool k_in_center = true;         ///< iota(k) lies in the center of End^0(A)
};

struct TwistXReport {
    u64 n = 0;
    u64 r = 0;
    u64 t = 0;
    u64 w = 0;
    u64 mu_bound = 0;
    std::string extension_label;

    // checked hypotheses
    bool r_even = false;
    bool n_not_dividing_r = false;
    bool weil_type = false;
    bool character_fits_field = false;
    TwistXAssumptions assumed;

    // conclusions
    bool end_b_over_f = false;
    bool disconnection = false;
    std::optional<u64> m_over_phi_b_divisor;
    std::optional<u64> exact_m_over_phi_b;
    std::optional<u64> phi_b_over_f_exact;
    bool phi_b_equals_m = false;
};

/// The arithmetic core: n, r and w(k) determine every conclusion.
/// Throws HypothesisError for r odd, n | r, or an unmet assumption flag.
TwistXReport twist_x_arithmetic(u64 n, u64 r, u64 w, const TwistXAssumptions& assumed);

/// Checks the datum is Weil type and c takes values in k, then applies the core.
TwistXReport twist_x(const WeilDatum& d, const CharacterSpec& c, const TwistXAssumptions& assumed);

struct TwistEAssumptions {
    bool hom_xy_zero = true;        ///< Hom(X, Y) = 0
    bool f_equals_end_fields = true;  ///< F = F(End(X)) = F(End(Y))
    bool f_phi_a_equals_f = true;   ///< F_Phi(A) = F
};

struct TwistEReport {
    u64 dim_x = 0;
    u64 dim_y = 0;
    u64 t = 0;
    u64 deg_k = 0;
    std::string extension_label;

    bool deg_k_matches = false;
    bool t_odd = false;
    bool weil_type = false;
    bool character_quadratic = false;
    TwistEAssumptions assumed;

    bool end_b_over_f = false;
    bool disconnection = false;
    bool phi_b_equals_m = false;
};

/// A = X x Y with [k:Q] = 2 dim Y, dim X = t dim Y, t odd, A of Weil type;
/// B = X x Y^c for a quadratic character c cutting out M.
TwistEReport twist_e(u64 dim_x, u64 dim_y, const AbelianField& k, const WeilDatum& weil,
                     const CharacterSpec& c, const TwistEAssumptions& assumed);

/// Orders of elements allowed in Im(c) meet the l-adic image: the divisors of gcd(n, 2r).
std::vector<u64> hodge_exponent_constraint(u64 n, u64 r);

}  // namespace cmtwist
