#include "cmtwist/twist_calculus.hpp"

#include "cmtwist/errors.hpp"

namespace cmtwist {

namespace {

std::string str(u64 v) { return std::to_string(v); }

void require(bool holds, const char* hypothesis, const std::string& detail) {
    if (!holds) throw HypothesisError(hypothesis, detail);
}

}  // namespace

CharacterSpec make_character(const AbelianField& k, u64 n, std::string label) {
    if (n < 2) throw InputError("character order must be at least 2, got " + str(n));
    const u64 w = roots_of_unity_order(k);
    if (gcd(n, w) != n)
        throw InputError("character with image mu_" + str(n) + "(k) impossible in this field: " +
                         k.describe() + " has only " + str(w) + " roots of unity");
    return {k, n, std::move(label), n};
}

TransferResult central_twist_transfer(bool values_central, bool end_a_over_f) {
    TransferResult out;
    if (values_central) out.end_isomorphic = true;
    out.cocycle_is_homomorphism = values_central && end_a_over_f;
    return out;
}

DiscondResult discond_groups(u64 n, u64 d) {
    if (n == 0 || d == 0 || n % d != 0)
        throw InputError("discond: d = " + str(d) + " must divide n = " + str(n));
    return {n, d, n / d, d, d == 1};
}

TwistXReport twist_x_arithmetic(u64 n, u64 r, u64 w, const TwistXAssumptions& assumed) {
    if (n < 2) throw InputError("character order must be at least 2");
    if (r == 0) throw InputError("r must be positive");
    TwistXReport rep;
    rep.n = n;
    rep.r = r;
    rep.w = w;
    rep.t = gcd(n, 2 * r);
    rep.mu_bound = gcd(rep.t, w);
    rep.assumed = assumed;
    rep.r_even = r % 2 == 0;
    rep.n_not_dividing_r = r % n != 0;

    require(rep.r_even, "r is even", "r = " + str(r));
    require(rep.n_not_dividing_r, "n does not divide r", "n = " + str(n) + ", r = " + str(r));
    require(assumed.f_equals_end_field, "F = F(End(A))", "not assumed");
    require(assumed.iota_c_in_aut, "iota o c takes values in Aut(A)", "not assumed");
    require(assumed.k_in_center, "iota(k) lies in the center of End^0(A)", "not assumed");

    rep.end_b_over_f = true;
    rep.disconnection = true;
    if (!assumed.f_phi_a_equals_f) return rep;

    // Gal(M/F_Phi(B)) sits inside mu_n(k) meet mu_2r(k) = mu_t(k), of order gcd(t, w).
    rep.m_over_phi_b_divisor = rep.mu_bound;
    if (rep.mu_bound == 1) {
        rep.exact_m_over_phi_b = 1;
        rep.phi_b_over_f_exact = n;
        rep.phi_b_equals_m = true;
    } else if (rep.t == 2) {
        // -1 lies in the image (homotheties) and in Im(c) since n is even.
        rep.exact_m_over_phi_b = 2;
        rep.phi_b_over_f_exact = n / 2;
    }
    return rep;
}

TwistXReport twist_x(const WeilDatum& d, const CharacterSpec& c, const TwistXAssumptions& assumed) {
    const bool fits = is_subfield(c.value_field, d.base());
    require(fits, "c takes values in k^x",
            "character values lie in " + c.value_field.describe() + ", not inside " + d.base().describe());
    const bool weil = is_weil_type(d);
    require(weil, "(A, k, iota) is of Weil type", "n_s != n_cs for some embedding s of k");
    TwistXReport rep = twist_x_arithmetic(c.order, weil_r(d), roots_of_unity_order(d.base()), assumed);
    rep.weil_type = weil;
    rep.character_fits_field = fits;
    rep.extension_label = c.extension_label;
    return rep;
}

TwistEReport twist_e(u64 dim_x, u64 dim_y, const AbelianField& k, const WeilDatum& weil,
                     const CharacterSpec& c, const TwistEAssumptions& assumed) {
    if (dim_x == 0 || dim_y == 0) throw InputError("dimensions must be positive");
    TwistEReport rep;
    rep.dim_x = dim_x;
    rep.dim_y = dim_y;
    rep.deg_k = k.degree();
    rep.assumed = assumed;
    rep.extension_label = c.extension_label;
    rep.deg_k_matches = rep.deg_k == 2 * dim_y;
    const bool integral = dim_x % dim_y == 0;
    rep.t = integral ? dim_x / dim_y : 0;
    rep.t_odd = integral && rep.t % 2 == 1;
    rep.character_quadratic = c.order == 2;

    require(rep.deg_k_matches, "[k:Q] = 2 dim(Y)",
            "[k:Q] = " + str(rep.deg_k) + ", dim(Y) = " + str(dim_y));
    require(rep.t_odd, "dim(X) = t dim(Y) for some odd positive integer t",
            "dim(X) = " + str(dim_x) + ", dim(Y) = " + str(dim_y));
    if (!(weil.base() == k)) throw InputError("Weil datum base differs from k");
    if (weil.dimension() != dim_x + dim_y)
        throw InputError("Weil datum has dimension " + str(weil.dimension()) + ", expected dim(X) + dim(Y) = " +
                         str(dim_x + dim_y));
    rep.weil_type = is_weil_type(weil);
    require(rep.weil_type, "(X x Y, k, iota_X x iota_Y) is of Weil type",
            "n_s != n_cs for some embedding s of k");
    require(rep.character_quadratic, "c is the non-trivial character of a quadratic extension M",
            "character order " + str(c.order));
    require(assumed.hom_xy_zero, "Hom(X, Y) = 0", "not assumed");
    require(assumed.f_equals_end_fields, "F = F(End(X)) = F(End(Y))", "not assumed");

    // The cocycle (1, c) has values (1, +-1), central in End^0(X) + End^0(Y).
    rep.end_b_over_f = central_twist_transfer(true, true).end_isomorphic.value_or(false);
    rep.disconnection = true;
    rep.phi_b_equals_m = assumed.f_phi_a_equals_f;
    return rep;
}

std::vector<u64> hodge_exponent_constraint(u64 n, u64 r) {
    if (r % 2 != 0) throw HypothesisError("r is even", "r = " + str(r));
    if (n == 0) throw InputError("n must be positive");
    return divisors(gcd(n, 2 * r));
}

}  // namespace cmtwist
