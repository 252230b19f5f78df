#include <doctest.h>

#include "cmtwist/errors.hpp"
#include "cmtwist/twist_calculus.hpp"

using namespace cmtwist;

namespace {

// A CM-type on k choosing the smaller index of each conjugate pair.
CMType half_system(const AbelianField& k) {
    const auto g = k.galois_group();
    const std::size_t c = g.index_of(k.conductor() - 1);
    std::vector<std::size_t> psi;
    for (std::size_t s = 0; s < g.order(); ++s)
        if (s < g.mul(c, s)) psi.push_back(s);
    return validate_cm_type(k, psi);
}

CMType conjugate(const CMType& t) {
    return translate(t, t.group().index_of(t.field().conductor() - 1));
}

// r/2 copies each of psi and c psi: Weil type with the requested r.
WeilDatum balanced(const AbelianField& k, u64 r) {
    const auto psi = half_system(k);
    std::vector<CMType> comps;
    for (u64 i = 0; i < r / 2; ++i) {
        comps.push_back(psi);
        comps.push_back(conjugate(psi));
    }
    return WeilDatum(k, comps);
}

std::string hypothesis_of(auto&& f) {
    try {
        f();
    } catch (const HypothesisError& e) {
        return e.hypothesis();
    }
    return "";
}

}  // namespace

TEST_CASE("characters") {
    CHECK(make_character(quadratic(-3), 3, "M").order == 3);
    CHECK(make_character(quadratic(-7), 2, "L_d").extension_degree == 2);
    CHECK_THROWS_AS(make_character(quadratic(-7), 3, "M"), InputError);
    CHECK_THROWS_AS(make_character(quadratic(-7), 1, "M"), InputError);
}

TEST_CASE("central twist transfer") {
    CHECK(central_twist_transfer(true, true).end_isomorphic == true);
    CHECK(central_twist_transfer(true, true).cocycle_is_homomorphism);
    CHECK_FALSE(central_twist_transfer(false, true).end_isomorphic.has_value());
}

TEST_CASE("discond groups") {
    const auto a = discond_groups(3, 1);
    CHECK(a.gal_phi_b_over_f == 3);
    CHECK(a.phi_b_equals_m);
    const auto b = discond_groups(6, 2);
    CHECK(b.gal_phi_b_over_f == 3);
    CHECK(b.gal_m_over_phi_b == 2);
    CHECK_FALSE(b.phi_b_equals_m);
    CHECK_THROWS_AS(discond_groups(5, 2), InputError);
    for (u64 n = 1; n <= 60; ++n)
        for (u64 d : divisors(n)) {
            const auto r = discond_groups(n, d);
            CHECK(r.gal_phi_b_over_f * r.gal_m_over_phi_b == n);
        }
}

TEST_CASE("twist_x examples") {
    const TwistXAssumptions all;
    const auto x = twist_x(balanced(quadratic(-3), 8), make_character(quadratic(-3), 3, "M"), all);
    CHECK(x.r == 8);
    CHECK(x.t == 1);
    CHECK(x.phi_b_equals_m);
    CHECK(x.phi_b_over_f_exact == 3u);
    CHECK(x.exact_m_over_phi_b == 1u);
    CHECK(x.end_b_over_f);
    CHECK(x.disconnection);

    const auto y = twist_x_arithmetic(6, 2, 6, all);
    CHECK(y.t == 2);
    CHECK(y.exact_m_over_phi_b == 2u);
    CHECK(y.phi_b_over_f_exact == 3u);
    CHECK_FALSE(y.phi_b_equals_m);

    const auto q5 = cyclotomic(5);
    const auto z = twist_x(balanced(q5, 4), make_character(q5, 10, "M"), all);
    CHECK(z.w == 10);
    CHECK(z.t == 2);
    CHECK(z.exact_m_over_phi_b == 2u);
    CHECK(z.phi_b_over_f_exact == 5u);

    const auto v = twist_x_arithmetic(4, 2, 4, all);
    CHECK(v.t == 4);
    CHECK(v.m_over_phi_b_divisor == 4u);
    CHECK_FALSE(v.exact_m_over_phi_b.has_value());
}

TEST_CASE("twist_x hypotheses are named") {
    const TwistXAssumptions all;
    CHECK(hypothesis_of([&] { twist_x_arithmetic(2, 8, 2, all); }) == "n does not divide r");
    CHECK(hypothesis_of([&] { twist_x_arithmetic(3, 3, 6, all); }) == "r is even");
    TwistXAssumptions no_center;
    no_center.k_in_center = false;
    CHECK(hypothesis_of([&] { twist_x_arithmetic(3, 8, 6, no_center); }) ==
          "iota(k) lies in the center of End^0(A)");
    const auto q7 = quadratic(-7);
    const std::vector<u64> psi{1, 2, 3};
    const WeilDatum j(q7, {cm_type_from_residues(cyclotomic(7), psi)});
    CHECK(hypothesis_of([&] { twist_x(j, make_character(q7, 2, "M"), all); }) == "(A, k, iota) is of Weil type");
    const WeilDatum unbalanced(q7, {cm_type_from_residues(cyclotomic(7), psi),
                                    cm_type_from_residues(cyclotomic(7), psi)});
    CHECK(hypothesis_of([&] { twist_x(unbalanced, make_character(q7, 2, "M"), all); }) ==
          "(A, k, iota) is of Weil type");
    CHECK(hypothesis_of([&] { twist_x(balanced(q7, 4), make_character(quadratic(-3), 3, "M"), all); }) ==
          "c takes values in k^x");
}

TEST_CASE("without F_Phi(A) = F only (i) and (ii) are concluded") {
    TwistXAssumptions a;
    a.f_phi_a_equals_f = false;
    const auto r = twist_x_arithmetic(3, 8, 6, a);
    CHECK(r.end_b_over_f);
    CHECK_FALSE(r.m_over_phi_b_divisor.has_value());
    CHECK_FALSE(r.phi_b_equals_m);
}

TEST_CASE("twist_x divisor-chain invariants, n, r <= 100") {
    const TwistXAssumptions all;
    for (u64 n = 2; n <= 100; ++n)
        for (u64 r = 2; r <= 100; r += 2) {
            if (r % n == 0) continue;
            for (u64 w : {u64{2}, u64{4}, u64{6}, lcm(n, 2)}) {
                const auto rep = twist_x_arithmetic(n, r, w, all);
                REQUIRE(rep.m_over_phi_b_divisor.has_value());
                CHECK(n % rep.t == 0);
                CHECK(2 * r % rep.t == 0);
                CHECK(rep.t % *rep.m_over_phi_b_divisor == 0);
                if (rep.exact_m_over_phi_b) {
                    CHECK(*rep.m_over_phi_b_divisor % *rep.exact_m_over_phi_b == 0);
                    CHECK(*rep.phi_b_over_f_exact * *rep.exact_m_over_phi_b == n);
                }
                CHECK_FALSE((rep.phi_b_equals_m && rep.exact_m_over_phi_b.value_or(1) > 1));
                if (n % 2 == 1) CHECK(rep.t % 2 == 1);
                if (n % 2 == 1 && gcd(n, r) == 1) {
                    CHECK(rep.t == 1);
                    CHECK(rep.phi_b_equals_m);
                }
            }
        }
}

TEST_CASE("twist_e") {
    const TwistEAssumptions all;
    const auto q7 = quadratic(-7);
    const std::vector<u64> j{1, 2, 3}, e{3};
    const WeilDatum a(q7, {cm_type_from_residues(cyclotomic(7), j), cm_type_from_residues(q7, e)});
    const auto c = make_character(q7, 2, "L_d");
    const auto rep = twist_e(3, 1, q7, a, c, all);
    CHECK(rep.t == 3);
    CHECK(rep.phi_b_equals_m);
    CHECK(rep.end_b_over_f);
    CHECK(hypothesis_of([&] { twist_e(2, 1, q7, a, c, all); }) ==
          "dim(X) = t dim(Y) for some odd positive integer t");
    CHECK(hypothesis_of([&] { twist_e(3, 2, q7, a, c, all); }) == "[k:Q] = 2 dim(Y)");
    TwistEAssumptions no_hom;
    no_hom.hom_xy_zero = false;
    CHECK(hypothesis_of([&] { twist_e(3, 1, q7, a, c, no_hom); }) == "Hom(X, Y) = 0");

    // Degree-6 k, dim X = 9, dim Y = 3.
    const auto k = cyclotomic(9);
    const auto d = balanced(k, 4);
    REQUIRE(d.dimension() == 12);
    const auto r6 = twist_e(9, 3, k, d, make_character(k, 2, "M"), all);
    CHECK(r6.t == 3);
    CHECK(r6.phi_b_equals_m);
}

TEST_CASE("hodge exponent constraint") {
    CHECK(hodge_exponent_constraint(3, 8) == std::vector<u64>{1});
    CHECK(hodge_exponent_constraint(6, 2) == std::vector<u64>{1, 2});
    CHECK(hodge_exponent_constraint(4, 4) == std::vector<u64>{1, 2, 4});
    CHECK_THROWS_AS(hodge_exponent_constraint(4, 3), HypothesisError);
}

TEST_CASE("reports are deterministic") {
    const auto k = quadratic(-3);
    const auto a = twist_x(balanced(k, 8), make_character(k, 3, "M"), {});
    const auto b = twist_x(balanced(k, 8), make_character(k, 3, "M"), {});
    CHECK(a.t == b.t);
    CHECK(a.phi_b_over_f_exact == b.phi_b_over_f_exact);
    CHECK(a.m_over_phi_b_divisor == b.m_over_phi_b_divisor);
}
