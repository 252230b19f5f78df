#include <doctest.h>

#include "cmtwist/cm_types.hpp"
#include "cmtwist/errors.hpp"
#include "oracles.hpp"

using namespace cmtwist;

namespace {

AbelianField k41() { return compositum(quadratic(-3), maximal_real_subfield(cyclotomic(17))); }

CMType psi41() {
    const auto k = k41();
    const auto g = k.galois_group();
    const std::vector<std::size_t> basis{g.index_of(50), g.index_of(37)};
    const std::vector<std::array<u64, 2>> coords{{0, 0}, {0, 1}, {0, 4}, {0, 7}, {1, 2}, {1, 3}, {1, 5}, {1, 6}};
    std::vector<std::size_t> psi;
    for (const auto& c : coords) psi.push_back(from_coordinates(g, basis, c));
    return validate_cm_type(k, psi);
}

CMType on7(std::initializer_list<u64> residues) {
    return cm_type_from_residues(cyclotomic(7), std::vector<u64>(residues));
}

// CM fields of degree <= 8 and conductor <= 40.
std::vector<AbelianField> small_cm_fields() {
    std::vector<AbelianField> out;
    for (u64 m = 3; m <= 40; ++m)
        for (const auto& f : oracle::subfields(m))
            if (is_cm(f) && f.degree() <= 8 && std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    return out;
}

}  // namespace

TEST_CASE("validation") {
    CHECK_NOTHROW(psi41());
    CHECK(psi41().dimension() == 8);
    CHECK(on7({1, 2, 3}).labels() == std::vector<u64>{1, 2, 3});
    const auto kq = quadratic(-7);
    const std::vector<u64> both{1, 3};
    CHECK_THROWS_AS(cm_type_from_residues(kq, both), InputError);
    CHECK_THROWS_WITH_AS(on7({1, 2, 5}), doctest::Contains("sigma_2"), InputError);
    CHECK_THROWS_AS(on7({1, 2}), InputError);
    CHECK_THROWS_AS(on7({1, 1, 2}), InputError);
    const std::vector<u64> one{1};
    CHECK_THROWS_AS(cm_type_from_residues(maximal_real_subfield(cyclotomic(7)), one), InputError);
}

TEST_CASE("stabilizer and primitivity") {
    CHECK(stabilizer(psi41()) == std::vector<std::size_t>{0});
    CHECK(is_primitive(psi41()));
    CHECK(oracle::stabilizer_residues(psi41()) == std::vector<u64>{1, 16});
    const auto t = on7({1, 2, 4});
    CHECK(t.group().coset(0).representative() == 1);
    std::vector<u64> stab;
    for (std::size_t i : stabilizer(t)) stab.push_back(t.group().coset(i).representative());
    CHECK(stab == std::vector<u64>{1, 2, 4});
    CHECK_FALSE(is_primitive(t));
    const std::vector<u64> one{1};
    CHECK(is_primitive(cm_type_from_residues(quadratic(-7), one)));
}

TEST_CASE("reflex fields") {
    CHECK(reflex_field(psi41()) == k41());
    CHECK(reflex_field(on7({1, 2, 3})) == cyclotomic(7));
    CHECK(reflex_field(on7({1, 2, 4})) == quadratic(-7));
}

TEST_CASE("reflex types under both conventions") {
    const auto t = on7({1, 2, 3});
    const auto inv = reflex_type(t);
    CHECK(inv.convention == ReflexConvention::inverse);
    CHECK(inv.type.labels() == std::vector<u64>{1, 4, 5});
    CHECK(reflex_type(t, ReflexConvention::conjugate).type.labels() == std::vector<u64>{4, 5, 6});
    const std::vector<u64> one{1};
    const auto q = cm_type_from_residues(quadratic(-3), one);
    CHECK(reflex_type(q, ReflexConvention::inverse).type.labels() == one);
    CHECK(reflex_type(q, ReflexConvention::conjugate).type.labels() == std::vector<u64>{2});
    // Imprimitive: the reflex type lives on the reflex field.
    const auto r = reflex_type(on7({1, 2, 4}));
    CHECK(r.type.field() == quadratic(-7));
}

TEST_CASE("restriction multiplicities") {
    const auto q3 = quadratic(-3);
    const WeilDatum d41(q3, {psi41()});
    const auto n41 = restriction_multiplicities(d41);
    CHECK(n41.counts == std::vector<u64>{4, 4});
    CHECK(is_weil_type(d41));
    CHECK(weil_r(d41) == 8);

    const auto q7 = quadratic(-7);
    const WeilDatum j(q7, {on7({1, 2, 3})});
    CHECK(restriction_multiplicities(j).counts == std::vector<u64>{2, 1});
    CHECK_FALSE(is_weil_type(j));
    const auto e = balance_product(j, q7);
    REQUIRE(e.has_value());
    CHECK(e->labels() == std::vector<u64>{3});
    const WeilDatum a(q7, {on7({1, 2, 3}), *e});
    CHECK(restriction_multiplicities(a).counts == std::vector<u64>{2, 2});
    CHECK(is_weil_type(a));
    CHECK(weil_r(a) == 4);
    CHECK(weil_r(j) == 3);  // integral, but odd

    const WeilDatum odd(q7, {on7({1, 3, 5})});
    CHECK(restriction_multiplicities(odd).counts == std::vector<u64>{1, 2});
    CHECK_FALSE(is_weil_type(odd));
    CHECK_THROWS_AS(WeilDatum(quadratic(-3), {on7({1, 2, 3})}), InputError);
}

TEST_CASE("primitivity and reflex fields against brute force on small CM fields") {
    const auto fields = small_cm_fields();
    REQUIRE(fields.size() >= 10);
    std::size_t types = 0;
    for (const auto& k : fields) {
        for (const auto& t : all_cm_types(k)) {
            ++types;
            const u64 m = k.conductor();
            CHECK(t.dimension() * 2 == k.degree());
            const auto stab = oracle::stabilizer_residues(t);
            CHECK(is_primitive(t) == !oracle::union_of_cosets_for_some_nontrivial(t));
            CHECK(reflex_field(t) == AbelianField::fixed_field(Subgroup::from_elements(m, stab)));
            CHECK((reflex_field(t) == k) == is_primitive(t));
            for (std::size_t s : stabilizer(t)) CHECK(s != t.group().index_of(m - 1));
        }
    }
    CHECK(types > 50);
}

TEST_CASE("translation equivariance of multiplicities") {
    for (u64 m : {7u, 13u, 15u, 20u, 21u}) {
        const auto k = cyclotomic(m);
        for (const auto& sub : oracle::subfields(m)) {
            if (!is_cm(sub) || sub == k) continue;
            const auto kg = k.galois_group();
            const auto sg = sub.galois_group();
            for (const auto& t : all_cm_types(k)) {
                const auto base = restriction_multiplicities(WeilDatum(sub, {t}));
                for (u64 c : base.counts) CHECK(c <= k.degree() / sub.degree());
                for (std::size_t s = 0; s < sg.order(); ++s) {
                    const std::size_t cs = sg.mul(sg.index_of(sub.conductor() - 1), s);
                    CHECK(base.counts[s] + base.counts[cs] == k.degree() / sub.degree());
                }
                for (std::size_t g = 0; g < kg.order(); ++g) {
                    const auto moved = restriction_multiplicities(WeilDatum(sub, {translate(t, g)}));
                    const std::size_t gk = restrict_to(k, kg, g, sub, sg);
                    for (std::size_t s = 0; s < sg.order(); ++s) CHECK(moved.counts[sg.mul(gk, s)] == base.counts[s]);
                }
            }
        }
    }
}
