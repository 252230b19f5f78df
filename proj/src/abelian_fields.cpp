#include "cmtwist/abelian_fields.hpp"

#include <sstream>

#include "cmtwist/errors.hpp"

namespace cmtwist {

namespace {

// Smallest divisor m' of m whose reduction kernel lies in H; that m' is the conductor.
Subgroup normalize(const Subgroup& h) {
    const u64 m = h.modulus();
    for (u64 d : divisors(m)) {
        if (d == m) break;
        bool contains_kernel = true;
        for (const auto& g : unit_group(m)) {
            if (g.residue % d == 1 % d && !h.contains(g.residue)) {
                contains_kernel = false;
                break;
            }
        }
        if (contains_kernel) return reduce_subgroup(h, d);
    }
    return h;
}

}  // namespace

AbelianField AbelianField::fixed_field(const Subgroup& h) { return AbelianField(normalize(h)); }

std::string AbelianField::describe() const {
    std::ostringstream os;
    const u64 m = conductor();
    if (m == 1) return "Q";
    if (fixed_group_.order() == 1) {
        os << "Q(zeta_" << m << ")";
        return os.str();
    }
    os << "[conductor " << m << ", degree " << degree() << ", H={";
    for (std::size_t i = 0; i < fixed_group_.elements().size(); ++i)
        os << (i ? "," : "") << fixed_group_.elements()[i];
    os << "}]";
    return os.str();
}

AbelianField cyclotomic(u64 m) { return AbelianField::fixed_field(Subgroup::trivial(m)); }

AbelianField quadratic(i64 d) {
    const i64 disc = quadratic_discriminant(d);
    const u64 f = static_cast<u64>(disc < 0 ? -disc : disc);
    std::vector<u64> kernel;
    for (const auto& g : unit_group(f))
        if (kronecker(disc, g.residue) == 1) kernel.push_back(g.residue);
    return AbelianField::fixed_field(Subgroup::from_elements(f, std::move(kernel)));
}

AbelianField compositum(const AbelianField& a, const AbelianField& b) {
    const u64 m = lcm(a.conductor(), b.conductor());
    return AbelianField::fixed_field(
        subgroup_meet(lift_subgroup(a.fixed_group(), m), lift_subgroup(b.fixed_group(), m)));
}

AbelianField intersect(const AbelianField& a, const AbelianField& b) {
    const u64 m = lcm(a.conductor(), b.conductor());
    return AbelianField::fixed_field(
        subgroup_join(lift_subgroup(a.fixed_group(), m), lift_subgroup(b.fixed_group(), m)));
}

bool is_subfield(const AbelianField& a, const AbelianField& b) {
    const u64 m = lcm(a.conductor(), b.conductor());
    return lift_subgroup(b.fixed_group(), m).is_subset_of(lift_subgroup(a.fixed_group(), m));
}

AbelianField maximal_real_subfield(const AbelianField& k) {
    const u64 m = k.conductor();
    if (m == 1) return k;
    return AbelianField::fixed_field(subgroup_join(k.fixed_group(), subgroup_generated(m, {m - 1})));
}

Coset complex_conjugation(const AbelianField& k) {
    const auto g = k.galois_group();
    return g.coset(g.index_of(k.conductor() - 1));
}

bool is_totally_real(const AbelianField& k) {
    return k.conductor() == 1 || k.fixed_group().contains(k.conductor() - 1);
}

bool is_cm(const AbelianField& k) { return k.degree() > 1 && !is_totally_real(k); }

u64 roots_of_unity_order(const AbelianField& k) {
    // Q(zeta_N) <= K <= Q(zeta_m) forces N | 2m.
    u64 best = 2;
    for (u64 n : divisors(2 * k.conductor()))
        if (is_subfield(cyclotomic(n), k)) best = lcm(best, n);
    return best;
}

std::size_t restrict_to(const AbelianField& field, const QuotientGroup& field_group, std::size_t g,
                        const AbelianField& sub, const QuotientGroup& sub_group) {
    if (field.conductor() % sub.conductor() != 0)
        throw InputError("restriction target " + sub.describe() + " is not a subfield of " +
                         field.describe());
    return sub_group.index_of(field_group.coset(g).representative() % sub.conductor());
}

AbelianField fixed_field_of(const AbelianField& field, const QuotientGroup& field_group,
                            std::span<const std::size_t> subgroup) {
    std::vector<u64> preimage;
    for (std::size_t i : subgroup) {
        const auto& c = field_group.coset(i).elements;
        preimage.insert(preimage.end(), c.begin(), c.end());
    }
    return AbelianField::fixed_field(Subgroup::from_elements(field.conductor(), std::move(preimage)));
}

}  // namespace cmtwist
