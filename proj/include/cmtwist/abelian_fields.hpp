#pragma once

// Abelian number fields as subfields of cyclotomic fields.
//
// A field is the pair (conductor m, H <= (Z/m)^x) with the field equal to the
// fixed field of H inside Q(zeta_m). Values are always conductor-normalized,
// so equality is structural. Q is (1, trivial).

#include <cstddef>
#include <string>

#include "cmtwist/residue_groups.hpp"

namespace cmtwist {

class AbelianField {
public:
    /// Fixed field of `h` in Q(zeta_{h.modulus()}), normalized to its conductor.
    static AbelianField fixed_field(const Subgroup& h);

    static AbelianField rationals() { return fixed_field(Subgroup::trivial(1)); }

    u64 conductor() const noexcept { return fixed_group_.modulus(); }
    const Subgroup& fixed_group() const noexcept { return fixed_group_; }
    u64 degree() const noexcept { return euler_phi(conductor()) / fixed_group_.order(); }

    /// Gal(K/Q) = (Z/m)^x / H.
    QuotientGroup galois_group() const { return QuotientGroup(fixed_group_); }

    /// Short human label, e.g. "Q(zeta_7)" or "[m=51, H={1,16}]".
    std::string describe() const;

    friend bool operator==(const AbelianField&, const AbelianField&) = default;
    friend auto operator<=>(const AbelianField&, const AbelianField&) = default;

private:
    explicit AbelianField(Subgroup h) : fixed_group_(std::move(h)) {}
    Subgroup fixed_group_;
};

AbelianField cyclotomic(u64 m);
/// Q(sqrt d) for squarefree d != 0, 1.
AbelianField quadratic(i64 d);

AbelianField compositum(const AbelianField& a, const AbelianField& b);
AbelianField intersect(const AbelianField& a, const AbelianField& b);
/// a is contained in b.
bool is_subfield(const AbelianField& a, const AbelianField& b);

AbelianField maximal_real_subfield(const AbelianField& k);
/// The coset of -1 in Gal(K/Q).
Coset complex_conjugation(const AbelianField& k);
bool is_totally_real(const AbelianField& k);
bool is_cm(const AbelianField& k);

/// Largest N with Q(zeta_N) contained in K. Always even.
u64 roots_of_unity_order(const AbelianField& k);

/// Restriction Gal(K/Q) -> Gal(sub/Q) on coset indices; requires sub <= K.
std::size_t restrict_to(const AbelianField& field, const QuotientGroup& field_group, std::size_t g,
                        const AbelianField& sub, const QuotientGroup& sub_group);

/// Fixed field inside K of a subgroup S of Gal(K/Q), given by coset indices.
AbelianField fixed_field_of(const AbelianField& field, const QuotientGroup& field_group,
                            std::span<const std::size_t> subgroup);

}  // namespace cmtwist
