#pragma once

/**
 * @file residue_groups.hpp
 * @brief Finite abelian groups (Z/m)^x, their subgroups and quotients.
 *
 * Subgroups are stored as explicit sorted element sets. Moduli here are
 * conductors of small abelian fields, so every construction is exhaustive and
 * cheap. The moduli 1 and 2 both give the trivial group and are normalized to
 * 1; the trivial group over modulus 1 has an empty element list and order 1.
 */

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cmtwist/arith.hpp"

namespace cmtwist {

/// Largest modulus accepted by the explicit-set engine.
inline constexpr u64 kMaxModulus = 200'000;

/// m with 2 folded onto 1; rejects 0 and moduli above kMaxModulus.
u64 normalize_modulus(u64 m);

struct GroupElt {
    u64 residue = 1;
    u64 modulus = 1;

    friend auto operator<=>(const GroupElt&, const GroupElt&) = default;
};

/// All residues in [1, m) coprime to m. For m = 1 (or 2) the list is empty.
std::vector<GroupElt> unit_group(u64 m);

class Subgroup {
public:
    /// Validates closure and coprimality; throws InputError otherwise.
    static Subgroup from_elements(u64 m, std::vector<u64> elements);

    /// Trivial subgroup {1}.
    static Subgroup trivial(u64 m);
    /// The full group (Z/m)^x.
    static Subgroup full(u64 m);

    u64 modulus() const noexcept { return modulus_; }
    /// Sorted residues; empty for modulus 1.
    const std::vector<u64>& elements() const noexcept { return elements_; }
    u64 order() const noexcept { return modulus_ == 1 ? 1 : elements_.size(); }
    bool contains(u64 residue) const;
    bool is_subset_of(const Subgroup& other) const;

    friend bool operator==(const Subgroup&, const Subgroup&) = default;
    friend auto operator<=>(const Subgroup&, const Subgroup&) = default;

private:
    Subgroup(u64 m, std::vector<u64> elements) : modulus_(m), elements_(std::move(elements)) {}
    friend Subgroup subgroup_generated(u64, std::span<const u64>);

    u64 modulus_ = 1;
    std::vector<u64> elements_;
};

/// Smallest subgroup containing `gens`. Rejects non-units.
Subgroup subgroup_generated(u64 m, std::span<const u64> gens);
Subgroup subgroup_generated(u64 m, std::initializer_list<u64> gens);

/// Group generated by the elements of two subgroups of the same modulus.
Subgroup subgroup_join(const Subgroup& a, const Subgroup& b);
Subgroup subgroup_meet(const Subgroup& a, const Subgroup& b);

/// Preimage of `h` under reduction (Z/big)^x -> (Z/h.modulus())^x.
Subgroup lift_subgroup(const Subgroup& h, u64 big);
/// Image of `h` under reduction to a divisor `small` of its modulus.
Subgroup reduce_subgroup(const Subgroup& h, u64 small);

/// A coset gH, stored as its sorted element set.
struct Coset {
    u64 modulus = 1;
    std::vector<u64> elements;

    /// Smallest residue in the coset (1 for the trivial group).
    u64 representative() const { return elements.empty() ? 1 : elements.front(); }

    friend bool operator==(const Coset&, const Coset&) = default;
    friend auto operator<=>(const Coset&, const Coset&) = default;
};

/// The cosets of H partitioning (Z/m)^x, ordered by representative.
std::vector<Coset> quotient_cosets(const Subgroup& h);

/// Product of two cosets of the same subgroup: {a * y : y in B} for any a in A.
Coset coset_mul(const Coset& a, const Coset& b);
Coset coset_inv(const Coset& a);

/// Invariant factors d_1 | d_2 | ... | d_r, each >= 2. Empty for the trivial group.
struct InvariantFactors {
    std::vector<u64> factors;

    u64 order() const;
    friend bool operator==(const InvariantFactors&, const InvariantFactors&) = default;
};

/// The quotient (Z/m)^x / H with cosets indexed 0..order-1 (index 0 is H).
class QuotientGroup {
public:
    explicit QuotientGroup(Subgroup h);

    u64 modulus() const noexcept { return kernel_.modulus(); }
    const Subgroup& kernel() const noexcept { return kernel_; }
    std::size_t order() const noexcept { return cosets_.size(); }
    const std::vector<Coset>& cosets() const noexcept { return cosets_; }
    const Coset& coset(std::size_t i) const { return cosets_.at(i); }

    /// Index of the coset containing `residue`; throws for non-units.
    std::size_t index_of(u64 residue) const;
    std::size_t index_of(const Coset& c) const;

    static constexpr std::size_t identity() noexcept { return 0; }
    std::size_t mul(std::size_t a, std::size_t b) const;
    std::size_t inv(std::size_t a) const;
    std::size_t pow(std::size_t a, u64 e) const;
    std::size_t element_order(std::size_t a) const;

private:
    Subgroup kernel_;
    std::vector<Coset> cosets_;
    std::vector<std::size_t> residue_to_coset_;  // indexed by residue, npos for non-units
};

/// Canonical decomposition of (Z/m)^x / H by peeling primary components.
InvariantFactors invariant_factors(const Subgroup& h);
InvariantFactors invariant_factors(const QuotientGroup& g);

/// Generators g_1..g_r (coset indices) with ord(g_i) = d_i and
/// G = <g_1> x ... x <g_r>. Deterministic: the first such tuple in
/// lexicographic order of coset representatives, choosing g_r first.
std::vector<std::size_t> choose_basis(const QuotientGroup& g);

/// True if `basis` has the invariant-factor orders and generates G directly.
bool is_invariant_basis(const QuotientGroup& g, std::span<const std::size_t> basis);

/// Element g_1^{a_1} ... g_r^{a_r}.
std::size_t from_coordinates(const QuotientGroup& g, std::span<const std::size_t> basis,
                             std::span<const u64> coords);

/// Inverse of from_coordinates; coordinates are reduced mod ord(g_i).
std::vector<u64> to_coordinates(const QuotientGroup& g, std::span<const std::size_t> basis,
                                std::size_t element);

/// Every subgroup of G, as sorted lists of coset indices. Exhaustive; for small groups.
std::vector<std::vector<std::size_t>> all_subgroups(const QuotientGroup& g);

}  // namespace cmtwist
