#pragma once

/**
 * @file cm_types.hpp
 * @brief CM-types on abelian CM fields, reflex data and Weil-type multiplicities.
 *
 * Embeddings of an abelian field K into C are identified with Gal(K/Q), so a
 * CM-type is a set of Galois cosets containing exactly one element of every
 * pair {s, c s}, c being complex conjugation. For a CM subfield k of K the
 * multiplicity n_s of an embedding s of k counts the elements of the CM-type
 * restricting to s. Weil type (n_s = n_{cs} for all s) is equivalent to the
 * tangent space being a free k (x) C module; only the multiplicity form is
 * computed here.
 */

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmtwist/abelian_fields.hpp"

namespace cmtwist {

class CMType {
public:
    const AbelianField& field() const noexcept { return field_; }
    const QuotientGroup& group() const noexcept { return group_; }
    /// Sorted coset indices into group().
    const std::vector<std::size_t>& psi() const noexcept { return psi_; }
    /// Smallest residue of each element of psi, ascending.
    std::vector<u64> labels() const;
    /// dim of the associated CM abelian variety, i.e. |psi|.
    u64 dimension() const noexcept { return psi_.size(); }

    friend bool operator==(const CMType& a, const CMType& b) {
        return a.field_ == b.field_ && a.psi_ == b.psi_;
    }

private:
    CMType(AbelianField k, QuotientGroup g, std::vector<std::size_t> psi)
        : field_(std::move(k)), group_(std::move(g)), psi_(std::move(psi)) {}
    friend CMType validate_cm_type(const AbelianField&, std::span<const std::size_t>);

    AbelianField field_;
    QuotientGroup group_;
    std::vector<std::size_t> psi_;
};

/// Checks psi and c*psi partition Gal(K/Q). Throws InputError naming the
/// offending element when K is not CM or psi is not a half-system.
CMType validate_cm_type(const AbelianField& k, std::span<const std::size_t> psi);
/// Same, with elements given by residues mod the conductor of K.
CMType cm_type_from_residues(const AbelianField& k, std::span<const u64> residues);

/// The translate g * psi (again a CM-type).
CMType translate(const CMType& t, std::size_t g);

/// {g : g psi = psi} as sorted coset indices.
std::vector<std::size_t> stabilizer(const CMType& t);
bool is_primitive(const CMType& t);

/// Fixed field in K of the stabilizer.
AbelianField reflex_field(const CMType& t);

enum class ReflexConvention { inverse, conjugate };

std::string to_string(ReflexConvention c);

struct ReflexType {
    CMType type;
    ReflexConvention convention;
};

/// inverse: {s^-1 : s in psi}; conjugate: c * psi. Both restricted to the reflex field.
ReflexType reflex_type(const CMType& t, ReflexConvention convention = ReflexConvention::inverse);

/// CM field k together with CM-types on fields K_i containing k.
class WeilDatum {
public:
    /// Throws InputError if k is not CM or some K_i does not contain k.
    WeilDatum(AbelianField base, std::vector<CMType> components);

    const AbelianField& base() const noexcept { return base_; }
    const std::vector<CMType>& components() const noexcept { return components_; }
    u64 dimension() const;

private:
    AbelianField base_;
    std::vector<CMType> components_;
};

struct MultiplicityMap {
    AbelianField base;
    /// counts[i] = n_s for the i-th coset of Gal(k/Q).
    std::vector<u64> counts;

    u64 total() const;
    friend bool operator==(const MultiplicityMap&, const MultiplicityMap&) = default;
};

MultiplicityMap restriction_multiplicities(const WeilDatum& d);
bool is_weil_type(const WeilDatum& d);

/// A CM-type on k that, appended as a new component, makes the datum Weil
/// type; nullopt if none does. CM-types are tried in index order.
std::optional<CMType> balance_product(const WeilDatum& x, const AbelianField& k);

/// r = 2 dim(A) / [k:Q]; throws InputError when non-integral.
u64 weil_r(const WeilDatum& d);
/// [k:Q] | dim(A), which must hold whenever the datum is of Weil type.
bool divisibility_check(const WeilDatum& d);

/// Every CM-type on K, in lexicographic order of the choice bits.
std::vector<CMType> all_cm_types(const AbelianField& k);

}  // namespace cmtwist
