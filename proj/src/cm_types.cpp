#include "cmtwist/cm_types.hpp"

#include <algorithm>

#include "cmtwist/errors.hpp"

namespace cmtwist {

namespace {

std::string label(const QuotientGroup& g, std::size_t i) {
    return "sigma_" + std::to_string(g.coset(i).representative());
}

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

std::vector<u64> CMType::labels() const {
    std::vector<u64> out;
    for (std::size_t i : psi_) out.push_back(group_.coset(i).representative());
    return out;
}

CMType validate_cm_type(const AbelianField& k, std::span<const std::size_t> psi) {
    if (!is_cm(k)) throw InputError("field " + k.describe() + " is not a CM field");
    QuotientGroup g = k.galois_group();
    const std::size_t conj = g.index_of(k.conductor() - 1);
    std::vector<int> hits(g.order(), 0);
    for (std::size_t s : psi) {
        if (s >= g.order()) throw InputError("Galois element index out of range");
        if (hits[s]++) throw InputError("psi lists " + label(g, s) + " twice");
    }
    for (std::size_t s : psi) {
        const std::size_t cs = g.mul(conj, s);
        if (hits[cs])
            throw InputError("psi is not a half-system: contains both " + label(g, s) +
                             " and its conjugate " + label(g, cs));
    }
    for (std::size_t s = 0; s < g.order(); ++s) {
        if (!hits[s] && !hits[g.mul(conj, s)])
            throw InputError("psi is not a half-system: neither " + label(g, s) +
                             " nor its conjugate " + label(g, g.mul(conj, s)) + " is present");
    }
    return CMType(k, std::move(g), sorted({psi.begin(), psi.end()}));
}

CMType cm_type_from_residues(const AbelianField& k, std::span<const u64> residues) {
    const QuotientGroup g = k.galois_group();
    std::vector<std::size_t> idx;
    for (u64 r : residues) idx.push_back(g.index_of(r));
    return validate_cm_type(k, idx);
}

CMType translate(const CMType& t, std::size_t g) {
    std::vector<std::size_t> out;
    for (std::size_t s : t.psi()) out.push_back(t.group().mul(g, s));
    return validate_cm_type(t.field(), out);
}

std::vector<std::size_t> stabilizer(const CMType& t) {
    const auto& g = t.group();
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < g.order(); ++x) {
        std::vector<std::size_t> moved;
        for (std::size_t s : t.psi()) moved.push_back(g.mul(x, s));
        if (sorted(std::move(moved)) == t.psi()) out.push_back(x);
    }
    return out;
}

bool is_primitive(const CMType& t) { return stabilizer(t).size() == 1; }

AbelianField reflex_field(const CMType& t) {
    return fixed_field_of(t.field(), t.group(), stabilizer(t));
}

std::string to_string(ReflexConvention c) {
    return c == ReflexConvention::inverse ? "inverse" : "conjugate";
}

ReflexType reflex_type(const CMType& t, ReflexConvention convention) {
    const auto& g = t.group();
    const std::size_t conj = g.index_of(t.field().conductor() - 1);
    const AbelianField e = reflex_field(t);
    const QuotientGroup eg = e.galois_group();
    std::vector<std::size_t> image;
    for (std::size_t s : t.psi()) {
        const std::size_t x = convention == ReflexConvention::inverse ? g.inv(s) : g.mul(conj, s);
        image.push_back(restrict_to(t.field(), g, x, e, eg));
    }
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    return {validate_cm_type(e, image), convention};
}

// ---------------------------------------------------------------------------
// Weil data

WeilDatum::WeilDatum(AbelianField base, std::vector<CMType> components)
    : base_(std::move(base)), components_(std::move(components)) {
    if (!is_cm(base_)) throw InputError("base field " + base_.describe() + " is not a CM field");
    if (components_.empty()) throw InputError("Weil datum needs at least one component");
    for (const auto& c : components_)
        if (!is_subfield(base_, c.field()))
            throw InputError("base field " + base_.describe() + " is not contained in component " +
                             c.field().describe());
}

u64 WeilDatum::dimension() const {
    u64 dim = 0;
    for (const auto& c : components_) dim += c.dimension();
    return dim;
}

u64 MultiplicityMap::total() const {
    u64 s = 0;
    for (u64 c : counts) s += c;
    return s;
}

MultiplicityMap restriction_multiplicities(const WeilDatum& d) {
    const QuotientGroup kg = d.base().galois_group();
    MultiplicityMap out{d.base(), std::vector<u64>(kg.order(), 0)};
    for (const auto& c : d.components())
        for (std::size_t s : c.psi()) ++out.counts[restrict_to(c.field(), c.group(), s, d.base(), kg)];
    return out;
}

bool is_weil_type(const WeilDatum& d) {
    const auto n = restriction_multiplicities(d);
    const QuotientGroup kg = d.base().galois_group();
    const std::size_t conj = kg.index_of(d.base().conductor() - 1);
    for (std::size_t s = 0; s < kg.order(); ++s)
        if (n.counts[s] != n.counts[kg.mul(conj, s)]) return false;
    return true;
}

std::optional<CMType> balance_product(const WeilDatum& x, const AbelianField& k) {
    if (!(x.base() == k)) throw InputError("balance_product: datum base differs from k");
    for (auto& candidate : all_cm_types(k)) {
        auto comps = x.components();
        comps.push_back(candidate);
        if (is_weil_type(WeilDatum(k, std::move(comps)))) return candidate;
    }
    return std::nullopt;
}

u64 weil_r(const WeilDatum& d) {
    const u64 twice_dim = 2 * d.dimension();
    const u64 deg = d.base().degree();
    if (twice_dim % deg != 0)
        throw InputError("r = 2*dim(A)/[k:Q] = " + std::to_string(twice_dim) + "/" +
                         std::to_string(deg) + " is not an integer");
    return twice_dim / deg;
}

bool divisibility_check(const WeilDatum& d) {
    return !is_weil_type(d) || d.dimension() % d.base().degree() == 0;
}

std::vector<CMType> all_cm_types(const AbelianField& k) {
    if (!is_cm(k)) throw InputError("field " + k.describe() + " is not a CM field");
    const QuotientGroup g = k.galois_group();
    const std::size_t conj = g.index_of(k.conductor() - 1);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t s = 0; s < g.order(); ++s) {
        const std::size_t cs = g.mul(conj, s);
        if (s < cs) pairs.emplace_back(s, cs);
    }
    if (pairs.size() > 20) throw InputError("too many CM-types to enumerate on " + k.describe());
    std::vector<CMType> out;
    for (u64 bits = 0; bits < (u64{1} << pairs.size()); ++bits) {
        std::vector<std::size_t> psi;
        for (std::size_t j = 0; j < pairs.size(); ++j)
            psi.push_back((bits >> j) & 1U ? pairs[j].second : pairs[j].first);
        out.push_back(validate_cm_type(k, psi));
    }
    return out;
}

}  // namespace cmtwist
