#include "cmtwist/residue_groups.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "cmtwist/errors.hpp"

namespace cmtwist {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

std::string str(u64 v) { return std::to_string(v); }

void require_unit(u64 r, u64 m) {
    if (m > 1 && gcd(r % m, m) != 1)
        throw InputError(str(r) + " is not a unit modulo " + str(m));
}

}  // namespace

u64 normalize_modulus(u64 m) {
    if (m == 0) throw InputError("modulus must be positive");
    if (m > kMaxModulus) throw InputError("modulus " + str(m) + " exceeds limit " + str(kMaxModulus));
    return m == 2 ? 1 : m;
}

std::vector<GroupElt> unit_group(u64 m) {
    m = normalize_modulus(m);
    std::vector<GroupElt> out;
    for (u64 r = 1; r < m; ++r)
        if (gcd(r, m) == 1) out.push_back({r, m});
    return out;
}

// ---------------------------------------------------------------------------
// Subgroup

Subgroup Subgroup::from_elements(u64 m, std::vector<u64> elements) {
    m = normalize_modulus(m);
    if (m == 1) return Subgroup(1, {});
    for (u64& e : elements) {
        e %= m;
        require_unit(e, m);
    }
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (!std::binary_search(elements.begin(), elements.end(), u64{1}))
        throw InputError("subgroup must contain 1");
    for (u64 a : elements)
        for (u64 b : elements)
            if (!std::binary_search(elements.begin(), elements.end(), a * b % m))
                throw InputError("set is not closed under multiplication mod " + str(m) + ": " +
                                 str(a) + "*" + str(b) + " = " + str(a * b % m));
    return Subgroup(m, std::move(elements));
}

Subgroup Subgroup::trivial(u64 m) {
    m = normalize_modulus(m);
    return m == 1 ? Subgroup(1, {}) : Subgroup(m, {1});
}

Subgroup Subgroup::full(u64 m) {
    m = normalize_modulus(m);
    std::vector<u64> all;
    for (const auto& g : unit_group(m)) all.push_back(g.residue);
    return Subgroup(m, std::move(all));
}

bool Subgroup::contains(u64 residue) const {
    if (modulus_ == 1) return true;
    return std::binary_search(elements_.begin(), elements_.end(), residue % modulus_);
}

bool Subgroup::is_subset_of(const Subgroup& other) const {
    if (modulus_ != other.modulus_) throw InputError("subgroup comparison across different moduli");
    return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                         elements_.end());
}

Subgroup subgroup_generated(u64 m, std::span<const u64> gens) {
    m = normalize_modulus(m);
    if (m == 1) return Subgroup(1, {});
    for (u64 g : gens) require_unit(g, m);
    std::vector<bool> seen(m, false);
    std::deque<u64> queue{1};
    seen[1] = true;
    while (!queue.empty()) {
        u64 x = queue.front();
        queue.pop_front();
        for (u64 g : gens) {
            u64 y = x * (g % m) % m;
            if (!seen[y]) {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    std::vector<u64> elements;
    for (u64 r = 1; r < m; ++r)
        if (seen[r]) elements.push_back(r);
    return Subgroup(m, std::move(elements));
}

Subgroup subgroup_generated(u64 m, std::initializer_list<u64> gens) {
    return subgroup_generated(m, std::span<const u64>(gens.begin(), gens.size()));
}

Subgroup subgroup_join(const Subgroup& a, const Subgroup& b) {
    if (a.modulus() != b.modulus()) throw InputError("subgroup_join across different moduli");
    std::vector<u64> gens = a.elements();
    gens.insert(gens.end(), b.elements().begin(), b.elements().end());
    return subgroup_generated(a.modulus(), gens);
}

Subgroup subgroup_meet(const Subgroup& a, const Subgroup& b) {
    if (a.modulus() != b.modulus()) throw InputError("subgroup_meet across different moduli");
    std::vector<u64> common;
    std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(),
                          b.elements().end(), std::back_inserter(common));
    return Subgroup::from_elements(a.modulus(), std::move(common));
}

Subgroup lift_subgroup(const Subgroup& h, u64 big) {
    big = normalize_modulus(big);
    const u64 small = h.modulus();
    if (big % small != 0) throw InputError("lift: " + str(small) + " does not divide " + str(big));
    std::vector<u64> out;
    for (const auto& g : unit_group(big))
        if (h.contains(g.residue % small)) out.push_back(g.residue);
    return Subgroup::from_elements(big, std::move(out));
}

Subgroup reduce_subgroup(const Subgroup& h, u64 small) {
    small = normalize_modulus(small);
    if (h.modulus() % small != 0)
        throw InputError("reduce: " + str(small) + " does not divide " + str(h.modulus()));
    if (small == 1) return Subgroup::trivial(1);
    std::vector<u64> image;
    for (u64 x : h.elements()) image.push_back(x % small);
    return Subgroup::from_elements(small, std::move(image));
}

// ---------------------------------------------------------------------------
// Cosets

std::vector<Coset> quotient_cosets(const Subgroup& h) {
    const u64 m = h.modulus();
    if (m == 1) return {Coset{1, {}}};
    std::vector<bool> used(m, false);
    std::vector<Coset> out;
    for (u64 r = 1; r < m; ++r) {
        if (used[r] || gcd(r, m) != 1) continue;
        Coset c{m, {}};
        for (u64 x : h.elements()) {
            u64 y = r * x % m;
            used[y] = true;
            c.elements.push_back(y);
        }
        std::sort(c.elements.begin(), c.elements.end());
        out.push_back(std::move(c));
    }
    return out;
}

Coset coset_mul(const Coset& a, const Coset& b) {
    if (a.modulus != b.modulus) throw InputError("coset_mul across different moduli");
    if (a.modulus == 1) return a;
    const u64 rep = a.representative();
    Coset out{a.modulus, {}};
    for (u64 y : b.elements) out.elements.push_back(rep * y % a.modulus);
    std::sort(out.elements.begin(), out.elements.end());
    return out;
}

Coset coset_inv(const Coset& a) {
    if (a.modulus == 1) return a;
    Coset out{a.modulus, {}};
    for (u64 x : a.elements) {
        u64 ord = multiplicative_order(x, a.modulus);
        out.elements.push_back(powmod(x, ord - 1, a.modulus));
    }
    std::sort(out.elements.begin(), out.elements.end());
    return out;
}

u64 InvariantFactors::order() const {
    u64 n = 1;
    for (u64 d : factors) n *= d;
    return n;
}

// ---------------------------------------------------------------------------
// QuotientGroup

QuotientGroup::QuotientGroup(Subgroup h) : kernel_(std::move(h)), cosets_(quotient_cosets(kernel_)) {
    const u64 m = kernel_.modulus();
    residue_to_coset_.assign(std::max<u64>(m, 1), npos);
    if (m == 1) {
        residue_to_coset_[0] = 0;
        return;
    }
    for (std::size_t i = 0; i < cosets_.size(); ++i)
        for (u64 x : cosets_[i].elements) residue_to_coset_[x] = i;
}

std::size_t QuotientGroup::index_of(u64 residue) const {
    const u64 m = modulus();
    if (m == 1) return 0;
    std::size_t idx = residue_to_coset_[residue % m];
    if (idx == npos) throw InputError(str(residue) + " is not a unit modulo " + str(m));
    return idx;
}

std::size_t QuotientGroup::index_of(const Coset& c) const {
    if (c.modulus != modulus()) throw InputError("coset belongs to a different modulus");
    std::size_t idx = index_of(c.representative());
    if (cosets_[idx] != c) throw InputError("not a coset of this subgroup");
    return idx;
}

std::size_t QuotientGroup::mul(std::size_t a, std::size_t b) const {
    const u64 m = modulus();
    if (m == 1) return 0;
    return index_of(cosets_.at(a).representative() * cosets_.at(b).representative() % m);
}

std::size_t QuotientGroup::pow(std::size_t a, u64 e) const {
    const u64 m = modulus();
    if (m == 1) return 0;
    return index_of(powmod(cosets_.at(a).representative(), e, m));
}

std::size_t QuotientGroup::inv(std::size_t a) const {
    return pow(a, element_order(a) - 1);
}

std::size_t QuotientGroup::element_order(std::size_t a) const {
    std::size_t ord = 1;
    std::size_t x = a;
    while (x != identity()) {
        x = mul(x, a);
        ++ord;
    }
    return ord;
}

// ---------------------------------------------------------------------------
// Invariant factors

InvariantFactors invariant_factors(const QuotientGroup& g) {
    const u64 n = g.order();
    std::vector<u64> orders(n);
    for (std::size_t i = 0; i < n; ++i) orders[i] = g.element_order(i);

    // For each prime p | n: the number of elements killed by p^k is
    // p^{sum_i min(k, e_i)}, which determines the exponents e_i.
    std::vector<std::vector<u64>> prime_powers;  // per prime, cyclic factor sizes descending
    for (u64 p : prime_factors(n)) {
        u64 ep = 0;
        for (u64 x = n; x % p == 0; x /= p) ++ep;
        std::vector<u64> s(ep + 1, 0);  // s[k] = log_p #{x : x^{p^k} = 1}
        u64 pk = 1;
        for (u64 k = 0; k <= ep; ++k, pk *= p) {
            u64 count = 0;
            for (u64 o : orders)
                if (pk % o == 0) ++count;
            u64 log = 0;
            while (count > 1) {
                count /= p;
                ++log;
            }
            s[k] = log;
        }
        // #factors with exponent >= k is s[k] - s[k-1].
        std::vector<u64> sizes;
        for (u64 k = ep; k >= 1; --k) {
            u64 at_least_k = s[k] - s[k - 1];
            u64 at_least_k1 = k < ep ? s[k + 1] - s[k] : 0;
            u64 pe = 1;
            for (u64 j = 0; j < k; ++j) pe *= p;
            for (u64 j = at_least_k1; j < at_least_k; ++j) sizes.push_back(pe);
        }
        prime_powers.push_back(std::move(sizes));
    }

    std::size_t rank = 0;
    for (const auto& v : prime_powers) rank = std::max(rank, v.size());
    InvariantFactors out;
    out.factors.assign(rank, 1);
    // Largest prime-power pieces combine into the last factor.
    for (const auto& v : prime_powers)
        for (std::size_t j = 0; j < v.size(); ++j) out.factors[rank - 1 - j] *= v[j];
    return out;
}

InvariantFactors invariant_factors(const Subgroup& h) { return invariant_factors(QuotientGroup(h)); }

// ---------------------------------------------------------------------------
// Bases and coordinates

namespace {

bool extend_basis(const QuotientGroup& g, const std::vector<u64>& factors, std::vector<bool>& span,
                  std::vector<std::size_t>& chosen, std::size_t remaining,
                  const std::vector<std::size_t>& orders) {
    if (remaining == 0) return true;
    const u64 d = factors[remaining - 1];
    for (std::size_t cand = 0; cand < g.order(); ++cand) {
        if (orders[cand] != d) continue;
        // <cand> must meet the current span trivially.
        bool independent = true;
        std::size_t x = cand;
        for (u64 k = 1; k < d; ++k, x = g.mul(x, cand)) {
            if (span[x]) {
                independent = false;
                break;
            }
        }
        if (!independent) continue;
        std::vector<bool> next(g.order(), false);
        for (std::size_t s = 0; s < g.order(); ++s) {
            if (!span[s]) continue;
            std::size_t y = s;
            for (u64 k = 0; k < d; ++k, y = g.mul(y, cand)) next[y] = true;
        }
        std::vector<bool> saved = std::move(span);
        span = std::move(next);
        chosen[remaining - 1] = cand;
        if (extend_basis(g, factors, span, chosen, remaining - 1, orders)) return true;
        span = std::move(saved);
    }
    return false;
}

}  // namespace

std::vector<std::size_t> choose_basis(const QuotientGroup& g) {
    const auto inv = invariant_factors(g);
    std::vector<std::size_t> orders(g.order());
    for (std::size_t i = 0; i < g.order(); ++i) orders[i] = g.element_order(i);
    std::vector<bool> span(g.order(), false);
    span[QuotientGroup::identity()] = true;
    std::vector<std::size_t> chosen(inv.factors.size(), 0);
    if (!extend_basis(g, inv.factors, span, chosen, inv.factors.size(), orders))
        throw std::logic_error("choose_basis: no basis found");
    return chosen;
}

bool is_invariant_basis(const QuotientGroup& g, std::span<const std::size_t> basis) {
    const auto inv = invariant_factors(g);
    if (basis.size() != inv.factors.size()) return false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i] >= g.order() || g.element_order(basis[i]) != inv.factors[i]) return false;
    }
    std::set<std::size_t> reached{QuotientGroup::identity()};
    for (std::size_t b : basis) {
        std::set<std::size_t> next;
        for (std::size_t s : reached) {
            std::size_t y = s;
            for (std::size_t k = 0; k < g.element_order(b); ++k, y = g.mul(y, b)) next.insert(y);
        }
        reached = std::move(next);
    }
    return reached.size() == g.order();
}

std::size_t from_coordinates(const QuotientGroup& g, std::span<const std::size_t> basis,
                             std::span<const u64> coords) {
    if (coords.size() != basis.size())
        throw InputError("expected " + str(basis.size()) + " coordinates, got " + str(coords.size()));
    std::size_t x = QuotientGroup::identity();
    for (std::size_t i = 0; i < basis.size(); ++i) x = g.mul(x, g.pow(basis[i], coords[i]));
    return x;
}

std::vector<u64> to_coordinates(const QuotientGroup& g, std::span<const std::size_t> basis,
                                std::size_t element) {
    std::vector<u64> dims;
    for (std::size_t b : basis) dims.push_back(g.element_order(b));
    std::vector<u64> coords(basis.size(), 0);
    // Odometer walk over all coordinate tuples.
    while (true) {
        if (from_coordinates(g, basis, coords) == element) return coords;
        std::size_t i = 0;
        while (i < coords.size() && ++coords[i] == dims[i]) coords[i++] = 0;
        if (i == coords.size()) break;
    }
    throw InputError("element not in the span of the basis");
}

std::vector<std::vector<std::size_t>> all_subgroups(const QuotientGroup& g) {
    std::set<std::vector<std::size_t>> found{{QuotientGroup::identity()}};
    std::deque<std::vector<std::size_t>> queue{{QuotientGroup::identity()}};
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        for (std::size_t x = 0; x < g.order(); ++x) {
            if (std::binary_search(s.begin(), s.end(), x)) continue;
            std::set<std::size_t> next;
            const std::size_t ox = g.element_order(x);
            for (std::size_t e : s) {
                std::size_t y = e;
                for (std::size_t k = 0; k < ox; ++k, y = g.mul(y, x)) next.insert(y);
            }
            std::vector<std::size_t> v(next.begin(), next.end());
            if (found.insert(v).second) queue.push_back(std::move(v));
        }
    }
    return {found.begin(), found.end()};
}

}  // namespace cmtwist
