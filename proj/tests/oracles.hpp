#pragma once

// Brute-force reference computations shared by the unit tests and the
// acceptance binary. Everything here works on raw residues mod m and avoids
// QuotientGroup, invariant_factors and the field lattice code under test.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "cmtwist/abelian_fields.hpp"
#include "cmtwist/cm_types.hpp"

namespace oracle {

using cmtwist::u64;

inline std::vector<u64> units(u64 m) {
    std::vector<u64> out;
    if (m <= 2) return out;
    for (u64 a = 1; a < m; ++a)
        if (std::gcd(a, m) == 1) out.push_back(a);
    return out;
}

/// Order of aH in (Z/m)^x / H by repeated multiplication.
inline u64 coset_order(u64 a, const std::set<u64>& h, u64 m) {
    u64 x = a % m;
    u64 k = 1;
    while (!h.count(x)) {
        x = x * a % m;
        ++k;
    }
    return k;
}

/// order -> number of elements, over the cosets of H.
inline std::map<u64, u64> quotient_order_histogram(u64 m, const std::vector<u64>& h_elems) {
    std::map<u64, u64> hist;
    if (m <= 2) {
        hist[1] = 1;
        return hist;
    }
    const std::set<u64> h(h_elems.begin(), h_elems.end());
    std::set<u64> seen;
    for (u64 a : units(m)) {
        if (seen.count(a)) continue;
        for (u64 y : h) seen.insert(a * y % m);
        ++hist[coset_order(a, h, m)];
    }
    return hist;
}

/// Same histogram for Z/d_1 x ... x Z/d_r by enumerating tuples.
inline std::map<u64, u64> product_order_histogram(const std::vector<u64>& factors) {
    std::map<u64, u64> hist;
    std::vector<u64> a(factors.size(), 0);
    while (true) {
        u64 ord = 1;
        for (std::size_t i = 0; i < a.size(); ++i) ord = std::lcm(ord, factors[i] / std::gcd(a[i], factors[i]));
        ++hist[ord];
        std::size_t i = 0;
        while (i < a.size() && ++a[i] == factors[i]) a[i++] = 0;
        if (i == a.size()) break;
    }
    return hist;
}

/// K1 inside K2, decided on residues mod lcm(m1, m2): every x fixing K2 fixes K1.
inline bool contained(const cmtwist::AbelianField& k1, const cmtwist::AbelianField& k2) {
    const u64 m1 = k1.conductor(), m2 = k2.conductor();
    const u64 m = std::lcm(m1, m2);
    auto in = [](const cmtwist::AbelianField& k, u64 x) {
        const u64 c = k.conductor();
        return c <= 2 || k.fixed_group().contains(x % c);
    };
    for (u64 x : units(m))
        if (in(k2, x) && !in(k1, x)) return false;
    return true;
}

/// Largest N <= 2 * conductor with Q(zeta_N) inside K.
inline u64 roots_of_unity(const cmtwist::AbelianField& k) {
    u64 best = 2;
    for (u64 n = 1; n <= 2 * k.conductor(); ++n)
        if (contained(cmtwist::cyclotomic(n), k)) best = std::max(best, n);
    return best;
}

/// Residue sets of the elements of psi (full cosets of H).
inline std::set<u64> psi_residues(const cmtwist::CMType& t) {
    std::set<u64> out;
    for (std::size_t i : t.psi())
        for (u64 r : t.group().coset(i).elements) out.insert(r);
    return out;
}

/// Residues g with g * psi = psi, tested directly on residue sets.
inline std::vector<u64> stabilizer_residues(const cmtwist::CMType& t) {
    const u64 m = t.field().conductor();
    const std::set<u64> psi = psi_residues(t);
    std::vector<u64> out;
    for (u64 g : units(m)) {
        bool stable = true;
        for (u64 s : psi)
            if (!psi.count(g * s % m)) {
                stable = false;
                break;
            }
        if (stable) out.push_back(g);
    }
    return out;
}

/// True if psi is a union of cosets of some subgroup H' != {1} of Gal(K/Q),
/// searching every subgroup generated by one element (enough: any nontrivial
/// H' contains a nontrivial cyclic subgroup, whose cosets refine those of H').
inline bool union_of_cosets_for_some_nontrivial(const cmtwist::CMType& t) {
    const u64 m = t.field().conductor();
    const std::set<u64> psi = psi_residues(t);
    const auto& h = t.field().fixed_group();
    for (u64 g : units(m)) {
        if (h.contains(g)) continue;  // trivial in Gal(K/Q)
        std::set<u64> cyc;
        for (u64 x = g;; x = x * g % m) {
            cyc.insert(x);
            if (x == 1) break;
        }
        bool unions = true;
        for (u64 s : psi)
            for (u64 c : cyc)
                if (!psi.count(s * c % m)) unions = false;
        if (unions) return true;
    }
    return false;
}

/// Subfields of Q(zeta_m) fixed by the subgroups generated by at most two elements.
inline std::vector<cmtwist::AbelianField> subfields(u64 m) {
    std::set<std::vector<u64>> groups;
    const auto u = units(m);
    std::vector<std::vector<u64>> cyclic;
    for (u64 a : u) {
        const auto h = cmtwist::subgroup_generated(m, {a});
        if (groups.insert(h.elements()).second) cyclic.push_back(h.elements());
    }
    for (std::size_t i = 0; i < cyclic.size(); ++i)
        for (std::size_t j = i + 1; j < cyclic.size(); ++j) {
            std::vector<u64> gens = cyclic[i];
            gens.insert(gens.end(), cyclic[j].begin(), cyclic[j].end());
            groups.insert(cmtwist::subgroup_generated(m, gens).elements());
        }
    std::vector<cmtwist::AbelianField> out;
    for (const auto& g : groups) {
        const auto f = cmtwist::AbelianField::fixed_field(cmtwist::Subgroup::from_elements(m, g));
        if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    }
    return out;
}

}  // namespace oracle
