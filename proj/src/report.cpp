#include "cmtwist/report.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "cmtwist/cft_inertia.hpp"
#include "cmtwist/errors.hpp"
#include "cmtwist/twist_calculus.hpp"

namespace cmtwist {

namespace {

// ---------------------------------------------------------------------------
// Schema checks

enum class Kind { uint, sint, string, boolean, field, cm_type, datum, character, flags_x, flags_e };

struct KeySpec {
    const char* name;
    Kind kind;
    bool required;
};

bool is_nonneg_integer(const Json& j) { return j.is_number_unsigned() || (j.is_number_integer() && j.get<i64>() >= 0); }

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw InputError(path + ": " + what);
}

void check_value(const Json& j, const std::string& path, Kind kind);

void check_object(const Json& j, const std::string& path, std::initializer_list<KeySpec> keys) {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& [k, v] : j.items()) {
        const auto it = std::find_if(keys.begin(), keys.end(), [&](const KeySpec& s) { return k == s.name; });
        if (it == keys.end()) fail(path, "unknown key '" + k + "'");
        check_value(v, path + "." + k, it->kind);
    }
    for (const auto& s : keys)
        if (s.required && !j.contains(s.name)) fail(path, std::string("missing required key '") + s.name + "'");
}

void check_uint_array(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of non-negative integers");
    for (std::size_t i = 0; i < j.size(); ++i)
        if (!is_nonneg_integer(j[i])) fail(path + "[" + std::to_string(i) + "]", "expected a non-negative integer");
}

void check_field_literal(const Json& j, const std::string& path) {
    if (!j.is_object() || j.size() != 1)
        fail(path, "field literal must be an object with exactly one of "
                   "'cyclotomic', 'quadratic', 'compositum', 'real_subfield_of'");
    const auto& [key, value] = *j.items().begin();
    if (key == "cyclotomic" || key == "real_subfield_of") {
        if (!is_nonneg_integer(value) || value.get<u64>() == 0)
            fail(path + "." + key, "expected a positive integer");
    } else if (key == "quadratic") {
        if (!value.is_number_integer()) fail(path + "." + key, "expected an integer");
    } else if (key == "compositum") {
        if (!value.is_array() || value.empty()) fail(path + "." + key, "expected a non-empty array of fields");
        for (std::size_t i = 0; i < value.size(); ++i)
            check_field_literal(value[i], path + "." + key + "[" + std::to_string(i) + "]");
    } else {
        fail(path, "unknown field constructor '" + key + "'");
    }
}

void check_cm_literal(const Json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& [k, v] : j.items()) {
        if (k == "field") {
            check_field_literal(v, path + ".field");
        } else if (k == "psi" || k == "basis") {
            check_uint_array(v, path + "." + k);
        } else if (k == "psi_coords") {
            if (!v.is_array()) fail(path + ".psi_coords", "expected an array of coordinate arrays");
            for (std::size_t i = 0; i < v.size(); ++i)
                check_uint_array(v[i], path + ".psi_coords[" + std::to_string(i) + "]");
        } else {
            fail(path, "unknown key '" + k + "'");
        }
    }
    if (!j.contains("field")) fail(path, "missing required key 'field'");
    if (j.contains("psi") == j.contains("psi_coords")) fail(path, "exactly one of 'psi' and 'psi_coords' is required");
    if (j.contains("basis") && !j.contains("psi_coords")) fail(path, "'basis' is only meaningful with 'psi_coords'");
}

void check_value(const Json& j, const std::string& path, Kind kind) {
    switch (kind) {
        case Kind::uint:
            if (!is_nonneg_integer(j)) fail(path, "expected a non-negative integer");
            break;
        case Kind::sint:
            if (!j.is_number_integer()) fail(path, "expected an integer");
            break;
        case Kind::string:
            if (!j.is_string()) fail(path, "expected a string");
            break;
        case Kind::boolean:
            if (!j.is_boolean()) fail(path, "expected a boolean");
            break;
        case Kind::field:
            check_field_literal(j, path);
            break;
        case Kind::cm_type:
            check_cm_literal(j, path);
            break;
        case Kind::datum:
            check_object(j, path, {{"base", Kind::field, true}});
            break;
        case Kind::character:
            check_object(j, path,
                         {{"order", Kind::uint, true}, {"label", Kind::string, false}, {"value_field", Kind::field, false}});
            break;
        case Kind::flags_x:
            check_object(j, path,
                         {{"f_equals_end_field", Kind::boolean, false},
                          {"f_phi_a_equals_f", Kind::boolean, false},
                          {"iota_c_in_aut", Kind::boolean, false},
                          {"k_in_center", Kind::boolean, false}});
            break;
        case Kind::flags_e:
            check_object(j, path,
                         {{"hom_xy_zero", Kind::boolean, false},
                          {"f_equals_end_fields", Kind::boolean, false},
                          {"f_phi_a_equals_f", Kind::boolean, false}});
            break;
    }
}

// Datum objects carry an array of CM literals, which check_object cannot express directly.
void check_datum(const Json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    Json without = j;
    without.erase("components");
    check_object(without, path, {{"base", Kind::field, true}});
    if (!j.contains("components")) fail(path, "missing required key 'components'");
    const auto& comps = j["components"];
    if (!comps.is_array() || comps.empty()) fail(path + ".components", "expected a non-empty array");
    for (std::size_t i = 0; i < comps.size(); ++i)
        check_cm_literal(comps[i], path + ".components[" + std::to_string(i) + "]");
}

void check_payload(Command c, const Json& p) {
    const std::string path = "payload";
    switch (c) {
        case Command::field:
            check_object(p, path, {{"field", Kind::field, true}});
            break;
        case Command::cmtype: {
            Json lit = p;
            if (lit.is_object()) lit.erase("base");
            check_cm_literal(lit, path);
            if (p.contains("base")) check_field_literal(p["base"], path + ".base");
            break;
        }
        case Command::twist_x: {
            if (!p.is_object()) fail(path, "expected an object");
            Json rest = p;
            rest.erase("datum");
            check_object(rest, path, {{"character", Kind::character, true}, {"assumed", Kind::flags_x, false}});
            if (!p.contains("datum")) fail(path, "missing required key 'datum'");
            check_datum(p["datum"], path + ".datum");
            break;
        }
        case Command::twist_e: {
            if (!p.is_object()) fail(path, "expected an object");
            Json rest = p;
            rest.erase("datum");
            check_object(rest, path,
                         {{"dim_x", Kind::uint, true},
                          {"dim_y", Kind::uint, true},
                          {"character", Kind::character, true},
                          {"assumed", Kind::flags_e, false}});
            if (!p.contains("datum")) fail(path, "missing required key 'datum'");
            check_datum(p["datum"], path + ".datum");
            break;
        }
        case Command::discond:
            check_object(p, path, {{"n", Kind::uint, true}, {"d", Kind::uint, true}});
            break;
        case Command::inertia:
            check_object(p, path, {{"p", Kind::uint, true}});
            break;
        case Command::base_cert:
            check_object(p, path, {{"p", Kind::uint, true}, {"q", Kind::uint, true}});
            break;
        case Command::example_41:
            check_object(p, path, {});
            break;
        case Command::example_42:
            check_object(p, path, {{"p", Kind::uint, false}, {"q", Kind::uint, false}, {"d", Kind::sint, false}});
            break;
    }
}

// ---------------------------------------------------------------------------
// JSON views of library values

Json galois_elt(const QuotientGroup& g, std::size_t i, const std::vector<std::size_t>* basis) {
    Json e = {{"residue", g.coset(i).representative()}};
    if (basis) e["coords"] = to_coordinates(g, *basis, i);
    return e;
}

Json basis_json(const QuotientGroup& g, const std::vector<std::size_t>& basis) {
    Json out = Json::array();
    for (std::size_t b : basis) out.push_back({{"residue", g.coset(b).representative()}, {"order", g.element_order(b)}});
    return out;
}

Json elements_json(const QuotientGroup& g, const std::vector<std::size_t>& idx, const std::vector<std::size_t>* basis) {
    Json out = Json::array();
    for (std::size_t i : idx) out.push_back(galois_elt(g, i, basis));
    return out;
}

Json multiplicities_json(const MultiplicityMap& n) {
    const QuotientGroup kg = n.base.galois_group();
    Json out = Json::array();
    for (std::size_t s = 0; s < n.counts.size(); ++s)
        out.push_back({{"embedding", kg.coset(s).representative()}, {"n", n.counts[s]}});
    return out;
}

Json conclusion(const Json& value, const char* anchor) { return {{"value", value}, {"paper_anchor", anchor}}; }

template <class T>
Json opt(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

constexpr const char* kAnchorXi = "(i) F = F(End(B))";
constexpr const char* kAnchorXii = "(ii) F != F_Φ(A) or F != F_Φ(B)";
constexpr const char* kAnchorXiii = "(iii) F_Φ(A) = F implies F_Φ(B) ⊆ M and [M:F_Φ(B)] divides (n, 2r)";
constexpr const char* kAnchorXiv = "(iv) F_Φ(A) = F and (n, 2r) = 2 imply [M:F_Φ(B)] = 2";
constexpr const char* kAnchorXmu = "Gal(M/F_Φ(B)) ⊆ μ_n(k) ∩ μ_2r(k) = μ_t(k)";
constexpr const char* kAnchorEi = "(i) F = F(End(B)) for B = X × Y^c";
constexpr const char* kAnchorEii = "(ii) F(End(A)) != F_Φ(A) or F(End(B)) != F_Φ(B)";
constexpr const char* kAnchorEiii = "(iii) F_Φ(A) = F implies F_Φ(B) = M";
constexpr const char* kAnchorDiscond =
    "Gal(F_Φ(B)/F) ≅ Im(c)/(Im(c) ∩ G_l(F,A)), Gal(M/F_Φ(B)) ≅ Im(c) ∩ G_l(F,A)";

Json twist_x_json(const TwistXReport& r) {
    return {
        {"n", r.n},
        {"r", r.r},
        {"t", r.t},
        {"w", r.w},
        {"mu_bound", r.mu_bound},
        {"extension_label", r.extension_label},
        {"hypotheses",
         {{"r_even", r.r_even},
          {"n_not_dividing_r", r.n_not_dividing_r},
          {"weil_type", r.weil_type},
          {"character_fits_field", r.character_fits_field},
          {"assumed_F_equals_F_End_A", r.assumed.f_equals_end_field},
          {"assumed_F_Phi_A_equals_F", r.assumed.f_phi_a_equals_f},
          {"assumed_iota_c_in_Aut_A", r.assumed.iota_c_in_aut},
          {"assumed_k_in_center", r.assumed.k_in_center}}},
        {"conclusions",
         {{"endB_over_F", conclusion(r.end_b_over_f, kAnchorXi)},
          {"disconnection", conclusion(r.disconnection, kAnchorXii)},
          {"m_over_phiB_divisor", conclusion(opt(r.m_over_phi_b_divisor), kAnchorXmu)},
          {"exact_m_over_phiB", conclusion(opt(r.exact_m_over_phi_b), kAnchorXiv)},
          {"phiB_over_F_exact", conclusion(opt(r.phi_b_over_f_exact), kAnchorXiii)},
          {"phiB_equals_M", conclusion(r.phi_b_equals_m, kAnchorXiii)}}},
    };
}

Json twist_e_json(const TwistEReport& r) {
    return {
        {"dimX", r.dim_x},
        {"dimY", r.dim_y},
        {"t", r.t},
        {"deg_k", r.deg_k},
        {"extension_label", r.extension_label},
        {"hypotheses",
         {{"deg_k_equals_2_dimY", r.deg_k_matches},
          {"t_odd", r.t_odd},
          {"weil_type", r.weil_type},
          {"character_quadratic", r.character_quadratic},
          {"assumed_Hom_X_Y_zero", r.assumed.hom_xy_zero},
          {"assumed_F_equals_F_End_X_and_F_End_Y", r.assumed.f_equals_end_fields},
          {"assumed_F_Phi_A_equals_F", r.assumed.f_phi_a_equals_f}}},
        {"conclusions",
         {{"endB_over_F", conclusion(r.end_b_over_f, kAnchorEi)},
          {"disconnection", conclusion(r.disconnection, kAnchorEii)},
          {"phiB_equals_M", conclusion(r.phi_b_equals_m, kAnchorEiii)}}},
    };
}

Json discond_json(const DiscondResult& r) {
    return {{"n", r.n},
            {"d", r.d},
            {"gal_phiB_over_F", {{"cyclic_order", r.gal_phi_b_over_f}}},
            {"gal_M_over_phiB", {{"cyclic_order", r.gal_m_over_phi_b}}},
            {"phiB_equals_M", r.phi_b_equals_m},
            {"paper_anchor", kAnchorDiscond}};
}

Json checks_json(const std::vector<CertificateCheck>& checks) {
    Json out = Json::array();
    for (const auto& c : checks)
        out.push_back({{"name", c.name}, {"paper_anchor", c.anchor}, {"pass", c.pass}, {"witness", c.witness}});
    return out;
}

Json inertia_json(const InertiaCertificate& c) {
    return {{"p", c.p},
            {"checks", checks_json(c.checks)},
            {"conclusion", opt(c.conclusion)},
            {"failed_check", opt(c.failed_check)},
            {"assumptions", c.assumptions}};
}

Json base_json(const BaseCertificate& c) {
    return {{"p", c.p},
            {"q", c.q},
            {"checks", checks_json(c.checks)},
            {"certificate_p", inertia_json(c.cert_p)},
            {"certificate_q", inertia_json(c.cert_q)},
            {"conclusion", opt(c.conclusion)},
            {"failed_check", opt(c.failed_check)},
            {"ramification_assumption", kAssumeGoodReduction},
            {"assumptions", c.assumptions}};
}

// Reflex data, reporting coordinates only when a basis is given.
Json cm_type_json(const CMType& t, const std::vector<std::size_t>* basis) {
    const auto& g = t.group();
    const auto stab = stabilizer(t);
    const auto inv = reflex_type(t, ReflexConvention::inverse);
    const auto conj = reflex_type(t, ReflexConvention::conjugate);
    const bool same_field = inv.type.field() == t.field();
    Json out = {
        {"field", field_to_json(t.field())},
        {"psi", elements_json(g, t.psi(), basis)},
        {"complex_conjugation", galois_elt(g, g.index_of(t.field().conductor() - 1), basis)},
        {"valid", true},
        {"stabilizer", elements_json(g, stab, basis)},
        {"primitive", stab.size() == 1},
        {"reflex_field", field_to_json(reflex_field(t))},
        {"default_convention", to_string(ReflexConvention::inverse)},
    };
    Json reflex = Json::object();
    for (const auto* r : {&inv, &conj}) {
        const auto& rt = r->type;
        reflex[to_string(r->convention)] = {
            {"convention", to_string(r->convention)},
            {"psi", elements_json(rt.group(), rt.psi(), same_field ? basis : nullptr)},
        };
    }
    out["reflex_types"] = reflex;
    return out;
}

Json datum_json(const WeilDatum& d) {
    Json comps = Json::array();
    for (const auto& c : d.components())
        comps.push_back({{"field", field_to_json(c.field())}, {"psi", c.labels()}});
    Json out = {{"base", field_to_json(d.base())},
                {"components", comps},
                {"dimension", d.dimension()},
                {"multiplicities", multiplicities_json(restriction_multiplicities(d))},
                {"weil_type", is_weil_type(d)},
                {"divisibility_check", divisibility_check(d)}};
    const u64 twice = 2 * d.dimension();
    out["r"] = twice % d.base().degree() == 0 ? Json(twice / d.base().degree()) : Json(nullptr);
    return out;
}

CharacterSpec parse_character(const Json& j, const AbelianField& base, const std::string& default_label) {
    const AbelianField vf = j.contains("value_field") ? parse_field(j["value_field"], "character.value_field") : base;
    return make_character(vf, j["order"].get<u64>(), j.value("label", default_label));
}

Json character_json(const CharacterSpec& c) {
    return {{"value_field", field_to_json(c.value_field)},
            {"order", c.order},
            {"extension_label", c.extension_label},
            {"extension_degree", c.extension_degree}};
}

TwistXAssumptions parse_flags_x(const Json& p) {
    TwistXAssumptions a;
    if (!p.contains("assumed")) return a;
    const auto& f = p["assumed"];
    a.f_equals_end_field = f.value("f_equals_end_field", true);
    a.f_phi_a_equals_f = f.value("f_phi_a_equals_f", true);
    a.iota_c_in_aut = f.value("iota_c_in_aut", true);
    a.k_in_center = f.value("k_in_center", true);
    return a;
}

TwistEAssumptions parse_flags_e(const Json& p) {
    TwistEAssumptions a;
    if (!p.contains("assumed")) return a;
    const auto& f = p["assumed"];
    a.hom_xy_zero = f.value("hom_xy_zero", true);
    a.f_equals_end_fields = f.value("f_equals_end_fields", true);
    a.f_phi_a_equals_f = f.value("f_phi_a_equals_f", true);
    return a;
}

std::vector<std::string> assumed_list_x(const TwistXAssumptions& a) {
    std::vector<std::string> out;
    if (a.f_equals_end_field) out.emplace_back("F = F(End(A))");
    if (a.f_phi_a_equals_f) out.emplace_back("F_Φ(A) = F");
    if (a.iota_c_in_aut) out.emplace_back("ι∘c takes values in Aut(A)");
    if (a.k_in_center) out.emplace_back("ι(k) lies in the center of End⁰(A)");
    return out;
}

std::vector<std::string> assumed_list_e(const TwistEAssumptions& a) {
    std::vector<std::string> out;
    if (a.hom_xy_zero) out.emplace_back("Hom(X, Y) = 0");
    if (a.f_equals_end_fields) out.emplace_back("F = F(End(X)) = F(End(Y))");
    if (a.f_phi_a_equals_f) out.emplace_back("F_Φ(A) = F");
    return out;
}

// ---------------------------------------------------------------------------
// Commands

struct Output {
    Json results = Json::object();
    std::vector<std::string> anchors;
    std::vector<std::string> assumed;
    Outcome outcome = Outcome::ok;
};

Output run_field(const Json& p) {
    const AbelianField k = parse_field(p["field"]);
    const QuotientGroup g = k.galois_group();
    Output o;
    o.results = field_to_json(k);
    o.results["roots_of_unity_order"] = roots_of_unity_order(k);
    o.results["galois_group"] = {{"invariant_factors", invariant_factors(g).factors},
                                 {"basis", basis_json(g, choose_basis(g))}};
    o.results["complex_conjugation"] = complex_conjugation(k).representative();
    o.results["maximal_real_subfield"] = field_to_json(maximal_real_subfield(k));
    return o;
}

Output run_cmtype(const Json& p) {
    Json lit = p;
    lit.erase("base");
    const CMType t = parse_cm_type(lit, "payload");
    const QuotientGroup& g = t.group();
    std::vector<std::size_t> basis;
    if (lit.contains("basis")) {
        for (u64 r : lit["basis"]) basis.push_back(g.index_of(r));
    } else {
        basis = choose_basis(g);
    }
    Output o;
    o.results = cm_type_json(t, &basis);
    o.results["galois_group"] = {{"invariant_factors", invariant_factors(g).factors}, {"basis", basis_json(g, basis)}};
    if (p.contains("base")) {
        const AbelianField k = parse_field(p["base"], "payload.base");
        o.results["weil"] = datum_json(WeilDatum(k, {t}));
    }
    return o;
}

Output run_twist_x(const Json& p) {
    const WeilDatum d = parse_datum(p["datum"], "payload.datum");
    const CharacterSpec c = parse_character(p["character"], d.base(), "M");
    const TwistXAssumptions a = parse_flags_x(p);
    Output o;
    o.results["datum"] = datum_json(d);
    o.results["character"] = character_json(c);
    o.assumed = assumed_list_x(a);
    const TwistXReport rep = twist_x(d, c, a);
    o.results["twist_x"] = twist_x_json(rep);
    o.anchors = {kAnchorXi, kAnchorXii, kAnchorXiii, kAnchorXiv, kAnchorXmu};
    return o;
}

Output run_twist_e(const Json& p) {
    const WeilDatum d = parse_datum(p["datum"], "payload.datum");
    const CharacterSpec c = parse_character(p["character"], d.base(), "M");
    const TwistEAssumptions a = parse_flags_e(p);
    Output o;
    o.results["datum"] = datum_json(d);
    o.results["character"] = character_json(c);
    o.assumed = assumed_list_e(a);
    const TwistEReport rep = twist_e(p["dim_x"].get<u64>(), p["dim_y"].get<u64>(), d.base(), d, c, a);
    o.results["twist_e"] = twist_e_json(rep);
    o.anchors = {kAnchorEi, kAnchorEii, kAnchorEiii};
    return o;
}

Output run_discond(const Json& p) {
    Output o;
    o.results = discond_json(discond_groups(p["n"].get<u64>(), p["d"].get<u64>()));
    o.anchors = {kAnchorDiscond};
    return o;
}

void collect_anchors(const std::vector<CertificateCheck>& checks, std::vector<std::string>& out) {
    for (const auto& c : checks)
        if (std::find(out.begin(), out.end(), c.anchor) == out.end()) out.push_back(c.anchor);
}

Output run_inertia(const Json& p) {
    const InertiaCertificate cert = kitself_certificate(p["p"].get<u64>());
    Output o;
    o.results = inertia_json(cert);
    collect_anchors(cert.checks, o.anchors);
    o.assumed = cert.assumptions;
    if (!cert.passed()) o.outcome = Outcome::hypothesis_failure;
    return o;
}

Output run_base_cert(const Json& p) {
    const BaseCertificate cert = base_certificate(p["p"].get<u64>(), p["q"].get<u64>());
    Output o;
    o.results = base_json(cert);
    collect_anchors(cert.checks, o.anchors);
    o.assumed = cert.assumptions;
    if (!cert.passed()) o.outcome = Outcome::hypothesis_failure;
    return o;
}

// The CM abelian 8-fold over Q(sqrt -3) . L, L the real subfield of Q(zeta_17),
// twisted by a cubic character.
Output run_example_41() {
    Output o;
    auto& res = o.results;
    const AbelianField k = quadratic(-3);
    const AbelianField l = maximal_real_subfield(cyclotomic(17));
    const AbelianField big = compositum(k, l);
    res["k"] = field_to_json(k);
    res["L"] = field_to_json(l);
    res["K"] = field_to_json(big);

    const QuotientGroup g = big.galois_group();
    const auto factors = invariant_factors(g).factors;
    // g1 = complex conjugation (trivial on L), g2 = 37: 1 mod 3 and a primitive root mod 17.
    const std::vector<std::size_t> basis{g.index_of(big.conductor() - 1), g.index_of(37)};
    if (!is_invariant_basis(g, basis)) throw std::logic_error("declared basis is not an invariant basis");
    const QuotientGroup kg = k.galois_group();
    const QuotientGroup lg = l.galois_group();
    const bool g1_ok = restrict_to(big, g, basis[0], l, lg) == QuotientGroup::identity() &&
                       restrict_to(big, g, basis[0], k, kg) != QuotientGroup::identity();
    const bool g2_ok = restrict_to(big, g, basis[1], k, kg) == QuotientGroup::identity() &&
                       lg.element_order(restrict_to(big, g, basis[1], l, lg)) == lg.order();
    res["galois_group"] = {{"invariant_factors", factors},
                           {"basis", basis_json(g, basis)},
                           {"basis_matches_gal_k_times_gal_L", g1_ok && g2_ok}};

    const std::array<std::array<u64, 2>, 8> coords{
        {{0, 0}, {0, 1}, {0, 4}, {0, 7}, {1, 2}, {1, 3}, {1, 5}, {1, 6}}};
    std::vector<std::size_t> psi;
    for (const auto& c : coords) psi.push_back(from_coordinates(g, basis, c));
    const CMType t = validate_cm_type(big, psi);
    res["cm_type"] = cm_type_json(t, &basis);
    res["reflex_field_equals_K"] = reflex_field(t) == big;

    const WeilDatum datum(k, {t});
    res["weil"] = datum_json(datum);

    const CharacterSpec c = make_character(k, 3, "M");
    res["character"] = character_json(c);
    const TwistXAssumptions a;
    o.assumed = {"F_Φ(A) = F (F taken sufficiently large)", "F = F(End(A))", "ι∘c takes values in Aut(A)",
                 "ι(k) lies in the center of End⁰(A)"};
    const TwistXReport rep = twist_x(datum, c, a);
    res["twist_x"] = twist_x_json(rep);
    Json concl = Json::array();
    if (rep.end_b_over_f) concl.push_back("F(End(B)) = F");
    if (rep.phi_b_equals_m && rep.phi_b_over_f_exact)
        concl.push_back("F_Φ(B) = M, [F_Φ(B):F] = " + std::to_string(*rep.phi_b_over_f_exact));
    res["conclusions"] = concl;
    o.anchors = {kAnchorXi, kAnchorXiii, kAnchorXmu};
    if (!rep.phi_b_equals_m) o.outcome = Outcome::hypothesis_failure;
    return o;
}

// J x E with J the Jacobian of y^7 = x(1 - x) and E = X_0(49); A^(d) = J x E^(d).
Output run_example_42(const Json& p) {
    const u64 prime_p = p.value("p", u64{3});
    const u64 prime_q = p.value("q", u64{17});
    const i64 d = p.value("d", i64{-1});
    if (d == 0 || !is_squarefree(d)) throw InputError("payload.d: must be a non-zero squarefree integer");

    Output o;
    auto& res = o.results;
    o.assumed = {kAssumeClassNumberOne, kAssumeGoodReduction, "Hom(J, E^(d)) = 0",
                 "F = F(End(J)) = F(End(E^(d)))"};
    res["curve_models"] = {{"J", "y^7 = x(1 - x)"}, {"E", "y^2 + xy = x^3 - x^2 - 2x - 1"}};

    const AbelianField big = cyclotomic(7);
    const AbelianField k = quadratic(-7);
    res["K"] = field_to_json(big);
    res["k"] = field_to_json(k);
    res["k_subfield_of_K"] = is_subfield(k, big);

    const std::array<u64, 3> j_type{1, 2, 3};
    const CMType tj = cm_type_from_residues(big, j_type);
    res["cm_type_J"] = cm_type_json(tj, nullptr);
    res["endomorphism_field"] = field_to_json(compositum(reflex_field(tj), k));

    const WeilDatum j_only(k, {tj});
    res["weil_J"] = datum_json(j_only);
    const auto e_type = balance_product(j_only, k);
    if (!e_type) throw HypothesisError("(X x Y, k, iota_X x iota_Y) is of Weil type", "no balancing CM-type on k");
    res["cm_type_E"] = e_type->labels();
    const WeilDatum a_datum(k, {tj, *e_type});
    res["weil_A"] = datum_json(a_datum);
    res["r"] = weil_r(a_datum);

    const BaseCertificate base = base_certificate(prime_p, prime_q);
    res["base_certificate"] = base_json(base);
    collect_anchors(base.checks, o.anchors);

    const AbelianField l_d = d == 1 ? big : compositum(big, quadratic(d));
    res["d"] = d;
    res["L_d"] = field_to_json(l_d);
    res["L_d_over_K_degree"] = l_d.degree() / big.degree();

    Json concl = Json::array();
    concl.push_back("Q(End(A^(d))) = K");
    if (base.passed()) concl.push_back("K_Φ(A) = K");
    res["conclusions"] = concl;
    if (!base.passed()) {
        o.outcome = Outcome::hypothesis_failure;
        return o;
    }
    if (l_d == big)
        throw HypothesisError("c is the non-trivial character of a quadratic extension M",
                              "L_d = K for d = " + std::to_string(d));

    const CharacterSpec c = make_character(k, 2, "L_d");
    TwistEAssumptions a;
    a.f_phi_a_equals_f = base.passed();
    const TwistEReport rep = twist_e(3, 1, k, a_datum, c, a);
    res["twist_e"] = twist_e_json(rep);
    o.anchors.insert(o.anchors.end(), {kAnchorEi, kAnchorEii, kAnchorEiii});
    if (rep.phi_b_equals_m) res["conclusions"].push_back("Q_Φ(A^(d)) = L_d");
    return o;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public API

std::string to_string(Command c) {
    switch (c) {
        case Command::field: return "field";
        case Command::cmtype: return "cmtype";
        case Command::twist_x: return "twist-x";
        case Command::twist_e: return "twist-e";
        case Command::discond: return "discond";
        case Command::inertia: return "inertia";
        case Command::base_cert: return "base-cert";
        case Command::example_41: return "example-41";
        case Command::example_42: return "example-42";
    }
    return "?";
}

std::optional<Command> command_from_string(std::string_view name) {
    for (Command c : {Command::field, Command::cmtype, Command::twist_x, Command::twist_e, Command::discond,
                      Command::inertia, Command::base_cert, Command::example_41, Command::example_42})
        if (to_string(c) == name) return c;
    return std::nullopt;
}

JobSpec validate_input(const Json& document) {
    if (!document.is_object()) fail("$", "job document must be an object");
    for (const auto& [k, v] : document.items())
        if (k != "command" && k != "payload" && k != "output") fail("$", "unknown key '" + k + "'");
    if (!document.contains("command") || !document["command"].is_string())
        fail("$.command", "missing or not a string");
    const auto cmd = command_from_string(document["command"].get<std::string>());
    if (!cmd) fail("$.command", "unknown command '" + document["command"].get<std::string>() + "'");
    JobSpec job;
    job.command = *cmd;
    if (document.contains("payload")) job.payload = document["payload"];
    check_payload(job.command, job.payload);
    if (document.contains("output")) {
        if (!document["output"].is_string()) fail("$.output", "expected a string");
        job.output_path = document["output"].get<std::string>();
    }
    return job;
}

JobSpec parse_job(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    return validate_input(doc);
}

Json job_to_json(const JobSpec& job) {
    Json out = {{"command", to_string(job.command)}, {"payload", job.payload}};
    if (job.output_path) out["output"] = *job.output_path;
    return out;
}

Report run(const JobSpec& job) {
    Report report;
    Json& doc = report.document;
    doc["version"] = kVersion;
    doc["schema_version"] = kSchemaVersion;
    doc["job"] = job_to_json(job);
    doc["results"] = Json::object();
    doc["paper_anchors"] = Json::array();
    doc["hypotheses_assumed"] = Json::array();
    try {
        check_payload(job.command, job.payload);
        Output o;
        switch (job.command) {
            case Command::field: o = run_field(job.payload); break;
            case Command::cmtype: o = run_cmtype(job.payload); break;
            case Command::twist_x: o = run_twist_x(job.payload); break;
            case Command::twist_e: o = run_twist_e(job.payload); break;
            case Command::discond: o = run_discond(job.payload); break;
            case Command::inertia: o = run_inertia(job.payload); break;
            case Command::base_cert: o = run_base_cert(job.payload); break;
            case Command::example_41: o = run_example_41(); break;
            case Command::example_42: o = run_example_42(job.payload); break;
        }
        doc["results"] = std::move(o.results);
        doc["paper_anchors"] = o.anchors;
        doc["hypotheses_assumed"] = o.assumed;
        report.outcome = o.outcome;
    } catch (const HypothesisError& e) {
        report.outcome = Outcome::hypothesis_failure;
        doc["error"] = {{"kind", "hypothesis"}, {"hypothesis", e.hypothesis()}, {"message", e.what()}};
    } catch (const InputError& e) {
        report.outcome = Outcome::input_error;
        doc["error"] = {{"kind", "input"}, {"message", e.what()}};
    }
    doc["status"] = report.outcome == Outcome::ok                   ? "ok"
                    : report.outcome == Outcome::hypothesis_failure ? "hypothesis_failure"
                                                                    : "input_error";
    return report;
}

std::string serialize(const Report& report) { return report.document.dump(2) + "\n"; }

AbelianField parse_field(const Json& literal, const std::string& path) {
    check_field_literal(literal, path);
    const auto& [key, value] = *literal.items().begin();
    if (key == "cyclotomic") return cyclotomic(value.get<u64>());
    if (key == "real_subfield_of") return maximal_real_subfield(cyclotomic(value.get<u64>()));
    if (key == "quadratic") return quadratic(value.get<i64>());
    AbelianField acc = parse_field(value[0], path + ".compositum[0]");
    for (std::size_t i = 1; i < value.size(); ++i)
        acc = compositum(acc, parse_field(value[i], path + ".compositum[" + std::to_string(i) + "]"));
    return acc;
}

CMType parse_cm_type(const Json& literal, const std::string& path) {
    check_cm_literal(literal, path);
    const AbelianField k = parse_field(literal["field"], path + ".field");
    if (literal.contains("psi")) return cm_type_from_residues(k, literal["psi"].get<std::vector<u64>>());
    const QuotientGroup g = k.galois_group();
    std::vector<std::size_t> basis;
    if (literal.contains("basis")) {
        for (u64 r : literal["basis"]) basis.push_back(g.index_of(r));
        if (!is_invariant_basis(g, basis)) fail(path + ".basis", "not an invariant-factor basis of Gal(K/Q)");
    } else {
        basis = choose_basis(g);
    }
    std::vector<std::size_t> psi;
    for (const auto& c : literal["psi_coords"]) psi.push_back(from_coordinates(g, basis, c.get<std::vector<u64>>()));
    return validate_cm_type(k, psi);
}

WeilDatum parse_datum(const Json& literal, const std::string& path) {
    check_datum(literal, path);
    const AbelianField base = parse_field(literal["base"], path + ".base");
    std::vector<CMType> comps;
    for (std::size_t i = 0; i < literal["components"].size(); ++i)
        comps.push_back(parse_cm_type(literal["components"][i], path + ".components[" + std::to_string(i) + "]"));
    return WeilDatum(base, std::move(comps));
}

Json field_to_json(const AbelianField& k) {
    return {{"conductor", k.conductor()},
            {"degree", k.degree()},
            {"fixed_group", k.fixed_group().elements()},
            {"label", k.describe()},
            {"is_cm", is_cm(k)},
            {"is_totally_real", is_totally_real(k)}};
}

}  // namespace cmtwist
