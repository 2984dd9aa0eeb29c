#include "cusp/invariants.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "cusp/linalg.hpp"

namespace cusp {

CurveInput parse_curve_input(const Json& j)
{
    if (!j.is_object() || !j.contains("n") || !j.contains("y"))
        fail("InputError", "curve input needs fields \"n\" and \"y\"");
    if (j.contains("schema") && j["schema"] != 1)
        fail("InputError", "unsupported schema");
    CurveInput in;
    if (!j["n"].is_number_integer())
        fail("InputError", "\"n\" must be an integer");
    in.n = j["n"].get<long long>();
    if (!j["y"].is_array() || j["y"].empty())
        fail("InputError", "\"y\" must be a nonempty array of [exponent, coefficient]");
    for (const auto& term : j["y"]) {
        if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer())
            fail("InputError", "each y term must be [exponent, \"rational\"]");
        Rat c = term[1].is_string() ? parse_rational(term[1].get<std::string>())
                                    : Rat(term[1].get<long long>());
        in.y_terms.emplace_back(term[0].get<long long>(), c);
    }
    if (j.contains("truncation"))
        in.truncation = j["truncation"].get<long long>();
    if (j.contains("degree_bound"))
        in.degree_bound = j["degree_bound"].get<long long>();
    return in;
}

// ---- Saito pair at the first divisor ----------------------------------------

namespace {

WPoly total_component(const WPoly& p, long long d)
{
    WPoly out(p.weights());
    for (const auto& [k, c] : p.terms())
        if (k.i + k.j == d)
            out.set(k.i, k.j, c);
    return out;
}

// first total degree with a nonzero jet; reads degree d only when the
// truncation covers it
long long jet_multiplicity(const OneForm& w, long long cap)
{
    long long tr = std::min(w.A.truncation(), w.B.truncation());
    for (long long d = 0; d <= cap; ++d) {
        if (d * w.weights().m >= tr)
            fail("TruncationInsufficient", "jet read beyond the trusted region");
        if (!total_component(w.A, d).is_zero() || !total_component(w.B, d).is_zero())
            return d;
    }
    fail("Internal", "form vanished through the jet cap");
}

struct SideResult {
    long long best_nu0 = 0;
    WPoly h;
    bool improved = false;
};

// maximize nu_0(main + h * pert) over polynomials h of total degree <=
// degree_bound, by making all jets of total degree < v vanish for growing v
SideResult maximize_side(const OneForm& main, const OneForm& pert, long long degree_bound,
                         long long nu0_cap)
{
    const Weights wt = main.weights();
    SideResult res;
    res.best_nu0 = jet_multiplicity(main, nu0_cap + 1);
    res.h = WPoly(wt);
    long long nu0_pert = nu_D1(pert) - 1; // may exceed this side's cap

    for (long long v = res.best_nu0 + 1; v <= nu0_cap; ++v) {
        long long hdeg_needed = v - 1 - nu0_pert;
        long long hdeg = std::min(hdeg_needed, degree_bound);
        // variables: monomials of h with total degree <= hdeg, in
        // (degree, x-exponent) order
        std::vector<std::pair<long long, long long>> vars;
        for (long long d = 0; d <= hdeg; ++d)
            for (long long e1 = d; e1 >= 0; --e1)
                vars.emplace_back(e1, d - e1);

        std::map<std::tuple<int, long long, long long>, size_t> rows;
        auto touch = [&rows](int slot, long long i, long long j) {
            rows.try_emplace({slot, i, j}, rows.size());
        };
        auto scan_poly = [&](const WPoly& p, int slot, long long shift1, long long shift2) {
            for (const auto& [k, c] : p.terms())
                if (k.i + shift1 + k.j + shift2 < v)
                    touch(slot, k.i + shift1, k.j + shift2);
        };
        scan_poly(main.A, 0, 0, 0);
        scan_poly(main.B, 1, 0, 0);
        for (const auto& [e1, e2] : vars) {
            scan_poly(pert.A, 0, e1, e2);
            scan_poly(pert.B, 1, e1, e2);
        }

        std::vector<std::vector<Rat>> mat(rows.size(), std::vector<Rat>(vars.size(), Rat(0)));
        std::vector<Rat> rhs(rows.size(), Rat(0));
        for (size_t ci = 0; ci < vars.size(); ++ci) {
            auto [e1, e2] = vars[ci];
            auto fill = [&](const WPoly& p, int slot) {
                for (const auto& [k, c] : p.terms())
                    if (auto it = rows.find({slot, k.i + e1, k.j + e2}); it != rows.end())
                        mat[it->second][ci] = c;
            };
            fill(pert.A, 0);
            fill(pert.B, 1);
        }
        auto load = [&](const WPoly& p, int slot) {
            for (const auto& [k, c] : p.terms())
                if (auto it = rows.find({slot, k.i, k.j}); it != rows.end())
                    rhs[it->second] = -c;
        };
        load(main.A, 0);
        load(main.B, 1);

        auto sol = solve_exact(std::move(mat), std::move(rhs));
        if (!sol) {
            if (hdeg_needed > degree_bound)
                fail("BoundTooSmall",
                     "jet search hit the degree cap while improvement was still possible");
            break;
        }
        WPoly h(wt);
        for (size_t ci = 0; ci < vars.size(); ++ci)
            h.add_term(vars[ci].first, vars[ci].second, (*sol)[ci]);
        res.best_nu0 = v;
        res.h = h;
        res.improved = true;
    }
    return res;
}

} // namespace

SaitoPairD1 saito_pair_D1(const OneForm& w_last, const OneForm& wt_last, const WPoly& f,
                          long long degree_bound)
{
    SaitoPairD1 out;
    out.degree_bound = degree_bound;
    long long nu0_w = nu_D1(w_last) - 1;
    long long nu0_wt = nu_D1(wt_last) - 1;
    out.s1 = std::min(nu0_w, nu0_wt) + 1;

    const long long bound_fn = nu_D1_fn(f) + 2; // multiplicity of x y f
    // an element pairing with the other generator obeys the determinant bound
    long long capA = bound_fn - (nu0_w + 1) - 1;  // completes w_last
    long long capB = bound_fn - (nu0_wt + 1) - 1; // completes wt_last
    SideResult a = maximize_side(wt_last, w_last, degree_bound, capA);
    SideResult b = maximize_side(w_last, wt_last, degree_bound, capB);

    out.s1_jet = std::min(jet_multiplicity(w_last, capB + 1),
                          jet_multiplicity(wt_last, capA + 1)) +
                 1;

    if (a.best_nu0 >= b.best_nu0) {
        out.s1_tilde = a.best_nu0 + 1;
        out.certificate = wt_last;
        out.certificate.add_scaled(Rat(1), w_last.poly_mul(a.h));
        out.certificate_side = "w_tilde + h*w";
        out.certificate_h = a.h;
    } else {
        out.s1_tilde = b.best_nu0 + 1;
        out.certificate = w_last;
        out.certificate.add_scaled(Rat(1), wt_last.poly_mul(b.h));
        out.certificate_side = "w + h*w_tilde";
        out.certificate_h = b.h;
    }
    if (out.s1 + out.s1_tilde > bound_fn)
        fail("Internal", "Saito pair exceeds the determinant bound");
    return out;
}

// ---- pipeline ----------------------------------------------------------------

namespace {

PipelineResult run_pipeline_at(const CurveInput& in, const PuiseuxParam& p, long long W)
{
    if (W < p.certification_threshold())
        fail("TruncationInsufficient",
             "invariance cannot be certified below c_Gamma + nm; raise --truncation");
    PipelineResult r;
    r.p = p;
    r.W = W;
    r.sb = compute_standard_basis(p, W);
    const int s = r.sb.s();
    const StructureTable& tab = r.sb.table;

    bool star_min_n = tab.t_n(s + 1) < tab.t_m(s + 1);
    if (s == 0 && p.b.terms().size() == 1) {
        auto [w1, wt1] = quasihomogeneous_saito(p);
        r.w_last = w1;
        r.wt_last = wt1;
        r.used_quasihomogeneous_pair = true;
    } else {
        r.w_last = extend_standard_basis(r.sb, star_min_n);
        r.wt_last = extend_standard_basis(r.sb, !star_min_n);
    }
    r.t_last = to_ll(tab.t(s + 1));
    r.t_tilde_last = to_ll(tab.t_tilde(s + 1));
    if (nu_D(r.w_last) != r.t_last || nu_D(r.wt_last) != r.t_tilde_last)
        fail("Internal", "extended forms missed the last critical values");

    r.sys = special_standard_system(r.sb, r.w_last, r.wt_last);
    r.f = implicit_equation(p);
    r.crit = saito_criterion(r.w_last, r.wt_last, r.f);

    long long deg_bound = in.degree_bound.value_or(nu_D1_fn(r.f) + 2);
    r.d1 = saito_pair_D1(r.w_last, r.wt_last, r.f, deg_bound);

    CuspSemigroup g = p.semigroup();
    long long cg = p.c_gamma();
    long long comb = 0;
    for (long long k = 0; k < cg; ++k)
        if (oracle_membership(r.sb.basis, Int(k)) && !g.contains(Int(k)))
            ++comb;
    long long ech = 0;
    for (long long v : r.sb.leading_set)
        if (v < cg && !g.contains(Int(v)))
            ++ech;
    r.mu_minus_tau = comb;
    r.mu_minus_tau_ech = ech;
    return r;
}

} // namespace

PipelineResult run_pipeline(const CurveInput& in)
{
    PuiseuxParam p = make_puiseux(in.n, in.y_terms);
    long long W = in.truncation.value_or(p.default_truncation());
    try {
        return run_pipeline_at(in, p, W);
    } catch (const Error& e) {
        if (e.kind != "TruncationInsufficient")
            throw;
        return run_pipeline_at(in, p, 2 * W); // one retry at twice the depth
    }
}

// ---- semimodule invariant suite -----------------------------------------------

namespace {

SemimoduleBasis prefix_basis(const SemimoduleBasis& b, int count)
{
    return SemimoduleBasis{b.gamma,
                           std::vector<Int>(b.lambdas.begin(), b.lambdas.begin() + count)};
}

} // namespace

std::vector<std::string> semimodule_invariant_violations(const SemimoduleBasis& basis)
{
    std::vector<std::string> out;
    auto bad = [&out](const std::string& s) { out.push_back(s); };

    const CuspSemigroup& g = basis.gamma;
    const Int n = g.n(), m = g.m();
    const int s = basis.length();
    StructureTable tab = structure_table(basis);
    const bool incr = is_increasing(basis, tab);
    const bool mult_n = basis.lambda(-1) % n == 0;
    const bool curve_shape = s >= 0 && basis.lambda(-1) == n && basis.lambda(0) == m;

    // membership step: lambda_{i-1} + na + mb in Lambda_{i-2} forces a >= l_n
    // or b >= l_m (limits are below m resp. n, so the box suffices)
    for (int i = 1; i <= s + 1; ++i) {
        SemimoduleBasis pre = prefix_basis(basis, i);
        for (Int a = 0; a < m; ++a)
            for (Int b = 0; b < n; ++b)
                if (oracle_membership(pre, basis.lambda(i - 1) + n * a + m * b) &&
                    !(a >= tab.l_n(i) || b >= tab.l_m(i)))
                    bad("membership step fails at i=" + std::to_string(i));
    }

    if (incr) {
        for (int i = 1; i <= s; ++i)
            for (int j = -1; j < i; ++j)
                if (!(basis.lambda(i) - basis.lambda(j) > tab.t(i) - tab.t(j)))
                    bad("gap inequality fails at (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
        for (int i = 1; i <= s; ++i) {
            if (!(tab.u_n(i + 1) > tab.t_n(i + 1)) || !(tab.u_m(i + 1) > tab.t_m(i + 1)))
                bad("axis does not dominate critical value at i=" + std::to_string(i + 1));
        }
        for (int i = 2; i <= s + 1; ++i) {
            if (!(tab.u(i) > tab.u(i - 1) && tab.t(i) > tab.t(i - 1)))
                bad("u, t not strictly increasing at i=" + std::to_string(i));
            if (!(tab.u_tilde(i) < tab.u_tilde(i - 1) && tab.t_tilde(i) < tab.t_tilde(i - 1)))
                bad("u~, t~ not strictly decreasing at i=" + std::to_string(i));
        }
        if (mult_n && !(tab.u_tilde(s + 1) >= tab.conductor_of_lambda + n))
            bad("conductor bound u~_{s+1} >= c_Lambda + n fails");
        for (int i = 1; i <= s; ++i) {
            if (tab.u(i) == tab.u_n(i)) {
                if (tab.k_n(i) != i - 1 || tab.k_m(i) != tab.k_m(i - 1))
                    bad("bound switching (n case) fails at i=" + std::to_string(i));
            } else {
                if (tab.k_m(i) != i - 1 || tab.k_n(i) != tab.k_n(i - 1))
                    bad("bound switching (m case) fails at i=" + std::to_string(i));
            }
        }
        for (int i = 1; i <= s; ++i) {
            if (tab.k_n(i) == i - 1 &&
                !(tab.l_n(i + 1) + tab.a(i + 1) == tab.a(i) &&
                  tab.l_m(i + 1) + tab.b(i + 1) == tab.l_m(i)))
                bad("limit/colimit recurrence (1) fails at i=" + std::to_string(i));
            if (tab.k_m(i) == i - 1 &&
                !(tab.l_n(i + 1) + tab.a(i + 1) == tab.l_n(i) &&
                  tab.l_m(i + 1) + tab.b(i + 1) == tab.b(i)))
                bad("limit/colimit recurrence (2) fails at i=" + std::to_string(i));
        }
        // telescoping colimit positivity under its t~ pattern hypotheses
        for (int j = 1; j + 2 <= s + 1; ++j) {
            if (tab.t_tilde(j + 1) == tab.t_m(j + 1)) {
                Int acc = tab.l_m(j + 1);
                for (int q = j + 2; q <= s + 1; ++q) {
                    bool pattern = true;
                    for (int l = j + 2; l < q; ++l)
                        if (tab.t_tilde(l) != tab.t_n(l))
                            pattern = false;
                    acc -= tab.l_m(q);
                    if (pattern && !(acc == tab.b(q) && acc > 0))
                        bad("telescoping colimit (m) fails at j=" + std::to_string(j) +
                            ", q=" + std::to_string(q));
                }
            }
            if (tab.t_tilde(j + 1) == tab.t_n(j + 1)) {
                Int acc = tab.l_n(j + 1);
                for (int q = j + 2; q <= s + 1; ++q) {
                    bool pattern = true;
                    for (int l = j + 2; l < q; ++l)
                        if (tab.t_tilde(l) != tab.t_m(l))
                            pattern = false;
                    acc -= tab.l_n(q);
                    if (pattern && !(acc == tab.a(q) && acc > 0))
                        bad("telescoping colimit (n) fails at j=" + std::to_string(j) +
                            ", q=" + std::to_string(q));
                }
            }
        }
    }

    // shift invariance: same limits, colimits and bounds; shifted axes
    {
        SemimoduleBasis shifted{g, basis.lambdas};
        for (Int& v : shifted.lambdas)
            v += n;
        StructureTable tab2 = structure_table(shifted);
        for (int i = 1; i <= s + 1; ++i)
            if (tab2.l_n(i) != tab.l_n(i) || tab2.l_m(i) != tab.l_m(i) ||
                tab2.a(i) != tab.a(i) || tab2.b(i) != tab.b(i) ||
                tab2.u_n(i) != tab.u_n(i) + n || tab2.u_m(i) != tab.u_m(i) + n ||
                tab2.k_n(i - 1) != tab.k_n(i - 1) || tab2.k_m(i - 1) != tab.k_m(i - 1))
                bad("shift invariance fails at i=" + std::to_string(i));
    }

    // critical monomials p n + n + m and q m + n + m inside T
    if (curve_shape && incr && s >= 1) {
        std::vector<Int> T{tab.t(s + 1)};
        for (int i = 2; i <= s + 1; ++i)
            T.push_back(tab.t_tilde(i));
        // bound: every element of T is < nm, so p <= m-2 and q <= n-2
        bool found_p = false, found_q = false;
        for (const Int& t : T) {
            Int rest = t - n - m;
            if (rest >= 0 && rest % n == 0 && rest / n <= m - 2)
                found_p = true;
            if (rest >= 0 && rest % m == 0 && rest / m <= n - 2)
                found_q = true;
        }
        if (!found_p || !found_q)
            bad("critical-monomial lemma fails");
        for (int i = 1; i <= s; ++i)
            if (!(tab.t_n(i + 1) < n * m && tab.t_m(i + 1) < n * m))
                bad("t~_1 ceiling fails at i=" + std::to_string(i + 1));
    }

    // clock bounds agree with the table bounds
    {
        std::vector<ClockPoint> pts;
        for (int i = -1; i <= s; ++i)
            pts.push_back(zeta(g, basis.lambda(i)));
        for (int i = 0; i <= s; ++i) {
            if (clock_left_bound(pts, i) != tab.k_n(i))
                bad("left clock bound differs from k^n at i=" + std::to_string(i));
            if (clock_right_bound(pts, i) != tab.k_m(i))
                bad("right clock bound differs from k^m at i=" + std::to_string(i));
        }
    }

    // level sets
    if (incr && mult_n) {
        Int q_hi = tab.q_tilde(s + 1) + 2;
        for (Int q = tab.q(s + 1); q <= q_hi; ++q)
            if (!level_set(basis, q).is_circular)
                bad("level set not circular at q=" + q.str());
        for (Int q = tab.q_tilde(s + 1) - 1; q <= q_hi; ++q)
            if (!level_set(basis, q).is_full)
                bad("level set not full at q=" + q.str());
    }
    // v_i is the first level holding z_i
    for (int i = -1; i <= s; ++i) {
        Int vi = tab.v(i);
        Int res = g.zeta_residue(basis.lambda(i));
        auto holds = [&](const Int& q) {
            LevelSet L = level_set(basis, q);
            return std::binary_search(L.residues.begin(), L.residues.end(), res);
        };
        if (!holds(vi) || (vi > 0 && holds(vi - 1)))
            bad("v_i is not the first level containing z_i at i=" + std::to_string(i));
    }

    return out;
}

// ---- reports -------------------------------------------------------------------

namespace {

Json int_list(const std::vector<Int>& v, size_t from = 0)
{
    Json a = Json::array();
    for (size_t i = from; i < v.size(); ++i)
        a.push_back(to_ll(v[i]));
    return a;
}

Json table_json(const SemimoduleBasis& basis, const StructureTable& tab)
{
    const int s = tab.s;
    Json t;
    t["s"] = s;
    auto series = [&](auto get) {
        Json a = Json::array();
        for (int i = 1; i <= s + 1; ++i)
            a.push_back(to_ll(get(i)));
        return a;
    };
    t["u_n"] = series([&](int i) { return tab.u_n(i); });
    t["u_m"] = series([&](int i) { return tab.u_m(i); });
    t["u"] = series([&](int i) { return tab.u(i); });
    t["u_tilde"] = series([&](int i) { return tab.u_tilde(i); });
    t["l_n"] = series([&](int i) { return tab.l_n(i); });
    t["l_m"] = series([&](int i) { return tab.l_m(i); });
    t["a"] = series([&](int i) { return tab.a(i); });
    t["b"] = series([&](int i) { return tab.b(i); });
    t["t_n"] = series([&](int i) { return tab.t_n(i); });
    t["t_m"] = series([&](int i) { return tab.t_m(i); });
    t["t"] = series([&](int i) { return tab.t(i); });
    t["t_tilde"] = series([&](int i) { return tab.t_tilde(i); });
    t["q_n"] = series([&](int i) { return tab.q_n(i); });
    t["q_m"] = series([&](int i) { return tab.q_m(i); });
    t["t_minus1"] = to_ll(tab.t(-1));
    if (s >= 0)
        t["t_0"] = to_ll(tab.t(0));
    Json kn = Json::array(), km = Json::array();
    for (int i = 0; i <= s; ++i) {
        kn.push_back(tab.k_n(i));
        km.push_back(tab.k_m(i));
    }
    t["k_n"] = kn;
    t["k_m"] = km;
    Json vv = Json::array();
    for (int i = -1; i <= s; ++i)
        vv.push_back(to_ll(tab.v(i)));
    t["v"] = vv;
    t["conductor_of_lambda"] = to_ll(tab.conductor_of_lambda);
    return t;
}

Json input_json(const CurveInput& in, const PuiseuxParam& p)
{
    Json y = Json::array();
    for (const auto& [e, c] : in.y_terms)
        y.push_back(Json::array({e, to_string(c)}));
    Json j;
    j["n"] = in.n;
    j["y"] = y;
    j["normalized_leading_coefficient"] = p.was_normalized;
    return j;
}

Json pipeline_json(const CurveInput& in, const PipelineResult& r)
{
    const PuiseuxParam& p = r.p;
    CuspSemigroup g = p.semigroup();
    Json j;
    j["schema"] = 1;
    j["input"] = input_json(in, p);
    j["semigroup"] = {{"n", p.n},
                      {"m", p.m},
                      {"conductor", to_ll(g.conductor())},
                      {"frobenius", to_ll(g.frobenius())}};
    j["lambda_basis"] = int_list(r.sb.basis.lambdas);
    j["s"] = r.sb.s();
    j["structure_table"] = table_json(r.sb.basis, r.sb.table);
    j["t_last"] = r.t_last;
    j["t_tilde_last"] = r.t_tilde_last;
    j["saito_pair_DC"] = Json::array({r.t_last, r.t_tilde_last});
    Json crit;
    crit["ok"] = r.crit.ok;
    crit["unit_constant"] = to_string(r.crit.unit.coeff(0, 0));
    long long nu_d_wedge = p.n + p.m + p.n * p.m; // = nu_D(x y f) for a unit quotient
    crit["nu_D_omega_sum"] = r.t_last + r.t_tilde_last;
    crit["nu_D_xyf"] = nu_d_wedge;
    crit["sum_attains_bound"] = (r.t_last + r.t_tilde_last == nu_d_wedge);
    if (!r.crit.ok)
        crit["detail"] = r.crit.detail;
    j["saito_criterion"] = crit;
    Json d1;
    d1["s1"] = r.d1.s1;
    d1["s1_tilde"] = r.d1.s1_tilde;
    d1["s1_method"] = "generator-min";
    d1["degree_bound"] = r.d1.degree_bound;
    d1["certificate_side"] = r.d1.certificate_side;
    d1["certificate_h"] = to_text(r.d1.certificate_h);
    d1["certificate_nu_D1"] = nu_D1(r.d1.certificate);
    j["saito_pair_D1"] = d1;
    j["mu_minus_tau"] = r.mu_minus_tau;
    j["mu_minus_tau_paths"] = {{"combinatorial", r.mu_minus_tau},
                               {"echelonization", r.mu_minus_tau_ech}};
    j["truncation"] = r.W;
    j["truncation_certified"] = r.truncation_certified;
    j["used_quasihomogeneous_pair"] = r.used_quasihomogeneous_pair;
    if (in.emit_forms) {
        Json forms;
        Json std_basis = Json::array();
        for (int i = -1; i <= r.sb.s(); ++i)
            std_basis.push_back(to_text(r.sb.omega(i)));
        forms["standard_basis"] = std_basis;
        forms["omega_last"] = to_text(r.w_last);
        forms["omega_tilde_last"] = to_text(r.wt_last);
        Json tilde = Json::array();
        for (int k = 1; k <= r.sys.s + 1; ++k)
            tilde.push_back(to_text(r.sys.omega_tilde(k)));
        forms["omega_tilde"] = tilde;
        forms["f"] = to_text(r.f);
        forms["unit"] = to_text(r.crit.unit);
        forms["d1_certificate"] = to_text(r.d1.certificate);
        j["forms"] = forms;
    }
    return j;
}

} // namespace

Json invariants_report(const CurveInput& in)
{
    PipelineResult r = run_pipeline(in);
    return pipeline_json(in, r);
}

Json saito_report(const CurveInput& in)
{
    CurveInput with_forms = in;
    with_forms.emit_forms = true;
    PipelineResult r = run_pipeline(with_forms);
    Json full = pipeline_json(with_forms, r);
    Json j;
    j["schema"] = 1;
    j["input"] = full["input"];
    j["lambda_basis"] = full["lambda_basis"];
    j["saito_pair_DC"] = full["saito_pair_DC"];
    j["saito_criterion"] = full["saito_criterion"];
    j["nu_D_omega_last"] = r.t_last;
    j["nu_D_omega_tilde_last"] = r.t_tilde_last;
    j["forms"] = full["forms"];
    return j;
}

Json saito_pair_d1_report(const CurveInput& in)
{
    PipelineResult r = run_pipeline(in);
    Json full = pipeline_json(in, r);
    Json j;
    j["schema"] = 1;
    j["input"] = full["input"];
    j["saito_pair_D1"] = full["saito_pair_D1"];
    j["certificate"] = to_text(r.d1.certificate);
    return j;
}

Json semimodule_report(long long n, long long m, const std::vector<long long>& lambdas)
{
    CuspSemigroup g{Int(n), Int(m)};
    if (lambdas.empty())
        fail("InputError", "need at least one basis element");
    SemimoduleBasis basis{g, {}};
    for (long long v : lambdas) {
        if (v < 0)
            fail("InputError", "negative basis element");
        if (!basis.lambdas.empty() && Int(v) <= basis.lambdas.back())
            fail("InputError", "basis not strictly increasing");
        if (oracle_membership(basis, Int(v)))
            fail("InputError", std::to_string(v) +
                                   " already lies in the semimodule of the earlier elements");
        basis.lambdas.push_back(Int(v));
    }
    StructureTable tab = structure_table(basis);
    bool incr = is_increasing(basis, tab);
    Json j;
    j["schema"] = 1;
    j["gamma"] = {{"n", n}, {"m", m}, {"conductor", to_ll(g.conductor())}};
    j["lambda_basis"] = int_list(basis.lambdas);
    j["structure_table"] = table_json(basis, tab);
    j["increasing"] = incr;
    if (!incr)
        j["not_increasing"] = true; // flagged, table still emitted
    std::vector<std::string> viol = semimodule_invariant_violations(basis);
    j["invariant_suite"] = {{"pass", viol.empty()}, {"violations", viol}};
    return j;
}

// ---- cmd_check -----------------------------------------------------------------

namespace {

Rat random_rat(std::mt19937_64& rng)
{
    long long num = static_cast<long long>(rng() % 19) - 9;
    if (num == 0)
        num = 1;
    long long den = 1 + static_cast<long long>(rng() % 9);
    return Rat(num, den);
}

WPoly random_wpoly(std::mt19937_64& rng, Weights wt, long long max_wdeg, int terms,
                   bool allow_constant)
{
    WPoly h(wt);
    for (int k = 0; k < terms; ++k) {
        long long i = static_cast<long long>(rng() % (max_wdeg / wt.n + 1));
        long long j = static_cast<long long>(rng() % (max_wdeg / wt.m + 1));
        if (!allow_constant && i == 0 && j == 0)
            i = 1;
        if (wt.wdeg(i, j) > max_wdeg)
            continue;
        h.add_term(i, j, random_rat(rng));
    }
    if (h.is_zero())
        h.set(1, 0, Rat(1));
    return h;
}

} // namespace

Json check_report(const CurveInput& in, unsigned long long seed)
{
    PipelineResult r = run_pipeline(in);
    const PuiseuxParam& p = r.p;
    const Weights wt = p.weights();
    std::mt19937_64 rng(seed);
    Pullback engine(p);

    Json checks = Json::array();
    bool all = true;
    auto record = [&](const std::string& name, bool ok, const std::string& detail = "") {
        Json c;
        c["name"] = name;
        c["pass"] = ok;
        if (!detail.empty())
            c["detail"] = detail;
        checks.push_back(c);
        all = all && ok;
    };

    // echelonization vs combinatorics: Lambda agreement on [0, W)
    {
        bool ok = true;
        size_t idx = 0;
        for (long long k = 0; k < r.W && ok; ++k) {
            bool in_ech = idx < r.sb.leading_set.size() && r.sb.leading_set[idx] == k;
            if (in_ech)
                ++idx;
            if (oracle_membership(r.sb.basis, Int(k)) != in_ech)
                ok = false;
        }
        record("lambda_agreement", ok);
    }

    record("saito_criterion", r.crit.ok, r.crit.detail);
    record("saito_pair_DC_matches_table", nu_D(r.w_last) == r.t_last &&
                                              nu_D(r.wt_last) == r.t_tilde_last);
    record("mu_minus_tau_paths_agree", r.mu_minus_tau == r.mu_minus_tau_ech);

    {
        std::vector<std::string> viol = semimodule_invariant_violations(r.sb.basis);
        std::string detail;
        for (const auto& v : viol)
            detail += v + "; ";
        record("semimodule_invariants", viol.empty(), detail);
    }

    // randomized division round trips
    {
        bool ok = true;
        for (int trial = 0; trial < 5 && ok; ++trial) {
            WPoly gc = random_wpoly(rng, wt, 40, 4, true);
            WPoly gtc = random_wpoly(rng, wt, 40, 4, true);
            OneForm w = r.w_last.poly_mul(gc);
            w += r.wt_last.poly_mul(gtc);
            auto [g2, gt2] = divide_in_saito_basis(w, r.sys, p);
            for (const auto& [k, c] : gc.terms())
                if (k.w < g2.truncation() && g2.coeff(k.i, k.j) != c)
                    ok = false;
            for (const auto& [k, c] : gtc.terms())
                if (k.w < gt2.truncation() && gt2.coeff(k.i, k.j) != c)
                    ok = false;
        }
        record("saito_division_roundtrip", ok);
    }

    // exact primitive round trip on deep tails
    {
        bool ok = true;
        for (int trial = 0; trial < 5 && ok; ++trial) {
            WPoly h(wt);
            long long cg = p.c_gamma();
            for (int t = 0; t < 4; ++t) {
                long long j = static_cast<long long>(rng() % 3);
                long long lo = cg + static_cast<long long>(rng() % 100);
                long long i = (lo - j * p.m) / p.n + 1;
                if (i < 0)
                    i = 0;
                h.add_term(i, j, random_rat(rng));
            }
            TSeries psi = engine.pull_form(differential(h)).truncated(r.W - 1);
            WPoly h2 = exact_primitive(p, psi, r.W);
            TSeries back = engine.pull_form(differential(h2)).truncated(r.W - 1);
            back -= psi;
            if (!back.is_zero())
                ok = false;
        }
        record("exact_primitive_roundtrip", ok);
    }

    // pullback is a derivation: phi^*(d(gh)) = phi(g) phi^*(dh) + phi(h) phi^*(dg)
    {
        bool ok = true;
        for (int trial = 0; trial < 10 && ok; ++trial) {
            WPoly a = random_wpoly(rng, wt, 80, 4, true);
            WPoly b = random_wpoly(rng, wt, 80, 4, true);
            TSeries lhs = engine.pull_form(differential(a * b));
            TSeries rhs = engine.eval(a) * engine.pull_form(differential(b));
            rhs += engine.eval(b) * engine.pull_form(differential(a));
            lhs -= rhs;
            if (!lhs.is_zero())
                ok = false;
        }
        record("pullback_leibniz", ok);
    }

    // clock identities: zeta(k + an) = zeta(k), zeta(mk) = k_eps
    {
        bool ok = true;
        CuspSemigroup g = p.semigroup();
        for (int trial = 0; trial < 50 && ok; ++trial) {
            Int k = Int(rng() % 100000);
            Int a = Int(rng() % 50);
            if (zeta(g, k).residue != zeta(g, k + a * g.n()).residue)
                ok = false;
            if (zeta(g, g.m() * k).residue != clock_point(g.n(), k).residue)
                ok = false;
        }
        record("clock_identities", ok);
    }

    Json j;
    j["schema"] = 1;
    j["seed"] = seed;
    j["checks"] = checks;
    j["all_pass"] = all;
    return j;
}

} // namespace cusp
