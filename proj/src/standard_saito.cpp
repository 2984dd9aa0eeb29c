#include "cusp/standard_saito.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "cusp/linalg.hpp"

namespace cusp {

namespace {

Rat lead_coeff(const TSeries& s)
{
    return s.terms().begin()->second;
}

// present the form as trusted below weighted degree W
void clamp_form(OneForm& w, long long W)
{
    if (W >= kNoTrunc)
        return;
    w.A.set_truncation(std::min(w.A.truncation(), W - w.weights().n));
    w.B.set_truncation(std::min(w.B.truncation(), W - w.weights().m));
}

} // namespace

void normalize_initial(OneForm& w)
{
    if (w.is_zero())
        return;
    const Weights wt = w.weights();
    OneForm in = initial_part(w);
    auto dm = single_diff_monomial(in);
    Rat scale;
    if (dm && dm->a != 0 && wt.n * dm->a + wt.m * dm->b == 0) {
        // resonant: aim at x^a y^b (n dy/y - m dx/x)
        scale = Rat(-wt.m) / dm->a;
    } else {
        // canonical lowest term gets coefficient 1; dx slot wins ties
        const Rat* c = nullptr;
        std::pair<long long, long long> best{0, 0};
        if (!in.A.is_zero()) {
            const auto& k = in.A.terms().begin()->first;
            best = {k.i, k.j};
            c = &in.A.terms().begin()->second;
        }
        if (!in.B.is_zero()) {
            const auto& k = in.B.terms().begin()->first;
            if (!c || std::pair<long long, long long>{k.i, k.j} < best) {
                best = {k.i, k.j};
                c = &in.B.terms().begin()->second;
            }
        }
        scale = Rat(1) / *c;
    }
    w *= scale;
}

// ---- echelonization ---------------------------------------------------------

StandardBasisResult compute_standard_basis(const PuiseuxParam& p, long long W)
{
    const long long n = p.n, m = p.m;
    const Weights wt = p.weights();
    Pullback engine(p);

    struct MF {
        long long wdeg;
        int slot; // 0 = dx, 1 = dy
        long long i, j;
    };
    std::vector<MF> mfs;
    for (long long j = 0; m * j + n < W; ++j)
        for (long long i = 0; n * (i + 1) + m * j < W; ++i)
            mfs.push_back({n * (i + 1) + m * j, 0, i, j});
    for (long long j = 0; m * (j + 1) < W; ++j)
        for (long long i = 0; n * i + m * (j + 1) < W; ++i)
            mfs.push_back({n * i + m * (j + 1), 1, i, j});
    std::sort(mfs.begin(), mfs.end(), [](const MF& a, const MF& b) {
        return std::tie(a.wdeg, a.slot, a.i) < std::tie(b.wdeg, b.slot, b.i);
    });

    auto mono_form = [&](const MF& f) {
        OneForm w = zero_form(wt);
        (f.slot == 0 ? w.A : w.B).set(f.i, f.j, Rat(1));
        return w;
    };

    struct Slot {
        TSeries series;
        OneForm comb;
    };
    std::map<long long, Slot> occupied; // keyed by nu_C value
    std::set<long long> free_slots;
    for (long long v = 0; v < W; ++v)
        free_slots.insert(free_slots.end(), v);

    // forms whose own leading order is free rest immediately; collisions are
    // deferred and row-reduced afterwards
    std::vector<MF> deferred;
    for (const MF& f : mfs) {
        if (occupied.count(f.wdeg)) {
            deferred.push_back(f);
            continue;
        }
        OneForm comb = mono_form(f);
        TSeries series = engine.pull_form(comb).truncated(W - 1);
        occupied.emplace(f.wdeg, Slot{std::move(series), std::move(comb)});
        free_slots.erase(f.wdeg);
    }
    for (const MF& f : deferred) {
        OneForm comb = mono_form(f);
        TSeries series = engine.pull_form(comb).truncated(W - 1);
        while (!series.is_zero()) {
            long long nu = *series.order() + 1;
            auto ff = free_slots.lower_bound(nu);
            if (ff == free_slots.end())
                break; // nothing new reachable below W
            if (*ff == nu) {
                occupied.emplace(nu, Slot{std::move(series), std::move(comb)});
                free_slots.erase(ff);
                break;
            }
            Slot& pivot = occupied.at(nu);
            Rat mu = lead_coeff(series) / lead_coeff(pivot.series);
            series.add_scaled(-mu, pivot.series);
            comb.add_scaled(-mu, pivot.comb);
        }
    }

    StandardBasisResult res;
    res.param = p;
    res.W = W;
    std::vector<Int> values;
    for (const auto& [nu, slot] : occupied) {
        res.leading_set.push_back(nu);
        values.push_back(Int(nu));
    }
    res.basis = normalize_basis(p.semigroup(), values);
    if (res.basis.lambda(res.basis.length()) + Int(n) * Int(m) > Int(W))
        fail("TruncationInsufficient",
             "largest basis element not separated from W by nm; retry deeper");
    res.table = structure_table(res.basis);

    for (int i = -1; i <= res.basis.length(); ++i) {
        long long lam = to_ll(res.basis.lambda(i));
        OneForm w = occupied.at(lam).comb;
        normalize_initial(w);
        clamp_form(w, W);
        if (nu_D(w) != to_ll(res.table.t(i)))
            fail("Internal", "standard basis witness has unexpected divisorial order");
        res.forms.push_back(std::move(w));
    }
    return res;
}

// ---- climbing construction --------------------------------------------------

namespace {

struct Climber {
    const StandardBasisResult& sb;
    Pullback engine;
    long long W;
    std::vector<TSeries> pull_cache; // pullbacks of omega_{-1..s}

    explicit Climber(const StandardBasisResult& sb_)
        : sb(sb_), engine(sb_.param), W(sb_.W)
    {
        for (int i = -1; i <= sb.s(); ++i)
            pull_cache.push_back(engine.pull_form(sb.omega(i)).truncated(W - 1));
    }

    const TSeries& omega_pull(int i) { return pull_cache[static_cast<size_t>(i + 1)]; }

    // smallest (beta, alpha, idx) with lambda_idx + n alpha + m beta = v
    struct Candidate {
        long long beta, alpha;
        int idx;
    };
    std::optional<Candidate> find_candidate(long long v) const
    {
        const long long n = sb.param.n, m = sb.param.m;
        std::optional<Candidate> best;
        for (int idx = -1; idx <= sb.s(); ++idx) {
            long long diff = v - sb.lambda_ll(idx);
            if (diff < 0)
                continue;
            for (long long beta = 0; m * beta <= diff; ++beta) {
                long long rest = diff - m * beta;
                if (rest % n)
                    continue;
                Candidate c{beta, rest / n, idx};
                if (!best || std::tie(c.beta, c.alpha) < std::tie(best->beta, best->alpha))
                    best = c;
                break; // larger beta only increases the key
            }
        }
        return best;
    }

    // raise nu_C of theta (keeping nu_D) until the pullback vanishes below W
    void to_invariance(OneForm& theta, TSeries& pulled)
    {
        const long long nm = sb.param.n * sb.param.m;
        for (long long step = 0; step <= W; ++step) {
            if (pulled.is_zero()) {
                clamp_form(theta, W);
                return;
            }
            long long v = *pulled.order() + 1;
            if (v >= nm) {
                // residual tail is integrable: subtract an exact primitive
                WPoly h = exact_primitive(sb.param, pulled, W);
                OneForm dh = differential(h);
                theta -= dh;
                pulled -= engine.pull_form(dh).truncated(W - 1);
                if (!pulled.is_zero())
                    fail("Internal", "primitive did not flatten the tail");
                clamp_form(theta, W);
                return;
            }
            auto cand = find_candidate(v);
            if (!cand)
                fail("Internal", "differential value outside the semimodule during climb");
            TSeries cpull = engine.eval(WPoly::monomial(sb.param.weights(), cand->alpha,
                                                        cand->beta, Rat(1))) *
                            omega_pull(cand->idx);
            cpull = cpull.truncated(W - 1);
            Rat mu = pulled.coeff(v - 1) / cpull.coeff(v - 1);
            theta.add_scaled(-mu, sb.omega(cand->idx).mono_mul(cand->alpha, cand->beta, Rat(1)));
            pulled.add_scaled(-mu, cpull);
            if (!pulled.is_zero() && *pulled.order() < v)
                fail("Internal", "climb did not raise the differential value");
        }
        fail("NonTermination", "invariance climb exceeded its iteration cap");
    }
};

} // namespace

OneForm extend_standard_basis(const StandardBasisResult& sb, bool star_n)
{
    const int s = sb.s();
    if (s < 0)
        fail("PreconditionViolated", "extension needs a basis with lambda_{-1}, lambda_0");
    const StructureTable& tab = sb.table;
    Climber climber(sb);

    long long ell = to_ll(tab.l_star(s + 1, star_n));
    int k = tab.k_star(s, star_n);
    long long co = to_ll(star_n ? tab.b(s + 1) : tab.a(s + 1));

    // theta_1 = x^l omega_s - mu y^b omega_k        (star = n)
    //         = y^l omega_s - mu x^a omega_k        (star = m)
    long long ax = star_n ? ell : 0, ay = star_n ? 0 : ell;
    long long bx = star_n ? 0 : co, by = star_n ? co : 0;

    OneForm theta = sb.omega(s).mono_mul(ax, ay, Rat(1));
    TSeries pulled = (climber.engine.eval(WPoly::monomial(sb.param.weights(), ax, ay, Rat(1))) *
                      climber.omega_pull(s))
                         .truncated(sb.W - 1);
    TSeries cpull = (climber.engine.eval(WPoly::monomial(sb.param.weights(), bx, by, Rat(1))) *
                     climber.omega_pull(k))
                        .truncated(sb.W - 1);
    long long u = to_ll(tab.u_star(s + 1, star_n));
    Rat mu = pulled.coeff(u - 1) / cpull.coeff(u - 1);
    theta.add_scaled(-mu, sb.omega(k).mono_mul(bx, by, Rat(1)));
    pulled.add_scaled(-mu, cpull);

    climber.to_invariance(theta, pulled);
    normalize_initial(theta);
    if (nu_D(theta) != to_ll(tab.t_star(s + 1, star_n)))
        fail("Internal", "extension form missed its critical divisorial order");
    return theta;
}

std::pair<OneForm, OneForm> quasihomogeneous_saito(const PuiseuxParam& p)
{
    if (p.b.terms().size() != 1)
        fail("NotQuasiHomogeneous", "quasihomogeneous_saito needs y = t^m");
    const Weights wt = p.weights();
    OneForm w1 = zero_form(wt);
    w1.A.set(0, 1, Rat(-p.m)); // n x dy - m y dx
    w1.B.set(1, 0, Rat(p.n));
    WPoly f(wt);
    f.add_term(0, p.n, Rat(1));
    f.add_term(p.m, 0, Rat(-1));
    OneForm w2 = differential(f);
    return {w1, w2};
}

// ---- Delorme decomposition --------------------------------------------------

namespace {

// greedy split r = f_{-1} omega_{-1} + f_0 omega_0 below the trust limit
void split_base(const StandardBasisResult& sb, OneForm& r, WPoly& f_m1, WPoly& f_0,
                long long limit)
{
    Rat cA = initial_part(sb.omega(-1)).A.terms().begin()->second;
    Rat cB = initial_part(sb.omega(0)).B.terms().begin()->second;
    for (long long step = 0; step <= limit; ++step) {
        if (r.is_zero() || nu_D(r) >= limit)
            return;
        OneForm in = initial_part(r);
        WPoly qA = in.A;
        qA *= Rat(1) / cA;
        WPoly qB = in.B;
        qB *= Rat(1) / cB;
        f_m1 += qA;
        f_0 += qB;
        if (!qA.is_zero())
            r -= sb.omega(-1).poly_mul(qA);
        if (!qB.is_zero())
            r -= sb.omega(0).poly_mul(qB);
    }
    fail("NonTermination", "base split exceeded its iteration cap");
}

long long trust_limit(const StandardBasisResult& sb, const OneForm& w)
{
    return std::min(w.trunc(), sb.W);
}

} // namespace

DelormeDecomposition delorme_decompose(const StandardBasisResult& sb, const OneForm& w, int i,
                                       int j, bool star_n)
{
    const StructureTable& tab = sb.table;
    const Weights wt = sb.param.weights();
    if (j < 0 || j > i || i > sb.s())
        fail("PreconditionViolated", "need 0 <= j <= i <= s");

    long long t_star = to_ll(tab.t_star(i + 1, star_n));
    long long u_star = to_ll(tab.u_star(i + 1, star_n));
    long long measured_nu_d = nu_D(w);
    OrderResult vc = nu_C(sb.param, w, trust_limit(sb, w));
    if (measured_nu_d != t_star || (vc.finite() && Int(vc.value) <= Int(u_star)))
        fail("PreconditionViolated",
             "delorme needs nu_D = t*_{i+1} and nu_C > u*_{i+1}; measured nu_D = " +
                 std::to_string(measured_nu_d) +
                 (vc.finite() ? ", nu_C = " + std::to_string(vc.value) : ""));

    DelormeDecomposition out;
    out.i = i;
    out.j = j;
    out.star_n = star_n;
    out.v = tab.t_star(i + 1, star_n) + sb.basis.lambda(j) - tab.t(j);

    if (j < i) {
        DelormeDecomposition d1 = delorme_decompose(sb, w, i, j + 1, star_n);
        DelormeDecomposition d2 =
            delorme_decompose(sb, sb.omega(j + 1), j, j, tab.min_axis_is_n(j));
        for (int l = -1; l <= j; ++l) {
            WPoly fl = d1.f(l);
            fl += d1.f(j + 1) * d2.f(l);
            out.coeff.push_back(std::move(fl));
        }
        return out;
    }

    // j == i
    const long long limit = trust_limit(sb, w);
    std::vector<WPoly> coeff(static_cast<size_t>(i + 2), WPoly(wt));
    OneForm r = w;

    if (i == 0) {
        split_base(sb, r, coeff[0], coeff[1], limit);
        out.coeff = std::move(coeff);
        return out;
    }

    // resonant head: w = mu_1 x^l omega_i + ...   (y^l for star = m)
    auto reach = reachable(sb.omega(i), w);
    long long ell = to_ll(tab.l_star(i + 1, star_n));
    long long ex = star_n ? ell : 0, ey = star_n ? 0 : ell;
    if (!reach || reach->a != ex || reach->b != ey)
        fail("Internal", "head of the decomposition is not the expected axis monomial");
    coeff[static_cast<size_t>(i + 1)].add_term(ex, ey, reach->mu);
    r -= sb.omega(i).mono_mul(ex, ey, reach->mu);

    // bound term: mu_2 y^{b} omega_{k^n}  (x^{a} omega_{k^m} for star = m)
    Pullback engine(sb.param);
    int k = tab.k_star(i, star_n);
    long long co = to_ll(star_n ? tab.b(i + 1) : tab.a(i + 1));
    long long bx = star_n ? 0 : co, by = star_n ? co : 0;
    TSeries rp = engine.pull_form(r).truncated(limit - 1);
    OneForm cand = sb.omega(k).mono_mul(bx, by, Rat(1));
    TSeries cp = engine.pull_form(cand).truncated(limit - 1);
    Rat mu2 = rp.coeff(u_star - 1) / cp.coeff(u_star - 1);
    if (mu2 != 0) {
        coeff[static_cast<size_t>(k + 1)].add_term(bx, by, mu2);
        r.add_scaled(-mu2, cand);
    }

    // subida: push the remainder into the earlier basis forms
    const long long nm = sb.param.n * sb.param.m;
    for (long long step = 0; step <= limit; ++step) {
        if (r.is_zero())
            break;
        long long d = nu_D(r);
        if (d >= limit)
            break;
        if (d >= nm) {
            split_base(sb, r, coeff[0], coeff[1], limit);
            break;
        }
        if (is_resonant_form(r)) {
            bool done = false;
            for (int l = i; l >= 1 && !done; --l)
                if (auto rr = reachable(sb.omega(l), r)) {
                    coeff[static_cast<size_t>(l + 1)].add_term(rr->a, rr->b, rr->mu);
                    r -= sb.omega(l).mono_mul(rr->a, rr->b, rr->mu);
                    done = true;
                }
            if (!done)
                fail("Internal", "resonant remainder reachable from no basis form");
        } else {
            OneForm in = initial_part(r);
            Rat cA = initial_part(sb.omega(-1)).A.terms().begin()->second;
            Rat cB = initial_part(sb.omega(0)).B.terms().begin()->second;
            WPoly qA = in.A;
            qA *= Rat(1) / cA;
            WPoly qB = in.B;
            qB *= Rat(1) / cB;
            coeff[0] += qA;
            coeff[1] += qB;
            if (!qA.is_zero())
                r -= sb.omega(-1).poly_mul(qA);
            if (!qB.is_zero())
                r -= sb.omega(0).poly_mul(qB);
        }
        if (!r.is_zero() && nu_D(r) <= d)
            fail("Internal", "subida failed to raise the divisorial order");
    }
    out.coeff = std::move(coeff);
    return out;
}

// ---- special standard systems -----------------------------------------------

namespace {

struct CertForm {
    OneForm form;
    WPoly h, f; // form = h omega_{s+1} + f omega~_{s+1} in the Saito module
};

void subtract_reachable(OneForm& theta, WPoly& ch, WPoly& cf, const ReachMonomial& r,
                        const CertForm& c)
{
    theta -= c.form.mono_mul(r.a, r.b, r.mu);
    ch.add_scaled(Rat(-1), c.h.mono_mul(r.a, r.b, r.mu));
    cf.add_scaled(Rat(-1), c.f.mono_mul(r.a, r.b, r.mu));
}

} // namespace

StandardSystem special_standard_system(const StandardBasisResult& sb, const OneForm& w_last,
                                       const OneForm& wt_last)
{
    const StructureTable& tab = sb.table;
    const Weights wt = sb.param.weights();
    const int s = sb.s();

    if (nu_D(w_last) != to_ll(tab.t(s + 1)) || nu_D(wt_last) != to_ll(tab.t_tilde(s + 1)))
        fail("PreconditionViolated", "last forms must carry the last critical values");

    StandardSystem sys;
    sys.s = s;
    for (int i = -1; i <= s; ++i)
        sys.extended.push_back(sb.omega(i));
    sys.extended.push_back(w_last);
    sys.tilde.assign(static_cast<size_t>(s + 1), zero_form(wt));
    sys.cert.assign(static_cast<size_t>(s + 1), {WPoly(wt), WPoly(wt)});

    CertForm last{w_last, WPoly::monomial(wt, 0, 0, Rat(1)), WPoly(wt)};
    CertForm tlast{wt_last, WPoly(wt), WPoly::monomial(wt, 0, 0, Rat(1))};
    sys.tilde[static_cast<size_t>(s)] = wt_last;
    sys.cert[static_cast<size_t>(s)] = {tlast.h, tlast.f};

    std::vector<CertForm> built(static_cast<size_t>(s + 2)); // omega~_j at [j]
    built[static_cast<size_t>(s + 1)] = tlast;

    auto in_mono = [](const OneForm& w) {
        auto dm = single_diff_monomial(initial_part(w));
        if (!dm)
            fail("Internal", "expected a single-monomial initial part");
        return *dm;
    };

    for (int j = s; j >= 1; --j) {
        // A-side: omega~_{j+1}; B-side: omega_{s+1} or the first omega~_q
        // whose maximal branch matches that of omega~_{j+1}
        const CertForm& aside = built[static_cast<size_t>(j + 1)];
        const CertForm* bside = &last;
        if (j < s) {
            bool tilde_is_n = tab.t_tilde(j + 1) == tab.t_n(j + 1);
            for (int l = j + 2; l <= s + 1; ++l) {
                bool l_is_n = tab.t_tilde(l) == tab.t_n(l);
                if (l_is_n == tilde_is_n) {
                    bside = &built[static_cast<size_t>(l)];
                    break;
                }
            }
        }

        DiffMonomial da = in_mono(aside.form);
        DiffMonomial db = in_mono(bside->form);
        long long xa = std::max(db.alpha - da.alpha, 0LL), ya = std::max(db.beta - da.beta, 0LL);
        long long xb = std::max(da.alpha - db.alpha, 0LL), yb = std::max(da.beta - db.beta, 0LL);
        Rat ca = da.b / Rat(wt.n); // scalar of the resonant pattern
        Rat cb = db.b / Rat(wt.n);

        CertForm theta;
        theta.form = aside.form.mono_mul(xa, ya, cb);
        theta.h = aside.h.mono_mul(xa, ya, cb);
        theta.f = aside.f.mono_mul(xa, ya, cb);
        theta.form -= bside->form.mono_mul(xb, yb, ca);
        theta.h.add_scaled(Rat(-1), bside->h.mono_mul(xb, yb, ca));
        theta.f.add_scaled(Rat(-1), bside->f.mono_mul(xb, yb, ca));

        const long long target = to_ll(tab.t_tilde(j));
        long long guard = sb.W;
        while (nu_D(theta.form) < target) {
            if (--guard < 0)
                fail("IterationCap", "good-list improvement exceeded its cap");
            bool done = false;
            // candidates in T: omega_{s+1} and the later omega~_l
            std::optional<std::pair<ReachMonomial, const CertForm*>> pick;
            auto consider = [&](const CertForm& c) {
                if (auto r = reachable(c.form, theta.form)) {
                    if (!pick || std::tie(r->b, r->a) <
                                     std::tie(pick->first.b, pick->first.a))
                        pick = {*r, &c};
                }
            };
            consider(last);
            for (int l = j + 1; l <= s + 1; ++l)
                consider(built[static_cast<size_t>(l)]);
            if (pick) {
                subtract_reachable(theta.form, theta.h, theta.f, pick->first, *pick->second);
                done = true;
            }
            if (!done)
                fail("Internal", "good-list step found no reachable candidate");
        }
        if (nu_D(theta.form) != target)
            fail("Internal", "good-list landed past its critical value");

        // normalize the representative together with its certificate
        OneForm probe = theta.form;
        normalize_initial(probe);
        // recover the scale applied by normalize_initial
        Rat scale = 0;
        for (const auto& [k, c] : theta.form.A.terms()) {
            scale = probe.A.coeff(k.i, k.j) / c;
            break;
        }
        if (scale == 0)
            for (const auto& [k, c] : theta.form.B.terms()) {
                scale = probe.B.coeff(k.i, k.j) / c;
                break;
            }
        theta.form = probe;
        theta.h *= scale;
        theta.f *= scale;

        built[static_cast<size_t>(j)] = theta;
        sys.tilde[static_cast<size_t>(j - 1)] = theta.form;
        sys.cert[static_cast<size_t>(j - 1)] = {theta.h, theta.f};
    }
    return sys;
}

// ---- Saito criterion ---------------------------------------------------------

namespace {

// exact division of a quasi-homogeneous component by In(f) = cy y^n + cx x^m;
// reduces from the largest y-exponent down so byproducts can still cancel
bool divide_component(const WPoly& comp, long long n, long long m, const Rat& cy, const Rat& cx,
                      WPoly& quotient, std::string& offending)
{
    WPoly rest = comp;
    while (!rest.is_zero()) {
        Mono k = rest.terms().begin()->first; // smallest i, i.e. largest j on the level
        Rat c = rest.terms().begin()->second;
        if (k.j < n) {
            offending = to_text(WPoly::monomial(comp.weights(), k.i, k.j, c));
            return false;
        }
        quotient.add_term(k.i, k.j - n, c / cy);
        rest.add_term(k.i, k.j, -c);
        rest.add_term(k.i + m, k.j - n, -c * cx / cy);
    }
    return true;
}

} // namespace

SaitoCriterion saito_criterion(const OneForm& w1, const OneForm& w2, const WPoly& f)
{
    const Weights wt = f.weights();
    const long long n = wt.n, m = wt.m, nm = n * m;
    if (f.is_zero() || f.coeff(0, 0) != 0)
        fail("PreconditionViolated", "criterion needs f nonzero with f(0,0) = 0");

    WPoly in_f = initial_part(f);
    Rat cy = in_f.coeff(0, n), cx = in_f.coeff(m, 0);
    if (nu_D(f) != nm || cy == 0)
        fail("Internal", "equation is not in adapted shape y^n - c x^m + higher");

    WPoly p = wedge(w1, w2);
    const long long limit = p.truncation();

    SaitoCriterion out;
    out.unit = WPoly(wt, limit >= kNoTrunc ? kNoTrunc : limit - nm);
    WPoly rest = p;
    long long guard = limit >= kNoTrunc ? (1 << 20) : limit;
    while (!rest.is_zero()) {
        if (--guard < 0)
            fail("NonTermination", "criterion division exceeded its cap");
        long long d = rest.order_floor();
        if (d >= limit)
            break;
        if (d < nm) {
            out.ok = false;
            out.detail = "term below weight nm: " + to_text(rest.component(d));
            return out;
        }
        WPoly q(wt);
        if (!divide_component(rest.component(d), n, m, cy, cx, q, out.detail)) {
            out.ok = false;
            return out;
        }
        out.unit += q;
        rest -= q * f;
        if (!rest.is_zero() && rest.order_floor() <= d)
            fail("Internal", "criterion division did not advance");
    }
    out.ok = out.unit.coeff(0, 0) != 0;
    if (!out.ok && out.detail.empty())
        out.detail = "quotient has no constant term";
    return out;
}

// ---- division in the Saito basis ---------------------------------------------

std::pair<WPoly, WPoly> divide_in_saito_basis(const OneForm& w, const StandardSystem& sys,
                                              const PuiseuxParam& p)
{
    const Weights wt = p.weights();
    const int s = sys.s;
    long long limit = std::min(w.trunc(), sys.omega_last().trunc());
    for (int j = 1; j <= s + 1; ++j)
        limit = std::min(limit, sys.omega_tilde(j).trunc());

    OrderResult vc = nu_C(p, w, std::min(limit, p.default_truncation()));
    if (vc.finite())
        fail("NotInModule", "form has finite differential value " + std::to_string(vc.value));

    // generators with their coordinates in (omega_{s+1}, omega~_{s+1})
    struct Gen {
        const OneForm* form;
        WPoly h, f;
        long long t;
    };
    std::vector<Gen> gens;
    gens.push_back({&sys.omega_last(), WPoly::monomial(wt, 0, 0, Rat(1)), WPoly(wt),
                    nu_D(sys.omega_last())});
    for (int j = 1; j <= s + 1; ++j) {
        const auto& [h, f] = sys.certificate(j);
        gens.push_back({&sys.omega_tilde(j), h, f, nu_D(sys.omega_tilde(j))});
    }

    WPoly g(wt, kNoTrunc), gt(wt, kNoTrunc);
    OneForm rest = w;

    long long guard = limit;
    while (!rest.is_zero()) {
        if (--guard < 0)
            fail("IterationCap", "Saito division exceeded its cap");
        long long d = nu_D(rest);
        if (d >= limit)
            break;

        // level-d products x^a y^b In(gen) spanning In(rest)
        struct Col {
            size_t gen;
            long long a, b;
            OneForm vec;
        };
        std::vector<Col> cols;
        for (size_t gi = 0; gi < gens.size(); ++gi) {
            long long diff = d - gens[gi].t;
            if (diff < 0)
                continue;
            OneForm gin = initial_part(*gens[gi].form);
            for (long long b = 0; wt.m * b <= diff; ++b) {
                long long rem = diff - wt.m * b;
                if (rem % wt.n)
                    continue;
                cols.push_back({gi, rem / wt.n, b, gin.mono_mul(rem / wt.n, b, Rat(1))});
            }
        }

        // exact linear solve over the weight-d slots
        std::map<std::tuple<int, long long, long long>, size_t> rows;
        auto row_of = [&rows](int slot, long long i, long long j) {
            return rows.try_emplace({slot, i, j}, rows.size()).first->second;
        };
        OneForm target = initial_part(rest);
        for (const auto& [k, c] : target.A.terms())
            row_of(0, k.i, k.j);
        for (const auto& [k, c] : target.B.terms())
            row_of(1, k.i, k.j);
        for (const Col& col : cols) {
            for (const auto& [k, c] : col.vec.A.terms())
                row_of(0, k.i, k.j);
            for (const auto& [k, c] : col.vec.B.terms())
                row_of(1, k.i, k.j);
        }
        size_t nrows = rows.size(), ncols = cols.size();
        std::vector<std::vector<Rat>> mat(nrows, std::vector<Rat>(ncols, Rat(0)));
        std::vector<Rat> rhs(nrows, Rat(0));
        for (size_t ci = 0; ci < ncols; ++ci) {
            for (const auto& [k, c] : cols[ci].vec.A.terms())
                mat[rows.at({0, k.i, k.j})][ci] = c;
            for (const auto& [k, c] : cols[ci].vec.B.terms())
                mat[rows.at({1, k.i, k.j})][ci] = c;
        }
        for (const auto& [k, c] : target.A.terms())
            rhs[rows.at({0, k.i, k.j})] = c;
        for (const auto& [k, c] : target.B.terms())
            rhs[rows.at({1, k.i, k.j})] = c;

        auto sol_opt = solve_exact(std::move(mat), std::move(rhs));
        if (!sol_opt)
            fail("Internal", "initial part not decomposable over the generator system");
        const std::vector<Rat>& sol = *sol_opt;

        for (size_t ci = 0; ci < ncols; ++ci) {
            if (sol[ci] == 0)
                continue;
            const Col& col = cols[ci];
            const Gen& gen = gens[col.gen];
            rest -= gen.form->mono_mul(col.a, col.b, sol[ci]);
            g += gen.h.mono_mul(col.a, col.b, sol[ci]);
            gt += gen.f.mono_mul(col.a, col.b, sol[ci]);
        }
        if (!rest.is_zero() && nu_D(rest) <= d)
            fail("Internal", "Saito division did not advance");
    }
    g.set_truncation(std::min(g.truncation(), limit - nu_D(sys.omega_last())));
    gt.set_truncation(std::min(gt.truncation(), limit - nu_D(sys.omega_tilde_last())));
    return {g, gt};
}

} // namespace cusp
