#include "cusp/puiseux.hpp"

#include <numeric>

namespace cusp {

PuiseuxParam make_puiseux(long long n, const std::vector<std::pair<long long, Rat>>& y_terms)
{
    if (y_terms.empty())
        fail("InputError", "parametrization needs at least the t^m term of y");
    PuiseuxParam p;
    p.n = n;
    TSeries b;
    long long prev = -1;
    for (const auto& [e, c] : y_terms) {
        if (e <= prev)
            fail("InputError", "y exponents must be strictly increasing");
        prev = e;
        if (c == 0)
            fail("InputError", "zero coefficient in y");
        b.set(e, c);
    }
    p.m = *b.order();
    if (n < 2 || n >= p.m)
        fail("NotCusp", "need 2 <= n < ord_t(y)");
    if (std::gcd(n, p.m) != 1)
        fail("NotCoprime", "gcd(n, m) != 1");
    Rat lead = b.coeff(p.m);
    if (lead != 1) {
        b *= Rat(1) / lead;
        p.was_normalized = true;
    }
    p.b = std::move(b);
    return p;
}

PuiseuxParam monomial_cusp(long long n, long long m)
{
    return make_puiseux(n, {{m, Rat(1)}});
}

Pullback::Pullback(PuiseuxParam p) : p_(std::move(p)), db_(p_.b.derivative())
{
    pow_cache_.push_back(TSeries::monomial(0, Rat(1)));
}

const TSeries& Pullback::b_pow(long long j) const
{
    while (static_cast<long long>(pow_cache_.size()) <= j)
        pow_cache_.push_back(pow_cache_.back() * p_.b);
    return pow_cache_[static_cast<size_t>(j)];
}

TSeries Pullback::eval(const WPoly& h) const
{
    TSeries out;
    for (const auto& [k, c] : h.terms())
        out.add_scaled(c, b_pow(k.j).shifted(p_.n * k.i));
    // unknown terms of weighted degree >= trunc contribute orders >= trunc
    out.set_truncation(h.truncation());
    return out;
}

TSeries Pullback::pull_form(const OneForm& w) const
{
    // phi^*(x^i y^j dx) = n t^{n(i+1)-1} b^j dt: exponent = form weight - 1
    TSeries out = eval(w.A) * TSeries::monomial(p_.n - 1, Rat(p_.n));
    out += eval(w.B) * db_;
    // consistency with the form-level trust region
    out.set_truncation(std::min(out.truncation(),
                                w.trunc() >= kNoTrunc ? kNoTrunc : w.trunc() - 1));
    return out;
}

OrderResult Pullback::nu_C(const OneForm& w, long long T) const
{
    if (T > w.trunc())
        fail("TruncationTooDeep", "requested T exceeds the form's weighted truncation");
    TSeries s = pull_form(w);
    for (const auto& [e, c] : s.terms())
        if (e + 1 < T)
            return OrderResult::make_finite(e + 1, T);
        else
            break;
    if (T >= p_.certification_threshold())
        return OrderResult::make_infinite(T);
    return OrderResult::make_unknown(T);
}

OrderResult Pullback::nu_C_fn(const WPoly& h, long long T) const
{
    if (T > h.truncation())
        fail("TruncationTooDeep", "requested T exceeds the polynomial's truncation");
    TSeries s = eval(h);
    for (const auto& [e, c] : s.terms())
        if (e < T)
            return OrderResult::make_finite(e, T);
        else
            break;
    if (T >= p_.certification_threshold())
        return OrderResult::make_infinite(T);
    return OrderResult::make_unknown(T);
}

TSeries pullback(const PuiseuxParam& p, const OneForm& w, long long T)
{
    if (T > w.trunc())
        fail("TruncationTooDeep", "requested T exceeds the form's weighted truncation");
    return Pullback(p).pull_form(w).truncated(T);
}

OrderResult nu_C(const PuiseuxParam& p, const OneForm& w, long long T)
{
    return Pullback(p).nu_C(w, T);
}

OrderResult nu_C_fn(const PuiseuxParam& p, const WPoly& h, long long T)
{
    return Pullback(p).nu_C_fn(h, T);
}

WPoly exact_primitive(const PuiseuxParam& p, const TSeries& psi, long long W)
{
    // ord(psi) >= c_Gamma - 1 guarantees every needed order lies in the
    // semigroup; shallower inputs still work whenever that holds termwise
    CuspSemigroup g = p.semigroup();
    Pullback engine(p);
    WPoly h(p.weights(), W);
    TSeries rest = psi;
    long long steps = 0;
    while (!rest.is_zero()) {
        if (++steps > W)
            fail("NonTermination", "exact_primitive exceeded its iteration cap");
        long long e = *rest.order();
        Int k(e + 1);
        auto rep = g.membership(k);
        if (!rep)
            fail("OrderGap", "needed order " + k.str() + " is not in the semigroup");
        long long i = to_ll(rep->first), j = to_ll(rep->second);
        Rat c = rest.coeff(e) / Rat(e + 1);
        h.add_term(i, j, c);
        // subtract phi^*(d(c x^i y^j)) = c (t^{ni} b^j)' dt
        TSeries dpull = (engine.eval(WPoly::monomial(p.weights(), i, j, Rat(1)))).derivative();
        rest.add_scaled(-c, dpull);
        if (!rest.is_zero() && *rest.order() <= e)
            fail("Internal", "exact_primitive order did not increase");
    }
    return h;
}

WPoly implicit_equation(const PuiseuxParam& p, long long W)
{
    const long long n = p.n;
    const Weights wt = p.weights();
    // multiplication-by-b matrix on Q[t]/(t^n - x): entries are polynomials
    // in x alone; basis 1, t, ..., t^{n-1}
    std::vector<std::vector<WPoly>> M(static_cast<size_t>(n),
                                      std::vector<WPoly>(static_cast<size_t>(n), WPoly(wt)));
    for (const auto& [e, c] : p.b.terms()) {
        for (long long col = 0; col < n; ++col) {
            long long row = (e + col) % n;
            long long xpow = (e + col) / n;
            M[static_cast<size_t>(row)][static_cast<size_t>(col)].add_term(xpow, 0, c);
        }
    }

    // Faddeev-LeVerrier: char(y) = y^n + c_1 y^{n-1} + ... + c_n with integer
    // divisions only
    auto mat_mul = [&](const std::vector<std::vector<WPoly>>& X,
                       const std::vector<std::vector<WPoly>>& Y) {
        std::vector<std::vector<WPoly>> Z(static_cast<size_t>(n),
                                          std::vector<WPoly>(static_cast<size_t>(n), WPoly(wt)));
        for (size_t r = 0; r < static_cast<size_t>(n); ++r)
            for (size_t k = 0; k < static_cast<size_t>(n); ++k) {
                if (X[r][k].is_zero())
                    continue;
                for (size_t c = 0; c < static_cast<size_t>(n); ++c)
                    if (!Y[k][c].is_zero())
                        Z[r][c] += X[r][k] * Y[k][c];
            }
        return Z;
    };

    std::vector<std::vector<WPoly>> Mk = M;
    std::vector<WPoly> coeffs; // c_1, ..., c_n
    for (long long k = 1; k <= n; ++k) {
        WPoly tr(wt);
        for (size_t r = 0; r < static_cast<size_t>(n); ++r)
            tr += Mk[r][r];
        tr *= Rat(-1, k);
        coeffs.push_back(tr);
        if (k == n)
            break;
        for (size_t r = 0; r < static_cast<size_t>(n); ++r)
            Mk[r][r] += tr;
        Mk = mat_mul(M, Mk);
    }

    WPoly f(wt, W);
    f.add_term(0, static_cast<long long>(n), Rat(1)); // y^n
    for (long long k = 1; k <= n; ++k) {
        const WPoly& ck = coeffs[static_cast<size_t>(k - 1)];
        for (const auto& [key, c] : ck.terms())
            f.add_term(key.i, n - k, c);
    }
    return f;
}

} // namespace cusp
