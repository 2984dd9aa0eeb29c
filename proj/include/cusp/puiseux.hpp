#ifndef CUSP_PUISEUX_HPP
#define CUSP_PUISEUX_HPP

#include <vector>

#include "cusp/semigroup.hpp"
#include "cusp/wpoly.hpp"

namespace cusp {

// Polynomial Puiseux parametrization x = t^n, y = b(t) in adapted
// coordinates: ord_t b = m, gcd(n,m) = 1, n < m, b monic at t^m.
struct PuiseuxParam {
    long long n = 0;
    TSeries b;
    long long m = 0;
    bool was_normalized = false; // leading coefficient rescaled to 1

    Weights weights() const { return Weights{n, m}; }
    CuspSemigroup semigroup() const { return CuspSemigroup(Int(n), Int(m)); }
    long long c_gamma() const { return (n - 1) * (m - 1); }
    // default working truncation c_Gamma + 2nm, both for t-series and for
    // weighted polynomials
    long long default_truncation() const { return c_gamma() + 2 * n * m; }
    // nu_C infinity is certified only when the pullback vanishes through this
    long long certification_threshold() const { return c_gamma() + n * m; }
};

PuiseuxParam make_puiseux(long long n, const std::vector<std::pair<long long, Rat>>& y_terms);

// quasi-homogeneous model (t^n, t^m)
PuiseuxParam monomial_cusp(long long n, long long m);

// Truncation-honest order of a pullback.
struct OrderResult {
    enum class Kind { Finite, InfinityCertified, UnknownAbove };
    Kind kind = Kind::UnknownAbove;
    long long value = 0;     // set for Finite
    long long threshold = 0; // the T the series vanished / was read to

    bool finite() const { return kind == Kind::Finite; }
    bool infinite() const { return kind == Kind::InfinityCertified; }
    static OrderResult make_finite(long long v, long long T) { return {Kind::Finite, v, T}; }
    static OrderResult make_infinite(long long T) { return {Kind::InfinityCertified, 0, T}; }
    static OrderResult make_unknown(long long T) { return {Kind::UnknownAbove, 0, T}; }
};

// Pullback engine with cached powers of b.  All arithmetic is exact; the
// requested truncation only limits what is read off.
class Pullback {
public:
    explicit Pullback(PuiseuxParam p);

    const PuiseuxParam& param() const { return p_; }

    // phi(h) = h(t^n, b(t))
    TSeries eval(const WPoly& h) const;
    // phi^*(A dx + B dy) coefficient series: A(phi) n t^{n-1} + B(phi) b'(t)
    TSeries pull_form(const OneForm& w) const;

    // ord_t + 1 of the pullback, read below T
    OrderResult nu_C(const OneForm& w, long long T) const;
    // ord_t of h(phi), read below T
    OrderResult nu_C_fn(const WPoly& h, long long T) const;

private:
    const TSeries& b_pow(long long j) const;

    PuiseuxParam p_;
    TSeries db_;
    mutable std::vector<TSeries> pow_cache_;
};

TSeries pullback(const PuiseuxParam& p, const OneForm& w, long long T);
OrderResult nu_C(const PuiseuxParam& p, const OneForm& w, long long T);
OrderResult nu_C_fn(const PuiseuxParam& p, const WPoly& h, long long T);

// nu_D(w) < nm and nu_C(w) > nu_D(w); decided algebraically through the
// initial part (see is_resonant_form), the parametrization fixes the weights
inline bool is_resonant(const PuiseuxParam& p, const OneForm& w)
{
    if (!(w.weights() == p.weights()))
        fail("Internal", "form weights do not match the parametrization");
    return is_resonant_form(w);
}

// Greedy primitive: h with pullback(dh) = psi modulo the truncation of psi,
// built by canonical-representation descent (needs ord psi >= c_Gamma - 1).
WPoly exact_primitive(const PuiseuxParam& p, const TSeries& psi, long long W);

// Reduced equation f of the parametrized cusp: the resultant of y - b(t)
// against t^n - x, computed as the characteristic polynomial of the
// multiplication-by-b matrix on Q[t]/(t^n - x).  Monic of degree n in y,
// f(phi(t)) = 0 exactly; truncated to W when requested.
WPoly implicit_equation(const PuiseuxParam& p, long long W = kNoTrunc);

} // namespace cusp

#endif
