#ifndef CUSP_WPOLY_HPP
#define CUSP_WPOLY_HPP

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "cusp/tseries.hpp"

namespace cusp {

// (n, m)-weights of the ambient cusp.
struct Weights {
    long long n = 0, m = 0;
    long long wdeg(long long i, long long j) const { return n * i + m * j; }
    bool operator==(const Weights&) const = default;
};

// Monomial key ordered by (weighted degree, i); j is determined by (w, i)
// for fixed weights but kept for direct access.
struct Mono {
    long long w, i, j;
    auto operator<=>(const Mono& o) const { return std::tie(w, i) <=> std::tie(o.w, o.i); }
    bool operator==(const Mono& o) const { return w == o.w && i == o.i; }
};

// Bivariate polynomial over Q with the (n,m)-weighted truncation discipline:
// coefficients of weighted degree < truncation are exact, the rest unknown.
class WPoly {
public:
    WPoly() = default;
    explicit WPoly(Weights w, long long trunc = kNoTrunc) : w_(w), trunc_(trunc) {}

    static WPoly monomial(Weights w, long long i, long long j, Rat c,
                          long long trunc = kNoTrunc)
    {
        WPoly p(w, trunc);
        p.set(i, j, std::move(c));
        return p;
    }

    const Weights& weights() const { return w_; }
    long long truncation() const { return trunc_; }
    const std::map<Mono, Rat>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    // minimal stored weighted degree, or truncation when nothing is stored
    long long order_floor() const { return c_.empty() ? trunc_ : c_.begin()->first.w; }

    Rat coeff(long long i, long long j) const
    {
        auto it = c_.find(Mono{w_.wdeg(i, j), i, j});
        return it == c_.end() ? Rat(0) : it->second;
    }

    void set(long long i, long long j, Rat c)
    {
        if (i < 0 || j < 0)
            fail("Internal", "negative exponent in WPoly");
        Mono key{w_.wdeg(i, j), i, j};
        if (key.w >= trunc_)
            return;
        if (c == 0)
            c_.erase(key);
        else
            c_[key] = std::move(c);
    }

    void add_term(long long i, long long j, const Rat& c)
    {
        Mono key{w_.wdeg(i, j), i, j};
        if (key.w >= trunc_ || c == 0)
            return;
        auto [it, fresh] = c_.try_emplace(key, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0)
                c_.erase(it);
        }
    }

    WPoly& add_scaled(const Rat& scale, const WPoly& other)
    {
        check_weights(other);
        if (scale == 0)
            return *this;
        set_truncation(std::min(trunc_, other.trunc_));
        for (const auto& [k, c] : other.c_)
            add_term(k.i, k.j, scale * c);
        return *this;
    }

    WPoly& operator+=(const WPoly& o) { return add_scaled(Rat(1), o); }
    WPoly& operator-=(const WPoly& o) { return add_scaled(Rat(-1), o); }

    WPoly& operator*=(const Rat& scale)
    {
        if (scale == 0)
            c_.clear();
        else
            for (auto& [k, c] : c_)
                c *= scale;
        return *this;
    }

    // multiply by c * x^a y^b
    WPoly mono_mul(long long a, long long b, const Rat& c) const
    {
        WPoly out(w_, sat_add(trunc_, w_.wdeg(a, b)));
        if (c != 0)
            for (const auto& [k, v] : c_)
                out.set(k.i + a, k.j + b, v * c);
        return out;
    }

    friend WPoly operator*(const WPoly& a, const WPoly& b)
    {
        a.check_weights(b);
        WPoly out(a.w_, std::min(sat_add(a.trunc_, b.order_floor()),
                                 sat_add(b.trunc_, a.order_floor())));
        for (const auto& [ka, ca] : a.c_) {
            if (ka.w >= out.trunc_)
                break;
            for (const auto& [kb, cb] : b.c_) {
                if (ka.w + kb.w >= out.trunc_)
                    break;
                out.add_term(ka.i + kb.i, ka.j + kb.j, ca * cb);
            }
        }
        return out;
    }

    WPoly derivative_x() const
    {
        WPoly out(w_, trunc_ >= kNoTrunc ? kNoTrunc : trunc_ - w_.n);
        for (const auto& [k, c] : c_)
            if (k.i > 0)
                out.set(k.i - 1, k.j, c * k.i);
        return out;
    }

    WPoly derivative_y() const
    {
        WPoly out(w_, trunc_ >= kNoTrunc ? kNoTrunc : trunc_ - w_.m);
        for (const auto& [k, c] : c_)
            if (k.j > 0)
                out.set(k.i, k.j - 1, c * k.j);
        return out;
    }

    void set_truncation(long long trunc)
    {
        trunc_ = trunc;
        c_.erase(c_.lower_bound(Mono{trunc_, -(1LL << 60), 0}), c_.end());
    }

    // terms of one weighted degree
    WPoly component(long long wdeg) const
    {
        WPoly out(w_);
        for (auto it = c_.lower_bound(Mono{wdeg, -(1LL << 60), 0});
             it != c_.end() && it->first.w == wdeg; ++it)
            out.set(it->first.i, it->first.j, it->second);
        return out;
    }

    // minimal total degree of the stored support (multiplicity at the origin)
    std::optional<long long> min_total_degree() const
    {
        std::optional<long long> best;
        for (const auto& [k, c] : c_)
            if (!best || k.i + k.j < *best)
                best = k.i + k.j;
        return best;
    }

private:
    void check_weights(const WPoly& o) const
    {
        if (!(w_ == o.w_))
            fail("Internal", "mixing WPoly with different weights");
    }

    Weights w_;
    long long trunc_ = kNoTrunc;
    std::map<Mono, Rat> c_;
};

// A cdx + B cdy over shared weights.
struct OneForm {
    WPoly A, B;

    const Weights& weights() const { return A.weights(); }
    bool is_zero() const { return A.is_zero() && B.is_zero(); }

    // trusted region in form-weighted degree (the dx slot contributes n,
    // the dy slot m)
    long long trunc() const
    {
        return std::min(sat_add(A.truncation(), weights().n),
                        sat_add(B.truncation(), weights().m));
    }

    OneForm& add_scaled(const Rat& c, const OneForm& o)
    {
        A.add_scaled(c, o.A);
        B.add_scaled(c, o.B);
        return *this;
    }
    OneForm& operator+=(const OneForm& o) { return add_scaled(Rat(1), o); }
    OneForm& operator-=(const OneForm& o) { return add_scaled(Rat(-1), o); }
    OneForm& operator*=(const Rat& c)
    {
        A *= c;
        B *= c;
        return *this;
    }
    OneForm mono_mul(long long a, long long b, const Rat& c) const
    {
        return OneForm{A.mono_mul(a, b, c), B.mono_mul(a, b, c)};
    }
    OneForm poly_mul(const WPoly& h) const { return OneForm{A * h, B * h}; }
};

inline OneForm zero_form(Weights w, long long trunc = kNoTrunc)
{
    return OneForm{WPoly(w, trunc), WPoly(w, trunc)};
}

inline OneForm d_x(Weights w) { return OneForm{WPoly::monomial(w, 0, 0, Rat(1)), WPoly(w)}; }
inline OneForm d_y(Weights w) { return OneForm{WPoly(w), WPoly::monomial(w, 0, 0, Rat(1))}; }

// differential of a function
inline OneForm differential(const WPoly& h) { return OneForm{h.derivative_x(), h.derivative_y()}; }

// ---- divisorial orders and initial parts -----------------------------------

// monomial order min{n i + m j : h_ij != 0}; ZeroToTruncation when empty
long long nu_D(const WPoly& h);
// min(nu_D(x A), nu_D(y B))
long long nu_D(const OneForm& w);
// multiplicity at the origin plus one (divisorial order at the first divisor)
long long nu_D1(const OneForm& w);
// multiplicity at the origin of a function
long long nu_D1_fn(const WPoly& h);

WPoly initial_part(const WPoly& h);
OneForm initial_part(const OneForm& w);

// the unique differential monomial x^alpha y^beta (a dx/x + b dy/y) carried
// by a single-monomial initial part, if it is one
struct DiffMonomial {
    long long alpha, beta;
    Rat a, b; // a dx/x + b dy/y
};
std::optional<DiffMonomial> single_diff_monomial(const OneForm& initial);

// true iff nu_D(w) < nm and In(w) = mu x^a y^b (m dx/x - n dy/y)
bool is_resonant_form(const OneForm& w);

struct ReachMonomial {
    Rat mu;
    long long a, b;
};
// the unique monomial with In(target) = mu x^a y^b In(from), if any
std::optional<ReachMonomial> reachable(const OneForm& from, const OneForm& target);

// coefficient of dx /\ dy in w1 /\ w2
WPoly wedge(const OneForm& w1, const OneForm& w2);

// text form: `c*x^i*y^j` terms sorted by (weighted degree, i)
std::string to_text(const WPoly& h);
std::string to_text(const OneForm& w);

} // namespace cusp

#endif
