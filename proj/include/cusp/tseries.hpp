#ifndef CUSP_TSERIES_HPP
#define CUSP_TSERIES_HPP

#include <map>
#include <optional>

#include "cusp/rational.hpp"

namespace cusp {

// Weighted/t-adic truncation sentinel for exact polynomials.
inline constexpr long long kNoTrunc = 1LL << 58;

inline long long sat_add(long long a, long long b)
{
    if (a >= kNoTrunc || b >= kNoTrunc)
        return kNoTrunc;
    return a + b;
}

// Exact truncated power series in t: coefficients below `truncation` are the
// true ones, exponents >= truncation are unknown.  No zero coefficients are
// stored.
class TSeries {
public:
    TSeries() = default;
    explicit TSeries(long long trunc) : trunc_(trunc) {}

    static TSeries monomial(long long e, Rat c, long long trunc = kNoTrunc)
    {
        TSeries s(trunc);
        s.set(e, std::move(c));
        return s;
    }

    long long truncation() const { return trunc_; }
    const std::map<long long, Rat>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    std::optional<long long> order() const
    {
        if (c_.empty())
            return std::nullopt;
        return c_.begin()->first;
    }

    // lower bound for the true order (equals it unless zero-to-truncation)
    long long order_floor() const { return c_.empty() ? trunc_ : c_.begin()->first; }

    Rat coeff(long long e) const
    {
        auto it = c_.find(e);
        return it == c_.end() ? Rat(0) : it->second;
    }

    void set(long long e, Rat c)
    {
        if (e < 0)
            fail("Internal", "negative t-exponent");
        if (e >= trunc_)
            return;
        if (c == 0)
            c_.erase(e);
        else
            c_[e] = std::move(c);
    }

    void add_term(long long e, const Rat& c)
    {
        if (e >= trunc_ || c == 0)
            return;
        auto [it, fresh] = c_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0)
                c_.erase(it);
        }
    }

    TSeries& add_scaled(const Rat& scale, const TSeries& other)
    {
        if (scale == 0)
            return *this;
        set_truncation(std::min(trunc_, other.trunc_));
        for (const auto& [e, c] : other.c_)
            add_term(e, scale * c);
        return *this;
    }

    TSeries& operator+=(const TSeries& other) { return add_scaled(Rat(1), other); }
    TSeries& operator-=(const TSeries& other) { return add_scaled(Rat(-1), other); }

    TSeries& operator*=(const Rat& scale)
    {
        if (scale == 0) {
            c_.clear();
            return *this;
        }
        for (auto& [e, c] : c_)
            c *= scale;
        return *this;
    }

    // shift by t^k, k >= 0
    TSeries shifted(long long k) const
    {
        TSeries out(sat_add(trunc_, k));
        for (const auto& [e, c] : c_)
            out.set(e + k, c);
        return out;
    }

    TSeries truncated(long long trunc) const
    {
        TSeries out(std::min(trunc, trunc_));
        for (const auto& [e, c] : c_) {
            if (e >= out.trunc_)
                break;
            out.c_.emplace(e, c);
        }
        return out;
    }

    void set_truncation(long long trunc)
    {
        trunc_ = trunc;
        c_.erase(c_.lower_bound(trunc_), c_.end());
    }

    friend TSeries operator*(const TSeries& a, const TSeries& b)
    {
        TSeries out(std::min(sat_add(a.trunc_, b.order_floor()),
                             sat_add(b.trunc_, a.order_floor())));
        for (const auto& [ea, ca] : a.c_) {
            if (ea >= out.trunc_)
                break;
            for (const auto& [eb, cb] : b.c_) {
                if (ea + eb >= out.trunc_)
                    break;
                out.add_term(ea + eb, ca * cb);
            }
        }
        return out;
    }

    // d/dt; the coefficient at truncation-1 would need the term at truncation
    TSeries derivative() const
    {
        TSeries out(trunc_ >= kNoTrunc ? kNoTrunc : trunc_ - 1);
        for (const auto& [e, c] : c_)
            if (e > 0)
                out.set(e - 1, c * e);
        return out;
    }

private:
    std::map<long long, Rat> c_;
    long long trunc_ = kNoTrunc;
};

} // namespace cusp

#endif
