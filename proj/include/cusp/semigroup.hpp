#ifndef CUSP_SEMIGROUP_HPP
#define CUSP_SEMIGROUP_HPP

#include <optional>
#include <utility>
#include <vector>

#include "cusp/rational.hpp"

namespace cusp {

// The numerical semigroup <n, m> of a plane cusp: two coprime generators
// 2 <= n < m, conductor (n-1)(m-1).  Immutable after construction.
class CuspSemigroup {
public:
    CuspSemigroup() : CuspSemigroup(2, 3) {} // placeholder for deferred assignment

    CuspSemigroup(Int n, Int m) : n_(std::move(n)), m_(std::move(m))
    {
        if (n_ < 2 || n_ >= m_)
            fail("NotCusp", "need 2 <= n < m, got n=" + n_.str() + " m=" + m_.str());
        if (boost::multiprecision::gcd(n_, m_) != 1)
            fail("NotCoprime", "gcd(" + n_.str() + "," + m_.str() + ") != 1");
        conductor_ = (n_ - 1) * (m_ - 1);
        // m is a unit mod n; its inverse drives the canonical representation
        // and the clock map.
        m_inv_mod_n_ = mod_inverse(m_ % n_, n_);
    }

    const Int& n() const { return n_; }
    const Int& m() const { return m_; }
    const Int& conductor() const { return conductor_; }
    Int frobenius() const { return conductor_ - 1; }

    // Canonical representation k = n*i + m*j with i >= 0 and 0 <= j < n,
    // unique when it exists.
    std::optional<std::pair<Int, Int>> membership(const Int& k) const
    {
        if (k < 0)
            return std::nullopt;
        Int j = (k % n_) * m_inv_mod_n_ % n_;
        Int rest = k - m_ * j;
        if (rest < 0)
            return std::nullopt;
        return std::make_pair(rest / n_, j);
    }

    bool contains(const Int& k) const { return membership(k).has_value(); }

    // All gaps 0 <= k < conductor; there are conductor/2 of them.
    std::vector<Int> gap_set() const
    {
        std::vector<Int> gaps;
        for (Int k = 0; k < conductor_; ++k)
            if (!contains(k))
                gaps.push_back(k);
        return gaps;
    }

private:
    static Int mod_inverse(Int a, const Int& n)
    {
        // extended Euclid; gcd(a, n) = 1 is guaranteed by the constructor
        Int t = 0, new_t = 1, r = n, new_r = a % n;
        while (new_r != 0) {
            Int q = r / new_r;
            Int tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        if (t < 0)
            t += n;
        return t;
    }

    Int n_, m_, conductor_, m_inv_mod_n_;

public:
    // residue r in [0, n) with m*r = k (mod n); the clock map zeta factors
    // through this
    Int zeta_residue(const Int& k) const
    {
        Int kr = k % n_;
        if (kr < 0)
            kr += n_;
        return kr * m_inv_mod_n_ % n_;
    }
};

} // namespace cusp

#endif
