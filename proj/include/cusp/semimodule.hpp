#ifndef CUSP_SEMIMODULE_HPP
#define CUSP_SEMIMODULE_HPP

#include <random>
#include <vector>

#include "cusp/semigroup.hpp"

namespace cusp {

// Basis (lambda_{-1}, lambda_0, ..., lambda_s) of a cuspidal Gamma-semimodule
// Lambda = union of (lambda_i + Gamma).  Strictly increasing, lambda_j not in
// the semimodule generated by the earlier elements, length s <= n-2.
struct SemimoduleBasis {
    CuspSemigroup gamma;
    std::vector<Int> lambdas;

    int length() const { return static_cast<int>(lambdas.size()) - 2; }
    // i ranges over -1..s
    const Int& lambda(int i) const { return lambdas[static_cast<size_t>(i + 1)]; }
};

// Sorts the generators and drops every element lying in the semimodule
// generated by the smaller retained ones.
SemimoduleBasis normalize_basis(const CuspSemigroup& gamma, std::vector<Int> generators);

// Ground truth: k in Lambda iff k - lambda_i in Gamma for some i.
bool oracle_membership(const SemimoduleBasis& basis, const Int& k);

// Conductor of the semimodule: least c with [c, inf) contained in Lambda.
Int semimodule_conductor(const SemimoduleBasis& basis);

// Axes, limits, colimits, bounds, critical values and tops of a cuspidal
// semimodule, indexed as in the structure theory: axes/limits/colimits and
// critical values carry indices 1..s+1, the bounds k_i^n, k_i^m carry
// indices 0..s (they bound the axes u_{i+1}).
struct StructureTable {
    int s = -1;

    // entry [i] is the value at index i; slot 0 of the 1-based arrays unused
    std::vector<Int> u_n_, u_m_, l_n_, l_m_, a_, b_, t_n_, t_m_, q_n_, q_m_;
    std::vector<int> k_n_, k_m_; // indexed 0..s, values in [-1, i-1]
    std::vector<Int> tmin_;      // t_i for i = -1..s+1, stored at [i+1]
    std::vector<Int> v_;         // v_i = lambda_i div n for i = -1..s, at [i+1]
    Int conductor_of_lambda;

    const Int& u_n(int i) const { return u_n_[static_cast<size_t>(i)]; }
    const Int& u_m(int i) const { return u_m_[static_cast<size_t>(i)]; }
    const Int& l_n(int i) const { return l_n_[static_cast<size_t>(i)]; }
    const Int& l_m(int i) const { return l_m_[static_cast<size_t>(i)]; }
    const Int& a(int i) const { return a_[static_cast<size_t>(i)]; }
    const Int& b(int i) const { return b_[static_cast<size_t>(i)]; }
    const Int& t_n(int i) const { return t_n_[static_cast<size_t>(i)]; }
    const Int& t_m(int i) const { return t_m_[static_cast<size_t>(i)]; }
    const Int& q_n(int i) const { return q_n_[static_cast<size_t>(i)]; }
    const Int& q_m(int i) const { return q_m_[static_cast<size_t>(i)]; }
    int k_n(int i) const { return k_n_[static_cast<size_t>(i)]; }
    int k_m(int i) const { return k_m_[static_cast<size_t>(i)]; }

    Int u(int i) const { return u_n(i) < u_m(i) ? u_n(i) : u_m(i); }
    Int u_tilde(int i) const { return u_n(i) > u_m(i) ? u_n(i) : u_m(i); }
    // t_i for i in [-1, s+1]; t_{-1} = lambda_{-1}, t_0 = lambda_0
    const Int& t(int i) const { return tmin_[static_cast<size_t>(i + 1)]; }
    Int t_tilde(int i) const { return t_n(i) > t_m(i) ? t_n(i) : t_m(i); }
    Int q(int i) const { return q_n(i) < q_m(i) ? q_n(i) : q_m(i); }
    Int q_tilde(int i) const { return q_n(i) > q_m(i) ? q_n(i) : q_m(i); }
    const Int& v(int i) const { return v_[static_cast<size_t>(i + 1)]; }

    // the star parameter chooses the n- or m-branch of an axis pair
    const Int& u_star(int i, bool star_n) const { return star_n ? u_n(i) : u_m(i); }
    const Int& t_star(int i, bool star_n) const { return star_n ? t_n(i) : t_m(i); }
    const Int& l_star(int i, bool star_n) const { return star_n ? l_n(i) : l_m(i); }
    int k_star(int i, bool star_n) const { return star_n ? k_n(i) : k_m(i); }
    // k_i of the minimal axis u_{i+1}, and k_i^* per the notation for bounds
    int k_min(int i) const { return u_n(i + 1) < u_m(i + 1) ? k_n(i) : k_m(i); }
    // true when u_{i+1} = u_{i+1}^n
    bool min_axis_is_n(int i) const { return u_n(i + 1) < u_m(i + 1); }
};

StructureTable structure_table(const SemimoduleBasis& basis);

// lambda_i > u_i for 1 <= i <= s
bool is_increasing(const SemimoduleBasis& basis, const StructureTable& table);

// ---- the n-clock -----------------------------------------------------------

struct ClockPoint {
    Int n;
    Int residue; // in [0, n)
};

inline ClockPoint clock_point(const Int& n, Int k)
{
    k %= n;
    if (k < 0)
        k += n;
    return ClockPoint{n, k};
}

// unique beta in [0, n) with Q = P + beta on the clock
inline Int separation(const ClockPoint& P, const ClockPoint& Q)
{
    if (P.n != Q.n)
        fail("ClockMismatch", "separation of points on different clocks");
    Int d = (Q.residue - P.residue) % P.n;
    if (d < 0)
        d += P.n;
    return d;
}

// zeta(k): the clock point of residue r with m*r = k (mod n)
inline ClockPoint zeta(const CuspSemigroup& gamma, const Int& k)
{
    return ClockPoint{gamma.n(), gamma.zeta_residue(k)};
}

// <P,Q>: the points P + k for 0 <= k <= S(P,Q); Empty and Full by convention.
struct CircularInterval {
    enum class Kind { Empty, Full, Arc };
    Kind kind = Kind::Empty;
    ClockPoint start{1, 0}, end{1, 0}; // meaningful for Arc only

    static CircularInterval empty(const Int& n) { return {Kind::Empty, {n, 0}, {n, 0}}; }
    static CircularInterval full(const Int& n) { return {Kind::Full, {n, 0}, {n, 0}}; }
    static CircularInterval arc(ClockPoint p, ClockPoint q)
    {
        return {Kind::Arc, p, std::move(q)};
    }

    bool contains(const ClockPoint& r) const
    {
        if (kind == Kind::Empty)
            return false;
        if (kind == Kind::Full)
            return true;
        return separation(start, r) <= separation(start, end);
    }

    // number of clock points in the interval
    Int size(const Int& n) const
    {
        if (kind == Kind::Empty)
            return 0;
        if (kind == Kind::Full)
            return n;
        return separation(start, end) + 1;
    }
};

// Image under zeta of Lambda intersected with I_q = {nq, ..., nq+n-1},
// with the circular-interval test (empty and full sets count as circular).
struct LevelSet {
    std::vector<Int> residues; // sorted
    bool is_circular = false;
    bool is_full = false;
    CircularInterval interval; // meaningful when is_circular
};

LevelSet level_set(const SemimoduleBasis& basis, const Int& q);

// Left/right bounds of a list of pairwise distinct clock points
// (z_{-1},...,z_s): the index k in [-1, i-1] minimizing S(z_k, z_i)
// (resp. S(z_i, z_k)).  Used to cross-check the table's k_i^n, k_i^m.
int clock_left_bound(const std::vector<ClockPoint>& points, int i);
int clock_right_bound(const std::vector<ClockPoint>& points, int i);

// ---- enumeration of increasing cuspidal semimodules ------------------------

// All increasing semimodules whose basis starts (lambda_{-1}, lambda_0);
// includes the length-0 base itself.  Candidates for each extension are the
// non-members of the current semimodule above the new axis u_{s+1}, which
// are bounded by the current conductor.
std::vector<SemimoduleBasis> enumerate_increasing_semimodules(const CuspSemigroup& gamma,
                                                              const Int& lambda_m1,
                                                              const Int& lambda_0);

// A random increasing semimodule with the given first two basis elements.
SemimoduleBasis random_increasing_semimodule(const CuspSemigroup& gamma, const Int& lambda_m1,
                                             const Int& lambda_0, std::mt19937_64& rng);

} // namespace cusp

#endif
