#include "cusp/semimodule.hpp"

#include <algorithm>

namespace cusp {

namespace {

// membership in the semimodule generated by the first `count` basis elements
bool prefix_membership(const SemimoduleBasis& basis, int count, const Int& k)
{
    for (int idx = 0; idx < count; ++idx) {
        const Int& lam = basis.lambdas[static_cast<size_t>(idx)];
        if (k >= lam && basis.gamma.contains(k - lam))
            return true;
    }
    return false;
}

} // namespace

SemimoduleBasis normalize_basis(const CuspSemigroup& gamma, std::vector<Int> generators)
{
    if (generators.empty())
        fail("InputError", "normalize_basis needs at least one generator");
    std::sort(generators.begin(), generators.end());
    SemimoduleBasis basis{gamma, {}};
    for (const Int& g : generators) {
        if (g < 0)
            fail("InputError", "negative semimodule generator " + g.str());
        if (!oracle_membership(basis, g))
            basis.lambdas.push_back(g);
    }
    return basis;
}

bool oracle_membership(const SemimoduleBasis& basis, const Int& k)
{
    return prefix_membership(basis, static_cast<int>(basis.lambdas.size()), k);
}

Int semimodule_conductor(const SemimoduleBasis& basis)
{
    // every k >= lambda_{-1} + c_Gamma lies in lambda_{-1} + Gamma
    Int bound = basis.lambda(-1) + basis.gamma.conductor();
    for (Int k = bound - 1; k >= 0; --k)
        if (!oracle_membership(basis, k))
            return k + 1;
    return Int(0);
}

StructureTable structure_table(const SemimoduleBasis& basis)
{
    const CuspSemigroup& g = basis.gamma;
    const int s = basis.length();
    if (s < -1)
        fail("InputError", "empty basis");

    StructureTable tab;
    tab.s = s;
    size_t rows = static_cast<size_t>(s + 2); // slots 0..s+1
    tab.u_n_.resize(rows);
    tab.u_m_.resize(rows);
    tab.l_n_.resize(rows);
    tab.l_m_.resize(rows);
    tab.a_.resize(rows);
    tab.b_.resize(rows);
    tab.t_n_.resize(rows);
    tab.t_m_.resize(rows);
    tab.q_n_.resize(rows);
    tab.q_m_.resize(rows);
    tab.k_n_.resize(static_cast<size_t>(s + 1), -2);
    tab.k_m_.resize(static_cast<size_t>(s + 1), -2);
    tab.tmin_.resize(static_cast<size_t>(s + 3));
    tab.v_.resize(static_cast<size_t>(s + 2));

    tab.tmin_[0] = basis.lambda(-1); // t_{-1}
    if (s >= 0)
        tab.tmin_[1] = basis.lambda(0); // t_0
    for (int i = -1; i <= s; ++i)
        tab.v_[static_cast<size_t>(i + 1)] = basis.lambda(i) / g.n();

    for (int i = 1; i <= s + 1; ++i) {
        const Int& prev = basis.lambda(i - 1); // lambda_{i-1}
        const int prefix = i;                  // members lambda_{-1}..lambda_{i-2}

        // axis searches; bounded by l_m < n and l_n < m
        Int ln = 0, lm = 0;
        for (Int l = 1; l < g.m(); ++l)
            if (prefix_membership(basis, prefix, prev + g.n() * l)) {
                ln = l;
                break;
            }
        for (Int l = 1; l < g.n(); ++l)
            if (prefix_membership(basis, prefix, prev + g.m() * l)) {
                lm = l;
                break;
            }
        if (ln == 0 || lm == 0)
            fail("Internal", "axis search exhausted its bound");
        Int un = prev + g.n() * ln;
        Int um = prev + g.m() * lm;
        if (un == um)
            fail("Internal", "axes u_i^n and u_i^m coincide");

        tab.l_n_[static_cast<size_t>(i)] = ln;
        tab.l_m_[static_cast<size_t>(i)] = lm;
        tab.u_n_[static_cast<size_t>(i)] = un;
        tab.u_m_[static_cast<size_t>(i)] = um;
        tab.t_n_[static_cast<size_t>(i)] = tab.t(i - 1) + g.n() * ln;
        tab.t_m_[static_cast<size_t>(i)] = tab.t(i - 1) + g.m() * lm;
        tab.tmin_[static_cast<size_t>(i + 1)] =
            std::min(tab.t_n_[static_cast<size_t>(i)], tab.t_m_[static_cast<size_t>(i)]);
        tab.q_n_[static_cast<size_t>(i)] = un / g.n();
        tab.q_m_[static_cast<size_t>(i)] = um / g.n();

        // bounds: u_i^n = lambda_k + m*b and u_i^m = lambda_k + n*a with the
        // index k unique in [-1, i-2]
        int found_kn = -2, found_km = -2;
        for (int k = -1; k <= i - 2; ++k) {
            Int diff = un - basis.lambda(k);
            if (diff > 0 && diff % g.m() == 0) {
                if (found_kn != -2)
                    fail("Internal", "bound k^n not unique");
                found_kn = k;
                tab.b_[static_cast<size_t>(i)] = diff / g.m();
            }
            diff = um - basis.lambda(k);
            if (diff > 0 && diff % g.n() == 0) {
                if (found_km != -2)
                    fail("Internal", "bound k^m not unique");
                found_km = k;
                tab.a_[static_cast<size_t>(i)] = diff / g.n();
            }
        }
        if (found_kn == -2 || found_km == -2)
            fail("Internal", "axis bound not found");
        tab.k_n_[static_cast<size_t>(i - 1)] = found_kn;
        tab.k_m_[static_cast<size_t>(i - 1)] = found_km;

        if (!(tab.b_[static_cast<size_t>(i)] >= 1 && tab.b_[static_cast<size_t>(i)] < g.n()))
            fail("Internal", "colimit b out of range");
    }

    tab.conductor_of_lambda = semimodule_conductor(basis);
    return tab;
}

bool is_increasing(const SemimoduleBasis& basis, const StructureTable& table)
{
    for (int i = 1; i <= basis.length(); ++i)
        if (!(basis.lambda(i) > table.u(i)))
            return false;
    return true;
}

LevelSet level_set(const SemimoduleBasis& basis, const Int& q)
{
    const Int n = basis.gamma.n();
    LevelSet out;
    for (Int k = n * q; k < n * (q + 1); ++k)
        if (k >= 0 && oracle_membership(basis, k))
            out.residues.push_back(basis.gamma.zeta_residue(k));
    std::sort(out.residues.begin(), out.residues.end());
    out.residues.erase(std::unique(out.residues.begin(), out.residues.end()),
                       out.residues.end());

    const size_t sz = out.residues.size();
    out.is_full = (Int(sz) == n);
    if (sz == 0) {
        out.is_circular = true; // empty set counts as a circular interval
        out.interval = CircularInterval::empty(n);
        return out;
    }
    if (out.is_full) {
        out.is_circular = true;
        out.interval = CircularInterval::full(n);
        return out;
    }
    // an arc mod n has exactly one boundary r in the set with r+1 outside
    int boundaries = 0;
    Int arc_end = 0;
    for (size_t idx = 0; idx < sz; ++idx) {
        Int next = (out.residues[idx] + 1) % n;
        if (!std::binary_search(out.residues.begin(), out.residues.end(), next)) {
            ++boundaries;
            arc_end = out.residues[idx];
        }
    }
    out.is_circular = (boundaries == 1);
    if (out.is_circular) {
        Int arc_start = (arc_end - Int(sz) + 1) % n;
        if (arc_start < 0)
            arc_start += n;
        out.interval = CircularInterval::arc({n, arc_start}, {n, arc_end});
    }
    return out;
}

int clock_left_bound(const std::vector<ClockPoint>& points, int i)
{
    // points[idx] is z_{idx-1}
    int best = -1;
    Int best_sep = points[0].n + 1;
    for (int k = -1; k <= i - 1; ++k) {
        Int sep = separation(points[static_cast<size_t>(k + 1)], points[static_cast<size_t>(i + 1)]);
        if (sep < best_sep) {
            best_sep = sep;
            best = k;
        }
    }
    return best;
}

int clock_right_bound(const std::vector<ClockPoint>& points, int i)
{
    int best = -1;
    Int best_sep = points[0].n + 1;
    for (int k = -1; k <= i - 1; ++k) {
        Int sep = separation(points[static_cast<size_t>(i + 1)], points[static_cast<size_t>(k + 1)]);
        if (sep < best_sep) {
            best_sep = sep;
            best = k;
        }
    }
    return best;
}

namespace {

// candidates for the next basis element on top of `basis`: non-members of
// the current semimodule above the axis u_{s+1}
std::vector<Int> extension_candidates(const SemimoduleBasis& basis)
{
    StructureTable tab = structure_table(basis);
    Int lo = tab.u(basis.length() + 1);
    Int hi = semimodule_conductor(basis);
    std::vector<Int> out;
    for (Int v = lo + 1; v < hi; ++v)
        if (!oracle_membership(basis, v))
            out.push_back(v);
    return out;
}

void enumerate_rec(const SemimoduleBasis& basis, std::vector<SemimoduleBasis>& out)
{
    out.push_back(basis);
    if (Int(basis.length() + 2) >= basis.gamma.n())
        return; // s <= n-2
    for (const Int& cand : extension_candidates(basis)) {
        SemimoduleBasis next = basis;
        next.lambdas.push_back(cand);
        enumerate_rec(next, out);
    }
}

SemimoduleBasis base_pair(const CuspSemigroup& gamma, const Int& lambda_m1, const Int& lambda_0)
{
    SemimoduleBasis basis{gamma, {lambda_m1}};
    if (oracle_membership(basis, lambda_0))
        fail("InputError", "lambda_0 already lies in lambda_{-1} + Gamma");
    basis.lambdas.push_back(lambda_0);
    if (basis.lambdas[0] >= basis.lambdas[1])
        fail("InputError", "basis not strictly increasing");
    return basis;
}

} // namespace

std::vector<SemimoduleBasis> enumerate_increasing_semimodules(const CuspSemigroup& gamma,
                                                              const Int& lambda_m1,
                                                              const Int& lambda_0)
{
    std::vector<SemimoduleBasis> out;
    enumerate_rec(base_pair(gamma, lambda_m1, lambda_0), out);
    return out;
}

SemimoduleBasis random_increasing_semimodule(const CuspSemigroup& gamma, const Int& lambda_m1,
                                             const Int& lambda_0, std::mt19937_64& rng)
{
    SemimoduleBasis basis = base_pair(gamma, lambda_m1, lambda_0);
    while (Int(basis.length() + 2) < gamma.n()) {
        std::vector<Int> cands = extension_candidates(basis);
        if (cands.empty())
            break;
        // stop with probability 1/3 at every level, uniform candidate otherwise
        if (rng() % 3 == 0)
            break;
        basis.lambdas.push_back(cands[static_cast<size_t>(rng() % cands.size())]);
    }
    return basis;
}

} // namespace cusp
