#ifndef CUSP_STANDARD_SAITO_HPP
#define CUSP_STANDARD_SAITO_HPP

#include <utility>
#include <vector>

#include "cusp/puiseux.hpp"
#include "cusp/semimodule.hpp"

namespace cusp {

// Minimal standard basis of a cusp: the semimodule basis (lambda_{-1..s}),
// one 1-form per basis element with nu_C(omega_i) = lambda_i and
// nu_D(omega_i) = t_i, the structure table, and the full leading-order set
// of the echelonization (Lambda below the working truncation).
struct StandardBasisResult {
    PuiseuxParam param;
    SemimoduleBasis basis;
    StructureTable table;
    std::vector<OneForm> forms;         // omega_{-1..s}, stored at [i+1]
    std::vector<long long> leading_set; // Lambda as nu_C-values in [0, W)
    long long W = 0;

    int s() const { return basis.length(); }
    const OneForm& omega(int i) const { return forms[static_cast<size_t>(i + 1)]; }
    long long lambda_ll(int i) const { return to_ll(basis.lambda(i)); }
    long long t_ll(int i) const { return to_ll(table.t(i)); }
};

// Exact echelonization of pulled-back monomial forms of weighted value
// below W: row-reduction by leading t-order with exact pivots.  The leading
// orders of the reduced family are Lambda in [0, W); the reduced combination
// resting at lambda_i is omega_i.
StandardBasisResult compute_standard_basis(const PuiseuxParam& p, long long W);

// A 1-form with nu_D = t^*_{s+1} (star_n selects the n- or m-branch) and
// certified-infinite nu_C, built by the climbing construction: start from
// the axis combination and raise nu_C by subtracting reachable multiples of
// the omega_i, then close with an exact primitive.
OneForm extend_standard_basis(const StandardBasisResult& sb, bool star_n);

// (n x dy - m y dx, df) for f = y^n - x^m; only for b = t^m.
std::pair<OneForm, OneForm> quasihomogeneous_saito(const PuiseuxParam& p);

struct DelormeDecomposition {
    int i = 0, j = 0;
    bool star_n = true;
    std::vector<WPoly> coeff; // f^{ij}_{-1..j}, stored at [l+1]
    Int v;                    // v_{ij}^* = lambda_j + t^*_{i+1} - t_j

    const WPoly& f(int l) const { return coeff[static_cast<size_t>(l + 1)]; }
};

// omega = sum f_l omega_l for a form with nu_D = t^*_{i+1} and
// nu_C > u^*_{i+1} (or invariant), satisfying the critical-value pattern of
// the generalized decomposition.
DelormeDecomposition delorme_decompose(const StandardBasisResult& sb, const OneForm& w,
                                       int i, int j, bool star_n);

// Extended standard basis E = (omega_{-1..s}, omega_{s+1}) together with
// F = (omega~_1..omega~_{s+1}); special: every omega~_j carries coefficients
// (h_j, f_j) with omega~_j = h_j omega_{s+1} + f_j omega~_{s+1}.
struct StandardSystem {
    int s = 0;
    std::vector<OneForm> extended; // omega_{-1..s+1} at [i+1]
    std::vector<OneForm> tilde;    // omega~_{1..s+1} at [j-1]
    std::vector<std::pair<WPoly, WPoly>> cert; // (h_j, f_j) at [j-1]

    const OneForm& omega(int i) const { return extended[static_cast<size_t>(i + 1)]; }
    const OneForm& omega_last() const { return extended.back(); }
    const OneForm& omega_tilde(int j) const { return tilde[static_cast<size_t>(j - 1)]; }
    const OneForm& omega_tilde_last() const { return tilde.back(); }
    const std::pair<WPoly, WPoly>& certificate(int j) const
    {
        return cert[static_cast<size_t>(j - 1)];
    }
};

// Builds omega~_s, ..., omega~_1 from the last two forms by the good-pair /
// good-list iterations, recording the combination certificates.
StandardSystem special_standard_system(const StandardBasisResult& sb, const OneForm& w_last,
                                       const OneForm& wt_last);

struct SaitoCriterion {
    bool ok = false;
    WPoly unit;         // wedge / f
    std::string detail; // first offending term when the division fails
};

// wedge(w1, w2) divided by f: passes iff the division is exact below the
// feasible truncation and the quotient is a unit.
SaitoCriterion saito_criterion(const OneForm& w1, const OneForm& w2, const WPoly& f);

// Coordinates of an invariant form in the free basis
// (omega_{s+1}, omega~_{s+1}), via initial-form division through the
// special system's certificates.  Throws NotInModule when nu_C(w) is finite.
std::pair<WPoly, WPoly> divide_in_saito_basis(const OneForm& w, const StandardSystem& sys,
                                              const PuiseuxParam& p);

// Scales a form so its initial part hits the canonical pattern: resonant
// forms get In = x^a y^b (n dy/y - m dx/x), otherwise the canonical lowest
// term gets coefficient 1.
void normalize_initial(OneForm& w);

} // namespace cusp

#endif
