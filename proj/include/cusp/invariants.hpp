#ifndef CUSP_INVARIANTS_HPP
#define CUSP_INVARIANTS_HPP

#include <json.hpp>

#include "cusp/standard_saito.hpp"

namespace cusp {

using Json = nlohmann::ordered_json;

struct CurveInput {
    long long n = 0;
    std::vector<std::pair<long long, Rat>> y_terms;
    std::optional<long long> truncation;
    std::optional<long long> degree_bound;
    bool emit_forms = false;
};

// parses {"schema":1, "n":7, "y":[[36,"1"],[116,"1"],[196,"28/9"]]}
CurveInput parse_curve_input(const Json& j);

// The Saito pair at the first exceptional divisor.  s1 comes from the
// generators (they belong to a basis, and every module element has
// multiplicity at least the generator minimum); s1_tilde maximizes
// nu_{D_1}(u w + h w~) and nu_{D_1}(h w + u w~) over unit u by killing
// successive total-degree jets with exact linear algebra.
struct SaitoPairD1 {
    long long s1 = 0, s1_tilde = 0;
    long long degree_bound = 0;
    OneForm certificate;          // an element realizing s1_tilde
    std::string certificate_side; // which generator carries the unit coordinate
    WPoly certificate_h;          // the solved coefficient
    long long s1_jet = 0;         // s1 recomputed through the jet evaluator
};

SaitoPairD1 saito_pair_D1(const OneForm& w_last, const OneForm& wt_last, const WPoly& f,
                          long long degree_bound);

// Full pipeline for one curve: standard basis, both extended forms, special
// system, criterion, implicit equation, both Saito pairs, mu - tau.
struct PipelineResult {
    PuiseuxParam p;
    StandardBasisResult sb;
    OneForm w_last, wt_last;
    StandardSystem sys;
    WPoly f;
    SaitoCriterion crit;
    SaitoPairD1 d1;
    long long t_last = 0, t_tilde_last = 0;
    long long mu_minus_tau = 0;      // combinatorial count of Lambda \ Gamma
    long long mu_minus_tau_ech = 0;  // echelonization leading-order path
    long long W = 0;
    bool truncation_certified = true;
    bool used_quasihomogeneous_pair = false;
};

PipelineResult run_pipeline(const CurveInput& in);

// M2 invariant suite: returns human-readable violations (empty = all pass).
// Checks needing extra hypotheses (increasing, lambda_{-1} in nZ, curve
// shape lambda_{-1} = n and lambda_0 = m) apply only when those hold.
std::vector<std::string> semimodule_invariant_violations(const SemimoduleBasis& basis);

// CLI-facing report builders (deterministic field order and bytes)
Json invariants_report(const CurveInput& in);
Json semimodule_report(long long n, long long m, const std::vector<long long>& lambdas);
Json saito_report(const CurveInput& in);
Json saito_pair_d1_report(const CurveInput& in);
// exit-code contract: report["all_pass"] drives exit code 3
Json check_report(const CurveInput& in, unsigned long long seed);

} // namespace cusp

#endif
