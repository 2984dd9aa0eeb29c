#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cusp/invariants.hpp"

using namespace cusp;

namespace {

Json phi1_json()
{
    return Json::parse(R"({"schema":1, "n":7, "y":[[36,"1"],[116,"1"],[196,"28/9"]]})");
}

Json phi2_json()
{
    return Json::parse(
        R"({"schema":1, "n":7,
            "y":[[36,"1"],[116,"1"],[131,"-4/171"],[146,"1/1782"],[161,"-1/72900"]]})");
}

} // namespace

TEST_CASE("input parsing")
{
    CurveInput in = parse_curve_input(phi1_json());
    CHECK(in.n == 7);
    CHECK(in.y_terms.size() == 3);
    CHECK(in.y_terms[2].second == Rat(28, 9));

    CHECK_THROWS_WITH_AS(parse_curve_input(Json::parse(R"({"n":7})")),
                         doctest::Contains("InputError"), Error);
    CHECK_THROWS_WITH_AS(parse_curve_input(Json::parse(R"({"schema":2,"n":7,"y":[[36,"1"]]})")),
                         doctest::Contains("InputError"), Error);
    CHECK_THROWS_WITH_AS(
        run_pipeline(parse_curve_input(Json::parse(R"({"n":7,"y":[[14,"1"]]})"))),
        doctest::Contains("NotCoprime"), Error);
}

TEST_CASE("invariants report for the first example curve")
{
    CurveInput in = parse_curve_input(phi1_json());
    Json rep = invariants_report(in);
    CHECK(rep["schema"] == 1);
    CHECK(rep["lambda_basis"] == Json::array({7, 36, 123}));
    CHECK(rep["saito_pair_DC"] == Json::array({64, 151}));
    CHECK(rep["saito_pair_D1"]["s1"] == 4);
    CHECK(rep["saito_pair_D1"]["s1_tilde"] == 5);
    CHECK(rep["saito_pair_D1"]["s1_method"] == "generator-min");
    CHECK(rep["mu_minus_tau"] == 9);
    CHECK(rep["saito_criterion"]["ok"] == true);
    CHECK(rep["structure_table"]["l_n"] == Json::array({1, 3}));
    CHECK(rep["structure_table"]["t_tilde"] == Json::array({252, 151}));
    CHECK(rep["truncation_certified"] == true);

    // report parses back and round-trips byte-identically
    std::string bytes = rep.dump(2);
    CHECK(Json::parse(bytes).dump(2) == bytes);
}

TEST_CASE("quasi-homogeneous pipeline and its D1 pair")
{
    CurveInput in = parse_curve_input(Json::parse(R"({"n":2,"y":[[3,"1"]]})"));
    PipelineResult r = run_pipeline(in);
    CHECK(r.sb.s() == 0);
    CHECK(r.t_last == 5);
    CHECK(r.t_tilde_last == 6);
    CHECK(r.crit.ok);
    CHECK(r.used_quasihomogeneous_pair);
    // frozen from the jet-search oracle (also verified by hand: neither
    // generator's degree-1 jet can be killed by the other)
    CHECK(r.d1.s1 == 2);
    CHECK(r.d1.s1_tilde == 2);
    CHECK(r.d1.s1_jet == r.d1.s1);
    CHECK(r.mu_minus_tau == 0);
}

TEST_CASE("semimodule report")
{
    Json rep = semimodule_report(7, 36, {7, 36, 123});
    CHECK(rep["structure_table"]["u_n"] == Json::array({43, 144}));
    CHECK(rep["structure_table"]["u_m"] == Json::array({252, 231}));
    CHECK(rep["structure_table"]["a"] == Json::array({35, 32}));
    CHECK(rep["structure_table"]["b"] == Json::array({1, 3}));
    CHECK(rep["structure_table"]["k_n"] == Json::array({-1, 0}));
    CHECK(rep["structure_table"]["k_m"] == Json::array({-1, -1}));
    CHECK(rep["increasing"] == true);
    CHECK(rep["invariant_suite"]["pass"] == true);

    Json r57 = semimodule_report(5, 7, {5, 7});
    CHECK(r57["structure_table"]["u"] == Json::array({12}));
    CHECK(r57["structure_table"]["u_tilde"] == Json::array({35}));

    Json bad = semimodule_report(5, 7, {5, 7, 9});
    CHECK(bad["increasing"] == false);
    CHECK(bad["not_increasing"] == true);
    CHECK(bad["structure_table"].contains("u_n")); // table still emitted

    CHECK_THROWS_WITH_AS(semimodule_report(5, 7, {5, 7, 12}),
                         doctest::Contains("InputError"), Error); // 12 = 5 + 7
}

TEST_CASE("second curve distinguishes itself at the first divisor")
{
    CurveInput in = parse_curve_input(phi2_json());
    PipelineResult r = run_pipeline(in);
    CHECK(r.sb.basis.lambdas == std::vector<Int>{7, 36, 123});
    CHECK(r.t_last == 64);
    CHECK(r.t_tilde_last == 151);
    CHECK(r.d1.s1 == 3);
    CHECK(r.d1.s1_tilde == 6);
    CHECK(nu_D1(r.d1.certificate) == 6);
    CHECK(r.d1.s1 + r.d1.s1_tilde == 9); // nu_{D_1}(x y f)
    // determinant bound at the cuspidal divisor
    CHECK(r.t_last + r.t_tilde_last <= 7 + 36 + 7 * 36);
}

TEST_CASE("determinism: identical bytes across independent runs")
{
    CurveInput in = parse_curve_input(phi1_json());
    std::string a = invariants_report(in).dump(2);
    std::string b = invariants_report(in).dump(2);
    CHECK(a == b);
}

TEST_CASE("check report passes on the example curve")
{
    CurveInput in = parse_curve_input(phi1_json());
    Json rep = check_report(in, 12345);
    CHECK(rep["all_pass"] == true);
    for (const auto& c : rep["checks"])
        CHECK(c["pass"] == true);
}

TEST_CASE("deeper curves: length three and a minimal m-branch")
{
    // s = 3 exercises the good-list iterations and the q-selection
    CurveInput deep = parse_curve_input(
        Json::parse(R"({"n":9,"y":[[11,"1"],[13,"2/5"],[20,"-3"]]})"));
    Json rep = check_report(deep, 2);
    CHECK(rep["all_pass"] == true);
    PipelineResult r = run_pipeline(deep);
    CHECK(r.sb.s() == 3);
    CHECK(r.crit.ok);

    // a curve whose second minimum sits on the m-branch
    CurveInput m_branch =
        parse_curve_input(Json::parse(R"({"n":4,"y":[[7,"1"],[9,"1"],[13,"1/3"]]})"));
    PipelineResult r2 = run_pipeline(m_branch);
    CHECK(r2.sb.basis.lambdas == std::vector<Int>{4, 7, 13});
    CHECK(r2.t_last == 18);       // t_2 = t_2^m
    CHECK(r2.t_tilde_last == 19); // t~_2 = t_2^n
    CHECK(r2.crit.ok);
    CHECK(r2.mu_minus_tau == 2);
}
