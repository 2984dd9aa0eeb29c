#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cusp/standard_saito.hpp"

using namespace cusp;

namespace {

PuiseuxParam phi1()
{
    return make_puiseux(7, {{36, Rat(1)}, {116, Rat(1)}, {196, Rat(28, 9)}});
}

PuiseuxParam phi2()
{
    return make_puiseux(7, {{36, Rat(1)},
                            {116, Rat(1)},
                            {131, Rat(-4, 171)},
                            {146, Rat(1, 1782)},
                            {161, Rat(-1, 72900)}});
}

const StandardBasisResult& sb1()
{
    static StandardBasisResult sb = compute_standard_basis(phi1(), phi1().default_truncation());
    return sb;
}

// nu_C of a coefficient-times-form product, as a plain value (-1 for infinity)
long long vc_of(const PuiseuxParam& p, const OneForm& w, long long T)
{
    OrderResult r = nu_C(p, w, std::min(T, w.trunc()));
    return r.finite() ? r.value : -1;
}

} // namespace

TEST_CASE("standard basis of quasi-homogeneous cusps")
{
    for (auto [n, m] : {std::pair<long long, long long>{2, 3}, {5, 7}}) {
        PuiseuxParam p = monomial_cusp(n, m);
        StandardBasisResult sb = compute_standard_basis(p, p.default_truncation());
        CHECK(sb.s() == 0);
        CHECK(sb.basis.lambdas == std::vector<Int>{n, m});
        CHECK(initial_part(sb.omega(-1)).A.coeff(0, 0) == 1);
        CHECK(initial_part(sb.omega(0)).B.coeff(0, 0) == 1);
    }
}

TEST_CASE("standard basis of the (7,36,123) curves")
{
    for (PuiseuxParam p : {phi1(), phi2()}) {
        StandardBasisResult sb = compute_standard_basis(p, p.default_truncation());
        CHECK(sb.basis.lambdas == std::vector<Int>{7, 36, 123});
        // In(omega_1) proportional to 7 x dy - 36 y dx, and resonant
        OneForm in = initial_part(sb.omega(1));
        CHECK(in.A.coeff(0, 1) == -36);
        CHECK(in.B.coeff(1, 0) == 7);
        CHECK(is_resonant_form(sb.omega(1)));
        CHECK(initial_part(sb.omega(-1)).A.coeff(0, 0) == 1); // In ~ dx
        CHECK(initial_part(sb.omega(-1)).B.is_zero());
        CHECK(initial_part(sb.omega(0)).B.coeff(0, 0) == 1); // In ~ dy
        CHECK(initial_part(sb.omega(0)).A.is_zero());
        // witnesses carry the right values
        long long T = p.default_truncation();
        for (int i = -1; i <= sb.s(); ++i) {
            CHECK(vc_of(p, sb.omega(i), T) == sb.lambda_ll(i));
            CHECK(nu_D(sb.omega(i)) == to_ll(sb.table.t(i)));
        }
        // the echelonization's leading set is the semimodule
        CHECK(std::binary_search(sb.leading_set.begin(), sb.leading_set.end(), 123));
        CHECK(!std::binary_search(sb.leading_set.begin(), sb.leading_set.end(), 116));
    }
}

TEST_CASE("extension to the last critical values")
{
    const StandardBasisResult& sb = sb1();
    PuiseuxParam p = phi1();
    long long T = p.default_truncation();

    OneForm w2 = extend_standard_basis(sb, true);
    CHECK(nu_D(w2) == 64);
    CHECK(nu_C(p, w2, std::min(T, w2.trunc())).infinite());

    OneForm wt2 = extend_standard_basis(sb, false);
    CHECK(nu_D(wt2) == 151);
    CHECK(nu_C(p, wt2, std::min(T, wt2.trunc())).infinite());
}

TEST_CASE("quasi-homogeneous Saito pair")
{
    PuiseuxParam p23 = monomial_cusp(2, 3);
    auto [w1, wt1] = quasihomogeneous_saito(p23);
    CHECK(nu_D(w1) == 5);
    CHECK(nu_D(wt1) == 6);
    CHECK(w1.A.coeff(0, 1) == -3); // 2 x dy - 3 y dx
    CHECK(w1.B.coeff(1, 0) == 2);
    CHECK(wt1.A.coeff(2, 0) == -3); // df = -3 x^2 dx + 2 y dy
    CHECK(wt1.B.coeff(0, 1) == 2);

    PuiseuxParam p57 = monomial_cusp(5, 7);
    auto [w5, wt5] = quasihomogeneous_saito(p57);
    CHECK(nu_D(w5) == 12);
    CHECK(nu_D(wt5) == 35);
    WPoly f = implicit_equation(p57);
    SaitoCriterion crit = saito_criterion(w5, wt5, f);
    CHECK(crit.ok);

    CHECK_THROWS_WITH_AS(quasihomogeneous_saito(phi1()),
                         doctest::Contains("NotQuasiHomogeneous"), Error);
}

TEST_CASE("Delorme decomposition, j = i = 1, both branches")
{
    const StandardBasisResult& sb = sb1();
    PuiseuxParam p = phi1();
    long long T = p.default_truncation();
    OneForm w2 = extend_standard_basis(sb, true);
    OneForm wt2 = extend_standard_basis(sb, false);

    // star = n on omega_2: nu_C(f_1 omega_1) = u_2 = 144, minimum among the
    // lower terms exactly at l = k_1^n = 0
    DelormeDecomposition d = delorme_decompose(sb, w2, 1, 1, true);
    CHECK(d.v == 144);
    OneForm acc = zero_form(p.weights());
    for (int l = -1; l <= 1; ++l)
        acc += sb.omega(l).poly_mul(d.f(l));
    acc -= w2;
    CHECK((acc.is_zero() || nu_D(acc) >= std::min(T, acc.trunc())));
    CHECK(vc_of(p, sb.omega(1).poly_mul(d.f(1)), T) == 144);
    CHECK(vc_of(p, sb.omega(0).poly_mul(d.f(0)), T) == 144); // l = k_1^n = 0
    long long vm1 = vc_of(p, sb.omega(-1).poly_mul(d.f(-1)), T);
    CHECK((vm1 == -1 || vm1 > 144));

    // star = m on omega~_2: the paper's shape y^3 omega_1 + mu x^32 dx + eta
    DelormeDecomposition dm = delorme_decompose(sb, wt2, 1, 1, false);
    CHECK(dm.v == 231);
    CHECK(dm.f(1).terms().begin()->first.i == 0);
    CHECK(dm.f(1).terms().begin()->first.j == 3);
    CHECK(dm.f(-1).terms().begin()->first.i == 32);
    CHECK(dm.f(-1).terms().begin()->first.j == 0);
    CHECK(vc_of(p, sb.omega(1).poly_mul(dm.f(1)), T) == 231);
    CHECK(vc_of(p, sb.omega(-1).poly_mul(dm.f(-1)), T) == 231); // l = k_1^m = -1

    // In(omega) = In(f_j omega_j)
    OneForm head = initial_part(sb.omega(1).poly_mul(dm.f(1)));
    head -= initial_part(wt2);
    CHECK(head.is_zero());
}

TEST_CASE("Delorme decomposition, j < i and i = 0")
{
    const StandardBasisResult& sb = sb1();
    PuiseuxParam p = phi1();
    long long T = p.default_truncation();
    OneForm w2 = extend_standard_basis(sb, true);

    DelormeDecomposition d = delorme_decompose(sb, w2, 1, 0, true);
    CHECK(d.v == 36 + 64 - 36);
    OneForm acc = zero_form(p.weights());
    for (int l = -1; l <= 0; ++l)
        acc += sb.omega(l).poly_mul(d.f(l));
    acc -= w2;
    CHECK((acc.is_zero() || nu_D(acc) >= std::min(T, acc.trunc())));
    CHECK(vc_of(p, sb.omega(0).poly_mul(d.f(0)), T) == to_ll(d.v));
    // minimum among lower terms at l = k_0 = -1
    CHECK(vc_of(p, sb.omega(-1).poly_mul(d.f(-1)), T) == to_ll(d.v));

    // i = 0 case on a form with nu_D = t_1^*, nu_C > u_1^*
    PuiseuxParam p57 = monomial_cusp(5, 7);
    StandardBasisResult sb57 = compute_standard_basis(p57, p57.default_truncation());
    OneForm w1 = extend_standard_basis(sb57, true); // nu_D = t_1 = 12
    DelormeDecomposition d0 = delorme_decompose(sb57, w1, 0, 0, true);
    CHECK(d0.v == 12); // u_1 = 12; both terms realize it
    CHECK(vc_of(p57, sb57.omega(-1).poly_mul(d0.f(-1)), 200) == 12);
    CHECK(vc_of(p57, sb57.omega(0).poly_mul(d0.f(0)), 200) == 12);

    // precondition violations are reported
    CHECK_THROWS_WITH_AS(delorme_decompose(sb, d_x(p.weights()), 1, 1, true),
                         doctest::Contains("PreconditionViolated"), Error);
}

TEST_CASE("special standard system for the (7,36,123) curves")
{
    for (PuiseuxParam p : {phi1(), phi2()}) {
        StandardBasisResult sb = compute_standard_basis(p, p.default_truncation());
        OneForm w2 = extend_standard_basis(sb, true);
        OneForm wt2 = extend_standard_basis(sb, false);
        StandardSystem sys = special_standard_system(sb, w2, wt2);

        CHECK(sys.s == 1);
        CHECK(sys.tilde.size() == 2); // F = (omega~_1, omega~_2) only
        CHECK(nu_D(sys.omega_tilde(1)) == 252); // t~_1 = nm
        CHECK(nu_D(sys.omega_tilde(2)) == 151);
        long long T = p.default_truncation();
        CHECK(nu_C(p, sys.omega_tilde(1),
                   std::min(T, sys.omega_tilde(1).trunc())).infinite());

        // combination certificates re-expand exactly
        for (int j = 1; j <= 2; ++j) {
            const auto& [h, f] = sys.certificate(j);
            OneForm acc = w2.poly_mul(h);
            acc += wt2.poly_mul(f);
            acc -= sys.omega_tilde(j);
            CHECK(acc.is_zero());
        }
    }
}

TEST_CASE("Saito criterion")
{
    PuiseuxParam p = phi1();
    const StandardBasisResult& sb = sb1();
    OneForm w2 = extend_standard_basis(sb, true);
    OneForm wt2 = extend_standard_basis(sb, false);
    WPoly f = implicit_equation(p);

    SaitoCriterion crit = saito_criterion(w2, wt2, f);
    CHECK(crit.ok);
    CHECK(crit.unit.coeff(0, 0) != 0);
    // wedge = unit * f below the feasible truncation
    WPoly back = crit.unit * f;
    back -= wedge(w2, wt2);
    CHECK(back.is_zero());

    SaitoCriterion bad = saito_criterion(d_x(p.weights()), d_y(p.weights()), f);
    CHECK_FALSE(bad.ok); // wedge = 1 is not divisible by f
}

TEST_CASE("division in the Saito basis")
{
    PuiseuxParam p = phi1();
    const StandardBasisResult& sb = sb1();
    OneForm w2 = extend_standard_basis(sb, true);
    OneForm wt2 = extend_standard_basis(sb, false);
    StandardSystem sys = special_standard_system(sb, w2, wt2);

    // h * omega_2 comes back as (h, 0)
    WPoly h(p.weights());
    h.add_term(2, 1, Rat(3, 2));
    h.add_term(0, 0, Rat(-1));
    auto [g1, gt1] = divide_in_saito_basis(w2.poly_mul(h), sys, p);
    WPoly diff = g1;
    diff -= h;
    CHECK(diff.is_zero());
    CHECK(gt1.is_zero());

    // x omega_2 + y omega~_2 comes back as (x, y)
    OneForm w = w2.mono_mul(1, 0, Rat(1));
    w += wt2.mono_mul(0, 1, Rat(1));
    auto [g2, gt2] = divide_in_saito_basis(w, sys, p);
    CHECK(g2.coeff(1, 0) == 1);
    CHECK(g2.terms().size() == 1);
    CHECK(gt2.coeff(0, 1) == 1);
    CHECK(gt2.terms().size() == 1);

    // f dx is invariant; verify by re-expansion up to the trusted depth
    WPoly f = implicit_equation(p);
    OneForm fdx = zero_form(p.weights());
    fdx.A = f;
    auto [g3, gt3] = divide_in_saito_basis(fdx, sys, p);
    OneForm acc = w2.poly_mul(g3);
    acc += wt2.poly_mul(gt3);
    acc -= fdx;
    CHECK((acc.is_zero() || nu_D(acc) >= std::min(g3.truncation() + nu_D(w2), acc.trunc())));

    CHECK_THROWS_WITH_AS(divide_in_saito_basis(d_x(p.weights()), sys, p),
                         doctest::Contains("NotInModule"), Error);
}

TEST_CASE("theorem guarantees on produced bases: nu_C = lambda_i forces nu_D = t_i")
{
    const StandardBasisResult& sb = sb1();
    PuiseuxParam p = phi1();
    std::mt19937_64 rng(5);
    long long T = p.default_truncation();
    for (int i = -1; i <= sb.s(); ++i) {
        // random unit rescalings keep nu_C and nu_D
        OneForm w = sb.omega(i);
        WPoly unit(p.weights());
        unit.add_term(0, 0, Rat(1 + static_cast<long long>(rng() % 5)));
        unit.add_term(1, 0, Rat(static_cast<long long>(rng() % 7) - 3));
        unit.add_term(0, 1, Rat(static_cast<long long>(rng() % 7) - 3));
        OneForm wu = w.poly_mul(unit);
        CHECK(vc_of(p, wu, T) == sb.lambda_ll(i));
        CHECK(nu_D(wu) == to_ll(sb.table.t(i)));
    }
}
