#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cusp/puiseux.hpp"

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

OneForm resonant_core(Weights wt)
{
    // n x dy - m y dx
    OneForm w = zero_form(wt);
    w.A.set(0, 1, Rat(-wt.m));
    w.B.set(1, 0, Rat(wt.n));
    return w;
}

Rat random_rat(std::mt19937_64& rng)
{
    long long num = static_cast<long long>(rng() % 19) - 9;
    if (num == 0)
        num = 2;
    return Rat(num, 1 + static_cast<long long>(rng() % 9));
}

WPoly random_wpoly(std::mt19937_64& rng, Weights wt, long long max_i, long long max_j, int terms)
{
    WPoly h(wt);
    for (int k = 0; k < terms; ++k)
        h.add_term(static_cast<long long>(rng() % (max_i + 1)),
                   static_cast<long long>(rng() % (max_j + 1)), random_rat(rng));
    if (h.is_zero())
        h.set(1, 1, Rat(1));
    return h;
}

OneForm random_form(std::mt19937_64& rng, Weights wt)
{
    return OneForm{random_wpoly(rng, wt, 9, 4, 3), random_wpoly(rng, wt, 9, 4, 3)};
}

} // namespace

TEST_CASE("parametrization validation")
{
    CHECK_THROWS_WITH_AS(make_puiseux(7, {{14, Rat(1)}}), doctest::Contains("NotCoprime"),
                         Error);
    CHECK_THROWS_WITH_AS(make_puiseux(9, {{4, Rat(1)}}), doctest::Contains("NotCusp"), Error);
    PuiseuxParam scaled = make_puiseux(2, {{3, Rat(5)}, {4, Rat(10)}});
    CHECK(scaled.was_normalized);
    CHECK(scaled.b.coeff(3) == 1);
    CHECK(scaled.b.coeff(4) == 2);
}

TEST_CASE("pullback basics")
{
    PuiseuxParam p23 = monomial_cusp(2, 3);
    TSeries s = pullback(p23, d_x(p23.weights()), 50);
    CHECK(s.terms().size() == 1);
    CHECK(s.coeff(1) == 2); // d(t^2) = 2t dt

    // quasi-homogeneous invariance: n x dy - m y dx pulls back to 0 exactly
    TSeries inv = pullback(p23, resonant_core(p23.weights()), 50);
    CHECK(inv.is_zero());
    // while n y dx - m x dy does not (its pullback has order n + m - 1)
    OneForm not_inv = zero_form(p23.weights());
    not_inv.A.set(0, 1, Rat(2));
    not_inv.B.set(1, 0, Rat(-3));
    TSeries ni = pullback(p23, not_inv, 50);
    CHECK(*ni.order() == 4);

    PuiseuxParam p1 = phi1();
    TSeries dy = pullback(p1, d_y(p1.weights()), p1.default_truncation());
    CHECK(dy.coeff(35) == 36);
    CHECK(dy.coeff(115) == 116);
    CHECK(dy.coeff(195) == Rat(28 * 196, 9));
}

TEST_CASE("nu_C on forms and functions")
{
    PuiseuxParam p1 = phi1();
    long long T = p1.default_truncation();

    OrderResult r = nu_C(p1, d_x(p1.weights()), T);
    CHECK(r.finite());
    CHECK(r.value == 7);

    // omega_1 = 7 x dy - 36 y dx realizes lambda_1 = 123
    OrderResult r1 = nu_C(p1, resonant_core(p1.weights()), T);
    CHECK(r1.finite());
    CHECK(r1.value == 123);

    PuiseuxParam p57 = monomial_cusp(5, 7);
    OrderResult inf = nu_C(p57, resonant_core(p57.weights()), p57.default_truncation());
    CHECK(inf.infinite());
    // below the certification threshold the same read is only UnknownAbove
    OrderResult unk = nu_C(p57, resonant_core(p57.weights()), 10);
    CHECK(unk.kind == OrderResult::Kind::UnknownAbove);

    CHECK(nu_C_fn(p1, WPoly::monomial(p1.weights(), 1, 0, Rat(1)), T).value == 7);
    CHECK(nu_C_fn(p1, WPoly::monomial(p1.weights(), 0, 1, Rat(1)), T).value == 36);

    OneForm w = zero_form(p1.weights(), 40);
    w.A.set(0, 1, Rat(1));
    CHECK_THROWS_WITH_AS(nu_C(p1, w, 200), doctest::Contains("TruncationTooDeep"), Error);
}

TEST_CASE("divisorial orders")
{
    Weights wt{7, 36};
    CHECK(nu_D(d_x(wt)) == 7);
    OneForm eta = resonant_core(wt);
    CHECK(nu_D(eta) == 43);

    // omega = 36 x^3 (7 x dy - 36 y dx) - 560 y^3 dy
    OneForm omega = eta.mono_mul(3, 0, Rat(36));
    omega.B.add_term(0, 3, Rat(-560));
    CHECK(nu_D(omega) == 64);
    CHECK(nu_D1(omega) == 4); // nu_0 = 3

    OneForm omega_prime = omega;
    omega_prime += eta.mono_mul(0, 1, Rat(1));
    CHECK(nu_D1(omega_prime) == 3);
    CHECK(nu_D1(d_x(wt)) == 1);

    CHECK_THROWS_WITH_AS(nu_D(zero_form(wt, 100)), doctest::Contains("ZeroToTruncation"),
                         Error);

    // initial parts
    OneForm w = d_y(wt);
    w.B.add_term(5, 0, Rat(1)); // + x^5 dy
    OneForm in = initial_part(w);
    CHECK(in.A.is_zero());
    CHECK(in.B.terms().size() == 1);
    CHECK(in.B.coeff(0, 0) == 1);

    OneForm in_omega = initial_part(omega);
    CHECK(in_omega.A.coeff(3, 1) == -1296); // 36 x^3 * (-36 y dx)
    CHECK(in_omega.B.coeff(4, 0) == 252);   // 36 x^3 * 7 x dy
    CHECK(in_omega.B.coeff(0, 3) == 0);     // y^3 dy sits at weight 144 > 64

    WPoly f(wt);
    f.add_term(0, 7, Rat(1));
    f.add_term(36, 0, Rat(-1));
    OneForm df = differential(f);
    OneForm in_df = initial_part(df);
    CHECK(in_df.A.coeff(35, 0) == -36);
    CHECK(in_df.B.coeff(0, 6) == 7);
}

TEST_CASE("resonance")
{
    PuiseuxParam p = make_puiseux(5, {{7, Rat(1)}, {8, Rat(1)}});
    OneForm res = resonant_core(p.weights());
    CHECK(is_resonant_form(res));
    CHECK_FALSE(is_resonant_form(d_x(p.weights())));

    // the pullback order of a resonant form genuinely exceeds its weight
    CHECK(nu_D(res) == 12);
    OrderResult vc = nu_C(p, res, p.default_truncation());
    CHECK((vc.infinite() || vc.value > 12));

    // the other orientation is not resonant
    OneForm other = zero_form(p.weights());
    other.A.set(0, 1, Rat(5));
    other.B.set(1, 0, Rat(-7));
    CHECK_FALSE(is_resonant_form(other));
}

TEST_CASE("reachable")
{
    Weights wt{7, 36};
    OneForm w1 = resonant_core(wt);
    auto r = reachable(w1, w1.mono_mul(3, 0, Rat(1)));
    REQUIRE(r.has_value());
    CHECK(r->mu == 1);
    CHECK(r->a == 3);
    CHECK(r->b == 0);

    CHECK_FALSE(reachable(d_x(wt), w1).has_value());

    OneForm omega = w1.mono_mul(3, 0, Rat(36));
    omega.B.add_term(0, 3, Rat(-560));
    auto r2 = reachable(w1, omega);
    REQUIRE(r2.has_value());
    CHECK(r2->mu == 36);
    CHECK(r2->a == 3);
    CHECK(r2->b == 0);
}

TEST_CASE("wedge")
{
    Weights wt{2, 3};
    CHECK(wedge(d_x(wt), d_y(wt)).coeff(0, 0) == 1);

    OneForm w1 = resonant_core(wt);
    CHECK(wedge(w1, w1).is_zero());

    WPoly f(wt);
    f.add_term(0, 2, Rat(1));
    f.add_term(3, 0, Rat(-1));
    WPoly p = wedge(w1, differential(f));
    // computed expectation: (2x dy - 3y dx) wedge df = -6 (y^2 - x^3)
    WPoly expect = f;
    expect *= Rat(-6);
    p -= expect;
    CHECK(p.is_zero());
}

TEST_CASE("implicit equation")
{
    PuiseuxParam p23 = monomial_cusp(2, 3);
    WPoly f23 = implicit_equation(p23);
    CHECK(f23.coeff(0, 2) == 1);
    CHECK(f23.coeff(3, 0) == -1);
    CHECK(f23.terms().size() == 2);

    PuiseuxParam p57 = monomial_cusp(5, 7);
    WPoly f57 = implicit_equation(p57);
    CHECK(f57.coeff(0, 5) == 1);
    CHECK(f57.coeff(7, 0) == -1);
    CHECK(f57.terms().size() == 2);

    for (PuiseuxParam p : {phi1(), phi2()}) {
        WPoly f = implicit_equation(p);
        // monic of degree n in y
        CHECK(f.coeff(0, 7) == 1);
        for (const auto& [k, c] : f.terms())
            CHECK(k.j <= 7);
        // initial part proportional to y^7 - x^36
        WPoly in = initial_part(f);
        CHECK(in.terms().size() == 2);
        CHECK(in.coeff(0, 7) == 1);
        CHECK(in.coeff(36, 0) == -1);
        // f(phi(t)) = 0 exactly
        CHECK(Pullback(p).eval(f).is_zero());
    }
}

TEST_CASE("exact primitive")
{
    PuiseuxParam p23 = monomial_cusp(2, 3);
    // c_Gamma = 2: psi = 2t dt integrates to x
    WPoly h = exact_primitive(p23, TSeries::monomial(1, Rat(2), 40), 100);
    CHECK(h.terms().size() == 1);
    CHECK(h.coeff(1, 0) == 1);

    // round trip d(xy)
    PuiseuxParam p1 = phi1();
    Pullback eng(p1);
    WPoly xy = WPoly::monomial(p1.weights(), 1, 1, Rat(1));
    TSeries psi = eng.pull_form(differential(xy));
    WPoly back = exact_primitive(p1, psi, kNoTrunc);
    CHECK(back.coeff(1, 1) == 1);
    CHECK(back.terms().size() == 1);

    // order gap: t^0 dt would need 1 in the semigroup
    CHECK_THROWS_WITH_AS(exact_primitive(p23, TSeries::monomial(0, Rat(1), 3), 100),
                         doctest::Contains("OrderGap"), Error);
}

TEST_CASE("order-theory properties on random forms")
{
    std::mt19937_64 rng(424242);
    for (PuiseuxParam p : {phi1(), monomial_cusp(5, 7)}) {
        Weights wt = p.weights();
        Pullback eng(p);
        long long T = p.default_truncation();
        for (int trial = 0; trial < 60; ++trial) {
            OneForm w = random_form(rng, wt);
            OrderResult vc = eng.nu_C(w, T);
            long long vd = nu_D(w);
            if (vc.finite())
                CHECK(vd <= vc.value);

            // nu_C(h w) = nu_C(h) + nu_C(w)
            WPoly h = random_wpoly(rng, wt, 6, 3, 3);
            OrderResult vh = eng.nu_C_fn(h, T);
            OrderResult vhw = eng.nu_C(w.poly_mul(h), T);
            if (vc.finite() && vh.finite() && vh.value + vc.value < T)
                CHECK(vhw.value == vh.value + vc.value);

            // nu_C(dh) = nu_C(h) for positive order
            if (vh.finite() && vh.value > 0) {
                OrderResult vdh = eng.nu_C(differential(h), T);
                CHECK(vdh.value == vh.value);
            }

            // functions of weight below nm have nu_D = nu_C
            if (nu_D(h) < wt.n * wt.m)
                CHECK(nu_D(h) == vh.value);

            // finite function values always land in the semigroup
            if (vh.finite())
                CHECK(p.semigroup().contains(Int(vh.value)));

            // algebraic resonance test agrees with the order-based one
            if (vd < wt.n * wt.m) {
                bool res_order = !vc.finite() || vc.value > vd;
                CHECK(is_resonant(p, w) == res_order);
            }

            // initial part is idempotent and weight-homogeneous
            OneForm in = initial_part(w);
            OneForm in2 = initial_part(in);
            in2 -= in;
            CHECK(in2.is_zero());
            CHECK(nu_D(in) == vd);

            // reachability of monomial multiples
            long long a = static_cast<long long>(rng() % 4);
            long long b = static_cast<long long>(rng() % 3);
            Rat mu = random_rat(rng);
            auto r = reachable(w, w.mono_mul(a, b, mu));
            REQUIRE(r.has_value());
            CHECK(r->a == a);
            CHECK(r->b == b);
            CHECK(r->mu == mu);

            // wedge is antisymmetric, bilinear over functions
            OneForm w2 = random_form(rng, wt);
            WPoly lhs = wedge(w.poly_mul(h), w2);
            WPoly rhs = wedge(w, w2) * h;
            lhs -= rhs;
            CHECK(lhs.is_zero());
            WPoly anti = wedge(w, w2);
            anti += wedge(w2, w);
            CHECK(anti.is_zero());

            // pullback is linear and a derivation
            WPoly g2 = random_wpoly(rng, wt, 6, 3, 3);
            TSeries lead = eng.pull_form(differential(h * g2));
            TSeries expect = eng.eval(h) * eng.pull_form(differential(g2));
            expect += eng.eval(g2) * eng.pull_form(differential(h));
            lead -= expect;
            CHECK(lead.is_zero());
        }
    }
}

TEST_CASE("primitive round trips on deep tails")
{
    PuiseuxParam p = phi1();
    Pullback eng(p);
    std::mt19937_64 rng(99);
    long long T = p.default_truncation();
    for (int trial = 0; trial < 8; ++trial) {
        WPoly h(p.weights());
        for (int t = 0; t < 5; ++t) {
            long long j = static_cast<long long>(rng() % 3);
            long long i = (p.c_gamma() + static_cast<long long>(rng() % 90) - 36 * j) / 7 + 1;
            h.add_term(i, j, random_rat(rng));
        }
        TSeries psi = eng.pull_form(differential(h)).truncated(T - 1);
        WPoly h2 = exact_primitive(p, psi, T);
        TSeries back = eng.pull_form(differential(h2)).truncated(T - 1);
        back -= psi;
        CHECK(back.is_zero());
    }
}
