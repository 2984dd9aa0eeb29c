#include "cusp/wpoly.hpp"

#include <algorithm>
#include <sstream>

namespace cusp {

long long nu_D(const WPoly& h)
{
    if (h.is_zero())
        fail("ZeroToTruncation", "nu_D of a polynomial with no terms below truncation");
    return h.terms().begin()->first.w;
}

long long nu_D(const OneForm& w)
{
    long long best = kNoTrunc;
    if (!w.A.is_zero())
        best = std::min(best, w.weights().n + w.A.order_floor());
    if (!w.B.is_zero())
        best = std::min(best, w.weights().m + w.B.order_floor());
    if (best >= w.trunc())
        fail("ZeroToTruncation", "nu_D of a 1-form with no terms below truncation");
    return best;
}

namespace {

long long min_total_degree_checked(const OneForm& w, const char* what)
{
    std::optional<long long> t;
    auto scan = [&](const WPoly& p) {
        if (auto d = p.min_total_degree(); d && (!t || *d < *t))
            t = *d;
    };
    scan(w.A);
    scan(w.B);
    if (!t)
        fail("ZeroToTruncation", std::string(what) + " of a 1-form with no stored terms");
    // unknown terms have weighted degree >= trunc, hence total degree >= trunc/m
    long long tr = std::min(w.A.truncation(), w.B.truncation());
    if (*t * w.weights().m >= tr)
        fail("ZeroToTruncation", std::string(what) + " not determined at this truncation");
    return *t;
}

} // namespace

long long nu_D1(const OneForm& w)
{
    return min_total_degree_checked(w, "nu_D1") + 1;
}

long long nu_D1_fn(const WPoly& h)
{
    auto d = h.min_total_degree();
    if (!d)
        fail("ZeroToTruncation", "multiplicity of a polynomial with no stored terms");
    if (*d * h.weights().m >= h.truncation())
        fail("ZeroToTruncation", "multiplicity not determined at this truncation");
    return *d;
}

WPoly initial_part(const WPoly& h)
{
    return h.component(nu_D(h));
}

OneForm initial_part(const OneForm& w)
{
    long long p = nu_D(w);
    return OneForm{w.A.component(p - w.weights().n), w.B.component(p - w.weights().m)};
}

std::optional<DiffMonomial> single_diff_monomial(const OneForm& initial)
{
    std::optional<std::pair<long long, long long>> ab;
    DiffMonomial out{0, 0, Rat(0), Rat(0)};
    for (const auto& [k, c] : initial.A.terms()) {
        if (ab)
            return std::nullopt;
        ab = {k.i + 1, k.j};
        out.a = c;
    }
    std::optional<std::pair<long long, long long>> ab2;
    for (const auto& [k, c] : initial.B.terms()) {
        if (ab2)
            return std::nullopt;
        ab2 = {k.i, k.j + 1};
        out.b = c;
    }
    if (!ab && !ab2)
        return std::nullopt;
    if (ab && ab2 && *ab != *ab2)
        return std::nullopt;
    auto [alpha, beta] = ab ? *ab : *ab2;
    out.alpha = alpha;
    out.beta = beta;
    return out;
}

bool is_resonant_form(const OneForm& w)
{
    const Weights& wt = w.weights();
    long long p = nu_D(w);
    if (p >= wt.n * wt.m)
        return false;
    auto dm = single_diff_monomial(initial_part(w));
    if (!dm)
        return false;
    return dm->a != 0 && wt.n * dm->a + wt.m * dm->b == 0;
}

std::optional<ReachMonomial> reachable(const OneForm& from, const OneForm& target)
{
    OneForm inf = initial_part(from);
    OneForm int_ = initial_part(target);
    if (inf.A.terms().size() != int_.A.terms().size() ||
        inf.B.terms().size() != int_.B.terms().size())
        return std::nullopt;

    std::optional<ReachMonomial> res;
    auto match = [&res](const WPoly& pf, const WPoly& pt) -> bool {
        auto itf = pf.terms().begin();
        auto itt = pt.terms().begin();
        for (; itf != pf.terms().end(); ++itf, ++itt) {
            long long da = itt->first.i - itf->first.i;
            long long db = itt->first.j - itf->first.j;
            if (da < 0 || db < 0)
                return false;
            Rat mu = itt->second / itf->second;
            if (!res)
                res = ReachMonomial{mu, da, db};
            else if (res->a != da || res->b != db || res->mu != mu)
                return false;
        }
        return true;
    };
    if (!match(inf.A, int_.A) || !match(inf.B, int_.B))
        return std::nullopt;
    return res;
}

WPoly wedge(const OneForm& w1, const OneForm& w2)
{
    WPoly p = w1.A * w2.B;
    p -= w2.A * w1.B;
    return p;
}

namespace {

std::string term_text(const Rat& c, long long i, long long j)
{
    std::ostringstream os;
    os << to_string(c);
    if (i == 1)
        os << "*x";
    else if (i > 1)
        os << "*x^" << i;
    if (j == 1)
        os << "*y";
    else if (j > 1)
        os << "*y^" << j;
    return os.str();
}

} // namespace

std::string to_text(const WPoly& h)
{
    if (h.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : h.terms()) {
        if (first) {
            os << term_text(c, k.i, k.j);
            first = false;
        } else if (c < 0) {
            os << " - " << term_text(-c, k.i, k.j);
        } else {
            os << " + " << term_text(c, k.i, k.j);
        }
    }
    return os.str();
}

std::string to_text(const OneForm& w)
{
    if (w.is_zero())
        return "0";
    std::string out;
    if (!w.A.is_zero())
        out += "(" + to_text(w.A) + ") dx";
    if (!w.B.is_zero()) {
        if (!out.empty())
            out += " + ";
        out += "(" + to_text(w.B) + ") dy";
    }
    return out;
}

} // namespace cusp
