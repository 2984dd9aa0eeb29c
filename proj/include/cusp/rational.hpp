#ifndef CUSP_RATIONAL_HPP
#define CUSP_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <stdexcept>
#include <string>

namespace cusp {

// Exact arithmetic throughout: arbitrary-precision integers for semigroup
// and semimodule values, canonical rationals (gcd 1, positive denominator)
// for series and polynomial coefficients.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    std::string kind;
    Error(std::string k, const std::string& msg)
        : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

[[noreturn]] inline void fail(const char* kind, const std::string& msg)
{
    throw Error(kind, msg);
}

inline std::string to_string(const Rat& r)
{
    Int num = boost::multiprecision::numerator(r);
    Int den = boost::multiprecision::denominator(r);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

// Accepts "p", "-p", "p/q"; canonicalizes sign and gcd.
inline Rat parse_rational(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0)
            fail("InputError", "zero denominator in rational '" + s + "'");
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception&) {
        fail("InputError", "cannot parse rational '" + s + "'");
    }
}

// Checked narrowing for bridging semimodule values into polynomial exponents.
inline long long to_ll(const Int& v)
{
    if (v > std::numeric_limits<long long>::max() / 4 ||
        v < std::numeric_limits<long long>::min() / 4)
        fail("Overflow", "value " + v.str() + " does not fit machine exponent range");
    return v.convert_to<long long>();
}

} // namespace cusp

#endif
