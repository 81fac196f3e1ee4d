#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace qfan {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IVec = std::vector<Int>;
using RVec = std::vector<Rat>;

inline Int num(const Rat& x) { return numerator(x); }
inline Int den(const Rat& x) { return denominator(x); }

/* Serialization convention used in all JSON reports: "num/den", denominator
 * omitted when it equals 1. */
inline std::string rat_str(const Rat& x)
{
    if (den(x) == 1)
        return num(x).str();
    return num(x).str() + "/" + den(x).str();
}

inline Rat rat_parse(const std::string& s)
{
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

inline Int gcd(Int a, Int b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace qfan
