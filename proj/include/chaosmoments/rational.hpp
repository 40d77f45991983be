#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "chaosmoments/errors.hpp"

namespace chaosmoments {

using Rational = boost::multiprecision::cpp_rational;

// Parse "3/2", "-1/4" or "7" into an exact rational.
inline Rational parse_rational(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos)
            return Rational(boost::multiprecision::cpp_int(s));
        boost::multiprecision::cpp_int num(s.substr(0, slash));
        boost::multiprecision::cpp_int den(s.substr(slash + 1));
        if (den == 0) fail(ErrorCode::BadUsage, "rational with zero denominator: " + s);
        return Rational(num, den);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(ErrorCode::BadUsage, "cannot parse rational: " + s);
    }
}

inline std::string rational_str(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline double rational_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace chaosmoments
