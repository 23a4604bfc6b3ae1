#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace gqg {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline Rat rat_pow(const Rat& x, long e) {
    if (e == 0) return Rat(1);
    if (x == 0) {
        if (e < 0) throw std::domain_error("rat_pow: zero to a negative power");
        return Rat(0);
    }
    Rat base = (e < 0) ? Rat(1) / x : x;
    unsigned long n = (e < 0) ? 0ul - static_cast<unsigned long>(e)
                              : static_cast<unsigned long>(e);
    Rat acc(1);
    while (n) {
        if (n & 1ul) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

inline std::string rat_str(const Rat& r) {
    return r.str();
}

} // namespace gqg
