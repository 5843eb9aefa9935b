#ifndef CNBD_RATIONAL_HPP
#define CNBD_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace cnbd {

using Rat = mpq_class;

// mpq_class(num, den) does not reduce; this does.
inline Rat make_rat(long long num, long long den) {
    Rat r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

inline double to_double(const Rat& r) { return r.get_d(); }

// "17/10" for non-integers, "6" for integers.
inline std::string to_string(const Rat& r) { return r.get_str(); }

// Round half away from zero to `places` decimals, exactly.
Rat round_decimal(const Rat& r, int places);

// Fixed-point decimal string of round_decimal(r), e.g. "0.88", "-1.50".
std::string format_decimal(const Rat& r, int places);

// Like format_decimal but integers are printed bare ("1" instead of "1.00").
std::string format_decimal_trim(const Rat& r, int places);

}  // namespace cnbd

#endif
