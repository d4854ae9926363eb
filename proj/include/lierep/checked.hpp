#pragma once

#include <cstdint>

#include "errors.hpp"

namespace lierep {

// Multiplicities are 64-bit; every accumulation goes through these so that
// an overflow is reported instead of wrapping.
using Mult = std::int64_t;

inline Mult checked_add(Mult a, Mult b) {
    Mult r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("multiplicity overflow in addition");
    return r;
}

inline Mult checked_sub(Mult a, Mult b) {
    Mult r;
    if (__builtin_sub_overflow(a, b, &r))
        throw OverflowError("multiplicity overflow in subtraction");
    return r;
}

inline Mult checked_mul(Mult a, Mult b) {
    Mult r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("multiplicity overflow in multiplication");
    return r;
}

} // namespace lierep
