#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace rigidity {

using integer = std::int64_t;

namespace checked {

inline integer add(integer x, integer y)
{
    integer r;
    if (__builtin_add_overflow(x, y, &r))
        throw overflow_error("integer overflow in " + std::to_string(x) + " + " + std::to_string(y));
    return r;
}

inline integer sub(integer x, integer y)
{
    integer r;
    if (__builtin_sub_overflow(x, y, &r))
        throw overflow_error("integer overflow in " + std::to_string(x) + " - " + std::to_string(y));
    return r;
}

inline integer mul(integer x, integer y)
{
    integer r;
    if (__builtin_mul_overflow(x, y, &r))
        throw overflow_error("integer overflow in " + std::to_string(x) + " * " + std::to_string(y));
    return r;
}

inline integer neg(integer x) { return sub(0, x); }

template <typename... Rest>
integer mul(integer x, integer y, Rest... rest)
{
    return mul(mul(x, y), rest...);
}

} // namespace checked

/// Least non-negative residue of x modulo m (m > 0).
inline integer mod(integer x, integer m) noexcept
{
    integer r = x % m;
    return r < 0 ? r + m : r;
}

/// (x * y) mod m without intermediate overflow.
inline integer mul_mod(integer x, integer y, integer m) noexcept
{
    return static_cast<integer>(
        (static_cast<__int128>(mod(x, m)) * static_cast<__int128>(mod(y, m))) % m);
}

} // namespace rigidity
