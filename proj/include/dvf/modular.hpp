#pragma once

#include <cstdint>
#include <optional>

namespace dvf {

using Int = std::uint64_t;
using Wide = unsigned __int128;

namespace mod {

inline Int add(Int a, Int b, Int m) noexcept {
    const Int s = a + b;
    return (s >= m || s < a) ? s - m : s;
}

inline Int sub(Int a, Int b, Int m) noexcept { return a >= b ? a - b : a + (m - b); }

inline Int neg(Int a, Int m) noexcept { return a == 0 ? 0 : m - a; }

inline Int mul(Int a, Int b, Int m) noexcept {
    return static_cast<Int>((static_cast<Wide>(a) * b) % m);
}

inline Int pow(Int base, Int exp, Int m) noexcept {
    Int result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1U) result = mul(result, base, m);
        base = mul(base, base, m);
        exp >>= 1U;
    }
    return result;
}

// Inverse of a modulo m via extended Euclid; nullopt when gcd(a, m) != 1.
inline std::optional<Int> inverse(Int a, Int m) noexcept {
    using S = __int128;
    S r0 = static_cast<S>(m), r1 = static_cast<S>(a % m);
    S t0 = 0, t1 = 1;
    while (r1 != 0) {
        const S q = r0 / r1;
        S tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (r0 != 1) return std::nullopt;
    if (t0 < 0) t0 += static_cast<S>(m);
    return static_cast<Int>(t0);
}

// p-adic valuation of a nonzero integer; callers handle a == 0.
inline int valuation(Int a, Int p) noexcept {
    int v = 0;
    while (a != 0 && a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

// p^e, or nullopt on overflow past 2^62.
inline std::optional<Int> checked_power(Int p, unsigned e) noexcept {
    Int r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > (Int{1} << 62) / p) return std::nullopt;
        r *= p;
    }
    return r;
}

inline bool is_prime(Int n) noexcept {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

}  // namespace mod
}  // namespace dvf
