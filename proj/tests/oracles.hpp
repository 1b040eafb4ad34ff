#pragma once

// Independent reference computations. Nothing here calls into the library;
// each oracle is the slow, obvious version of what it checks.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

/// Prime powers <= limit by trial division of every n.
inline std::vector<std::uint64_t> prime_powers(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        std::uint64_t p = 2;
        while (n % p != 0) ++p;
        std::uint64_t m = n;
        while (m % p == 0) m /= p;
        if (m == 1) out.push_back(n);
    }
    return out;
}

inline bool squarefree(std::uint64_t n) {
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

/// Definition of a negative fundamental discriminant -d.
inline bool fundamental(std::int64_t d) {
    if (d % 4 == 3) return squarefree(static_cast<std::uint64_t>(d));
    if (d % 4 == 0) {
        const std::int64_t m = d / 4;
        return (m % 4 == 1 || m % 4 == 2) && squarefree(static_cast<std::uint64_t>(m));
    }
    return false;
}

/// Legendre symbol (a/p), p an odd prime, from the table of squares mod p.
inline int legendre(std::int64_t a, std::int64_t p) {
    const std::int64_t r = ((a % p) + p) % p;
    if (r == 0) return 0;
    for (std::int64_t x = 1; x < p; ++x)
        if ((x * x) % p == r) return 1;
    return -1;
}

/// Kronecker symbol (D/n) for n >= 1: factor n and multiply the local symbols.
inline int kronecker(std::int64_t D, std::int64_t n) {
    int result = 1;
    for (std::int64_t p = 2; n > 1; ++p) {
        while (n % p == 0) {
            n /= p;
            int local;
            if (p == 2) {
                const std::int64_t r = ((D % 8) + 8) % 8;
                local = (D % 2 == 0) ? 0 : ((r == 1 || r == 7) ? 1 : -1);
            } else {
                local = legendre(D, p);
            }
            result *= local;
        }
    }
    return result;
}

/// r(n): sum over divisors m of n of (D/m).
inline std::int64_t r(std::int64_t D, std::int64_t n) {
    std::int64_t s = 0;
    for (std::int64_t m = 1; m <= n; ++m)
        if (n % m == 0) s += kronecker(D, m);
    return s;
}

/// Class number of -d (d > 4) from the finite formula h = -(1/d) sum n chi(n).
inline std::int64_t class_number(std::int64_t d) {
    std::int64_t s = 0;
    for (std::int64_t n = 1; n < d; ++n) s += n * kronecker(-d, n);
    return -s / d;
}

/// #{ b : -a < b <= a, b^2 = -d (mod 4a) } written without shortcuts.
inline std::int64_t congruence_count(std::int64_t d, std::int64_t a) {
    std::int64_t count = 0;
    for (std::int64_t b = -a + 1; b <= a; ++b) {
        const std::int64_t lhs = ((b * b) % (4 * a) + 4 * a) % (4 * a);
        const std::int64_t rhs = (((-d) % (4 * a)) + 4 * a) % (4 * a);
        if (lhs == rhs) ++count;
    }
    return count;
}

inline int omega(std::uint64_t n) {
    std::set<std::uint64_t> ps;
    for (std::uint64_t p = 2; p <= n; ++p)
        while (n % p == 0) {
            ps.insert(p);
            n /= p;
        }
    return static_cast<int>(ps.size());
}

}  // namespace oracle
