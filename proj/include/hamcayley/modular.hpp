/*
   Copyright 2026 The hamcayley Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace hamcayley {

/// Least non-negative residue of `a` modulo `n`.
constexpr std::int64_t mod(std::int64_t a, std::int64_t n) noexcept {
    const std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

constexpr std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t n) noexcept {
    std::int64_t result = 1 % n;
    base = mod(base, n);
    while (exp > 0) {
        if (exp & 1) result = result * base % n;
        base = base * base % n;
        exp >>= 1;
    }
    return result;
}

/// Inverse of a unit modulo n (extended Euclid). Returns 0 when `a` is not a unit.
constexpr std::int64_t inv_mod(std::int64_t a, std::int64_t n) noexcept {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = n, new_r = mod(a, n);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) return 0;
    return mod(t, n);
}

constexpr bool is_prime(std::int64_t n) noexcept {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Distinct prime divisors in increasing order.
inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

constexpr bool is_prime_power(std::int64_t n) noexcept {
    if (n < 2) return false;
    std::int64_t d = 2;
    while (n % d != 0) ++d;
    while (n % d == 0) n /= d;
    return n == 1;
}

/// The two nontrivial cube roots of unity modulo the prime p, smaller first.
/// They satisfy r^2 + r + 1 = 0 (mod p) and are each other's squares.
inline std::pair<std::int64_t, std::int64_t> find_primitive_cube_roots(std::int64_t p) {
    if (!is_prime(p) || p % 2 == 0) throw Error(ErrorCode::BadParameters, "modulus must be an odd prime");
    if (p % 3 != 1) throw Error(ErrorCode::NoCubeRoot, "p = " + std::to_string(p) + " is not 1 mod 3");
    for (std::int64_t k = 2; k < p; ++k) {
        if (pow_mod(k, 3, p) == 1) return {k, k * k % p};
    }
    throw Error(ErrorCode::NoCubeRoot, "no primitive cube root found");
}

}  // namespace hamcayley
