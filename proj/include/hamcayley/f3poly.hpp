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

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hamcayley::f3 {

/// Polynomial over F_3, coefficients lowest degree first, no trailing zeros.
class Poly {
   public:
    Poly() = default;
    Poly(std::initializer_list<int> coeffs) : c_(coeffs.begin(), coeffs.end()) { normalize(); }
    explicit Poly(std::vector<int> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static Poly monomial(int degree, int coeff = 1) {
        std::vector<int> c(static_cast<std::size_t>(degree) + 1, 0);
        c.back() = coeff;
        return Poly(std::move(c));
    }

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    int coeff(int k) const noexcept { return k < static_cast<int>(c_.size()) ? c_[k] : 0; }
    const std::vector<int>& coeffs() const noexcept { return c_; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<int> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<int> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
        return Poly(std::move(c));
    }
    // schoolbook
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.c_.empty() || b.c_.empty()) return {};
        std::vector<int> c(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }
    bool operator==(const Poly&) const = default;

    /// e.g. "X^3 - X - 1" (coefficient 2 printed as -1)
    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string s;
        for (int k = degree(); k >= 0; --k) {
            const int a = c_[k];
            if (a == 0) continue;
            const bool neg = a == 2;
            if (s.empty())
                s += neg ? "-" : "";
            else
                s += neg ? " - " : " + ";
            if (k == 0)
                s += "1";
            else
                s += k == 1 ? "X" : "X^" + std::to_string(k);
        }
        return s;
    }

   private:
    void normalize() {
        for (int& a : c_) a = ((a % 3) + 3) % 3;
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<int> c_;
};

using Mat3 = std::array<std::array<int, 3>, 3>;

inline Mat3 identity3() { return Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

inline Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int s = 0;
            for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
            c[i][j] = s % 3;
        }
    return c;
}

inline Mat3 power(const Mat3& m, int k) {
    Mat3 r = identity3();
    for (int i = 0; i < k; ++i) r = r * m;
    return r;
}

/// Evaluates the polynomial at a matrix.
inline Mat3 evaluate(const Poly& f, const Mat3& m) {
    Mat3 acc{};
    Mat3 pw = identity3();
    for (int k = 0; k <= f.degree(); ++k) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) acc[i][j] = (acc[i][j] + f.coeff(k) * pw[i][j]) % 3;
        pw = pw * m;
    }
    return acc;
}

/// Monic polynomial of least degree killing m: the first degree d for which
/// I, M, ..., M^d are dependent with a nonzero M^d coefficient, found by
/// trying every monic combination.
inline Poly minimal_polynomial(const Mat3& m) {
    for (int d = 1; d <= 3; ++d) {
        const int combos = d == 1 ? 3 : d == 2 ? 9 : 27;
        for (int code = 0; code < combos; ++code) {
            std::vector<int> c(static_cast<std::size_t>(d) + 1, 0);
            int rest = code;
            for (int k = 0; k < d; ++k) {
                c[k] = rest % 3;
                rest /= 3;
            }
            c[d] = 1;
            const Poly f(c);
            if (evaluate(f, m) == Mat3{}) return f;
        }
    }
    return {};
}

}  // namespace hamcayley::f3
