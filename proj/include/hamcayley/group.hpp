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

#include <array>
#include <cctype>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "modular.hpp"

namespace hamcayley {

/// Index of an element inside its Group. Ids follow the lexicographic order of
/// the normal-form coordinates, so id 0 is the identity.
using ElemId = std::uint32_t;

/// Sylow 3-part of the group. The first five are Q in G = Q x| Z_p; the last is
/// the order-351 group Z_13 x| (Z_3)^3.
enum class Family : std::uint8_t { z27, z9xz3, e27, heis27, mod27, z13e27 };

inline constexpr std::array<Family, 5> kQFamilies = {Family::z27, Family::z9xz3, Family::e27,
                                                    Family::heis27, Family::mod27};

constexpr std::string_view family_name(Family f) noexcept {
    switch (f) {
        case Family::z27: return "z27";
        case Family::z9xz3: return "z9xz3";
        case Family::e27: return "e27";
        case Family::heis27: return "heis27";
        case Family::mod27: return "mod27";
        case Family::z13e27: return "z13e27";
    }
    return "?";
}

inline Family family_from_name(std::string_view name) {
    for (Family f : {Family::z27, Family::z9xz3, Family::e27, Family::heis27, Family::mod27, Family::z13e27})
        if (family_name(f) == name) return f;
    throw Error(ErrorCode::InvalidDescriptor, "unknown family '" + std::string(name) + "'");
}

/// Number of Q-coordinates (generators x, y, z in that order).
constexpr int q_arity(Family f) noexcept {
    switch (f) {
        case Family::z27: return 1;
        case Family::z9xz3: return 2;
        case Family::mod27: return 2;
        default: return 3;
    }
}

constexpr std::array<int, 3> q_moduli(Family f) noexcept {
    switch (f) {
        case Family::z27: return {27, 1, 1};
        case Family::z9xz3: return {9, 3, 1};
        case Family::mod27: return {9, 3, 1};
        default: return {3, 3, 3};
    }
}

/// Declarative recipe for one group. For the Q families, `p == 1` gives the bare
/// 3-group and otherwise G = Q x| Z_p where generator k of Q acts on Z_p by
/// multiplication with action[k]. For z13e27 the action is the fixed matrix W.
struct GroupDescriptor {
    Family family = Family::heis27;
    int p = 1;
    std::array<int, 3> action{1, 1, 1};

    bool operator==(const GroupDescriptor&) const = default;
};

/// Normal-form coordinates. For Q families: x^q0 y^q1 z^q2 w^m. For z13e27:
/// w^m v where v = (q0, q1, q2) in (Z_3)^3.
struct Element {
    Family family = Family::heis27;
    std::array<int, 3> q{};
    int m = 0;

    auto operator<=>(const Element&) const = default;
};

/// Rows of the matrix W; (Z_3)^3 is acted on from the right, v -> v W.
inline constexpr std::array<std::array<int, 3>, 3> kMatrixW = {{{0, 1, 0}, {0, 0, 1}, {1, 1, 0}}};

/// A finite group of order 27, 27p or 351 with a precomputed Cayley table.
/// Immutable after construction.
class Group {
   public:
    explicit Group(const GroupDescriptor& d) : desc_(d) {
        validate_descriptor();
        qmod_ = q_moduli(d.family);
        fiber_ = d.family == Family::z13e27 ? 13 : d.p;
        n_ = 27 * static_cast<std::size_t>(fiber_);
        if (d.family == Family::z13e27)
            build_z13();
        else
            build_qp();
        finish();
    }

    const GroupDescriptor& descriptor() const noexcept { return desc_; }
    Family family() const noexcept { return desc_.family; }
    std::size_t order() const noexcept { return n_; }
    /// Order of the cyclic factor: p for the Q families, 13 for z13e27.
    int fiber_order() const noexcept { return fiber_; }

    ElemId identity() const noexcept { return 0; }
    ElemId mul(ElemId a, ElemId b) const noexcept { return table_[a * n_ + b]; }
    ElemId inv(ElemId a) const noexcept { return inverse_[a]; }
    int elem_order(ElemId a) const noexcept { return order_[a]; }

    ElemId pow(ElemId a, std::int64_t k) const noexcept {
        k = hamcayley::mod(k, order_[a]);
        ElemId r = identity();
        for (std::int64_t i = 0; i < k; ++i) r = mul(r, a);
        return r;
    }
    /// a^b = b^-1 a b
    ElemId conjugate(ElemId a, ElemId b) const noexcept { return mul(mul(inv(b), a), b); }
    /// [a,b] = a^-1 b^-1 a b
    ElemId commutator(ElemId a, ElemId b) const noexcept { return mul(mul(inv(a), inv(b)), mul(a, b)); }

    Element element(ElemId id) const noexcept {
        Element e{desc_.family, {}, static_cast<int>(id % fiber_)};
        std::size_t qi = id / fiber_;
        for (int k = 2; k >= 0; --k) {
            e.q[k] = static_cast<int>(qi % qmod_[k]);
            qi /= qmod_[k];
        }
        return e;
    }

    bool contains(const Element& e) const noexcept {
        if (e.family != desc_.family || e.m < 0 || e.m >= fiber_) return false;
        for (int k = 0; k < 3; ++k)
            if (e.q[k] < 0 || e.q[k] >= qmod_[k]) return false;
        return true;
    }

    ElemId id(const Element& e) const {
        if (!contains(e)) throw Error(ErrorCode::FamilyMismatch, "element does not belong to this group");
        return encode(e.q, e.m);
    }

    Element mul(const Element& a, const Element& b) const { return element(mul(id(a), id(b))); }
    Element inv(const Element& a) const { return element(inv(id(a))); }
    int elem_order(const Element& a) const { return elem_order(id(a)); }

    /// Product of a word over x, y, z, w (and v = (1,0,0) for z13e27), e.g.
    /// "xy^2w^-1". Unknown letters throw InvalidDescriptor.
    ElemId word(std::string_view text) const {
        ElemId acc = identity();
        std::size_t i = 0;
        while (i < text.size()) {
            const char c = text[i++];
            if (std::isspace(static_cast<unsigned char>(c)) || c == '*') continue;
            ElemId g = letter(c);
            std::int64_t e = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                bool neg = false;
                if (i < text.size() && text[i] == '-') neg = true, ++i;
                if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                    throw Error(ErrorCode::InvalidDescriptor, "bad exponent in word");
                e = 0;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                    e = e * 10 + (text[i++] - '0');
                if (neg) e = -e;
            }
            acc = mul(acc, pow(g, e));
        }
        return acc;
    }

    /// Generator of the Z_p (or Z_13) factor.
    ElemId w() const noexcept { return encode({0, 0, 0}, fiber_ > 1 ? 1 : 0); }

    /// Q-part of an element of a Q family: drops the w^m factor. For Q families
    /// this is the projection G -> G/P ~ Q.
    ElemId q_part(ElemId a) const noexcept { return a - a % fiber_; }
    /// Exponent m of w^m in the normal form.
    int fiber_part(ElemId a) const noexcept { return static_cast<int>(a % fiber_); }
    /// Unit by which the Q-part of `a` acts on Z_p (Q families only).
    int action_of(ElemId a) const noexcept {
        return desc_.family == Family::z13e27 ? 1 : alpha_[a / fiber_];
    }

    /// Compact canonical key: "[q0,q1,q2;m]" (arity-trimmed), "[t;v0,v1,v2]" for z13e27.
    std::string key(ElemId a) const {
        const Element e = element(a);
        std::string s = "[";
        if (desc_.family == Family::z13e27) {
            s += std::to_string(e.m) + ";" + std::to_string(e.q[0]) + "," + std::to_string(e.q[1]) + "," +
                 std::to_string(e.q[2]);
        } else {
            for (int k = 0; k < q_arity(desc_.family); ++k) {
                if (k) s += ",";
                s += std::to_string(e.q[k]);
            }
            s += ";" + std::to_string(e.m);
        }
        return s + "]";
    }

   private:
    ElemId encode(const std::array<int, 3>& q, int m) const noexcept {
        return static_cast<ElemId>(qindex(q) * fiber_ + m);
    }
    std::size_t qindex(const std::array<int, 3>& q) const noexcept {
        return (static_cast<std::size_t>(q[0]) * qmod_[1] + q[1]) * qmod_[2] + q[2];
    }
    std::array<int, 3> qcoords(std::size_t qi) const noexcept {
        std::array<int, 3> q{};
        for (int k = 2; k >= 0; --k) {
            q[k] = static_cast<int>(qi % qmod_[k]);
            qi /= qmod_[k];
        }
        return q;
    }

    ElemId letter(char c) const {
        const Family f = desc_.family;
        if (c == 'w') return w();
        if (f == Family::z13e27) {
            if (c == 'v') return encode({1, 0, 0}, 0);
        } else {
            const int k = c == 'x' ? 0 : c == 'y' ? 1 : c == 'z' ? 2 : -1;
            if (k >= 0 && k < q_arity(f)) {
                std::array<int, 3> q{};
                q[k] = 1;
                return encode(q, 0);
            }
        }
        throw Error(ErrorCode::InvalidDescriptor, std::string("letter '") + c + "' is not a generator here");
    }

    void validate_descriptor() const {
        if (desc_.family == Family::z13e27) {
            if (desc_.p != 13 && desc_.p != 1)
                throw Error(ErrorCode::InvalidDescriptor, "z13e27 has fixed fiber order 13");
            return;
        }
        if (desc_.p != 1 && (!is_prime(desc_.p) || desc_.p < 5))
            throw Error(ErrorCode::InvalidDescriptor, "p must be a prime >= 5 (or 1 for the bare 3-group)");
    }

    // Multiplication of Q-coordinates by the presentation-derived normal forms.
    std::array<int, 3> qmul_coords(const std::array<int, 3>& a, const std::array<int, 3>& b) const noexcept {
        switch (desc_.family) {
            case Family::z27: return {(a[0] + b[0]) % 27, 0, 0};
            case Family::z9xz3: return {(a[0] + b[0]) % 9, (a[1] + b[1]) % 3, 0};
            case Family::e27:
            case Family::z13e27: return {(a[0] + b[0]) % 3, (a[1] + b[1]) % 3, (a[2] + b[2]) % 3};
            case Family::heis27:
                // [x,y] = z central: y^j x^i = x^i y^j z^(-ij)
                return {(a[0] + b[0]) % 3, (a[1] + b[1]) % 3,
                        static_cast<int>(hamcayley::mod(a[2] + b[2] - a[1] * b[0], 3))};
            case Family::mod27: {
                // y^-1 x y = x^4, so y^j x^i = x^(i 7^j) y^j
                const int twist = static_cast<int>(pow_mod(7, a[1], 9));
                return {(a[0] + b[0] * twist) % 9, (a[1] + b[1]) % 3, 0};
            }
        }
        return {};
    }

    void build_qp() {
        const int p = fiber_;
        std::vector<std::size_t> qtab(27 * 27);
        for (std::size_t i = 0; i < 27; ++i)
            for (std::size_t j = 0; j < 27; ++j) qtab[i * 27 + j] = qindex(qmul_coords(qcoords(i), qcoords(j)));
        for (std::size_t i = 0; i < 27; ++i)
            for (std::size_t j = 0; j < 27; ++j)
                for (std::size_t k = 0; k < 27; ++k)
                    if (qtab[qtab[i * 27 + j] * 27 + k] != qtab[i * 27 + qtab[j * 27 + k]])
                        throw Error(ErrorCode::InvalidDescriptor, "normal-form multiplication is not associative");

        alpha_.assign(27, 1);
        if (p > 1) {
            const int arity = q_arity(desc_.family);
            for (int k = 0; k < 3; ++k) {
                const int u = desc_.action[k];
                if (k >= arity) {
                    if (u != 1) throw Error(ErrorCode::InvalidAction, "action given for a missing generator");
                    continue;
                }
                if (u <= 0 || u >= p) throw Error(ErrorCode::InvalidAction, "action units must lie in [1, p)");
            }
            for (std::size_t qi = 0; qi < 27; ++qi) {
                const auto q = qcoords(qi);
                std::int64_t a = 1;
                for (int k = 0; k < arity; ++k) a = a * pow_mod(desc_.action[k], q[k], p) % p;
                alpha_[qi] = static_cast<int>(a);
            }
            for (std::size_t i = 0; i < 27; ++i)
                for (std::size_t j = 0; j < 27; ++j)
                    if (alpha_[qtab[i * 27 + j]] != static_cast<std::int64_t>(alpha_[i]) * alpha_[j] % p)
                        throw Error(ErrorCode::InvalidAction, "action does not extend to a homomorphism Q -> Aut(Z_p)");
        } else if (desc_.action != std::array<int, 3>{1, 1, 1}) {
            throw Error(ErrorCode::InvalidAction, "the bare 3-group takes no action");
        }

        // (q1,m1)(q2,m2) = (q1 q2, m1 alpha(q2) + m2): w^q = w^alpha(q).
        table_.resize(n_ * n_);
        for (std::size_t a = 0; a < n_; ++a) {
            const std::size_t qa = a / p, ma = a % p;
            for (std::size_t b = 0; b < n_; ++b) {
                const std::size_t qb = b / p, mb = b % p;
                table_[a * n_ + b] = static_cast<ElemId>(qtab[qa * 27 + qb] * p + (ma * alpha_[qb] + mb) % p);
            }
        }
    }

    void build_z13() {
        // Element (v, t) stands for w^t v; (w^t1 v1)(w^t2 v2) = w^(t1+t2) (v1 W^t2 + v2).
        using Mat = std::array<std::array<int, 3>, 3>;
        auto matmul = [](const Mat& a, const Mat& b) {
            Mat c{};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    int s = 0;
                    for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
                    c[i][j] = s % 3;
                }
            return c;
        };
        std::array<Mat, 14> powers{};
        powers[0] = Mat{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
        for (int t = 1; t <= 13; ++t) powers[t] = matmul(powers[t - 1], kMatrixW);
        if (powers[13] != powers[0] || powers[1] == powers[0])
            throw Error(ErrorCode::InvalidDescriptor, "W does not have order 13");

        // vw[t][v] = v W^t
        std::vector<std::array<std::size_t, 27>> vw(13);
        for (int t = 0; t < 13; ++t)
            for (std::size_t vi = 0; vi < 27; ++vi) {
                const auto v = qcoords(vi);
                std::array<int, 3> out{};
                for (int j = 0; j < 3; ++j) {
                    int s = 0;
                    for (int k = 0; k < 3; ++k) s += v[k] * powers[t][k][j];
                    out[j] = s % 3;
                }
                vw[t][vi] = qindex(out);
            }

        table_.resize(n_ * n_);
        for (std::size_t a = 0; a < n_; ++a) {
            const std::size_t va = a / 13, ta = a % 13;
            for (std::size_t b = 0; b < n_; ++b) {
                const std::size_t vb = b / 13, tb = b % 13;
                const auto moved = qcoords(vw[tb][va]);
                const auto sum = qmul_coords(moved, qcoords(vb));
                table_[a * n_ + b] = static_cast<ElemId>(qindex(sum) * 13 + (ta + tb) % 13);
            }
        }
        alpha_.assign(27, 1);
    }

    void finish() {
        inverse_.resize(n_);
        order_.resize(n_);
        for (ElemId a = 0; a < n_; ++a) {
            int k = 1;
            ElemId acc = a, prev = identity();
            while (acc != identity()) {
                prev = acc;
                acc = mul(acc, a);
                ++k;
            }
            order_[a] = k;
            inverse_[a] = k == 1 ? identity() : prev;
        }
    }

    GroupDescriptor desc_;
    std::array<int, 3> qmod_{};
    int fiber_ = 1;
    std::size_t n_ = 0;
    std::vector<ElemId> table_;
    std::vector<ElemId> inverse_;
    std::vector<int> order_;
    std::vector<int> alpha_;
};

}  // namespace hamcayley
