#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "starcalc/ratlin/matrix.hpp"

namespace fixtures {

using Rows = std::vector<std::vector<long>>;
__extension__ using i128 = __int128;

// Intersection forms as printed, and their inverses as printed (integer
// tables with a common scalar factor).
inline const Rows kQ = {
    {-5, 1, 1, 1, 0, 1, 0},
    {1, -3, 0, 0, 0, 0, 0},
    {1, 0, -2, 0, 0, 0, 0},
    {1, 0, 0, -2, 1, 0, 0},
    {0, 0, 0, 1, -3, 0, 0},
    {1, 0, 0, 0, 0, -2, 1},
    {0, 0, 0, 0, 0, 1, -2},
};
inline const Rows kQInverseTable = {
    {90, 30, 45, 54, 18, 60, 30},
    {30, 97, 15, 18, 6, 20, 10},
    {45, 15, 153, 27, 9, 30, 15},
    {54, 18, 27, 189, 63, 36, 18},
    {18, 6, 9, 63, 108, 12, 6},
    {60, 20, 30, 36, 12, 214, 107},
    {30, 10, 15, 18, 6, 107, 184},
};
constexpr long kQInverseScale = -261;  // inverse = table / scale

inline const Rows kRForm = {{-10, -23}, {-23, -79}};
inline const Rows kRInverseTable = {{-79, 23}, {23, -10}};
constexpr long kRInverseScale = 261;

inline const Rows kK = {
    {-6, 1, 1, 1, 1},
    {1, -2, 0, 0, 0},
    {1, 0, -2, 0, 0},
    {1, 0, 0, -2, 0},
    {1, 0, 0, 0, -2},
};
inline const Rows kKInverseTable = {
    {4, 2, 2, 2, 2},
    {2, 9, 1, 1, 1},
    {2, 1, 9, 1, 1},
    {2, 1, 1, 9, 1},
    {2, 1, 1, 1, 9},
};
constexpr long kKInverseScale = -16;

inline const Rows kS2 = {
    {-5, 1, 1, 1, 1},
    {1, -2, 0, 0, 0},
    {1, 0, -2, 0, 0},
    {1, 0, 0, -2, 0},
    {1, 0, 0, 0, -2},
};
inline const Rows kS2InverseTable = {
    {4, 2, 2, 2, 2},
    {2, 7, 1, 1, 1},
    {2, 1, 7, 1, 1},
    {2, 1, 1, 7, 1},
    {2, 1, 1, 1, 7},
};
constexpr long kS2InverseScale = -12;

// u0 = -5; arms (-2,-2,-3), (-2,-3), (-2,-3), (-3), written out by hand.
inline const Rows kU = {
    {-5, 1, 0, 0, 1, 0, 1, 0, 1},
    {1, -2, 1, 0, 0, 0, 0, 0, 0},
    {0, 1, -2, 1, 0, 0, 0, 0, 0},
    {0, 0, 1, -3, 0, 0, 0, 0, 0},
    {1, 0, 0, 0, -2, 1, 0, 0, 0},
    {0, 0, 0, 0, 1, -3, 0, 0, 0},
    {1, 0, 0, 0, 0, 0, -2, 1, 0},
    {0, 0, 0, 0, 0, 0, 1, -3, 0},
    {1, 0, 0, 0, 0, 0, 0, 0, -3},
};

inline starcalc::RationalMatrix scaled_table(const Rows& table, long scale) {
    return starcalc::RationalMatrix::from_rows(table).scaled(starcalc::Rational(1, scale));
}

// Determinant by cofactor expansion along the first row, in 128-bit integers.
inline i128 laplace_det(const Rows& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    i128 total = 0;
    for (std::size_t col = 0; col < n; ++col) {
        if (m[0][col] == 0) continue;
        Rows minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<long> row;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != col) row.push_back(m[i][j]);
            }
            minor.push_back(row);
        }
        const i128 term = static_cast<i128>(m[0][col]) * laplace_det(minor);
        total += (col % 2 == 0) ? term : -term;
    }
    return total;
}

// Sylvester's criterion: negative definite iff (-1)^k D_k > 0 for every
// leading principal minor D_k.
inline bool sylvester_negative_definite(const Rows& m) {
    for (std::size_t k = 1; k <= m.size(); ++k) {
        Rows lead;
        for (std::size_t i = 0; i < k; ++i) lead.emplace_back(m[i].begin(), m[i].begin() + static_cast<long>(k));
        const i128 d = laplace_det(lead);
        if ((k % 2 == 1 ? -d : d) <= 0) return false;
    }
    return true;
}

// x^T T x for an integer table, in exact integers (no library code).
inline i128 table_form(const Rows& t, const std::vector<long>& x) {
    i128 s = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t j = 0; j < t.size(); ++j) s += static_cast<i128>(x[i]) * t[i][j] * x[j];
    }
    return s;
}

inline Rows random_symmetric(std::mt19937& rng, std::size_t n, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    Rows m(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) m[i][j] = m[j][i] = dist(rng);
    }
    return m;
}

// Product of random elementary integer operations; determinant +-1.
inline starcalc::RationalMatrix random_unimodular(std::mt19937& rng, std::size_t n, int moves = 12) {
    using starcalc::Rational;
    auto p = starcalc::RationalMatrix::identity(n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<long> coeff(-2, 2);
    std::uniform_int_distribution<int> kind(0, 2);
    for (int m = 0; m < moves; ++m) {
        const std::size_t i = pick(rng);
        const std::size_t j = pick(rng);
        auto e = starcalc::RationalMatrix::identity(n);
        switch (kind(rng)) {
            case 0:
                if (i != j) e(i, j) = Rational(coeff(rng));
                break;
            case 1:
                if (i != j) {
                    e(i, i) = 0;
                    e(j, j) = 0;
                    e(i, j) = 1;
                    e(j, i) = 1;
                }
                break;
            default:
                e(i, i) = -1;
                break;
        }
        p = p * e;
    }
    return p;
}

inline std::vector<long> random_nonzero_vector(std::mt19937& rng, std::size_t n, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<long> v(n);
    do {
        for (auto& x : v) x = dist(rng);
    } while (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; }));
    return v;
}

}  // namespace fixtures
