#include "starcalc/ratlin/matrix.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "starcalc/errors.hpp"

namespace starcalc {

namespace {

using IntegerMatrix = std::vector<std::vector<BigInt>>;

// Clears denominators: returns (A, d) with A integral and m = A / d.
std::pair<IntegerMatrix, BigInt> clear_denominators(const RationalMatrix& m) {
    const std::size_t n = m.dimension();
    BigInt d = 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), m(i, j).denominator().get_mpz_t());
        }
    }
    IntegerMatrix a(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = m(i, j).numerator() * (d / m(i, j).denominator());
        }
    }
    return {std::move(a), d};
}

// Bareiss guarantees the division is exact; anything else is a bug here.
BigInt exact_div(const BigInt& num, const BigInt& den) {
    BigInt q;
    BigInt r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0) {
        throw std::logic_error("Bareiss step produced a non-exact quotient");
    }
    return q;
}

void check_square_symmetric(const RationalMatrix& m) {
    if (!m.is_symmetric()) {
        throw NotSymmetric("matrix is not symmetric");
    }
}

}  // namespace

RationalMatrix::RationalMatrix(std::size_t n) : n_(n), entries_(n * n) {
    if (n == 0) {
        throw DimensionMismatch("matrix dimension must be at least 1");
    }
}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : RationalMatrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != n_) {
            throw DimensionMismatch("matrix rows must all have length " + std::to_string(n_));
        }
        std::size_t j = 0;
        for (long v : row) (*this)(i, j++) = Rational(v);
        ++i;
    }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::diagonal(std::span<const long> entries) {
    RationalMatrix m(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = Rational(entries[i]);
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    RationalMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) {
            throw DimensionMismatch("matrix rows must all have length " +
                                    std::to_string(rows.size()));
        }
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = Rational(rows[i][j]);
    }
    return m;
}

bool RationalMatrix::is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            if ((*this)(i, j) != (*this)(j, i)) return false;
        }
    }
    return true;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
}

RationalMatrix RationalMatrix::scaled(const Rational& factor) const {
    RationalMatrix s = *this;
    for (auto& e : s.entries_) e *= factor;
    return s;
}

RationalMatrix RationalMatrix::permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != n_) {
        throw DimensionMismatch("permutation length does not match dimension");
    }
    RationalMatrix p(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) p(i, j) = (*this)(perm[i], perm[j]);
    }
    return p;
}

RationalMatrix operator*(const RationalMatrix& lhs, const RationalMatrix& rhs) {
    if (lhs.n_ != rhs.n_) {
        throw DimensionMismatch("matrix product of mismatched dimensions");
    }
    const std::size_t n = lhs.n_;
    RationalMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Rational& a = lhs(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

std::string RationalMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < n_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < n_; ++j) os << (j ? " " : "") << (*this)(i, j);
    }
    os << ']';
    return os.str();
}

RationalMatrix invert(const RationalMatrix& m) {
    const std::size_t n = m.dimension();
    auto [a, d] = clear_denominators(m);

    // Augment with the identity: [A | I].
    for (std::size_t i = 0; i < n; ++i) {
        a[i].resize(2 * n);
        a[i][n + i] = 1;
    }

    // Fraction-free Gauss-Jordan: every intermediate entry is a minor of [A | I],
    // so the division by the previous pivot is exact.
    BigInt previous = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) {
                throw SingularMatrix("matrix is singular (determinant 0)");
            }
            std::swap(a[k], a[r]);
        }
        const BigInt pivot = a[k][k];
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const BigInt factor = a[i][k];
            for (std::size_t j = 0; j < 2 * n; ++j) {
                if (j == k) continue;
                a[i][j] = exact_div(pivot * a[i][j] - factor * a[k][j], previous);
            }
            a[i][k] = 0;
        }
        previous = pivot;
    }

    // Now the left block is det(A) * I, the right block det(A) * A^-1,
    // and m^-1 = d * A^-1.
    RationalMatrix inv(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            inv(i, j) = Rational(a[i][n + j] * d, a[i][i]);
        }
    }
    return inv;
}

Rational determinant(const RationalMatrix& m) {
    const std::size_t n = m.dimension();
    auto [a, d] = clear_denominators(m);

    int sign = 1;
    BigInt previous = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return Rational(0);
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = exact_div(a[k][k] * a[i][j] - a[i][k] * a[k][j], previous);
            }
            a[i][k] = 0;
        }
        previous = a[k][k];
    }

    BigInt dn = 1;
    for (std::size_t i = 0; i < n; ++i) dn *= d;
    return Rational(a[n - 1][n - 1] * sign, dn);
}

Inertia inertia(const RationalMatrix& m) {
    check_square_symmetric(m);
    const std::size_t n = m.dimension();
    RationalMatrix s = m;

    auto swap_index = [&s, n](std::size_t x, std::size_t y) {
        if (x == y) return;
        for (std::size_t t = 0; t < n; ++t) std::swap(s(x, t), s(y, t));
        for (std::size_t t = 0; t < n; ++t) std::swap(s(t, x), s(t, y));
    };

    Inertia result;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && s(p, p).is_zero()) ++p;

        if (p == n) {
            // All remaining diagonal entries vanish. If an off-diagonal entry
            // s(i, j) is nonzero, replacing basis vector b_i by b_i + b_j
            // makes the new diagonal 2 s(i, j) != 0.
            std::size_t ri = n;
            std::size_t rj = n;
            for (std::size_t i = k; i < n && ri == n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (!s(i, j).is_zero()) {
                        ri = i;
                        rj = j;
                        break;
                    }
                }
            }
            if (ri == n) {
                result.n_zero += n - k;
                break;
            }
            for (std::size_t t = 0; t < n; ++t) s(ri, t) += s(rj, t);
            for (std::size_t t = 0; t < n; ++t) s(t, ri) += s(t, rj);
            p = ri;
        }

        swap_index(k, p);
        const Rational pivot = s(k, k);
        (pivot.sign() > 0 ? result.n_plus : result.n_minus) += 1;

        for (std::size_t i = k + 1; i < n; ++i) {
            if (s(i, k).is_zero()) continue;
            const Rational factor = s(i, k) / pivot;
            for (std::size_t j = k + 1; j < n; ++j) s(i, j) -= factor * s(k, j);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            s(i, k) = 0;
            s(k, i) = 0;
        }
    }
    return result;
}

Rational bilinear_form(const RationalMatrix& m, std::span<const long> u, std::span<const long> v) {
    const std::size_t n = m.dimension();
    if (u.size() != n || v.size() != n) {
        throw DimensionMismatch("vector length " + std::to_string(u.size() == n ? v.size() : u.size()) +
                                " does not match form dimension " + std::to_string(n));
    }
    Rational total;
    for (std::size_t i = 0; i < n; ++i) {
        if (u[i] == 0) continue;
        Rational row;
        for (std::size_t j = 0; j < n; ++j) {
            if (v[j] != 0) row += m(i, j) * Rational(v[j]);
        }
        total += Rational(u[i]) * row;
    }
    return total;
}

Rational evaluate_form(const RationalMatrix& m, std::span<const long> c) {
    return bilinear_form(m, c, c);
}

bool is_negative_definite(const RationalMatrix& m) {
    const Inertia in = inertia(m);
    return in.n_minus == m.dimension();
}

}  // namespace starcalc
