#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "starcalc/ratlin/rational.hpp"

namespace starcalc {

using IntVector = std::vector<long>;

/// Dense square matrix of exact rationals. Dimension is at least 1.
class RationalMatrix {
public:
    explicit RationalMatrix(std::size_t n);
    RationalMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix diagonal(std::span<const long> entries);
    static RationalMatrix from_rows(const std::vector<std::vector<long>>& rows);

    std::size_t dimension() const noexcept { return n_; }

    Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    bool is_symmetric() const;
    RationalMatrix transpose() const;
    RationalMatrix scaled(const Rational& factor) const;

    /// Conjugate by a permutation: result(i, j) = this(perm[i], perm[j]).
    RationalMatrix permuted(std::span<const std::size_t> perm) const;

    friend RationalMatrix operator*(const RationalMatrix& lhs, const RationalMatrix& rhs);
    friend bool operator==(const RationalMatrix& lhs, const RationalMatrix& rhs) = default;

    std::string to_string() const;

private:
    std::size_t n_;
    std::vector<Rational> entries_;
};

struct Inertia {
    std::size_t n_plus = 0;
    std::size_t n_zero = 0;
    std::size_t n_minus = 0;

    long signature() const { return static_cast<long>(n_plus) - static_cast<long>(n_minus); }
    std::size_t dimension() const { return n_plus + n_zero + n_minus; }

    friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Exact inverse via fraction-free (Bareiss) Gauss-Jordan elimination on the
/// denominator-cleared integer matrix. Throws SingularMatrix when det = 0.
RationalMatrix invert(const RationalMatrix& m);

/// Exact determinant, fraction-free.
Rational determinant(const RationalMatrix& m);

/// Sylvester inertia by symmetric congruence diagonalization. Throws NotSymmetric.
Inertia inertia(const RationalMatrix& m);

/// c^T M c. Throws DimensionMismatch when |c| != dim M.
Rational evaluate_form(const RationalMatrix& m, std::span<const long> c);

/// u^T M v, same size rules as evaluate_form.
Rational bilinear_form(const RationalMatrix& m, std::span<const long> u, std::span<const long> v);

bool is_negative_definite(const RationalMatrix& m);

}  // namespace starcalc
