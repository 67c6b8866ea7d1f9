#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "starcalc/ledger.hpp"
#include "starcalc/plumbing.hpp"
#include "starcalc/ratlin/matrix.hpp"

namespace starcalc {

/// Integer combination of named cohomology generators, e.g. 3f + E1.
/// Only nonzero coefficients are stored, so equality is structural.
class ClassExpr {
public:
    ClassExpr() = default;
    explicit ClassExpr(const std::map<std::string, long>& terms);

    static ClassExpr generator(std::string_view name, long coeff = 1);
    /// Parses "3f+E1", "-2f", "f - E1", "0". Throws BadParameter.
    static ClassExpr parse(std::string_view text);

    long coefficient(std::string_view name) const;
    const std::map<std::string, long, std::less<>>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    ClassExpr operator-() const;
    ClassExpr& operator+=(const ClassExpr& rhs);
    friend ClassExpr operator+(ClassExpr lhs, const ClassExpr& rhs) { return lhs += rhs; }
    friend ClassExpr operator-(ClassExpr lhs, const ClassExpr& rhs) { return lhs += -rhs; }

    friend bool operator==(const ClassExpr&, const ClassExpr&) = default;
    friend auto operator<=>(const ClassExpr& lhs, const ClassExpr& rhs) {
        return lhs.terms_ <=> rhs.terms_;
    }

    std::string to_string() const;

private:
    std::map<std::string, long, std::less<>> terms_;
};

/// Intersection pairing on the ambient generators. Undeclared cross terms are 0.
class AmbientPairing {
public:
    AmbientPairing() = default;

    /// f with f^2 = 0 and each listed exceptional class with E^2 = -1.
    static AmbientPairing elliptic(const std::vector<std::string>& exceptionals, std::string_view fiber = "f");

    void declare(std::string_view name, long square);
    void declare_cross(std::string_view a, std::string_view b, long value);
    bool declares(std::string_view name) const;
    const std::map<std::string, long, std::less<>>& squares() const noexcept { return squares_; }

    /// Throws UnknownGenerator for a generator without a declared square.
    long pair(const ClassExpr& a, const ClassExpr& b) const;
    long square(const ClassExpr& c) const { return pair(c, c); }

private:
    long generator_pair(std::string_view a, std::string_view b) const;

    std::map<std::string, long, std::less<>> squares_;
    std::map<std::pair<std::string, std::string>, long> cross_;
};

using BasicClassSet = std::set<ClassExpr>;

/// Blow-up formula: { K + E, K - E : K in classes }. GeneratorClash when E
/// already appears in some class.
BasicClassSet blowup_basic_classes(const BasicClassSet& classes, std::string_view new_generator);

/// Basic classes of E(n), n >= 2: r*f with r = n mod 2 and |r| <= n - 2,
/// i.e. the exponents of (t - 1/t)^(n-2). The zero class is included for even
/// n >= 4 and omitted for n = 2. BadParameter if n < 2.
BasicClassSet en_basic_classes(int n, std::string_view fiber = "f");

/// generator -> (generator . u_i) for the plumbing vertices u_0 .. u_{n-1}.
class PairingTable {
public:
    PairingTable(std::size_t vertex_count, std::map<std::string, IntVector> rows);

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    const std::map<std::string, IntVector>& rows() const noexcept { return rows_; }

    /// The pairing vector of c, linear in c. Throws MissingPairing.
    IntVector pairing_vector(const ClassExpr& c) const;

    /// Same table with the vertex order conjugated: new i = old perm[i].
    PairingTable permuted(std::span<const std::size_t> perm) const;

private:
    std::size_t vertex_count_;
    std::map<std::string, IntVector> rows_;
};

/// Square of the restriction of c to the plumbing, v^T [G]^-1 v.
Rational restrict_square(const ClassExpr& c, const PlumbingGraph& g, const PairingTable& table);

enum class ObstructionStatus { obstructed, survives_unconstrained, survives_taubes_top };

std::string_view to_string(ObstructionStatus s);
ObstructionStatus parse_obstruction_status(std::string_view text);

struct ObstructionVerdict {
    ClassExpr cls;
    long class_square = 0;
    Rational restriction_square;
    /// Upper bound on the moduli dimension of an extension to the surgered manifold.
    Rational d_upper;
    ObstructionStatus status = ObstructionStatus::survives_unconstrained;
    /// True when the filling's own form was checked negative definite
    /// (so its restriction square is strictly negative for nonzero classes).
    bool filling_form_verified = false;
};

/*
 * Dimension-count obstruction for c to extend across a star surgery.
 *
 * With the filling negative definite, (c~|_F)^2 <= 0 and
 *   d <= (c^2 - (c|_G)^2 - 2 e(X) - 3 sigma(X)) / 4 =: d_upper,
 * where X is the ledger after surgery. c is obstructed iff d_upper < 0.
 * Survivors equal to +-canonical are marked survives_taubes_top.
 *
 * Throws IndefiniteFilling when the filling form is present but not negative
 * definite, or when negative definiteness is neither asserted nor checkable.
 */
ObstructionVerdict extension_verdict(const ClassExpr& c, const AmbientPairing& ambient,
                                     const InvariantLedger& after_surgery, const PlumbingGraph& g,
                                     const PairingTable& table, const FillingProfile& filling,
                                     const std::optional<ClassExpr>& canonical = std::nullopt);

enum class MinimalityOutcome { minimal, inconsistent, inconclusive };

std::string_view to_string(MinimalityOutcome o);
MinimalityOutcome parse_minimality_outcome(std::string_view text);

struct MinimalityReport {
    MinimalityOutcome outcome = MinimalityOutcome::inconclusive;
    std::vector<ClassExpr> survivors;
    std::string summary;
};

/// Candidates without a verdict count as survivors.
MinimalityReport minimality_report(const BasicClassSet& candidates,
                                   const std::vector<ObstructionVerdict>& verdicts);

}  // namespace starcalc
