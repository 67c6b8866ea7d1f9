#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "starcalc/plumbing.hpp"

namespace starcalc {

enum class OperationKind { elliptic_surface, explicit_base, fiber_sum, blow_up, blow_down, star_surgery };

struct AppliedOperation {
    OperationKind kind;
    std::string detail;  // "E(5)", "k=1", "(Q,R)", ...

    friend bool operator==(const AppliedOperation&, const AppliedOperation&) = default;
};

/*
 * Invariants of a closed oriented 4-manifold. Fundamental group and symplectic
 * structure are asserted flags, never computed.
 *
 * For a simply connected ledger, validate() checks euler >= 2,
 * euler + signature = 0 mod 4 and b2+ , b2- >= 0.
 */
struct InvariantLedger {
    std::string name;
    long euler = 0;
    long signature = 0;
    bool simply_connected = false;
    bool symplectic = false;
    std::vector<AppliedOperation> provenance;

    long b2() const { return euler - 2; }
    long b2_plus() const { return (b2() + signature) / 2; }
    long b2_minus() const { return (b2() - signature) / 2; }

    /// True when every applied operation is an elliptic base or fiber sum.
    bool is_elliptic() const;

    void validate() const;

    friend bool operator==(const InvariantLedger&, const InvariantLedger&) = default;
};

enum class GeographyPosition { on_noether, strictly_between, on_half_noether, below_half_noether, above_noether };

std::string_view to_string(GeographyPosition p);
GeographyPosition parse_geography_position(std::string_view text);

struct GeographyVerdict {
    long chi_h = 0;
    long c1sq = 0;
    GeographyPosition position = GeographyPosition::on_noether;

    friend bool operator==(const GeographyVerdict&, const GeographyVerdict&) = default;
};

/// E(n): e = 12n, sigma = -8n, simply connected, symplectic. BadParameter if n < 1.
InvariantLedger elliptic_surface(int n);

/// Connected sum with k copies of -CP^2. BadParameter if k < 1.
InvariantLedger blow_up(const InvariantLedger& m, int k = 1);

/// Inverse of blow_up at the ledger level. BadParameter if k < 1.
InvariantLedger blow_down(const InvariantLedger& m, int k = 1);

/// E(k) -> E(k+1). NotElliptic unless the provenance is purely elliptic.
InvariantLedger fiber_sum_E1(const InvariantLedger& m);

/// Cut out the rule's plumbing and glue in its filling.
/// `simply_connected_after` records the recipe's assertion about pi1.
InvariantLedger star_surgery(const InvariantLedger& m, const StarSurgeryRule& rule,
                             bool simply_connected_after);

/// chi_h = (e + sigma) / 4, c1^2 = 2e + 3sigma, placed against the Noether line
/// c1^2 = 2chi_h - 6 and the half Noether line c1^2 = chi_h - 3.
/// Throws NonIntegralChiH when e + sigma is not divisible by 4.
GeographyVerdict geography(const InvariantLedger& m);

}  // namespace starcalc
