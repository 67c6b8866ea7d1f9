#include "starcalc/ledger.hpp"

#include <algorithm>

#include "starcalc/errors.hpp"

namespace starcalc {

bool InvariantLedger::is_elliptic() const {
    return !provenance.empty() &&
           std::all_of(provenance.begin(), provenance.end(), [](const AppliedOperation& op) {
               return op.kind == OperationKind::elliptic_surface || op.kind == OperationKind::fiber_sum;
           });
}

void InvariantLedger::validate() const {
    if (!simply_connected) return;
    if (euler < 2) {
        throw InvalidLedger(name + ": simply connected closed manifold needs e >= 2, got " +
                            std::to_string(euler));
    }
    if ((euler + signature) % 4 != 0) {
        throw InvalidLedger(name + ": e + sigma = " + std::to_string(euler + signature) +
                            " is not divisible by 4");
    }
    if ((b2() + signature) % 2 != 0 || b2_plus() < 0 || b2_minus() < 0) {
        throw InvalidLedger(name + ": inconsistent b2 = " + std::to_string(b2()) +
                            " and sigma = " + std::to_string(signature));
    }
}

std::string_view to_string(GeographyPosition p) {
    switch (p) {
        case GeographyPosition::on_noether: return "on_noether";
        case GeographyPosition::strictly_between: return "strictly_between";
        case GeographyPosition::on_half_noether: return "on_half_noether";
        case GeographyPosition::below_half_noether: return "below_half_noether";
        case GeographyPosition::above_noether: return "above_noether";
    }
    return "unknown";
}

GeographyPosition parse_geography_position(std::string_view text) {
    for (auto p : {GeographyPosition::on_noether, GeographyPosition::strictly_between,
                   GeographyPosition::on_half_noether, GeographyPosition::below_half_noether,
                   GeographyPosition::above_noether}) {
        if (to_string(p) == text) return p;
    }
    throw BadParameter("unknown geography position '" + std::string(text) + "'");
}

InvariantLedger elliptic_surface(int n) {
    if (n < 1) {
        throw BadParameter("E(n) needs n >= 1, got " + std::to_string(n));
    }
    InvariantLedger m;
    m.name = "E(" + std::to_string(n) + ")";
    m.euler = 12L * n;
    m.signature = -8L * n;
    m.simply_connected = true;
    m.symplectic = true;
    m.provenance.push_back({OperationKind::elliptic_surface, m.name});
    return m;
}

InvariantLedger blow_up(const InvariantLedger& m, int k) {
    if (k < 1) {
        throw BadParameter("blow-up count must be >= 1, got " + std::to_string(k));
    }
    InvariantLedger out = m;
    out.euler += k;
    out.signature -= k;
    out.provenance.push_back({OperationKind::blow_up, "k=" + std::to_string(k)});
    return out;
}

InvariantLedger blow_down(const InvariantLedger& m, int k) {
    if (k < 1) {
        throw BadParameter("blow-down count must be >= 1, got " + std::to_string(k));
    }
    InvariantLedger out = m;
    out.euler -= k;
    out.signature += k;
    out.provenance.push_back({OperationKind::blow_down, "k=" + std::to_string(k)});
    return out;
}

InvariantLedger fiber_sum_E1(const InvariantLedger& m) {
    if (!m.is_elliptic()) {
        throw NotElliptic(m.name + " is not an elliptic surface E(k); cannot fiber sum with E(1)");
    }
    InvariantLedger out = m;
    out.euler += 12;
    out.signature -= 8;
    out.provenance.push_back({OperationKind::fiber_sum, "#_f E(1)"});
    return out;
}

InvariantLedger star_surgery(const InvariantLedger& m, const StarSurgeryRule& rule,
                             bool simply_connected_after) {
    InvariantLedger out = m;
    out.euler += rule.filling.euler - euler_characteristic(rule.plumbing);
    out.signature += rule.filling.signature - signature(rule.plumbing);
    out.simply_connected = simply_connected_after;
    out.provenance.push_back({OperationKind::star_surgery, rule.name});
    return out;
}

GeographyVerdict geography(const InvariantLedger& m) {
    if ((m.euler + m.signature) % 4 != 0) {
        throw NonIntegralChiH(m.name + ": e + sigma = " + std::to_string(m.euler + m.signature) +
                              " is not divisible by 4");
    }
    GeographyVerdict v;
    v.chi_h = (m.euler + m.signature) / 4;
    v.c1sq = 2 * m.euler + 3 * m.signature;

    const long noether = 2 * v.chi_h - 6;
    const long half_noether = v.chi_h - 3;
    if (v.c1sq == noether) {
        v.position = GeographyPosition::on_noether;
    } else if (v.c1sq > noether) {
        v.position = GeographyPosition::above_noether;
    } else if (v.c1sq == half_noether) {
        v.position = GeographyPosition::on_half_noether;
    } else if (v.c1sq > half_noether) {
        v.position = GeographyPosition::strictly_between;
    } else {
        v.position = GeographyPosition::below_half_noether;
    }
    return v;
}

}  // namespace starcalc
