#include "starcalc/sw.hpp"

#include <algorithm>
#include <cctype>

#include "starcalc/errors.hpp"

namespace starcalc {

ClassExpr::ClassExpr(const std::map<std::string, long>& terms) {
    for (const auto& [name, coeff] : terms) {
        if (coeff != 0) terms_.emplace(name, coeff);
    }
}

ClassExpr ClassExpr::generator(std::string_view name, long coeff) {
    ClassExpr c;
    if (coeff != 0) c.terms_.emplace(std::string(name), coeff);
    return c;
}

ClassExpr ClassExpr::parse(std::string_view text) {
    const std::string original(text);
    auto fail = [&original](const std::string& why) -> ClassExpr {
        throw BadParameter("malformed class expression '" + original + "': " + why);
    };
    auto is_space = [](char ch) { return std::isspace(static_cast<unsigned char>(ch)) != 0; };
    auto is_digit = [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; };
    auto is_ident_start = [](char ch) { return std::isalpha(static_cast<unsigned char>(ch)) != 0; };
    auto is_ident = [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) != 0 || ch == '_';
    };

    ClassExpr result;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && is_space(text[i])) ++i;
    };
    skip_ws();
    if (i == text.size()) return fail("empty");

    bool first = true;
    while (i < text.size()) {
        long sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        } else if (!first) {
            return fail("expected '+' or '-'");
        }
        first = false;

        long coeff = 1;
        bool has_digits = false;
        if (i < text.size() && is_digit(text[i])) {
            coeff = 0;
            while (i < text.size() && is_digit(text[i])) {
                coeff = coeff * 10 + (text[i] - '0');
                ++i;
            }
            has_digits = true;
        }
        skip_ws();
        if (i < text.size() && text[i] == '*') {
            ++i;
            skip_ws();
        }

        if (i < text.size() && is_ident_start(text[i])) {
            const std::size_t start = i;
            while (i < text.size() && is_ident(text[i])) ++i;
            result += generator(text.substr(start, i - start), sign * coeff);
        } else if (has_digits && coeff == 0) {
            // literal zero term
        } else {
            return fail("expected a generator name");
        }
        skip_ws();
    }
    return result;
}

long ClassExpr::coefficient(std::string_view name) const {
    const auto it = terms_.find(name);
    return it == terms_.end() ? 0 : it->second;
}

ClassExpr ClassExpr::operator-() const {
    ClassExpr neg = *this;
    for (auto& [name, coeff] : neg.terms_) coeff = -coeff;
    return neg;
}

ClassExpr& ClassExpr::operator+=(const ClassExpr& rhs) {
    for (const auto& [name, coeff] : rhs.terms_) {
        const long sum = coefficient(name) + coeff;
        if (sum == 0) {
            terms_.erase(name);
        } else {
            terms_.insert_or_assign(name, sum);
        }
    }
    return *this;
}

std::string ClassExpr::to_string() const {
    if (terms_.empty()) return "0";
    // Fiber-like lowercase generators first ("3f+E1"), then the rest.
    std::vector<std::pair<std::string, long>> ordered(terms_.begin(), terms_.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        const bool la = std::islower(static_cast<unsigned char>(a.first[0])) != 0;
        const bool lb = std::islower(static_cast<unsigned char>(b.first[0])) != 0;
        return la && !lb;
    });
    std::string out;
    for (const auto& [name, coeff] : ordered) {
        if (coeff < 0) {
            out += '-';
        } else if (!out.empty()) {
            out += '+';
        }
        const long mag = coeff < 0 ? -coeff : coeff;
        if (mag != 1) out += std::to_string(mag);
        out += name;
    }
    return out;
}

AmbientPairing AmbientPairing::elliptic(const std::vector<std::string>& exceptionals, std::string_view fiber) {
    AmbientPairing p;
    p.declare(fiber, 0);
    for (const auto& e : exceptionals) p.declare(e, -1);
    return p;
}

void AmbientPairing::declare(std::string_view name, long square) {
    squares_.insert_or_assign(std::string(name), square);
}

void AmbientPairing::declare_cross(std::string_view a, std::string_view b, long value) {
    if (a == b) {
        declare(a, value);
        return;
    }
    auto key = a < b ? std::pair{std::string(a), std::string(b)} : std::pair{std::string(b), std::string(a)};
    cross_.insert_or_assign(std::move(key), value);
}

bool AmbientPairing::declares(std::string_view name) const {
    return squares_.find(name) != squares_.end();
}

long AmbientPairing::generator_pair(std::string_view a, std::string_view b) const {
    for (auto name : {a, b}) {
        if (!declares(name)) {
            throw UnknownGenerator("generator '" + std::string(name) + "' has no declared pairing");
        }
    }
    if (a == b) return squares_.find(a)->second;
    const auto key = a < b ? std::pair{std::string(a), std::string(b)} : std::pair{std::string(b), std::string(a)};
    const auto it = cross_.find(key);
    return it == cross_.end() ? 0 : it->second;
}

long AmbientPairing::pair(const ClassExpr& a, const ClassExpr& b) const {
    long total = 0;
    for (const auto& [ga, ca] : a.terms()) {
        for (const auto& [gb, cb] : b.terms()) total += ca * cb * generator_pair(ga, gb);
    }
    return total;
}

BasicClassSet blowup_basic_classes(const BasicClassSet& classes, std::string_view new_generator) {
    for (const auto& k : classes) {
        if (k.coefficient(new_generator) != 0) {
            throw GeneratorClash("generator '" + std::string(new_generator) + "' already occurs in " +
                                 k.to_string());
        }
    }
    const ClassExpr e = ClassExpr::generator(new_generator);
    BasicClassSet out;
    for (const auto& k : classes) {
        out.insert(k + e);
        out.insert(k - e);
    }
    return out;
}

BasicClassSet en_basic_classes(int n, std::string_view fiber) {
    if (n < 2) {
        throw BadParameter("E(n) basic classes need n >= 2, got " + std::to_string(n));
    }
    BasicClassSet out;
    if (n == 2) return out;
    for (long r = -(n - 2); r <= n - 2; r += 2) out.insert(ClassExpr::generator(fiber, r));
    return out;
}

PairingTable::PairingTable(std::size_t vertex_count, std::map<std::string, IntVector> rows)
    : vertex_count_(vertex_count), rows_(std::move(rows)) {
    for (const auto& [name, row] : rows_) {
        if (row.size() != vertex_count_) {
            throw DimensionMismatch("pairing vector for '" + name + "' has " + std::to_string(row.size()) +
                                    " entries, plumbing has " + std::to_string(vertex_count_) + " vertices");
        }
    }
}

IntVector PairingTable::pairing_vector(const ClassExpr& c) const {
    IntVector v(vertex_count_, 0);
    for (const auto& [name, coeff] : c.terms()) {
        const auto it = rows_.find(name);
        if (it == rows_.end()) {
            throw MissingPairing("no plumbing pairings for generator '" + name + "'");
        }
        for (std::size_t i = 0; i < vertex_count_; ++i) v[i] += coeff * it->second[i];
    }
    return v;
}

PairingTable PairingTable::permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != vertex_count_) {
        throw DimensionMismatch("permutation length does not match vertex count");
    }
    std::map<std::string, IntVector> rows;
    for (const auto& [name, row] : rows_) {
        IntVector p(vertex_count_);
        for (std::size_t i = 0; i < vertex_count_; ++i) p[i] = row[perm[i]];
        rows.emplace(name, std::move(p));
    }
    return PairingTable(vertex_count_, std::move(rows));
}

Rational restrict_square(const ClassExpr& c, const PlumbingGraph& g, const PairingTable& table) {
    if (table.vertex_count() != g.vertex_count()) {
        throw DimensionMismatch("pairing table covers " + std::to_string(table.vertex_count()) +
                                " vertices, plumbing has " + std::to_string(g.vertex_count()));
    }
    const IntVector v = table.pairing_vector(c);
    if (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; })) return Rational(0);
    // The restriction in the dual basis has coefficients v; its square uses
    // the inverse intersection form.
    return evaluate_form(invert(intersection_matrix(g)), v);
}

std::string_view to_string(ObstructionStatus s) {
    switch (s) {
        case ObstructionStatus::obstructed: return "obstructed";
        case ObstructionStatus::survives_unconstrained: return "survives_unconstrained";
        case ObstructionStatus::survives_taubes_top: return "survives_taubes_top";
    }
    return "unknown";
}

ObstructionStatus parse_obstruction_status(std::string_view text) {
    for (auto s : {ObstructionStatus::obstructed, ObstructionStatus::survives_unconstrained,
                   ObstructionStatus::survives_taubes_top}) {
        if (to_string(s) == text) return s;
    }
    throw BadParameter("unknown obstruction status '" + std::string(text) + "'");
}

ObstructionVerdict extension_verdict(const ClassExpr& c, const AmbientPairing& ambient,
                                     const InvariantLedger& after_surgery, const PlumbingGraph& g,
                                     const PairingTable& table, const FillingProfile& filling,
                                     const std::optional<ClassExpr>& canonical) {
    ObstructionVerdict v;
    v.cls = c;

    if (filling.form) {
        if (!is_negative_definite(*filling.form)) {
            throw IndefiniteFilling("filling '" + filling.name +
                                    "' has a form that is not negative definite");
        }
        v.filling_form_verified = true;
    } else if (!filling.negative_definite_asserted) {
        throw IndefiniteFilling("filling '" + filling.name +
                                "' has no form and is not asserted negative definite");
    }

    v.class_square = ambient.square(c);
    v.restriction_square = restrict_square(c, g, table);
    v.d_upper = (Rational(v.class_square) - v.restriction_square -
                 Rational(2 * after_surgery.euler + 3 * after_surgery.signature)) /
                Rational(4);

    if (v.d_upper.sign() < 0) {
        v.status = ObstructionStatus::obstructed;
    } else if (canonical && (c == *canonical || c == -*canonical)) {
        v.status = ObstructionStatus::survives_taubes_top;
    } else {
        v.status = ObstructionStatus::survives_unconstrained;
    }
    return v;
}

std::string_view to_string(MinimalityOutcome o) {
    switch (o) {
        case MinimalityOutcome::minimal: return "minimal";
        case MinimalityOutcome::inconsistent: return "inconsistent";
        case MinimalityOutcome::inconclusive: return "inconclusive";
    }
    return "unknown";
}

MinimalityOutcome parse_minimality_outcome(std::string_view text) {
    for (auto o : {MinimalityOutcome::minimal, MinimalityOutcome::inconsistent, MinimalityOutcome::inconclusive}) {
        if (to_string(o) == text) return o;
    }
    throw BadParameter("unknown minimality outcome '" + std::string(text) + "'");
}

MinimalityReport minimality_report(const BasicClassSet& candidates,
                                   const std::vector<ObstructionVerdict>& verdicts) {
    MinimalityReport report;
    for (const auto& c : candidates) {
        const auto it = std::find_if(verdicts.begin(), verdicts.end(),
                                     [&c](const ObstructionVerdict& v) { return v.cls == c; });
        if (it == verdicts.end() || it->status != ObstructionStatus::obstructed) {
            report.survivors.push_back(c);
        }
    }

    const auto& s = report.survivors;
    const bool single_pair = (s.size() == 1 && s[0].is_zero()) || (s.size() == 2 && s[0] == -s[1]);
    if (s.empty()) {
        report.outcome = MinimalityOutcome::inconsistent;
        report.summary = "every candidate is obstructed, contradicting the existence of a basic class pair";
    } else if (single_pair) {
        report.outcome = MinimalityOutcome::minimal;
        const std::string k = s.size() == 1 ? s[0].to_string() : "+-(" + s.back().to_string() + ")";
        report.summary = "single basic class pair " + k + "; minimal by the blow-up formula";
    } else {
        report.outcome = MinimalityOutcome::inconclusive;
        report.summary = std::to_string(s.size()) + " candidate classes survive";
    }
    return report;
}

}  // namespace starcalc
