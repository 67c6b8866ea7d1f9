#include "starcalc/blowup.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "starcalc/errors.hpp"

namespace starcalc {

namespace {

void trim_trailing_zeros(std::vector<long>& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
}

}  // namespace

DivisorClass::DivisorClass(long h_coeff, std::vector<long> e_coeffs)
    : h_(h_coeff), e_(std::move(e_coeffs)) {
    trim_trailing_zeros(e_);
}

DivisorClass DivisorClass::line(long multiple) {
    return DivisorClass(multiple, {});
}

DivisorClass DivisorClass::exceptional(std::size_t index, long multiple) {
    if (index == 0) {
        throw BadParameter("exceptional classes are numbered from 1");
    }
    std::vector<long> e(index, 0);
    e[index - 1] = multiple;
    return DivisorClass(0, std::move(e));
}

DivisorClass DivisorClass::parse(std::string_view text) {
    const std::string original(text);
    auto fail = [&original](const std::string& why) -> DivisorClass {
        throw BadParameter("malformed divisor class '" + original + "': " + why);
    };

    DivisorClass result;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
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
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            coeff = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                coeff = coeff * 10 + (text[i] - '0');
                ++i;
                has_digits = true;
            }
        }
        skip_ws();

        if (i < text.size() && text[i] == 'h') {
            ++i;
            result.h_ += sign * coeff;
        } else if (i < text.size() && text[i] == 'e') {
            ++i;
            std::size_t index = 0;
            bool has_index = false;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                index = index * 10 + static_cast<std::size_t>(text[i] - '0');
                ++i;
                has_index = true;
            }
            if (!has_index || index == 0) return fail("exceptional index must be >= 1");
            result += exceptional(index, sign * coeff);
        } else if (has_digits && coeff == 0) {
            // a bare "0" term
        } else {
            return fail("expected 'h' or 'e<k>'");
        }
        skip_ws();
    }
    trim_trailing_zeros(result.e_);
    return result;
}

long DivisorClass::e_coeff(std::size_t index) const {
    if (index == 0 || index > e_.size()) return 0;
    return e_[index - 1];
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& rhs) {
    h_ += rhs.h_;
    if (e_.size() < rhs.e_.size()) e_.resize(rhs.e_.size(), 0);
    for (std::size_t i = 0; i < rhs.e_.size(); ++i) e_[i] += rhs.e_[i];
    trim_trailing_zeros(e_);
    return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& rhs) {
    return *this += -rhs;
}

DivisorClass DivisorClass::operator-() const {
    DivisorClass neg = *this;
    neg.h_ = -neg.h_;
    for (auto& c : neg.e_) c = -c;
    return neg;
}

bool operator==(const DivisorClass& lhs, const DivisorClass& rhs) {
    // stored lengths are trimmed, so equal classes have equal vectors
    return lhs.h_ == rhs.h_ && lhs.e_ == rhs.e_;
}

std::string DivisorClass::to_string() const {
    std::string out;
    auto term = [&out](long coeff, const std::string& gen) {
        if (coeff == 0) return;
        if (coeff < 0) {
            out += '-';
        } else if (!out.empty()) {
            out += '+';
        }
        const long mag = coeff < 0 ? -coeff : coeff;
        if (mag != 1) out += std::to_string(mag);
        out += gen;
    };
    term(h_, "h");
    for (std::size_t i = 0; i < e_.size(); ++i) term(e_[i], "e" + std::to_string(i + 1));
    return out.empty() ? "0" : out;
}

long pairing(const DivisorClass& a, const DivisorClass& b) {
    long total = a.h_coeff() * b.h_coeff();
    const std::size_t len = std::min(a.exceptional_length(), b.exceptional_length());
    for (std::size_t i = 1; i <= len; ++i) total -= a.e_coeff(i) * b.e_coeff(i);
    return total;
}

CurvePair curve_pair(std::string_view a, std::string_view b) {
    return a < b ? CurvePair{std::string(a), std::string(b)} : CurvePair{std::string(b), std::string(a)};
}

Arrangement::Arrangement(std::vector<Curve> curves, std::vector<IntersectionPoint> points,
                         std::size_t exceptional_count)
    : curves_(std::move(curves)), points_(std::move(points)), exceptional_count_(exceptional_count) {
    validate();
}

void Arrangement::validate() const {
    std::set<std::string> curve_names;
    for (const auto& c : curves_) {
        if (!curve_names.insert(c.name).second) {
            throw InconsistentScript("duplicate curve name '" + c.name + "'");
        }
    }
    std::set<std::string> point_names;
    for (const auto& p : points_) {
        if (!point_names.insert(p.name).second) {
            throw InconsistentScript("duplicate point name '" + p.name + "'");
        }
    }
    for (const auto& c : curves_) {
        for (const auto& [pt, mult] : c.local_multiplicity) {
            if (!point_names.count(pt)) {
                throw UnknownPoint("curve '" + c.name + "' passes through unknown point '" + pt + "'");
            }
            if (mult < 1) {
                throw InconsistentScript("curve '" + c.name + "' has multiplicity " +
                                         std::to_string(mult) + " at '" + pt + "'");
            }
        }
    }
    for (const auto& p : points_) {
        for (const auto& [pr, m] : p.pair_multiplicity) {
            if (pr.first == pr.second) {
                throw InconsistentScript("point '" + p.name + "' pairs curve '" + pr.first +
                                         "' with itself");
            }
            const Curve& a = curve(pr.first);
            const Curve& b = curve(pr.second);
            const auto ma = a.local_multiplicity.find(p.name);
            const auto mb = b.local_multiplicity.find(p.name);
            if (ma == a.local_multiplicity.end() || mb == b.local_multiplicity.end()) {
                throw InconsistentScript("point '" + p.name + "' lists the pair (" + pr.first +
                                         ", " + pr.second + ") but not both curves pass through it");
            }
            if (m < ma->second * mb->second) {
                throw InconsistentScript("intersection multiplicity of (" + pr.first + ", " +
                                         pr.second + ") at '" + p.name +
                                         "' is below the product of local multiplicities");
            }
        }
    }
}

bool Arrangement::has_curve(std::string_view name) const {
    return std::any_of(curves_.begin(), curves_.end(), [&](const Curve& c) { return c.name == name; });
}

bool Arrangement::has_point(std::string_view name) const {
    return std::any_of(points_.begin(), points_.end(),
                       [&](const IntersectionPoint& p) { return p.name == name; });
}

const Curve& Arrangement::curve(std::string_view name) const {
    for (const auto& c : curves_) {
        if (c.name == name) return c;
    }
    throw UnknownCurve("unknown curve '" + std::string(name) + "'");
}

const IntersectionPoint& Arrangement::point(std::string_view name) const {
    for (const auto& p : points_) {
        if (p.name == name) return p;
    }
    throw UnknownPoint("unknown point '" + std::string(name) + "'");
}

std::vector<std::string> Arrangement::incident_curves(std::string_view point_name) const {
    point(point_name);
    std::vector<std::string> out;
    for (const auto& c : curves_) {
        if (c.local_multiplicity.count(std::string(point_name))) out.push_back(c.name);
    }
    return out;
}

long Arrangement::intersection_multiplicity(std::string_view a, std::string_view b) const {
    curve(a);
    curve(b);
    const CurvePair key = curve_pair(a, b);
    long total = 0;
    for (const auto& p : points_) {
        if (const auto it = p.pair_multiplicity.find(key); it != p.pair_multiplicity.end()) {
            total += it->second;
        }
    }
    return total;
}

std::vector<ConsistencyDefect> Arrangement::consistency_defects() const {
    std::vector<ConsistencyDefect> defects;
    for (std::size_t i = 0; i < curves_.size(); ++i) {
        for (std::size_t j = i + 1; j < curves_.size(); ++j) {
            const long expected = pairing(curves_[i].cls, curves_[j].cls);
            const long located = intersection_multiplicity(curves_[i].name, curves_[j].name);
            if (expected != located) {
                defects.push_back({curve_pair(curves_[i].name, curves_[j].name), expected, located});
            }
        }
    }
    return defects;
}

std::map<CurvePair, long> residual_multiplicities(const Arrangement& arr, std::string_view point_name) {
    const IntersectionPoint& pt = arr.point(point_name);
    std::map<CurvePair, long> residual;
    for (const auto& [pr, m] : pt.pair_multiplicity) {
        const long ma = arr.curve(pr.first).local_multiplicity.at(pt.name);
        const long mb = arr.curve(pr.second).local_multiplicity.at(pt.name);
        const long left = m - ma * mb;
        if (left > 0) residual.emplace(pr, left);
    }
    return residual;
}

Arrangement blow_up(const Arrangement& arr, std::string_view point_name,
                    const std::vector<PointDeclaration>& then) {
    const std::string blown(point_name);
    const auto residual = residual_multiplicities(arr, blown);  // throws UnknownPoint

    const std::size_t k = arr.exceptional_count_ + 1;
    const std::string exc = "e" + std::to_string(k);
    if (arr.has_curve(exc)) {
        throw InconsistentScript("curve name '" + exc + "' is reserved for the new exceptional sphere");
    }

    Arrangement out;
    out.exceptional_count_ = k;

    std::map<std::string, long> old_mult;
    for (Curve c : arr.curves_) {
        if (const auto it = c.local_multiplicity.find(blown); it != c.local_multiplicity.end()) {
            old_mult.emplace(c.name, it->second);
            c.cls -= DivisorClass::exceptional(k, it->second);
            c.local_multiplicity.erase(it);
        }
        out.curves_.push_back(std::move(c));
    }
    for (const auto& p : arr.points_) {
        if (p.name != blown) out.points_.push_back(p);
    }
    out.curves_.push_back(Curve{exc, DivisorClass::exceptional(k), {}});

    auto find_curve = [&out](const std::string& name) -> Curve& {
        for (auto& c : out.curves_) {
            if (c.name == name) return c;
        }
        throw UnknownCurve("unknown curve '" + name + "'");
    };

    std::map<CurvePair, long> placed;
    for (const auto& decl : then) {
        if (out.has_point(decl.name)) {
            throw InconsistentScript("point '" + decl.name + "' declared after blowing up '" + blown +
                                     "' already exists");
        }
        IntersectionPoint pt{decl.name, {}};
        for (const auto& [name, mult] : decl.on) {
            if (name == exc) {
                if (mult != 1) {
                    throw InconsistentScript("exceptional sphere '" + exc + "' is smooth; multiplicity " +
                                             std::to_string(mult) + " at '" + decl.name + "'");
                }
                continue;
            }
            if (!old_mult.count(name)) {
                find_curve(name);
                throw InconsistentScript("curve '" + name + "' did not pass through '" + blown +
                                         "' and cannot meet " + exc + " at '" + decl.name + "'");
            }
            find_curve(name).local_multiplicity[decl.name] = mult;
        }
        find_curve(exc).local_multiplicity[decl.name] = 1;
        for (const auto& [pr, m] : decl.pair_multiplicity) {
            const CurvePair key = curve_pair(pr.first, pr.second);
            pt.pair_multiplicity[key] += m;
            placed[key] += m;
        }
        out.points_.push_back(std::move(pt));
    }

    // Residual multiplicities between former curves must land on the new points.
    std::set<CurvePair> keys;
    for (const auto& [pr, m] : residual) keys.insert(pr);
    for (const auto& [pr, m] : placed) {
        if (pr.first != exc && pr.second != exc) keys.insert(pr);
    }
    for (const auto& pr : keys) {
        const long want = residual.count(pr) ? residual.at(pr) : 0;
        const long got = placed.count(pr) ? placed.at(pr) : 0;
        if (want != got) {
            throw InconsistentScript("after blowing up '" + blown + "', (" + pr.first + ", " +
                                     pr.second + ") has residual multiplicity " +
                                     std::to_string(want) + " but the declared points carry " +
                                     std::to_string(got));
        }
    }
    // Each former curve meets the exceptional sphere in its old multiplicity.
    for (const auto& [name, mult] : old_mult) {
        const CurvePair key = curve_pair(name, exc);
        const long got = placed.count(key) ? placed.at(key) : 0;
        if (got != mult) {
            throw InconsistentScript("'" + name + "' had multiplicity " + std::to_string(mult) +
                                     " at '" + blown + "' but meets " + exc + " with total " +
                                     std::to_string(got) + " at the declared points");
        }
    }

    out.validate();
    return out;
}

int fiber_type_order(std::string_view label) {
    if (label.size() < 2 || label[0] != 'I') {
        throw BadParameter("fiber type must look like I<n>, got '" + std::string(label) + "'");
    }
    int n = 0;
    for (std::size_t i = 1; i < label.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(label[i]))) {
            throw BadParameter("fiber type must look like I<n>, got '" + std::string(label) + "'");
        }
        n = n * 10 + (label[i] - '0');
    }
    if (n < 1) {
        throw BadParameter("fiber type must have n >= 1, got '" + std::string(label) + "'");
    }
    return n;
}

DivisorClass total_class(const Arrangement& arr, const std::vector<std::string>& components) {
    DivisorClass total;
    for (const auto& name : components) total += arr.curve(name).cls;
    return total;
}

FiberReport verify_fiber(const Arrangement& arr, const FiberCandidate& candidate) {
    FiberReport report;
    report.label = candidate.label;
    report.expected_n = fiber_type_order(candidate.label);
    report.total = total_class(arr, candidate.components);

    const std::size_t n = candidate.components.size();
    std::vector<DivisorClass> classes;
    for (const auto& name : candidate.components) {
        classes.push_back(arr.curve(name).cls);
        report.self_intersections.emplace_back(name, self_intersection(classes.back()));
    }
    report.pairings.assign(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) report.pairings[i][j] = pairing(classes[i], classes[j]);
    }

    auto& problems = report.problems;
    if (std::set<std::string>(candidate.components.begin(), candidate.components.end()).size() != n) {
        problems.push_back("repeated component");
    }
    if (static_cast<int>(n) != report.expected_n) {
        problems.push_back("expected " + std::to_string(report.expected_n) + " components, got " +
                           std::to_string(n));
    }
    for (const auto& [name, sq] : report.self_intersections) {
        if (sq != -2) problems.push_back(name + " has self-intersection " + std::to_string(sq));
    }

    if (n < 2) {
        problems.push_back("a single component does not form a cycle");
    } else if (n == 2) {
        if (report.pairings[0][1] != 2) {
            problems.push_back("I2 components must pair to 2, got " + std::to_string(report.pairings[0][1]));
        }
    } else {
        // n-cycle: each component meets exactly two others once, and the
        // adjacency graph is connected.
        std::vector<std::vector<std::size_t>> adjacent(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                const long p = report.pairings[i][j];
                if (p == 1) {
                    adjacent[i].push_back(j);
                } else if (p != 0) {
                    problems.push_back(candidate.components[i] + "." + candidate.components[j] +
                                       " = " + std::to_string(p));
                }
            }
            if (adjacent[i].size() != 2) {
                problems.push_back(candidate.components[i] + " meets " +
                                   std::to_string(adjacent[i].size()) + " components, not 2");
            }
        }
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        std::size_t reached = 1;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w : adjacent[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        if (reached != n) problems.push_back("components do not form a single cycle");
    }

    report.pass = problems.empty();
    return report;
}

bool fiber_class_equal(const Arrangement& arr, const std::vector<std::string>& lhs,
                       const std::vector<std::string>& rhs) {
    return total_class(arr, lhs) == total_class(arr, rhs);
}

}  // namespace starcalc
