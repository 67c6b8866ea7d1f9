#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace starcalc {

/*
 * Homology class a*h + sum_i b_i*e_i in CP^2 # k(-CP^2).
 *
 * The pairing is diagonal: h.h = 1, e_i.e_i = -1, everything else 0.
 * Classes of different lengths compare and pair as if zero-padded.
 */
class DivisorClass {
public:
    DivisorClass() = default;
    DivisorClass(long h_coeff, std::vector<long> e_coeffs);

    static DivisorClass line(long multiple = 1);
    /// e_index for index >= 1.
    static DivisorClass exceptional(std::size_t index, long multiple = 1);

    /// Parses expressions such as "3h-2e1-e2-e4" or "0".
    static DivisorClass parse(std::string_view text);

    long h_coeff() const noexcept { return h_; }
    /// Coefficient of e_index (1-based); zero past the stored length.
    long e_coeff(std::size_t index) const;
    std::size_t exceptional_length() const noexcept { return e_.size(); }

    DivisorClass& operator+=(const DivisorClass& rhs);
    DivisorClass& operator-=(const DivisorClass& rhs);
    friend DivisorClass operator+(DivisorClass lhs, const DivisorClass& rhs) { return lhs += rhs; }
    friend DivisorClass operator-(DivisorClass lhs, const DivisorClass& rhs) { return lhs -= rhs; }
    DivisorClass operator-() const;

    friend bool operator==(const DivisorClass& lhs, const DivisorClass& rhs);

    std::string to_string() const;

private:
    long h_ = 0;
    std::vector<long> e_;
};

long pairing(const DivisorClass& a, const DivisorClass& b);

inline long self_intersection(const DivisorClass& c) { return pairing(c, c); }

struct Curve {
    std::string name;
    DivisorClass cls;
    /// point name -> multiplicity of the curve there (a node is 2).
    std::map<std::string, long> local_multiplicity;
};

using CurvePair = std::pair<std::string, std::string>;

/// Unordered pair key, smaller name first.
CurvePair curve_pair(std::string_view a, std::string_view b);

struct IntersectionPoint {
    std::string name;
    /// Local intersection multiplicity of each pair of curves through the point.
    std::map<CurvePair, long> pair_multiplicity;
};

/// One point on a freshly created exceptional curve, as declared by a script.
struct PointDeclaration {
    std::string name;
    /// Curves through the point with their local multiplicity. The new
    /// exceptional curve is implicitly on every declared point (multiplicity 1).
    std::map<std::string, long> on;
    std::map<CurvePair, long> pair_multiplicity;
};

struct ConsistencyDefect {
    CurvePair curves;
    long class_pairing = 0;
    long located_multiplicity = 0;
};

/*
 * Curves in a blown-up plane together with their named intersection points.
 *
 * Every intersection between two curves is expected to sit at a declared
 * point. Infinitely-near points are never inferred: after a blow-up the
 * script names the points that appear on the new exceptional curve.
 */
class Arrangement {
public:
    Arrangement() = default;
    Arrangement(std::vector<Curve> curves, std::vector<IntersectionPoint> points,
                std::size_t exceptional_count = 0);

    const std::vector<Curve>& curves() const noexcept { return curves_; }
    const std::vector<IntersectionPoint>& points() const noexcept { return points_; }
    std::size_t exceptional_count() const noexcept { return exceptional_count_; }

    bool has_curve(std::string_view name) const;
    bool has_point(std::string_view name) const;
    /// Throws UnknownCurve / UnknownPoint.
    const Curve& curve(std::string_view name) const;
    const IntersectionPoint& point(std::string_view name) const;

    /// Curves passing through `point`, by name, in curve order.
    std::vector<std::string> incident_curves(std::string_view point) const;

    /// Sum of the local intersection multiplicities of a and b over all points.
    long intersection_multiplicity(std::string_view a, std::string_view b) const;

    /// Pairs whose homological pairing differs from the multiplicity located at
    /// points. Empty means the arrangement is resolved-complete.
    std::vector<ConsistencyDefect> consistency_defects() const;

private:
    friend Arrangement blow_up(const Arrangement&, std::string_view,
                               const std::vector<PointDeclaration>&);

    void validate() const;

    std::vector<Curve> curves_;
    std::vector<IntersectionPoint> points_;
    std::size_t exceptional_count_ = 0;
};

/// Pair multiplicities left at `point` after blowing it up once:
/// m(A, B) - mult_A * mult_B, keeping only positive values. Throws UnknownPoint.
std::map<CurvePair, long> residual_multiplicities(const Arrangement& arr, std::string_view point);

/*
 * Blow up `point`, creating exceptional curve "e<k>" with k = exceptional_count + 1.
 *
 * Each curve through the point loses (multiplicity) * e_k from its class. The
 * declared points in `then` replace the blown-up point; they must account
 * exactly for the residual multiplicities and for how each former curve
 * meets e_k (InconsistentScript otherwise). Throws UnknownPoint.
 */
Arrangement blow_up(const Arrangement& arr, std::string_view point,
                    const std::vector<PointDeclaration>& then = {});

struct FiberCandidate {
    std::string label;  // e.g. "I3"
    std::vector<std::string> components;
};

/// Parses "I<n>" and returns n; throws BadParameter.
int fiber_type_order(std::string_view label);

struct FiberReport {
    std::string label;
    int expected_n = 0;
    DivisorClass total;
    std::vector<std::pair<std::string, long>> self_intersections;
    /// Pairing matrix of the components, in candidate order.
    std::vector<std::vector<long>> pairings;
    bool pass = false;
    std::vector<std::string> problems;
};

/// Checks the candidate is a Kodaira I_n: every component is a -2 class and the
/// components pair as an n-cycle (pairing 2 for n = 2). Throws UnknownCurve.
FiberReport verify_fiber(const Arrangement& arr, const FiberCandidate& candidate);

/// Sum of component classes. Throws UnknownCurve.
DivisorClass total_class(const Arrangement& arr, const std::vector<std::string>& components);

bool fiber_class_equal(const Arrangement& arr, const std::vector<std::string>& lhs,
                       const std::vector<std::string>& rhs);

}  // namespace starcalc
