#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "starcalc/ratlin/matrix.hpp"

namespace starcalc {

struct PlumbingVertex {
    std::string name;
    long self_intersection = 0;
};

/// An undirected edge. `pairing` is the algebraic intersection number of the
/// two spheres; it is 1 for an ordinary plumbing edge and 2 only for the
/// doubly-meeting pair of an I2 fiber.
struct PlumbingEdge {
    std::size_t a = 0;
    std::size_t b = 0;
    long pairing = 1;
};

/*
 * Weighted graph of embedded spheres.
 *
 * Invariants (checked on construction, InvalidGraph otherwise): at least one
 * vertex, connected, no self-loops, at most one edge per unordered pair,
 * positive pairings, unique vertex names.
 */
class PlumbingGraph {
public:
    PlumbingGraph(std::vector<PlumbingVertex> vertices, std::vector<PlumbingEdge> edges);

    /// Star-shaped plumbing: vertex u0 carries `center`, then each arm is
    /// listed from the center outward, continuing the numbering u1, u2, ...
    static PlumbingGraph star(long center, const std::vector<std::vector<long>>& arms);

    /// Linear chain u0 - u1 - ... - u_{k-1}.
    static PlumbingGraph linear_chain(const std::vector<long>& weights);

    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    const std::vector<PlumbingVertex>& vertices() const noexcept { return vertices_; }
    const std::vector<PlumbingEdge>& edges() const noexcept { return edges_; }

    /// Total number of intersection points (sum of edge pairings).
    long intersection_point_count() const;

    bool is_tree() const;

    /// Relabel so that new vertex i is old vertex perm[i].
    PlumbingGraph permuted(std::span<const std::size_t> perm) const;

private:
    std::vector<PlumbingVertex> vertices_;
    std::vector<PlumbingEdge> edges_;
};

RationalMatrix intersection_matrix(const PlumbingGraph& g);

/// 2 |V| - (number of intersection points).
long euler_characteristic(const PlumbingGraph& g);

long signature(const PlumbingGraph& g);

/// Kodaira I_n: n spheres of square -2 in a cycle. For n = 2 the two spheres
/// meet twice, stored as one edge with pairing 2. Throws BadParameter if n < 2.
PlumbingGraph cycle_fiber(int n);

struct TrivialGroup {
    friend bool operator==(const TrivialGroup&, const TrivialGroup&) = default;
};
struct CyclicGroup {
    long order = 1;
    friend bool operator==(const CyclicGroup&, const CyclicGroup&) = default;
};
struct OtherGroup {
    std::string label;
    friend bool operator==(const OtherGroup&, const OtherGroup&) = default;
};
using FundamentalGroup = std::variant<TrivialGroup, CyclicGroup, OtherGroup>;

std::string to_string(const FundamentalGroup& group);

/// Convex filling glued in by a star surgery. Existence and boundary
/// compatibility are taken as given.
struct FillingProfile {
    std::string name;
    long euler = 1;
    long signature = 0;
    FundamentalGroup pi1 = TrivialGroup{};
    std::optional<RationalMatrix> form;
    bool negative_definite_asserted = false;

    /// euler >= 1 and, when a form is present, signature(form) == signature.
    void validate() const;
};

struct StarSurgeryRule {
    std::string name;
    PlumbingGraph plumbing;
    FillingProfile filling;
};

/// The fixed rule table: "(Q,R)", "(K,L)", "(S2,T2)", "(U,V)". Throws UnknownRule.
const StarSurgeryRule& builtin_rule(std::string_view name);
bool has_builtin_rule(std::string_view name);
std::vector<std::string> builtin_rule_names();

/// Rational blow-down of the chain (-p-2, -2, ..., -2) of length p-1 into
/// the rational ball B_p (e = 1, sigma = 0, pi1 = Z/p). Throws BadParameter if p < 2.
StarSurgeryRule rational_blowdown_rule(int p);

}  // namespace starcalc
