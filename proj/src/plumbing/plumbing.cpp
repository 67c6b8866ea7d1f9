#include "starcalc/plumbing.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "starcalc/errors.hpp"

namespace starcalc {

PlumbingGraph::PlumbingGraph(std::vector<PlumbingVertex> vertices, std::vector<PlumbingEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    const std::size_t n = vertices_.size();
    if (n == 0) {
        throw InvalidGraph("plumbing graph needs at least one vertex");
    }

    std::set<std::string> names;
    for (const auto& v : vertices_) {
        if (!names.insert(v.name).second) {
            throw InvalidGraph("duplicate vertex name '" + v.name + "'");
        }
    }

    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    for (const auto& e : edges_) {
        if (e.a >= n || e.b >= n) {
            throw InvalidGraph("edge endpoint out of range");
        }
        if (e.a == e.b) {
            throw InvalidGraph("self-loop at vertex '" + vertices_[e.a].name + "'");
        }
        if (e.pairing < 1) {
            throw InvalidGraph("edge pairing must be positive");
        }
        if (!seen.insert(std::minmax(e.a, e.b)).second) {
            throw InvalidGraph("more than one edge between '" + vertices_[e.a].name + "' and '" +
                               vertices_[e.b].name + "'");
        }
        parent[find(e.a)] = find(e.b);
    }

    const std::size_t root = find(0);
    for (std::size_t i = 1; i < n; ++i) {
        if (find(i) != root) {
            throw InvalidGraph("plumbing graph is not connected");
        }
    }
}

PlumbingGraph PlumbingGraph::star(long center, const std::vector<std::vector<long>>& arms) {
    std::vector<PlumbingVertex> vertices{{"u0", center}};
    std::vector<PlumbingEdge> edges;
    for (const auto& arm : arms) {
        std::size_t previous = 0;
        for (long weight : arm) {
            const std::size_t index = vertices.size();
            vertices.push_back({"u" + std::to_string(index), weight});
            edges.push_back({previous, index, 1});
            previous = index;
        }
    }
    return PlumbingGraph(std::move(vertices), std::move(edges));
}

PlumbingGraph PlumbingGraph::linear_chain(const std::vector<long>& weights) {
    std::vector<PlumbingVertex> vertices;
    std::vector<PlumbingEdge> edges;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        vertices.push_back({"u" + std::to_string(i), weights[i]});
        if (i > 0) edges.push_back({i - 1, i, 1});
    }
    return PlumbingGraph(std::move(vertices), std::move(edges));
}

long PlumbingGraph::intersection_point_count() const {
    long total = 0;
    for (const auto& e : edges_) total += e.pairing;
    return total;
}

bool PlumbingGraph::is_tree() const {
    // Connected is an invariant, so a tree is exactly |E| = |V| - 1 with simple edges.
    return intersection_point_count() + 1 == static_cast<long>(vertices_.size());
}

PlumbingGraph PlumbingGraph::permuted(std::span<const std::size_t> perm) const {
    const std::size_t n = vertices_.size();
    if (perm.size() != n) {
        throw DimensionMismatch("permutation length does not match vertex count");
    }
    std::vector<std::size_t> inverse(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (perm[i] >= n || inverse[perm[i]] != n) {
            throw BadParameter("not a permutation");
        }
        inverse[perm[i]] = i;
    }
    std::vector<PlumbingVertex> vertices(n);
    for (std::size_t i = 0; i < n; ++i) vertices[i] = vertices_[perm[i]];
    std::vector<PlumbingEdge> edges;
    edges.reserve(edges_.size());
    for (const auto& e : edges_) edges.push_back({inverse[e.a], inverse[e.b], e.pairing});
    return PlumbingGraph(std::move(vertices), std::move(edges));
}

RationalMatrix intersection_matrix(const PlumbingGraph& g) {
    RationalMatrix m(g.vertex_count());
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        m(i, i) = Rational(g.vertices()[i].self_intersection);
    }
    for (const auto& e : g.edges()) {
        m(e.a, e.b) = Rational(e.pairing);
        m(e.b, e.a) = Rational(e.pairing);
    }
    return m;
}

long euler_characteristic(const PlumbingGraph& g) {
    return 2 * static_cast<long>(g.vertex_count()) - g.intersection_point_count();
}

long signature(const PlumbingGraph& g) {
    return inertia(intersection_matrix(g)).signature();
}

PlumbingGraph cycle_fiber(int n) {
    if (n < 2) {
        throw BadParameter("I_n fiber needs n >= 2, got " + std::to_string(n));
    }
    std::vector<PlumbingVertex> vertices;
    for (int i = 0; i < n; ++i) vertices.push_back({"c" + std::to_string(i), -2});
    if (n == 2) {
        return PlumbingGraph(std::move(vertices), {{0, 1, 2}});
    }
    std::vector<PlumbingEdge> edges;
    for (int i = 0; i < n; ++i) {
        edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>((i + 1) % n), 1});
    }
    return PlumbingGraph(std::move(vertices), std::move(edges));
}

std::string to_string(const FundamentalGroup& group) {
    struct Visitor {
        std::string operator()(const TrivialGroup&) const { return "trivial"; }
        std::string operator()(const CyclicGroup& c) const { return "Z/" + std::to_string(c.order); }
        std::string operator()(const OtherGroup& o) const { return o.label; }
    };
    return std::visit(Visitor{}, group);
}

void FillingProfile::validate() const {
    if (euler < 1) {
        throw InvalidFilling("filling '" + name + "' has euler characteristic " +
                             std::to_string(euler) + " < 1");
    }
    if (const auto* c = std::get_if<CyclicGroup>(&pi1); c != nullptr && c->order < 1) {
        throw InvalidFilling("filling '" + name + "' has cyclic group of order < 1");
    }
    if (form) {
        const long s = inertia(*form).signature();
        if (s != signature) {
            throw InvalidFilling("filling '" + name + "' declares signature " +
                                 std::to_string(signature) + " but its form has signature " +
                                 std::to_string(s));
        }
    }
}

namespace {

std::map<std::string, StarSurgeryRule, std::less<>> make_builtin_rules() {
    std::map<std::string, StarSurgeryRule, std::less<>> rules;
    auto add = [&rules](StarSurgeryRule rule) {
        rule.filling.validate();
        std::string key = rule.name;
        rules.emplace(std::move(key), std::move(rule));
    };

    add({"(Q,R)",
         PlumbingGraph::star(-5, {{-3}, {-2}, {-2, -3}, {-2, -2}}),
         FillingProfile{"R", 3, -2, TrivialGroup{}, RationalMatrix{{-10, -23}, {-23, -79}}, true}});

    add({"(K,L)",
         PlumbingGraph::star(-6, {{-2}, {-2}, {-2}, {-2}}),
         FillingProfile{"L", 2, -1, CyclicGroup{4}, RationalMatrix{{-4}}, true}});

    add({"(S2,T2)",
         PlumbingGraph::star(-5, {{-2}, {-2}, {-2}, {-2}}),
         FillingProfile{"T2", 3, -2, CyclicGroup{2}, std::nullopt, true}});

    // Arm weights of U are reconstructed from how the arms are assembled from
    // fiber components; they reproduce e(U) = 10 and sigma(U) = -9.
    add({"(U,V)",
         PlumbingGraph::star(-5, {{-2, -2, -3}, {-2, -3}, {-2, -3}, {-3}}),
         FillingProfile{"V", 3, -2, TrivialGroup{}, std::nullopt, false}});

    return rules;
}

const std::map<std::string, StarSurgeryRule, std::less<>>& builtin_rules() {
    static const auto rules = make_builtin_rules();
    return rules;
}

}  // namespace

const StarSurgeryRule& builtin_rule(std::string_view name) {
    const auto& rules = builtin_rules();
    const auto it = rules.find(name);
    if (it == rules.end()) {
        throw UnknownRule("unknown star surgery rule '" + std::string(name) + "'");
    }
    return it->second;
}

bool has_builtin_rule(std::string_view name) {
    return builtin_rules().find(name) != builtin_rules().end();
}

std::vector<std::string> builtin_rule_names() {
    std::vector<std::string> names;
    for (const auto& [name, rule] : builtin_rules()) names.push_back(name);
    return names;
}

StarSurgeryRule rational_blowdown_rule(int p) {
    if (p < 2) {
        throw BadParameter("rational blow-down needs p >= 2, got " + std::to_string(p));
    }
    std::vector<long> chain(static_cast<std::size_t>(p - 1), -2);
    chain.front() = -(p + 2);
    // B_p is a rational homology ball: no second homology, so no form, and the
    // restriction of any class to it squares to zero.
    FillingProfile ball{"B" + std::to_string(p), 1, 0, CyclicGroup{p}, std::nullopt, true};
    ball.validate();
    return {"B_" + std::to_string(p), PlumbingGraph::linear_chain(chain), std::move(ball)};
}

}  // namespace starcalc
