#include <algorithm>
#include <initializer_list>
#include <set>

#include <json.hpp>

#include "starcalc/errors.hpp"
#include "starcalc/recipe.hpp"

namespace starcalc {

namespace {

using json = nlohmann::json;

// A JSON node plus the pointer it was reached by, so every diagnostic can
// name the offending field.
class Node {
public:
    Node(const json& value, std::string path) : value_(value), path_(std::move(path)) {}

    const json& raw() const { return value_; }
    const std::string& path() const { return path_; }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, 0, 0, path_.empty() ? "/" : path_);
    }
    [[noreturn]] void violate(const std::string& message) const {
        throw SchemaViolation((path_.empty() ? std::string("/") : path_) + ": " + message);
    }

    void expect_object() const {
        if (!value_.is_object()) fail("expected an object");
    }
    void expect_array() const {
        if (!value_.is_array()) fail("expected an array");
    }

    void only(std::initializer_list<std::string_view> allowed) const {
        expect_object();
        for (const auto& [key, _] : value_.items()) {
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                Node(value_, path_ + "/" + key).fail("unknown field '" + key + "'");
            }
        }
    }

    bool has(std::string_view key) const { return value_.is_object() && value_.contains(key); }

    Node at(std::string_view key) const {
        expect_object();
        if (!value_.contains(key)) fail("missing required field '" + std::string(key) + "'");
        return Node(value_.at(std::string(key)), path_ + "/" + std::string(key));
    }

    Node at(std::size_t index) const {
        return Node(value_.at(index), path_ + "/" + std::to_string(index));
    }

    std::size_t size() const { return value_.size(); }

    long as_long() const {
        if (!value_.is_number_integer()) fail("expected an integer");
        return value_.get<long>();
    }
    int as_int() const {
        const long v = as_long();
        if (v < -1000000 || v > 1000000) fail("integer out of range");
        return static_cast<int>(v);
    }
    bool as_bool() const {
        if (!value_.is_boolean()) fail("expected a boolean");
        return value_.get<bool>();
    }
    std::string as_string() const {
        if (!value_.is_string()) fail("expected a string");
        return value_.get<std::string>();
    }

    std::vector<long> as_long_vector() const {
        expect_array();
        std::vector<long> out;
        for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).as_long());
        return out;
    }
    std::vector<std::string> as_string_vector() const {
        expect_array();
        std::vector<std::string> out;
        for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).as_string());
        return out;
    }

    ClassExpr as_class() const {
        try {
            return ClassExpr::parse(as_string());
        } catch (const BadParameter& e) {
            fail(e.what());
        }
    }
    DivisorClass as_divisor() const {
        try {
            return DivisorClass::parse(as_string());
        } catch (const BadParameter& e) {
            fail(e.what());
        }
    }
    Rational as_rational() const {
        try {
            if (value_.is_number_integer()) return Rational(value_.get<long>());
            return Rational::parse(as_string());
        } catch (const Error& e) {
            fail(e.what());
        }
    }
    // A decimal as printed, e.g. "-1.54", converted exactly.
    Rational as_decimal() const {
        const std::string s = as_string();
        const auto dot = s.find('.');
        try {
            if (dot == std::string::npos) return Rational::parse(s);
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            BigInt den = 1;
            for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
            return Rational::parse(digits) / Rational(den);
        } catch (const Error& e) {
            fail("malformed decimal '" + s + "': " + e.what());
        }
    }

private:
    const json& value_;
    std::string path_;
};

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

FundamentalGroup parse_group(const Node& n) {
    const std::string s = n.as_string();
    if (s == "trivial" || s == "1") return TrivialGroup{};
    if (s.rfind("Z/", 0) == 0) {
        try {
            const long order = std::stol(s.substr(2));
            if (order < 1) n.fail("cyclic group order must be positive");
            if (order == 1) return TrivialGroup{};
            return CyclicGroup{order};
        } catch (const std::logic_error&) {
            n.fail("malformed cyclic group '" + s + "'");
        }
    }
    if (s.rfind("other:", 0) == 0) return OtherGroup{s.substr(6)};
    n.fail("fundamental group must be 'trivial', 'Z/<m>' or 'other:<label>'");
}

PlumbingGraph parse_plumbing(const Node& n) {
    try {
        if (n.has("center")) {
            n.only({"center", "arms"});
            std::vector<std::vector<long>> arms;
            const Node arms_node = n.at("arms");
            arms_node.expect_array();
            for (std::size_t i = 0; i < arms_node.size(); ++i) arms.push_back(arms_node.at(i).as_long_vector());
            return PlumbingGraph::star(n.at("center").as_long(), arms);
        }
        n.only({"vertices", "edges"});
        const Node vs = n.at("vertices");
        vs.expect_array();
        std::vector<PlumbingVertex> vertices;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            const Node v = vs.at(i);
            v.only({"name", "weight"});
            vertices.push_back({v.at("name").as_string(), v.at("weight").as_long()});
        }
        auto index_of = [&vertices](const Node& name_node) {
            const std::string name = name_node.as_string();
            for (std::size_t i = 0; i < vertices.size(); ++i) {
                if (vertices[i].name == name) return i;
            }
            name_node.violate("unknown vertex '" + name + "'");
        };
        std::vector<PlumbingEdge> edges;
        if (n.has("edges")) {
            const Node es = n.at("edges");
            es.expect_array();
            for (std::size_t i = 0; i < es.size(); ++i) {
                const Node e = es.at(i);
                e.expect_array();
                if (e.size() != 2 && e.size() != 3) e.fail("edge must be [a, b] or [a, b, pairing]");
                edges.push_back({index_of(e.at(0)), index_of(e.at(1)), e.size() == 3 ? e.at(2).as_long() : 1});
            }
        }
        return PlumbingGraph(std::move(vertices), std::move(edges));
    } catch (const InvalidGraph& e) {
        n.violate(e.what());
    }
}

FillingProfile parse_filling(const Node& n) {
    n.only({"name", "euler", "signature", "pi1", "form", "negative_definite"});
    FillingProfile f;
    f.name = n.at("name").as_string();
    f.euler = n.at("euler").as_long();
    f.signature = n.at("signature").as_long();
    if (n.has("pi1")) f.pi1 = parse_group(n.at("pi1"));
    if (n.has("form")) {
        const Node rows = n.at("form");
        rows.expect_array();
        std::vector<std::vector<long>> m;
        for (std::size_t i = 0; i < rows.size(); ++i) m.push_back(rows.at(i).as_long_vector());
        try {
            f.form = RationalMatrix::from_rows(m);
        } catch (const DimensionMismatch& e) {
            rows.violate(e.what());
        }
        if (!f.form->is_symmetric()) rows.violate("filling form must be symmetric");
    }
    if (n.has("negative_definite")) f.negative_definite_asserted = n.at("negative_definite").as_bool();
    try {
        f.validate();
    } catch (const InvalidFilling& e) {
        n.violate(e.what());
    }
    return f;
}

Step parse_step(const Node& n) {
    n.expect_object();
    Step step;
    if (n.has("note")) step.note = n.at("note").as_string();

    if (n.has("blow_up")) {
        n.only({"blow_up", "note"});
        step.kind = StepKind::blow_up;
        step.count = n.at("blow_up").as_int();
        if (step.count < 1) n.at("blow_up").violate("blow-up count must be >= 1");
    } else if (n.has("fiber_sum_E1")) {
        n.only({"fiber_sum_E1", "note"});
        step.kind = StepKind::fiber_sum;
        step.count = n.at("fiber_sum_E1").as_int();
        if (step.count < 1) n.at("fiber_sum_E1").violate("fiber sum count must be >= 1");
    } else if (n.has("star_surgery")) {
        n.only({"star_surgery", "simply_connected", "plumbing", "filling", "note"});
        step.kind = StepKind::star_surgery;
        const std::string name = n.at("star_surgery").as_string();
        step.simply_connected_after = n.at("simply_connected").as_bool();
        const bool inline_rule = n.has("plumbing") || n.has("filling");
        if (inline_rule) {
            if (has_builtin_rule(name)) {
                n.at("star_surgery").violate("inline definition shadows built-in rule '" + name + "'");
            }
            step.rule = StarSurgeryRule{name, parse_plumbing(n.at("plumbing")), parse_filling(n.at("filling"))};
            if (step.rule.filling.euler >= euler_characteristic(step.rule.plumbing)) {
                n.violate("filling euler characteristic must be smaller than the plumbing's");
            }
        } else {
            step.rule = builtin_rule(name);  // throws UnknownRule
        }
    } else if (n.has("rational_blowdown")) {
        n.only({"rational_blowdown", "simply_connected", "note"});
        step.kind = StepKind::rational_blowdown;
        step.count = n.at("rational_blowdown").as_int();
        if (step.count < 2) n.at("rational_blowdown").violate("rational blow-down needs p >= 2");
        step.rule = rational_blowdown_rule(step.count);
        step.simply_connected_after = n.at("simply_connected").as_bool();
    } else {
        n.fail("step must be one of blow_up, fiber_sum_E1, star_surgery, rational_blowdown");
    }
    return step;
}

BaseSpec parse_base(const Node& n) {
    BaseSpec base;
    if (n.has("elliptic")) {
        n.only({"elliptic"});
        base.elliptic = n.at("elliptic").as_int();
        if (*base.elliptic < 1) n.at("elliptic").violate("E(n) needs n >= 1");
        return base;
    }
    n.only({"ledger"});
    const Node l = n.at("ledger");
    l.only({"name", "euler", "signature", "simply_connected", "symplectic"});
    InvariantLedger ledger;
    ledger.name = l.has("name") ? l.at("name").as_string() : "base";
    ledger.euler = l.at("euler").as_long();
    ledger.signature = l.at("signature").as_long();
    ledger.simply_connected = l.at("simply_connected").as_bool();
    ledger.symplectic = l.at("symplectic").as_bool();
    ledger.provenance.push_back({OperationKind::explicit_base, ledger.name});
    try {
        ledger.validate();
    } catch (const InvalidLedger& e) {
        l.violate(e.what());
    }
    base.ledger = std::move(ledger);
    return base;
}

void require_declared(const Node& where, const AmbientPairing& ambient, const ClassExpr& c) {
    for (const auto& [g, coeff] : c.terms()) {
        if (!ambient.declares(g)) where.violate("generator '" + g + "' is not declared in /sw/generators");
    }
}

SwBlock parse_sw(const Node& n, const std::vector<Step>& steps) {
    n.only({"surgery_step", "generators", "basic_classes", "reference_classes", "pairings", "canonical"});
    SwBlock sw;

    if (n.has("surgery_step")) {
        const long idx = n.at("surgery_step").as_long();
        if (idx < 0 || static_cast<std::size_t>(idx) >= steps.size()) {
            n.at("surgery_step").violate("no step with index " + std::to_string(idx));
        }
        sw.surgery_step = static_cast<std::size_t>(idx);
    } else {
        bool found = false;
        for (std::size_t i = 0; i < steps.size(); ++i) {
            if (steps[i].kind == StepKind::star_surgery || steps[i].kind == StepKind::rational_blowdown) {
                sw.surgery_step = i;
                found = true;
            }
        }
        if (!found) n.violate("SW analysis needs a surgery step");
    }
    const Step& surgery = steps[sw.surgery_step];
    if (surgery.kind != StepKind::star_surgery && surgery.kind != StepKind::rational_blowdown) {
        n.at("surgery_step").violate("step " + std::to_string(sw.surgery_step) + " is not a surgery");
    }

    const Node gens = n.at("generators");
    gens.expect_object();
    for (const auto& [name, value] : gens.raw().items()) {
        const Node g(value, gens.path() + "/" + name);
        try {
            (void)ClassExpr::generator(name);
            if (ClassExpr::parse(name) != ClassExpr::generator(name)) g.violate("invalid generator name");
        } catch (const BadParameter&) {
            g.violate("invalid generator name '" + name + "'");
        }
        sw.ambient.declare(name, g.as_long());
    }

    const Node bc = n.at("basic_classes");
    if (bc.has("classes")) {
        bc.only({"classes"});
        const Node list = bc.at("classes");
        list.expect_array();
        for (std::size_t i = 0; i < list.size(); ++i) {
            sw.source.explicit_classes.push_back(list.at(i).as_class());
            require_declared(list.at(i), sw.ambient, sw.source.explicit_classes.back());
        }
    } else {
        bc.only({"elliptic", "blowups"});
        sw.source.elliptic = bc.at("elliptic").as_int();
        if (*sw.source.elliptic < 2) bc.at("elliptic").violate("E(n) basic classes need n >= 2");
        if (!sw.ambient.declares("f")) bc.violate("generator 'f' must be declared for E(n) classes");
        if (bc.has("blowups")) sw.source.blowups = bc.at("blowups").as_string_vector();
        std::set<std::string> seen;
        for (std::size_t i = 0; i < sw.source.blowups.size(); ++i) {
            const auto& e = sw.source.blowups[i];
            if (!sw.ambient.declares(e)) bc.at("blowups").at(i).violate("generator '" + e + "' is not declared");
            if (e == "f" || !seen.insert(e).second) bc.at("blowups").at(i).violate("generator '" + e + "' reused");
        }
    }

    if (n.has("reference_classes")) {
        const Node list = n.at("reference_classes");
        list.expect_array();
        sw.reference_classes.emplace();
        for (std::size_t i = 0; i < list.size(); ++i) sw.reference_classes->push_back(list.at(i).as_class());
    }

    const std::size_t vertices = surgery.rule.plumbing.vertex_count();
    const Node table = n.at("pairings");
    table.expect_object();
    for (const auto& [name, value] : table.raw().items()) {
        const Node row(value, table.path() + "/" + name);
        IntVector v = row.as_long_vector();
        if (v.size() != vertices) {
            row.violate("pairing vector has " + std::to_string(v.size()) + " entries but " +
                        surgery.rule.name + " has " + std::to_string(vertices) + " vertices");
        }
        if (!sw.ambient.declares(name)) row.violate("generator '" + name + "' is not declared");
        sw.pairings.emplace(name, std::move(v));
    }

    if (n.has("canonical")) {
        sw.canonical = n.at("canonical").as_class();
        require_declared(n.at("canonical"), sw.ambient, *sw.canonical);
    }
    return sw;
}

std::map<CurvePair, long> parse_pairs(const Node& n) {
    n.expect_array();
    std::map<CurvePair, long> pairs;
    for (std::size_t i = 0; i < n.size(); ++i) {
        const Node p = n.at(i);
        p.expect_array();
        if (p.size() != 3) p.fail("pair entry must be [curve, curve, multiplicity]");
        const long m = p.at(2).as_long();
        if (m < 1) p.at(2).violate("intersection multiplicity must be >= 1");
        pairs[curve_pair(p.at(0).as_string(), p.at(1).as_string())] += m;
    }
    return pairs;
}

std::map<std::string, long> parse_on(const Node& n) {
    n.expect_object();
    std::map<std::string, long> on;
    for (const auto& [name, value] : n.raw().items()) {
        const long m = Node(value, n.path() + "/" + name).as_long();
        if (m < 1) Node(value, n.path() + "/" + name).violate("local multiplicity must be >= 1");
        on.emplace(name, m);
    }
    return on;
}

PointDeclaration parse_point(const Node& n) {
    n.only({"name", "on", "pairs"});
    PointDeclaration d;
    d.name = n.at("name").as_string();
    d.on = n.has("on") ? parse_on(n.at("on")) : std::map<std::string, long>{};
    if (n.has("pairs")) d.pair_multiplicity = parse_pairs(n.at("pairs"));
    return d;
}

ScriptAction parse_action(const Node& n) {
    n.expect_object();
    if (n.has("blow_up")) {
        n.only({"blow_up", "then"});
        ScriptBlowUp b;
        b.point = n.at("blow_up").as_string();
        if (n.has("then")) {
            const Node then = n.at("then");
            then.expect_array();
            for (std::size_t i = 0; i < then.size(); ++i) b.then.push_back(parse_point(then.at(i)));
        }
        return b;
    }
    if (n.has("expect_class")) {
        n.only({"expect_class"});
        const Node e = n.at("expect_class");
        e.only({"curve", "class"});
        return ScriptExpectClass{e.at("curve").as_string(), e.at("class").as_divisor()};
    }
    if (n.has("expect_self_intersection")) {
        n.only({"expect_self_intersection"});
        const Node e = n.at("expect_self_intersection");
        e.only({"curve", "value"});
        return ScriptExpectSelfIntersection{e.at("curve").as_string(), e.at("value").as_long()};
    }
    if (n.has("expect_multiplicity")) {
        n.only({"expect_multiplicity"});
        const Node e = n.at("expect_multiplicity");
        e.only({"curves", "value"});
        const auto curves = e.at("curves").as_string_vector();
        if (curves.size() != 2) e.at("curves").fail("expected exactly two curve names");
        return ScriptExpectMultiplicity{curves[0], curves[1], e.at("value").as_long()};
    }
    if (n.has("expect_class_equal")) {
        n.only({"expect_class_equal"});
        const Node e = n.at("expect_class_equal");
        e.only({"lhs", "rhs", "equal"});
        return ScriptExpectClassEqual{e.at("lhs").as_string_vector(), e.at("rhs").as_string_vector(),
                                      e.at("equal").as_bool()};
    }
    n.fail("script action must be one of blow_up, expect_class, expect_self_intersection, "
           "expect_multiplicity, expect_class_equal");
}

BlowupScript parse_script(const Node& n) {
    n.only({"curves", "points", "sequence", "fibers"});
    BlowupScript script;

    std::vector<Curve> curves;
    const Node cs = n.at("curves");
    cs.expect_array();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const Node c = cs.at(i);
        c.only({"name", "class"});
        const std::string name = c.at("name").as_string();
        if (name.size() >= 2 && name[0] == 'e' &&
            std::all_of(name.begin() + 1, name.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
            c.at("name").violate("names e<k> are reserved for exceptional spheres");
        }
        curves.push_back(Curve{name, c.at("class").as_divisor(), {}});
    }

    std::vector<IntersectionPoint> points;
    if (n.has("points")) {
        const Node ps = n.at("points");
        ps.expect_array();
        for (std::size_t i = 0; i < ps.size(); ++i) {
            const PointDeclaration d = parse_point(ps.at(i));
            for (const auto& [name, mult] : d.on) {
                auto it = std::find_if(curves.begin(), curves.end(), [&](const Curve& c) { return c.name == name; });
                if (it == curves.end()) ps.at(i).violate("unknown curve '" + name + "'");
                it->local_multiplicity[d.name] = mult;
            }
            points.push_back(IntersectionPoint{d.name, d.pair_multiplicity});
        }
    }
    try {
        script.initial = Arrangement(std::move(curves), std::move(points));
    } catch (const Error& e) {
        n.violate(e.what());
    }

    if (n.has("sequence")) {
        const Node seq = n.at("sequence");
        seq.expect_array();
        for (std::size_t i = 0; i < seq.size(); ++i) script.sequence.push_back(parse_action(seq.at(i)));
    }
    if (n.has("fibers")) {
        const Node fs = n.at("fibers");
        fs.expect_array();
        std::set<std::string> names;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const Node f = fs.at(i);
            f.only({"name", "type", "components"});
            NamedFiber nf{f.at("name").as_string(),
                          FiberCandidate{f.at("type").as_string(), f.at("components").as_string_vector()}};
            try {
                fiber_type_order(nf.candidate.label);
            } catch (const BadParameter& e) {
                f.at("type").violate(e.what());
            }
            if (!names.insert(nf.name).second) f.at("name").violate("duplicate fiber name '" + nf.name + "'");
            script.fibers.push_back(std::move(nf));
        }
    }
    return script;
}

std::vector<ExpectedRational> parse_expected_rationals(const Node& n) {
    n.expect_array();
    std::vector<ExpectedRational> out;
    for (std::size_t i = 0; i < n.size(); ++i) {
        const Node e = n.at(i);
        e.only({"class", "exact", "printed"});
        ExpectedRational r{e.at("class").as_class(), std::nullopt, std::nullopt};
        if (e.has("exact")) r.exact = e.at("exact").as_rational();
        if (e.has("printed")) r.printed = e.at("printed").as_decimal();
        if (!r.exact && !r.printed) e.fail("needs 'exact' and/or 'printed'");
        out.push_back(std::move(r));
    }
    return out;
}

Expectations parse_expect(const Node& n, const Recipe& recipe) {
    n.only({"ledgers", "euler", "signature", "chi_h", "c1sq", "position", "b2_plus_min",
            "restriction_squares", "d_upper", "verdicts", "minimality", "fibers", "script_consistent"});
    Expectations x;
    if (n.has("ledgers")) {
        const Node ls = n.at("ledgers");
        ls.expect_array();
        for (std::size_t i = 0; i < ls.size(); ++i) {
            const Node l = ls.at(i);
            l.only({"after_step", "euler", "signature"});
            const long step = l.at("after_step").as_long();
            if (step < 0 || static_cast<std::size_t>(step) >= recipe.steps.size()) {
                l.at("after_step").violate("no step with index " + std::to_string(step));
            }
            x.ledgers.push_back({static_cast<std::size_t>(step), l.at("euler").as_long(), l.at("signature").as_long()});
        }
    }
    if (n.has("euler")) x.euler = n.at("euler").as_long();
    if (n.has("signature")) x.signature = n.at("signature").as_long();
    if (n.has("chi_h")) x.chi_h = n.at("chi_h").as_long();
    if (n.has("c1sq")) x.c1sq = n.at("c1sq").as_long();
    if (n.has("position")) {
        try {
            x.position = parse_geography_position(n.at("position").as_string());
        } catch (const BadParameter& e) {
            n.at("position").fail(e.what());
        }
    }
    if (n.has("b2_plus_min")) x.b2_plus_min = n.at("b2_plus_min").as_long();

    const bool has_sw = recipe.sw.has_value();
    for (const char* key : {"restriction_squares", "d_upper", "verdicts", "minimality"}) {
        if (n.has(key) && !has_sw) n.at(key).violate("expectation needs an 'sw' block");
    }
    if (n.has("restriction_squares")) x.restriction_squares = parse_expected_rationals(n.at("restriction_squares"));
    if (n.has("d_upper")) x.d_upper = parse_expected_rationals(n.at("d_upper"));
    if (n.has("verdicts")) {
        const Node vs = n.at("verdicts");
        vs.expect_array();
        for (std::size_t i = 0; i < vs.size(); ++i) {
            const Node v = vs.at(i);
            v.only({"class", "status"});
            try {
                x.verdicts.push_back({v.at("class").as_class(), parse_obstruction_status(v.at("status").as_string())});
            } catch (const BadParameter& e) {
                v.at("status").fail(e.what());
            }
        }
    }
    if (n.has("minimality")) {
        try {
            x.minimality = parse_minimality_outcome(n.at("minimality").as_string());
        } catch (const BadParameter& e) {
            n.at("minimality").fail(e.what());
        }
    }

    for (const char* key : {"fibers", "script_consistent"}) {
        if (n.has(key) && !recipe.script) n.at(key).violate("expectation needs a 'blowup_script' block");
    }
    if (n.has("fibers")) {
        const Node fs = n.at("fibers");
        fs.expect_array();
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const Node f = fs.at(i);
            f.only({"name", "pass", "total"});
            ExpectedFiber ef{f.at("name").as_string(), f.has("pass") ? f.at("pass").as_bool() : true, std::nullopt};
            if (f.has("total")) ef.total = f.at("total").as_divisor();
            const auto& declared = recipe.script->fibers;
            if (std::none_of(declared.begin(), declared.end(), [&](const NamedFiber& nf) { return nf.name == ef.name; })) {
                f.at("name").violate("no fiber named '" + ef.name + "' in the blow-up script");
            }
            x.fibers.push_back(std::move(ef));
        }
    }
    if (n.has("script_consistent")) x.script_consistent = n.at("script_consistent").as_bool();
    return x;
}

}  // namespace

Recipe parse_recipe(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_and_column(text, e.byte);
        throw ParseError(e.what(), line, column);
    }

    const Node root(doc, "");
    root.only({"schema", "name", "description", "base", "steps", "sw", "blowup_script", "expect", "citations"});

    Recipe recipe;
    recipe.schema = root.at("schema").as_int();
    if (recipe.schema != kRecipeSchemaVersion) {
        root.at("schema").violate("unsupported schema version " + std::to_string(recipe.schema));
    }
    recipe.name = root.at("name").as_string();
    if (recipe.name.empty()) root.at("name").violate("name must not be empty");
    if (root.has("description")) recipe.description = root.at("description").as_string();
    recipe.base = parse_base(root.at("base"));

    if (root.has("steps")) {
        const Node steps = root.at("steps");
        steps.expect_array();
        for (std::size_t i = 0; i < steps.size(); ++i) recipe.steps.push_back(parse_step(steps.at(i)));
    }
    if (root.has("sw")) recipe.sw = parse_sw(root.at("sw"), recipe.steps);
    if (root.has("blowup_script")) recipe.script = parse_script(root.at("blowup_script"));
    if (root.has("expect")) recipe.expect = parse_expect(root.at("expect"), recipe);
    if (root.has("citations")) {
        const Node cs = root.at("citations");
        cs.expect_array();
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const Node c = cs.at(i);
            c.only({"fact", "source"});
            recipe.citations.push_back({c.at("fact").as_string(), c.at("source").as_string()});
        }
    }
    return recipe;
}

}  // namespace starcalc
