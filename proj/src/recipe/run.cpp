#include <algorithm>
#include <sstream>

#include "starcalc/errors.hpp"
#include "starcalc/recipe.hpp"

namespace starcalc {

std::string_view to_string(StepKind k) {
    switch (k) {
        case StepKind::blow_up: return "blow_up";
        case StepKind::fiber_sum: return "fiber_sum_E1";
        case StepKind::star_surgery: return "star_surgery";
        case StepKind::rational_blowdown: return "rational_blowdown";
    }
    return "unknown";
}

std::string Step::describe() const {
    switch (kind) {
        case StepKind::blow_up: return "blow up x" + std::to_string(count);
        case StepKind::fiber_sum: return "fiber sum with E(1) x" + std::to_string(count);
        case StepKind::star_surgery: return "star surgery " + rule.name;
        case StepKind::rational_blowdown: return "rational blow-down p=" + std::to_string(count);
    }
    return "unknown";
}

std::size_t Report::failed_expectations() const {
    return static_cast<std::size_t>(
        std::count_if(expectations.begin(), expectations.end(), [](const ExpectationResult& r) { return !r.pass; }));
}

bool Report::passed(bool strict) const {
    return failed_expectations() == 0 && (!strict || discrepancies.empty());
}

namespace {

std::string pair_text(long a, long b) {
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

Rational from_decimal(const std::string& s) {
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rational::parse(s);
    BigInt den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return Rational::parse(s.substr(0, dot) + s.substr(dot + 1)) / Rational(den);
}

std::string exact_and_decimal(const Rational& r) {
    return r.to_string() + " (" + r.to_decimal(2) + ")";
}

// Exact match when an exact value is given; a printed decimal passes when the
// two-place rendering of the actual value is within 0.01 of it.
bool rational_matches(const ExpectedRational& e, const Rational& actual) {
    if (e.exact && *e.exact != actual) return false;
    if (e.printed) {
        const Rational rendered = from_decimal(actual.to_decimal(2));
        if ((rendered - *e.printed).abs() > Rational(1, 100)) return false;
    }
    return true;
}

std::string describe_expected(const ExpectedRational& e) {
    std::string out;
    if (e.exact) out = e.exact->to_string();
    if (e.printed) {
        if (!out.empty()) out += ", ";
        out += "printed " + e.printed->to_decimal(2) + " +-0.01";
    }
    return out;
}

std::string join_names(const std::vector<std::string>& names) {
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
    return out + "}";
}

class Runner {
public:
    explicit Runner(const Recipe& recipe) : recipe_(recipe) {}

    Report run() {
        report_.recipe = recipe_.name;
        report_.description = recipe_.description;
        report_.citations = recipe_.citations;

        InvariantLedger ledger = recipe_.base.elliptic ? elliptic_surface(*recipe_.base.elliptic)
                                                       : *recipe_.base.ledger;
        report_.base = ledger;
        ledgers_.reserve(recipe_.steps.size());
        for (std::size_t i = 0; i < recipe_.steps.size(); ++i) {
            try {
                ledger = apply(ledger, recipe_.steps[i]);
                ledger.validate();
            } catch (const StepError&) {
                throw;
            } catch (const Error& e) {
                throw StepError(i, e.what());
            }
            ledger.name = recipe_.name + "@" + std::to_string(i);
            ledgers_.push_back(ledger);
            report_.steps.push_back({i, recipe_.steps[i].describe(), ledger});
        }
        ledger.name = recipe_.name;
        report_.final_ledger = ledger;
        try {
            report_.geography = geography(ledger);
        } catch (const Error& e) {
            throw StepError(recipe_.steps.empty() ? 0 : recipe_.steps.size() - 1, e.what());
        }

        if (recipe_.sw) run_sw(*recipe_.sw);
        if (recipe_.script) run_script(*recipe_.script);
        check_expectations();
        add_assertion_citations();
        return std::move(report_);
    }

private:
    static InvariantLedger apply(const InvariantLedger& m, const Step& step) {
        switch (step.kind) {
            case StepKind::blow_up: return blow_up(m, step.count);
            case StepKind::fiber_sum: {
                InvariantLedger out = m;
                for (int k = 0; k < step.count; ++k) out = fiber_sum_E1(out);
                return out;
            }
            case StepKind::star_surgery:
            case StepKind::rational_blowdown: return star_surgery(m, step.rule, step.simply_connected_after);
        }
        throw BadParameter("unknown step kind");
    }

    void run_sw(const SwBlock& sw) {
        const Step& surgery = recipe_.steps[sw.surgery_step];
        SwSection section;
        section.surgery_step = sw.surgery_step;
        section.rule = surgery.rule.name;
        section.ambient = ledgers_[sw.surgery_step];
        section.taubes_applicable = section.ambient.symplectic && section.ambient.b2_plus() >= 2;

        BasicClassSet candidates;
        try {
            if (sw.source.elliptic) {
                candidates = en_basic_classes(*sw.source.elliptic);
                for (const auto& e : sw.source.blowups) candidates = blowup_basic_classes(candidates, e);
            } else {
                candidates.insert(sw.source.explicit_classes.begin(), sw.source.explicit_classes.end());
            }
            table_.emplace(surgery.rule.plumbing.vertex_count(), sw.pairings);
            for (const auto& c : candidates) {
                section.candidates.push_back(c);
                section.verdicts.push_back(verdict(c));
            }
        } catch (const StepError&) {
            throw;
        } catch (const Error& e) {
            throw StepError(sw.surgery_step, e.what());
        }
        section.minimality = minimality_report(candidates, section.verdicts);

        if (!section.taubes_applicable) {
            report_.discrepancies.push_back(
                {"sw.taubes", "ambient after " + surgery.rule.name + " has b2+ = " +
                                  std::to_string(section.ambient.b2_plus()) +
                                  "; the minimality argument needs a symplectic ambient with b2+ >= 2"});
        }
        if (sw.reference_classes) {
            const BasicClassSet reference(sw.reference_classes->begin(), sw.reference_classes->end());
            for (const auto& c : candidates) {
                if (!reference.contains(c)) {
                    report_.discrepancies.push_back(
                        {"sw.reference_classes", "computed basic class " + c.to_string() +
                                                     " is absent from the reference list"});
                }
            }
            for (const auto& c : reference) {
                if (!candidates.contains(c)) {
                    report_.discrepancies.push_back(
                        {"sw.reference_classes", "reference class " + c.to_string() +
                                                     " is not among the computed basic classes"});
                }
            }
        }
        report_.sw = std::move(section);
    }

    ObstructionVerdict verdict(const ClassExpr& c) const {
        const SwBlock& sw = *recipe_.sw;
        const Step& surgery = recipe_.steps[sw.surgery_step];
        return extension_verdict(c, sw.ambient, ledgers_[sw.surgery_step], surgery.rule.plumbing, *table_,
                                 surgery.rule.filling, sw.canonical);
    }

    ObstructionVerdict verdict_for_expectation(const ClassExpr& c) const {
        try {
            return verdict(c);
        } catch (const Error& e) {
            throw StepError(recipe_.sw->surgery_step, e.what());
        }
    }

    void run_script(const BlowupScript& script) {
        ScriptSection section;
        Arrangement arr = script.initial;
        for (std::size_t k = 0; k < script.sequence.size(); ++k) {
            const std::string tag = "script[" + std::to_string(k) + "]";
            try {
                std::visit([&](const auto& action) { script_action(arr, section, tag, action); },
                           script.sequence[k]);
            } catch (const InconsistentScript& e) {
                throw InconsistentScript(tag + ": " + e.what());
            } catch (const UnknownPoint& e) {
                throw UnknownPoint(tag + ": " + e.what());
            } catch (const UnknownCurve& e) {
                throw UnknownCurve(tag + ": " + e.what());
            }
        }
        for (const auto& nf : script.fibers) {
            section.fibers.emplace_back(nf.name, verify_fiber(arr, nf.candidate));
        }
        section.defects = arr.consistency_defects();
        section.final_arrangement = std::move(arr);
        report_.script = std::move(section);
    }

    void script_action(Arrangement& arr, ScriptSection& section, const std::string&, const ScriptBlowUp& b) {
        const auto incident = arr.incident_curves(b.point);
        arr = blow_up(arr, b.point, b.then);
        std::vector<std::string> declared;
        for (const auto& d : b.then) declared.push_back(d.name);
        section.log.push_back({"blow_up", b.point + " -> e" + std::to_string(arr.exceptional_count()) +
                                              ", through " + join_names(incident) + ", new points " +
                                              join_names(declared)});
    }

    void script_action(Arrangement& arr, ScriptSection& section, const std::string& tag,
                       const ScriptExpectClass& e) {
        const DivisorClass actual = arr.curve(e.curve).cls;
        script_result(section, tag + ".class(" + e.curve + ")", e.cls.to_string(), actual.to_string(),
                      actual == e.cls);
    }

    void script_action(Arrangement& arr, ScriptSection& section, const std::string& tag,
                       const ScriptExpectSelfIntersection& e) {
        const long actual = self_intersection(arr.curve(e.curve).cls);
        script_result(section, tag + ".self_intersection(" + e.curve + ")", std::to_string(e.value),
                      std::to_string(actual), actual == e.value);
    }

    void script_action(Arrangement& arr, ScriptSection& section, const std::string& tag,
                       const ScriptExpectMultiplicity& e) {
        (void)arr.curve(e.a);
        (void)arr.curve(e.b);
        const long actual = arr.intersection_multiplicity(e.a, e.b);
        script_result(section, tag + ".multiplicity(" + e.a + "," + e.b + ")", std::to_string(e.value),
                      std::to_string(actual), actual == e.value);
    }

    void script_action(Arrangement& arr, ScriptSection& section, const std::string& tag,
                       const ScriptExpectClassEqual& e) {
        const bool actual = fiber_class_equal(arr, e.lhs, e.rhs);
        const std::string detail = total_class(arr, e.lhs).to_string() + (actual ? " == " : " != ") +
                                   total_class(arr, e.rhs).to_string();
        script_result(section, tag + ".class_equal(" + join_names(e.lhs) + "," + join_names(e.rhs) + ")",
                      e.equal ? "equal" : "different", detail, actual == e.equal);
    }

    void script_result(ScriptSection& section, std::string id, std::string expected, std::string actual,
                       bool pass) {
        section.log.push_back({"expect", id + ": " + actual + (pass ? " ok" : " MISMATCH")});
        report_.expectations.push_back({std::move(id), std::move(expected), std::move(actual), pass});
    }

    void expect(std::string id, const std::string& expected, const std::string& actual) {
        report_.expectations.push_back({std::move(id), expected, actual, expected == actual});
    }

    void check_expectations() {
        const Expectations& x = recipe_.expect;
        for (const auto& l : x.ledgers) {
            const InvariantLedger& actual = ledgers_[l.after_step];
            expect("ledger[" + std::to_string(l.after_step) + "]", pair_text(l.euler, l.signature),
                   pair_text(actual.euler, actual.signature));
        }
        const InvariantLedger& fin = report_.final_ledger;
        if (x.euler) expect("euler", std::to_string(*x.euler), std::to_string(fin.euler));
        if (x.signature) expect("signature", std::to_string(*x.signature), std::to_string(fin.signature));
        if (x.chi_h) expect("chi_h", std::to_string(*x.chi_h), std::to_string(report_.geography.chi_h));
        if (x.c1sq) expect("c1sq", std::to_string(*x.c1sq), std::to_string(report_.geography.c1sq));
        if (x.position) {
            expect("position", std::string(to_string(*x.position)), std::string(to_string(report_.geography.position)));
        }
        if (x.b2_plus_min) {
            report_.expectations.push_back({"b2_plus_min", ">= " + std::to_string(*x.b2_plus_min),
                                            std::to_string(fin.b2_plus()), fin.b2_plus() >= *x.b2_plus_min});
        }
        for (const auto& e : x.restriction_squares) {
            const Rational actual = restrict_square(e.cls, recipe_.steps[recipe_.sw->surgery_step].rule.plumbing);
            report_.expectations.push_back({"restriction_square(" + e.cls.to_string() + ")", describe_expected(e),
                                            exact_and_decimal(actual), rational_matches(e, actual)});
        }
        for (const auto& e : x.d_upper) {
            const Rational actual = verdict_for_expectation(e.cls).d_upper;
            report_.expectations.push_back({"d_upper(" + e.cls.to_string() + ")", describe_expected(e),
                                            exact_and_decimal(actual), rational_matches(e, actual)});
        }
        for (const auto& e : x.verdicts) {
            expect("verdict(" + e.cls.to_string() + ")", std::string(to_string(e.status)),
                   std::string(to_string(verdict_for_expectation(e.cls).status)));
        }
        if (x.minimality) {
            expect("minimality", std::string(to_string(*x.minimality)),
                   std::string(to_string(report_.sw->minimality.outcome)));
        }
        for (const auto& e : x.fibers) {
            const auto& fibers = report_.script->fibers;
            const auto it = std::find_if(fibers.begin(), fibers.end(), [&](const auto& f) { return f.first == e.name; });
            const FiberReport& f = it->second;
            std::string expected = e.pass ? "pass" : "fail";
            std::string actual = f.pass ? "pass" : "fail";
            bool ok = e.pass == f.pass;
            if (e.total) {
                expected += ", total " + e.total->to_string();
                actual += ", total " + f.total.to_string();
                ok = ok && *e.total == f.total;
            }
            report_.expectations.push_back({"fiber(" + e.name + ")", expected, actual, ok});
        }
        if (x.script_consistent) {
            const bool actual = report_.script->defects.empty();
            expect("script_consistent", *x.script_consistent ? "true" : "false", actual ? "true" : "false");
        }
    }

    Rational restrict_square(const ClassExpr& c, const PlumbingGraph& g) const {
        try {
            return starcalc::restrict_square(c, g, *table_);
        } catch (const Error& e) {
            throw StepError(recipe_.sw->surgery_step, e.what());
        }
    }

    void add_assertion_citations() {
        for (std::size_t i = 0; i < recipe_.steps.size(); ++i) {
            const Step& s = recipe_.steps[i];
            if (s.kind != StepKind::star_surgery && s.kind != StepKind::rational_blowdown) continue;
            const std::string where = "step " + std::to_string(i);
            report_.citations.push_back(
                {where + ": filling " + s.rule.filling.name + " (pi1 " + to_string(s.rule.filling.pi1) +
                     ") exists and glues symplectically along the boundary of " + s.rule.name,
                 "asserted, not computed"});
            report_.citations.push_back({where + ": result is " +
                                             (s.simply_connected_after ? "simply connected" : "not simply connected"),
                                         "asserted by the recipe, not computed"});
        }
        if (report_.sw) {
            report_.citations.push_back(
                {"Taubes: a symplectic 4-manifold with b2+ >= 2 has at least one pair of basic classes",
                 report_.sw->taubes_applicable ? "applicable (symplectic flag asserted, b2+ checked)"
                                               : "not applicable to this ambient"});
        }
    }

    const Recipe& recipe_;
    Report report_;
    std::vector<InvariantLedger> ledgers_;
    std::optional<PairingTable> table_;
};

}  // namespace

Report run(const Recipe& recipe) {
    return Runner(recipe).run();
}

}  // namespace starcalc
