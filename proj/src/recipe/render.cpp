#include <sstream>

#include <json.hpp>

#include "starcalc/recipe.hpp"

namespace starcalc {

namespace {

using ojson = nlohmann::ordered_json;

constexpr std::string_view kDimensionNote =
    "d_upper = (c^2 - (c|_G)^2 - 2e(X) - 3sigma(X)) / 4, with the filling term bounded by 0; "
    "the Euler characteristic term is 2e(X)";

std::string provenance_text(const AppliedOperation& op) {
    switch (op.kind) {
        case OperationKind::elliptic_surface: return op.detail;
        case OperationKind::explicit_base: return "base " + op.detail;
        case OperationKind::fiber_sum: return "fiber sum " + op.detail;
        case OperationKind::blow_up: return "blow up " + op.detail;
        case OperationKind::blow_down: return "blow down " + op.detail;
        case OperationKind::star_surgery: return "surgery " + op.detail;
    }
    return op.detail;
}

ojson ledger_json(const InvariantLedger& m) {
    ojson j;
    j["name"] = m.name;
    j["euler"] = m.euler;
    j["signature"] = m.signature;
    j["b2"] = m.b2();
    j["b2_plus"] = m.b2_plus();
    j["b2_minus"] = m.b2_minus();
    j["simply_connected"] = m.simply_connected;
    j["symplectic"] = m.symplectic;
    j["provenance"] = ojson::array();
    for (const auto& op : m.provenance) j["provenance"].push_back(provenance_text(op));
    return j;
}

ojson rational_json(const Rational& r) {
    return ojson{{"exact", r.to_string()}, {"decimal", r.to_decimal(2)}};
}

ojson geography_json(const GeographyVerdict& g) {
    return ojson{{"chi_h", g.chi_h}, {"c1sq", g.c1sq}, {"position", std::string(to_string(g.position))}};
}

ojson report_json(const Report& r, bool strict) {
    ojson j;
    j["recipe"] = r.recipe;
    j["description"] = r.description;
    j["schema"] = kRecipeSchemaVersion;
    j["base"] = ledger_json(r.base);
    j["steps"] = ojson::array();
    for (const auto& s : r.steps) {
        j["steps"].push_back(ojson{{"index", s.index},
                                   {"operation", s.operation},
                                   {"euler", s.ledger.euler},
                                   {"signature", s.ledger.signature},
                                   {"simply_connected", s.ledger.simply_connected}});
    }
    j["final"] = ledger_json(r.final_ledger);
    j["geography"] = geography_json(r.geography);

    if (r.sw) {
        const SwSection& sw = *r.sw;
        ojson s;
        s["surgery_step"] = sw.surgery_step;
        s["rule"] = sw.rule;
        s["ambient"] = ojson{{"euler", sw.ambient.euler},
                             {"signature", sw.ambient.signature},
                             {"b2_plus", sw.ambient.b2_plus()}};
        s["taubes_applicable"] = sw.taubes_applicable;
        s["dimension_note"] = kDimensionNote;
        s["verdicts"] = ojson::array();
        for (const auto& v : sw.verdicts) {
            s["verdicts"].push_back(ojson{{"class", v.cls.to_string()},
                                          {"class_square", v.class_square},
                                          {"restriction_square", rational_json(v.restriction_square)},
                                          {"d_upper", rational_json(v.d_upper)},
                                          {"status", std::string(to_string(v.status))},
                                          {"filling_form_verified", v.filling_form_verified}});
        }
        ojson survivors = ojson::array();
        for (const auto& c : sw.minimality.survivors) survivors.push_back(c.to_string());
        s["minimality"] = ojson{{"outcome", std::string(to_string(sw.minimality.outcome))},
                                {"survivors", survivors},
                                {"summary", sw.minimality.summary}};
        j["sw"] = s;
    }

    if (r.script) {
        const ScriptSection& sc = *r.script;
        ojson s;
        s["log"] = ojson::array();
        for (const auto& e : sc.log) s["log"].push_back(ojson{{"action", e.action}, {"detail", e.detail}});
        s["curves"] = ojson::array();
        for (const auto& c : sc.final_arrangement.curves()) {
            s["curves"].push_back(ojson{{"name", c.name},
                                        {"class", c.cls.to_string()},
                                        {"self_intersection", self_intersection(c.cls)}});
        }
        s["fibers"] = ojson::array();
        for (const auto& [name, f] : sc.fibers) {
            ojson squares = ojson::object();
            for (const auto& [curve, sq] : f.self_intersections) squares[curve] = sq;
            s["fibers"].push_back(ojson{{"name", name},
                                        {"type", f.label},
                                        {"total", f.total.to_string()},
                                        {"self_intersections", squares},
                                        {"pairings", f.pairings},
                                        {"pass", f.pass},
                                        {"problems", f.problems}});
        }
        s["defects"] = ojson::array();
        for (const auto& d : sc.defects) {
            s["defects"].push_back(ojson{{"curves", {d.curves.first, d.curves.second}},
                                         {"class_pairing", d.class_pairing},
                                         {"located", d.located_multiplicity}});
        }
        j["blowup_script"] = s;
    }

    j["expectations"] = ojson::array();
    for (const auto& e : r.expectations) {
        j["expectations"].push_back(
            ojson{{"id", e.id}, {"expected", e.expected}, {"actual", e.actual}, {"pass", e.pass}});
    }
    j["discrepancies"] = ojson::array();
    for (const auto& d : r.discrepancies) j["discrepancies"].push_back(ojson{{"id", d.id}, {"message", d.message}});
    j["citations"] = ojson::array();
    for (const auto& c : r.citations) j["citations"].push_back(ojson{{"fact", c.fact}, {"source", c.source}});
    j["strict"] = strict;
    j["passed"] = r.passed(strict);
    return j;
}

void text_ledger(std::ostream& out, const InvariantLedger& m) {
    out << "e=" << m.euler << " sigma=" << m.signature << " b2+=" << m.b2_plus() << " b2-=" << m.b2_minus()
        << (m.simply_connected ? " simply-connected" : "") << (m.symplectic ? " symplectic" : "");
}

}  // namespace

std::string render_machine(const Report& report, bool strict) {
    return report_json(report, strict).dump(2) + "\n";
}

std::string render_text(const Report& r, bool strict) {
    std::ostringstream out;
    out << "== " << r.recipe << " ==\n";
    if (!r.description.empty()) out << r.description << "\n";
    out << "base " << r.base.name << ": ";
    text_ledger(out, r.base);
    out << "\n";
    for (const auto& s : r.steps) {
        out << "  [" << s.index << "] " << s.operation << " -> (" << s.ledger.euler << ", " << s.ledger.signature
            << ")\n";
    }
    out << "final: ";
    text_ledger(out, r.final_ledger);
    out << "\n";
    out << "geography: chi_h=" << r.geography.chi_h << " c1^2=" << r.geography.c1sq << " "
        << to_string(r.geography.position) << "\n";

    if (r.sw) {
        const SwSection& sw = *r.sw;
        out << "SW obstruction across " << sw.rule << " (ambient e=" << sw.ambient.euler
            << " sigma=" << sw.ambient.signature << ")\n";
        out << "  " << kDimensionNote << "\n";
        for (const auto& v : sw.verdicts) {
            out << "  " << v.cls.to_string() << ": c^2=" << v.class_square
                << " (c|_G)^2=" << v.restriction_square.to_string() << " [" << v.restriction_square.to_decimal(2)
                << "] d<=" << v.d_upper.to_string() << " [" << v.d_upper.to_decimal(2) << "] "
                << to_string(v.status) << "\n";
        }
        out << "  minimality: " << to_string(sw.minimality.outcome) << " (" << sw.minimality.summary << ")\n";
    }

    if (r.script) {
        out << "blow-up script\n";
        for (const auto& e : r.script->log) out << "  " << e.action << " " << e.detail << "\n";
        for (const auto& [name, f] : r.script->fibers) {
            out << "  fiber " << name << " as " << f.label << ": " << (f.pass ? "pass" : "FAIL") << ", total "
                << f.total.to_string() << "\n";
            for (const auto& p : f.problems) out << "    " << p << "\n";
        }
        out << "  unlocated intersections: " << r.script->defects.size() << "\n";
    }

    out << "expectations: " << (r.expectations.size() - r.failed_expectations()) << "/" << r.expectations.size()
        << " pass\n";
    for (const auto& e : r.expectations) {
        out << "  " << (e.pass ? "ok   " : "FAIL ") << e.id << ": expected " << e.expected << ", got " << e.actual
            << "\n";
    }
    for (const auto& d : r.discrepancies) out << "  note " << d.id << ": " << d.message << "\n";
    if (!r.citations.empty()) {
        out << "asserted facts\n";
        for (const auto& c : r.citations) out << "  - " << c.fact << " [" << c.source << "]\n";
    }
    out << (r.passed(strict) ? "PASS" : "FAIL") << "\n";
    return out.str();
}

std::string render_batch_text(const BatchSummary& summary, bool strict) {
    std::ostringstream out;
    for (const auto& e : summary.entries) {
        if (!e.report) {
            out << "ERROR " << e.source << ": " << e.error << "\n";
            continue;
        }
        const Report& r = *e.report;
        out << (r.passed(strict) ? "PASS  " : "FAIL  ") << e.source << "  (" << r.final_ledger.euler << ", "
            << r.final_ledger.signature << ") chi_h=" << r.geography.chi_h << " c1^2=" << r.geography.c1sq
            << "  " << (r.expectations.size() - r.failed_expectations()) << "/" << r.expectations.size() << "\n";
        for (const auto& x : r.expectations) {
            if (!x.pass) out << "      failed " << x.id << ": expected " << x.expected << ", got " << x.actual << "\n";
        }
        if (strict) {
            for (const auto& d : r.discrepancies) out << "      discrepancy " << d.id << ": " << d.message << "\n";
        }
    }
    out << summary.passed << " passed, " << summary.failed << " failed, " << summary.errors << " errors\n";
    return out.str();
}

std::string render_batch_machine(const BatchSummary& summary, bool strict) {
    ojson j;
    j["strict"] = strict;
    j["passed"] = summary.passed;
    j["failed"] = summary.failed;
    j["errors"] = summary.errors;
    j["exit_code"] = summary.exit_code();
    j["recipes"] = ojson::array();
    for (const auto& e : summary.entries) {
        ojson entry{{"source", e.source}};
        if (e.report) {
            entry["report"] = report_json(*e.report, strict);
        } else {
            entry["error"] = e.error;
        }
        j["recipes"].push_back(entry);
    }
    return j.dump(2) + "\n";
}

}  // namespace starcalc
