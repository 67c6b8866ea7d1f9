#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "starcalc/blowup.hpp"
#include "starcalc/ledger.hpp"
#include "starcalc/plumbing.hpp"
#include "starcalc/sw.hpp"

namespace starcalc {

inline constexpr int kRecipeSchemaVersion = 1;

struct BaseSpec {
    std::optional<int> elliptic;            // E(n)
    std::optional<InvariantLedger> ledger;  // explicit (e, sigma)
};

enum class StepKind { blow_up, fiber_sum, star_surgery, rational_blowdown };

std::string_view to_string(StepKind k);

struct Step {
    StepKind kind = StepKind::blow_up;
    int count = 1;  // blow-ups, fiber sums, or p for a rational blow-down
    StarSurgeryRule rule{"", PlumbingGraph::linear_chain({-1}), FillingProfile{}};
    bool simply_connected_after = true;
    std::string note;

    std::string describe() const;
};

struct BasicClassSource {
    std::optional<int> elliptic;        // en_basic_classes(n)
    std::vector<std::string> blowups;   // blow-up formula applications, in order
    std::vector<ClassExpr> explicit_classes;
};

struct SwBlock {
    std::size_t surgery_step = 0;
    AmbientPairing ambient;
    BasicClassSource source;
    std::optional<std::vector<ClassExpr>> reference_classes;
    std::map<std::string, IntVector> pairings;
    std::optional<ClassExpr> canonical;
};

struct ScriptBlowUp {
    std::string point;
    std::vector<PointDeclaration> then;
};
struct ScriptExpectClass {
    std::string curve;
    DivisorClass cls;
};
struct ScriptExpectSelfIntersection {
    std::string curve;
    long value = 0;
};
struct ScriptExpectMultiplicity {
    std::string a;
    std::string b;
    long value = 0;
};
struct ScriptExpectClassEqual {
    std::vector<std::string> lhs;
    std::vector<std::string> rhs;
    bool equal = true;
};
using ScriptAction = std::variant<ScriptBlowUp, ScriptExpectClass, ScriptExpectSelfIntersection,
                                  ScriptExpectMultiplicity, ScriptExpectClassEqual>;

struct NamedFiber {
    std::string name;
    FiberCandidate candidate;
};

struct BlowupScript {
    Arrangement initial;
    std::vector<ScriptAction> sequence;
    std::vector<NamedFiber> fibers;
};

struct ExpectedLedger {
    std::size_t after_step = 0;
    long euler = 0;
    long signature = 0;
};
struct ExpectedRational {
    ClassExpr cls;
    std::optional<Rational> exact;
    std::optional<Rational> printed;  // a decimal as printed in the source, compared to 0.01
};
struct ExpectedVerdict {
    ClassExpr cls;
    ObstructionStatus status = ObstructionStatus::obstructed;
};
struct ExpectedFiber {
    std::string name;
    bool pass = true;
    std::optional<DivisorClass> total;
};

struct Expectations {
    std::vector<ExpectedLedger> ledgers;
    std::optional<long> euler;
    std::optional<long> signature;
    std::optional<long> chi_h;
    std::optional<long> c1sq;
    std::optional<GeographyPosition> position;
    std::optional<long> b2_plus_min;
    std::vector<ExpectedRational> restriction_squares;
    std::vector<ExpectedRational> d_upper;
    std::vector<ExpectedVerdict> verdicts;
    std::optional<MinimalityOutcome> minimality;
    std::vector<ExpectedFiber> fibers;
    std::optional<bool> script_consistent;
};

struct Citation {
    std::string fact;
    std::string source;
};

struct Recipe {
    int schema = kRecipeSchemaVersion;
    std::string name;
    std::string description;
    BaseSpec base;
    std::vector<Step> steps;
    std::optional<SwBlock> sw;
    std::optional<BlowupScript> script;
    Expectations expect;
    std::vector<Citation> citations;
};

/*
 * Parses and fully validates a recipe document (JSON, "schema": 1).
 *
 * Throws ParseError for malformed JSON (with line/column), missing, mistyped
 * or unknown fields (with the JSON pointer of the field); UnknownRule for an
 * unresolvable star surgery name; SchemaViolation for semantic violations
 * such as a pairing vector whose length differs from the plumbing.
 */
Recipe parse_recipe(std::string_view text);

// ---- reports --------------------------------------------------------------

struct StepRecord {
    std::size_t index = 0;
    std::string operation;
    InvariantLedger ledger;
};

struct ExpectationResult {
    std::string id;
    std::string expected;
    std::string actual;
    bool pass = false;
};

struct Discrepancy {
    std::string id;
    std::string message;
};

struct SwSection {
    std::size_t surgery_step = 0;
    std::string rule;
    InvariantLedger ambient;
    bool taubes_applicable = false;
    std::vector<ClassExpr> candidates;
    std::vector<ObstructionVerdict> verdicts;
    MinimalityReport minimality;
};

struct ScriptLogEntry {
    std::string action;
    std::string detail;
};

struct ScriptSection {
    Arrangement final_arrangement;
    std::vector<ScriptLogEntry> log;
    std::vector<std::pair<std::string, FiberReport>> fibers;
    std::vector<ConsistencyDefect> defects;
};

struct Report {
    std::string recipe;
    std::string description;
    InvariantLedger base;
    std::vector<StepRecord> steps;
    InvariantLedger final_ledger;
    GeographyVerdict geography;
    std::optional<SwSection> sw;
    std::optional<ScriptSection> script;
    std::vector<ExpectationResult> expectations;
    std::vector<Discrepancy> discrepancies;
    std::vector<Citation> citations;

    std::size_t failed_expectations() const;
    /// All expectations pass; with `strict`, also no discrepancies.
    bool passed(bool strict = false) const;
};

/// Applies every step, evaluates the SW block and blow-up script, and checks
/// expectations. Module errors raised by a step come back as StepError.
Report run(const Recipe& recipe);

/// Human-readable report.
std::string render_text(const Report& report, bool strict = false);

/// Machine report (JSON). Deterministic: equal reports give identical bytes.
std::string render_machine(const Report& report, bool strict = false);

// ---- batches, corpus, chart ----------------------------------------------

struct BatchEntry {
    std::string source;  // path or corpus name
    std::optional<Report> report;
    std::string error;   // non-empty when the recipe could not be read, parsed or run
    bool unreadable = false;  // IO or parse failure, as opposed to a failure while running
};

struct BatchSummary {
    std::vector<BatchEntry> entries;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t errors = 0;

    /// 0 all pass, 1 some expectation failed, 2 a recipe could not be read or parsed.
    int exit_code() const;
};

struct RecipeSource {
    std::string name;
    std::string text;
};

/// Recipe files (*.json) directly inside `dir`, sorted by path. Throws BadParameter.
std::vector<std::filesystem::path> collect_recipe_files(const std::filesystem::path& dir);

/// Runs each recipe independently on up to `parallelism` threads; results keep input order.
BatchSummary batch(const std::vector<RecipeSource>& sources, unsigned parallelism, bool strict = false);

/// Reads every path (IO errors are recorded per entry) and runs them as a batch.
/// Throws BadParameter on an empty list.
BatchSummary batch(const std::vector<std::filesystem::path>& paths, unsigned parallelism,
                   bool strict = false);

/// Recipes bundled into the binary, sorted by name.
const std::vector<RecipeSource>& embedded_corpus();

std::string render_batch_text(const BatchSummary& summary, bool strict = false);
std::string render_batch_machine(const BatchSummary& summary, bool strict = false);

struct ChartPoint {
    std::string name;
    GeographyVerdict verdict;
};

/// CSV with header "name,chi_h,c1sq,position".
std::string chart_csv(const std::vector<ChartPoint>& points);

/// Scatter plot of the points with the Noether and half Noether lines.
std::string chart_svg(const std::vector<ChartPoint>& points);

}  // namespace starcalc
