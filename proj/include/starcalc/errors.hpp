#pragma once

#include <stdexcept>
#include <string>

namespace starcalc {

// Root of every error raised by the engine. Callers that only care about
// "the construction failed" can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define STARCALC_DEFINE_ERROR(Name)         \
    class Name : public Error {             \
    public:                                 \
        using Error::Error;                 \
    }

// ratlin
STARCALC_DEFINE_ERROR(SingularMatrix);
STARCALC_DEFINE_ERROR(NotSymmetric);
STARCALC_DEFINE_ERROR(DimensionMismatch);
STARCALC_DEFINE_ERROR(DivisionByZero);

// shared
STARCALC_DEFINE_ERROR(BadParameter);

// plumbing
STARCALC_DEFINE_ERROR(InvalidGraph);
STARCALC_DEFINE_ERROR(InvalidFilling);

// blowup_calculus
STARCALC_DEFINE_ERROR(UnknownPoint);
STARCALC_DEFINE_ERROR(UnknownCurve);
STARCALC_DEFINE_ERROR(InconsistentScript);

// manifold_ledger
STARCALC_DEFINE_ERROR(InvalidLedger);
STARCALC_DEFINE_ERROR(NotElliptic);
STARCALC_DEFINE_ERROR(NonIntegralChiH);

// sw_analysis
STARCALC_DEFINE_ERROR(GeneratorClash);
STARCALC_DEFINE_ERROR(UnknownGenerator);
STARCALC_DEFINE_ERROR(MissingPairing);
STARCALC_DEFINE_ERROR(IndefiniteFilling);

// recipe_cli
STARCALC_DEFINE_ERROR(UnknownRule);
STARCALC_DEFINE_ERROR(SchemaViolation);

#undef STARCALC_DEFINE_ERROR

/// Malformed recipe text. `line`/`column` are 1-based and zero when the
/// problem is structural rather than lexical; `field` is a JSON pointer.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column,
               std::string field = {})
        : Error(format(message, line, column, field)),
          line_(line), column_(column), field_(std::move(field)) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& field() const noexcept { return field_; }

private:
    static std::string format(const std::string& message, std::size_t line,
                              std::size_t column, const std::string& field) {
        std::string out = "parse error";
        if (line != 0) {
            out += " at line " + std::to_string(line) + ", column " + std::to_string(column);
        }
        if (!field.empty()) {
            out += " (field " + field + ")";
        }
        return out + ": " + message;
    }

    std::size_t line_;
    std::size_t column_;
    std::string field_;
};

/// A module error raised while applying recipe step `step` (0-based).
class StepError : public Error {
public:
    StepError(std::size_t step, const std::string& what)
        : Error("step " + std::to_string(step) + ": " + what), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

}  // namespace starcalc
