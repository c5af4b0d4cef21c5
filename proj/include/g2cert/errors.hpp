#ifndef G2CERT_ERRORS_HPP
#define G2CERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace g2cert {

// Base class for all engine errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct UndeclaredSymbol : Error {
    explicit UndeclaredSymbol(const std::string& name)
        : Error("undeclared symbol: " + name), symbol(name) {}
    std::string symbol;
};

struct ZeroDenominator : Error {
    ZeroDenominator() : Error("denominator normalizes to zero") {}
};

struct PoleAtPoint : Error {
    PoleAtPoint() : Error("denominator vanishes at evaluation point") {}
};

struct InconsistentAlgebraicValue : Error {
    explicit InconsistentAlgebraicValue(const std::string& name)
        : Error("value bound to algebraic atom " + name + " violates its relation") {}
};

struct SyntaxError : Error {
    SyntaxError(std::size_t pos, const std::string& expected, const std::string& got)
        : Error("syntax error at position " + std::to_string(pos) + ": expected " + expected +
                ", got " + got),
          position(pos),
          expected(expected) {}
    std::size_t position;
    std::string expected;
};

struct ContextMismatch : Error {
    ContextMismatch() : Error("operands belong to different contexts") {}
};

struct DegreeOverflow : Error {
    DegreeOverflow() : Error("wedge product exceeds chart dimension") {}
};

struct DegenerateBasis : Error {
    DegenerateBasis() : Error("basis forms are linearly dependent over the function field") {}
};

struct SingularJacobian : Error {
    explicit SingularJacobian(const std::string& detail)
        : Error("Jacobian is singular: " + detail) {}
};

struct UnknownModel : Error {
    explicit UnknownModel(const std::string& name) : Error("unknown model: " + name) {}
};

struct UnknownCheck : Error {
    explicit UnknownCheck(const std::string& name) : Error("unknown check: " + name) {}
};

struct MissingParam : Error {
    explicit MissingParam(const std::string& name) : Error("missing model parameter: " + name) {}
};

struct MissingDerivativeRule : Error {
    explicit MissingDerivativeRule(const std::string& name)
        : Error("atom " + name + " has no derivative rule (jet chain truncated too early)") {}
};

struct SchemaError : Error {
    SchemaError(const std::string& path, const std::string& field, const std::string& detail)
        : Error("model file " + path + ": field '" + field + "': " + detail) {}
};

struct AnnihilationFailure : Error {
    explicit AnnihilationFailure(const std::string& detail)
        : Error("loaded forms do not annihilate loaded fields: " + detail) {}
};

struct IoError : Error {
    explicit IoError(const std::string& detail) : Error("io error: " + detail) {}
};

struct ExtractionMismatch : Error {
    explicit ExtractionMismatch(const std::string& detail)
        : Error("obstruction residual does not factor as expected: " + detail) {}
};

struct RankDeficient : Error {
    explicit RankDeficient(const std::string& detail)
        : Error("sample system rank deficient: " + detail) {}
};

}  // namespace g2cert

#endif
