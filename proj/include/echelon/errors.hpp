#pragma once

#include <stdexcept>
#include <string>

namespace echelon {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Precondition / usage errors.
struct VarTableMismatch : Error {
    VarTableMismatch() : Error("operands use different variable tables") {}
};
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error("dimension mismatch: " + msg) {}
};
struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};
struct SingularMatrix : Error {
    SingularMatrix() : Error("basis matrix is singular") {}
};
struct NotContained : Error {
    explicit NotContained(const std::string& msg) : Error("lattice containment fails: " + msg) {}
};
struct NotUnimodular : Error {
    NotUnimodular() : Error("matrix determinant is not a local unit") {}
};
struct MapUnsupported : Error {
    explicit MapUnsupported(const std::string& msg) : Error("unsupported ring map: " + msg) {}
};
struct BadParameters : Error {
    explicit BadParameters(const std::string& msg) : Error("bad parameters: " + msg) {}
};
struct RankMismatch : Error {
    explicit RankMismatch(const std::string& msg) : Error("rank mismatch: " + msg) {}
};

// Text input errors carry a location.
struct ParseError : Error {
    int line;
    int column;
    ParseError(int line_, int column_, const std::string& msg)
        : Error("parse error at line " + std::to_string(line_) + ", column " +
                std::to_string(column_) + ": " + msg),
          line(line_), column(column_) {}
};

// A structural theorem the implementation relies on failed at run time.
// Reaching this means a bug (or an input outside the supported model),
// never a plain invalid datum.
struct InternalBreach : Error {
    explicit InternalBreach(const std::string& msg) : Error("internal invariant breach: " + msg) {}
};

} // namespace echelon
