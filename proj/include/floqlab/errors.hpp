#pragma once

#include <stdexcept>
#include <string>

namespace floqlab {

/// Base class for all numerical/contract failures thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NotHermitian : Error {
    explicit NotHermitian(const std::string& what) : Error(what) {}
};

struct NotUnitary : Error {
    explicit NotUnitary(const std::string& what) : Error(what) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& what) : Error(what) {}
};

struct DegenerateClustering : Error {
    explicit DegenerateClustering(const std::string& what) : Error(what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct BadGrid : Error {
    explicit BadGrid(const std::string& what) : Error(what) {}
};

struct NonFinite : Error {
    explicit NonFinite(const std::string& what) : Error(what) {}
};

struct QuadratureFailure : Error {
    explicit QuadratureFailure(const std::string& what) : Error(what) {}
};

struct NotConverged : Error {
    explicit NotConverged(const std::string& what) : Error(what) {}
};

struct NoPotential : Error {
    explicit NoPotential(const std::string& what) : Error(what) {}
};

struct EmptyArc : Error {
    explicit EmptyArc(const std::string& what) : Error(what) {}
};

struct NotAnEigenvalue : Error {
    explicit NotAnEigenvalue(const std::string& what) : Error(what) {}
};

struct SolveFailure : Error {
    explicit SolveFailure(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(what) {}
};

}  // namespace floqlab
