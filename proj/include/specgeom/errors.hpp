#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace specgeom {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Violated numeric precondition (negative radius, sphere cap exceeded, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A bound's geometric hypothesis does not hold for the supplied class
/// (Myers diameter cap, sign-convention mismatch, missing quantity, ...).
class HypothesisError : public Error {
public:
    using Error::Error;
};

/// Eigensolver or root-bracketing failure; carries partial diagnostics.
class SolverError : public Error {
public:
    explicit SolverError(const std::string& msg, std::vector<double> partial = {})
        : Error(msg), partial_values(std::move(partial)) {}
    std::vector<double> partial_values;
};

/// Mesh is not a closed orientable triangle surface.
class MeshValidationError : public Error {
public:
    explicit MeshValidationError(const std::string& msg, std::vector<int> edges = {})
        : Error(msg), offending_edges(std::move(edges)) {}
    std::vector<int> offending_edges;
};

/// Element quality prevents a well-posed operator (negative cotangent
/// weights, degenerate triangles).
class MeshQualityError : public Error {
public:
    using Error::Error;
};

/// Dirichlet subdomain has no interior degrees of freedom.
class DegenerateDomainError : public Error {
public:
    using Error::Error;
};

/// Malformed input file; line gives the 1-based location when known.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg, int line_no = 0)
        : Error(msg), line(line_no) {}
    int line;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace specgeom
