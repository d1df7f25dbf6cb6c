#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace trpnet {

/// Base class for all trpnet errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (wrong column widths, non-numeric fields, ...).
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line_number)
        : Error(message + " (line " + std::to_string(line_number) + ")"),
          line_number_(line_number) {}
    std::size_t line_number() const noexcept { return line_number_; }

private:
    std::size_t line_number_;
};

/// Input was parsed but contained nothing usable.
class EmptyResultError : public Error {
public:
    using Error::Error;
};

/// Structured file violates its format contract (header, columns, norms).
class FormatError : public Error {
public:
    using Error::Error;
};

/// Geometric construction failed (degenerate plane fit, ...).
class GeometryError : public Error {
public:
    using Error::Error;
};

/// A named entity (atom, field) was not found.
class LookupError : public Error {
public:
    using Error::Error;
};

/// Argument outside the operation's domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Two dipoles share a position; the radiative kernels are singular there.
class SingularityError : public Error {
public:
    SingularityError() : Error("coincident dipole positions"), m_(0), n_(0) {}
    SingularityError(std::size_t m, std::size_t n)
        : Error("coincident dipole positions at indices " + std::to_string(m) +
                " and " + std::to_string(n)),
          m_(m), n_(n) {}
    std::size_t first() const noexcept { return m_; }
    std::size_t second() const noexcept { return n_; }

private:
    std::size_t m_, n_;
};

/// Problem size exceeds the configured dense-storage cap.
class CapacityError : public Error {
public:
    CapacityError(std::size_t required, std::size_t cap)
        : Error("problem size " + std::to_string(required) +
                " exceeds configured capacity " + std::to_string(cap)),
          required_(required), cap_(cap) {}
    std::size_t required() const noexcept { return required_; }
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t required_, cap_;
};

/// Numerical routine failed (non-convergence, violated sum rule, ...).
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& message, long index = -1)
        : Error(message), index_(index) {}
    long index() const noexcept { return index_; }

private:
    long index_;
};

/// Eigenvector c-norm collapsed; the eigenvalue cluster is quasi-degenerate.
class QuasiDegeneracyError : public Error {
public:
    QuasiDegeneracyError(const std::string& message, std::vector<std::size_t> cluster)
        : Error(message), cluster_(std::move(cluster)) {}
    const std::vector<std::size_t>& cluster() const noexcept { return cluster_; }

private:
    std::vector<std::size_t> cluster_;
};

} // namespace trpnet
