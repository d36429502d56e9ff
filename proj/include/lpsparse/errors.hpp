#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace lpsparse {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Precondition or argument-domain violation (bad epsilon, wrong sizes, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A decomposition or iteration failed to produce a usable result.
class NumericalError : public Error {
public:
    using Error::Error;
};

class RankDeficientError : public NumericalError {
public:
    RankDeficientError(const std::string& what, Eigen::Index index)
        : NumericalError(what), index_(index) {}

    /// Position (in the ascending singular value ordering) of the first
    /// singular value that fell under the rank tolerance.
    Eigen::Index index() const noexcept { return index_; }

private:
    Eigen::Index index_;
};

class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, Eigen::VectorXd last_iterate, int sweeps)
        : NumericalError(what), last_iterate_(std::move(last_iterate)), sweeps_(sweeps) {}

    const Eigen::VectorXd& last_iterate() const noexcept { return last_iterate_; }
    int sweeps() const noexcept { return sweeps_; }

private:
    Eigen::VectorXd last_iterate_;
    int sweeps_;
};

/// Malformed input file. `line()` is 1-based; 0 means the file itself is missing.
class ParseError : public Error {
public:
    ParseError(std::string file, std::size_t line, const std::string& detail)
        : Error(file + (line ? ":" + std::to_string(line) : std::string()) + ": " + detail),
          file_(std::move(file)),
          line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

}  // namespace lpsparse
