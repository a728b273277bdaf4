#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cyberdyn {

enum class ErrorCategory { InvalidArgument, ParseError, ConvergenceError, CapacityError };

/// Stable machine-readable name, e.g. "invalid-argument".
std::string_view category_name(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& message)
        : std::runtime_error(message), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& message)
        : Error(ErrorCategory::InvalidArgument, message) {}
};

/// Malformed input file. `line` is 1-based, 0 when unknown; `field` is a JSON path such as "edges[3]".
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line = 0, std::string field = {})
        : Error(ErrorCategory::ParseError, format(message, line, field)),
          line_(line), field_(std::move(field)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    static std::string format(const std::string& message, std::size_t line, const std::string& field);

    std::size_t line_;
    std::string field_;
};

/// Power iteration did not reach the requested residual. Carries the last iterate's estimate.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& message, double last_lambda1, std::size_t iterations, double residual)
        : Error(ErrorCategory::ConvergenceError, message),
          last_lambda1_(last_lambda1), iterations_(iterations), residual_(residual) {}

    double last_lambda1() const noexcept { return last_lambda1_; }
    std::size_t iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    double last_lambda1_;
    std::size_t iterations_;
    double residual_;
};

class CapacityError : public Error {
public:
    explicit CapacityError(const std::string& message)
        : Error(ErrorCategory::CapacityError, message) {}
};

} // namespace cyberdyn
