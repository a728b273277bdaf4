#include "cyberdyn/error.hpp"

namespace cyberdyn {

std::string_view category_name(ErrorCategory category) noexcept
{
    switch (category) {
    case ErrorCategory::InvalidArgument: return "invalid-argument";
    case ErrorCategory::ParseError: return "parse-error";
    case ErrorCategory::ConvergenceError: return "convergence-error";
    case ErrorCategory::CapacityError: return "capacity-error";
    }
    return "unknown";
}

std::string ParseError::format(const std::string& message, std::size_t line, const std::string& field)
{
    std::string out;
    if (line > 0)
        out += "line " + std::to_string(line) + ": ";
    if (!field.empty())
        out += field + ": ";
    return out + message;
}

} // namespace cyberdyn
