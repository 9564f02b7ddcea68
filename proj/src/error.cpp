#include "linkexpr/error.hpp"

namespace linkexpr {

ParseError::ParseError(std::size_t line, const std::string& what)
    : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::validation: return 2;
        case ErrorKind::numerical: return 3;
        case ErrorKind::io: return 4;
    }
    return 1;
}

}  // namespace linkexpr
