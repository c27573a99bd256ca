#include "hadml/error.hpp"

#include <utility>

namespace hadml {

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string out = "invalid model, violated constraints: ";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += "; ";
        out += items[i];
    }
    return out;
}

}  // namespace

ParameterError::ParameterError(std::vector<std::string> violations)
    : DomainError(join(violations)), violations_(std::move(violations)) {}

OverflowError::OverflowError(const std::string& what, std::size_t index)
    : std::overflow_error(what + " (index " + std::to_string(index) + ")"), index_(index) {}

}  // namespace hadml
