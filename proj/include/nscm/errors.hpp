#pragma once

#include <stdexcept>
#include <string>

namespace nscm {

// Violation of a model/world/query contract (out-of-range value, non-solution
// world, mismatched signatures, ...).
class SemanticError : public std::runtime_error {
public:
    explicit SemanticError(const std::string& what) : std::runtime_error(what) {}
};

// Formula text rejected by the parser. `position` is a 0-based byte offset
// into the input.
class FormulaParseError : public std::runtime_error {
public:
    FormulaParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

}  // namespace nscm
