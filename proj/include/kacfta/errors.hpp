#pragma once

#include <stdexcept>
#include <string>

namespace kacfta {

/// Bad input or violated precondition; the CLI maps this to exit code 2.
struct input_error : std::invalid_argument {
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A numeric procedure failed to converge or produced nonsense; exit code 3.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace kacfta
