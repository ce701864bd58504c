#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polyvert {

// Raised when a truncated-series computation runs out of determined
// coefficients before reaching the requested order.  `achievable_num`
// is the highest exponent numerator (over `ram`) that is still known.
class WindowExhausted : public std::runtime_error {
public:
    WindowExhausted(const std::string& what, std::int64_t achievable_num, std::int64_t ram)
        : std::runtime_error(what + " (achievable order: " + std::to_string(achievable_num) +
                             "/" + std::to_string(ram) + ")"),
          achievable_num(achievable_num),
          ram(ram) {}

    std::int64_t achievable_num;
    std::int64_t ram;
};

// Raised when a coefficient recursion hits a degenerate (zero-multiplier)
// equation at an exponent where no seed datum is available.
class ResonanceError : public std::runtime_error {
public:
    ResonanceError(const std::string& what, std::int64_t at_num, std::int64_t ram)
        : std::runtime_error(what + " (resonant exponent: " + std::to_string(at_num) +
                             "/" + std::to_string(ram) + ")"),
          at_num(at_num),
          ram(ram) {}

    std::int64_t at_num;
    std::int64_t ram;
};

}  // namespace polyvert
