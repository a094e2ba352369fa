#pragma once

#include <stdexcept>
#include <string>

namespace nuca {

// Decision procedures never return a wrong verdict: when a resource cap is
// hit they throw instead of guessing.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nuca
