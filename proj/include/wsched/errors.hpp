#pragma once

#include <stdexcept>
#include <string>

namespace wsched {

// Instance admits no feasible solution for the requested stage.
struct InfeasibleError : std::runtime_error {
	explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// A model exceeded the configured size budget (stage-2 w*tau growth); the
// pipeline reacts by falling back to the split technique.
struct BudgetExceededError : std::runtime_error {
	explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wsched
