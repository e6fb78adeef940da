#pragma once

/**
 * @file errors.hpp
 * @brief Error taxonomy shared across modules.
 *
 * Three situations must stay distinguishable all the way up to the CLI exit
 * code: bad input (config or argument validation), an exhausted step/probe
 * budget (the result is honestly "not certified", with partial output), and
 * a broken internal invariant (a bug or numerical breakdown that must never
 * be papered over as a result).
 */

#include <stdexcept>
#include <string>

namespace triwalk {

/// Invalid configuration or argument; CLI exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A step/probe budget ran out before certification; CLI exit code 3.
struct BudgetExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An internal invariant failed; CLI exit code 4. Never caught internally.
struct InternalInvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace triwalk
