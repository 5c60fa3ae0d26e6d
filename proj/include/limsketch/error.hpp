#pragma once

#include <stdexcept>
#include <string>

namespace limsketch {

// Base of every error raised by the library. The CLI maps the concrete
// subclass onto its exit code.
class LimsketchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (unknown identifiers, bad JSON, ...).
class InputError : public LimsketchError {
public:
    using LimsketchError::LimsketchError;
};

// A configured size cap (tuples, elements, stages of a builder) was exceeded.
class BudgetExceeded : public LimsketchError {
public:
    using LimsketchError::LimsketchError;
};

// An operation was called outside its contract (non-model codomain, pruned
// trace handed to the comparison, ...).
class PreconditionError : public LimsketchError {
public:
    using LimsketchError::LimsketchError;
};

// A checked internal invariant failed; indicates a bug or an unsupported
// fixture, never silently repaired.
class ConstructionError : public LimsketchError {
public:
    using LimsketchError::LimsketchError;
};

}  // namespace limsketch
