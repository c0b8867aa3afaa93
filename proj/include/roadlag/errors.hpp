#pragma once

#include <stdexcept>
#include <string>

namespace roadlag {

/// Base class for all recoverable toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input documents: bad JSON, duplicate ids,
/// dangling endpoints, id-namespace collisions.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its stated precondition
/// (non-transitive input, wrong degree, unknown vertex, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A configured search budget was exhausted before the search finished.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// An internal invariant failed. These are bugs or mathematical
/// impossibilities, never user errors.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void contract_check(bool ok, const std::string& what) {
    if (!ok) throw ContractViolation(what);
}

}  // namespace roadlag
