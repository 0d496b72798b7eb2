#pragma once

#include <stdexcept>
#include <string>

namespace motint {

// Domain errors: structurally valid input that violates an operation's
// mathematical precondition (unbounded set passed to volume, divergent
// summation, non-unimodular matrix where one is required, ...).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Schema errors: a document that does not parse against the expected shape.
struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// Resource guard tripped (configurable budgets on enumeration work).
struct BudgetError : DomainError {
  explicit BudgetError(const std::string& what) : DomainError(what) {}
};

}  // namespace motint
