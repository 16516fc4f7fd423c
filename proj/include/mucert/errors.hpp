#ifndef MUCERT_ERRORS_HPP
#define MUCERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mucert {

/// Malformed or inconsistent input (bad JSON, precondition violation).
/// CLI exit status 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Request exceeds a desk-scale enumeration budget. CLI exit status 3.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

/// The working precision cannot support the requested invariant
/// ("indeterminate at this precision" and friends). CLI exit status 1:
/// an honest "don't know", not a malformed request.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mucert

#endif
