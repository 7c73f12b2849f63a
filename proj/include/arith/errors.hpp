#pragma once

#include <stdexcept>
#include <string>

namespace arith {

// Thrown when an enumeration or sampling budget is exhausted before a
// result could be certified. Callers must treat this as "no answer",
// never as an approximate answer.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Certification of a derivative lower bound can fail two ways: the
// hypothesis is genuinely false (sign change found), or the subdivision
// bottomed out without a verdict.
struct CertificationError : std::runtime_error {
    enum class Kind { HypothesisFails, ToleranceTooCoarse };
    Kind kind;
    CertificationError(Kind k, const std::string& what)
        : std::runtime_error(what), kind(k) {}
};

} // namespace arith
