#pragma once

#include <stdexcept>
#include <string>

namespace tindex {

// Base for all computation-level failures. Precondition violations use
// std::invalid_argument instead; callers can treat the two classes as
// "computation failed" vs "bad request".
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Symbol modulus dips below the Fredholm tolerance on the circle.
class NotFredholmError : public Error {
public:
    NotFredholmError(double witness_theta, double min_modulus)
        : Error("NotFredholmError",
                "symbol modulus below tolerance at theta=" + std::to_string(witness_theta)),
          witness_theta(witness_theta), min_modulus(min_modulus) {}
    double witness_theta;
    double min_modulus;
};

// Adjacent-sample phase steps too large for branch-corrected accumulation.
class GridTooCoarseError : public Error {
public:
    explicit GridTooCoarseError(double max_step)
        : Error("GridTooCoarseError",
                "phase step " + std::to_string(max_step) + " exceeds safety margin"),
          max_step(max_step) {}
    double max_step;
};

class ZeroSymbolError : public Error {
public:
    ZeroSymbolError() : Error("ZeroSymbolError", "operation undefined for the zero symbol") {}
};

// Singular-value layout has no clean gap; refusing to classify.
class InconclusiveError : public Error {
public:
    explicit InconclusiveError(const std::string& msg) : Error("InconclusiveError", msg) {}
};

class WrongRegimeError : public Error {
public:
    explicit WrongRegimeError(const std::string& msg) : Error("WrongRegimeError", msg) {}
};

class DegenerateFermiError : public Error {
public:
    explicit DegenerateFermiError(double energy)
        : Error("DegenerateFermiError",
                "energy " + std::to_string(energy) + " coincides with an eigenvalue"),
          energy(energy) {}
    double energy;
};

class OriginOnSiteError : public Error {
public:
    OriginOnSiteError() : Error("OriginOnSiteError", "flux origin too close to a lattice site") {}
};

} // namespace tindex
