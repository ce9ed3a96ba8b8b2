#pragma once

#include <stdexcept>
#include <string>

namespace rns {

// ============================================================================
// Error hierarchy.  Every failure mode the library can signal maps to a small
// set of classes, each with a stable process exit code used by the CLI:
//   2 config/parameter, 3 admissibility, 4 vacuum, 5 blowup, 6 domain size,
//   7 profile integration budget.
// ============================================================================

class Error : public std::runtime_error {
  public:
    Error(int exit_code, const std::string& what) : std::runtime_error(what), code_(exit_code) {}
    int exit_code() const { return code_; }

  private:
    int code_;
};

// Malformed config file, unknown key, or a parameter violating a type invariant.
class ConfigError : public Error {
  public:
    explicit ConfigError(const std::string& what) : Error(2, what) {}
};

// Lax condition violated, relaxation time above its admissible bound, or a
// degenerate denominator in the profile equation.
class AdmissibilityError : public Error {
  public:
    explicit AdmissibilityError(const std::string& what) : Error(3, what) {}
};

// Shock of (numerically) zero strength where a genuine jump is required.
class DegenerateShockError : public Error {
  public:
    explicit DegenerateShockError(const std::string& what) : Error(3, what) {}
};

// End states not connectable by a 1-shock followed by a 2-shock.
class NotDoubleShockError : public Error {
  public:
    explicit NotDoubleShockError(const std::string& what) : Error(3, what) {}
};

// Specific volume driven to (or below) zero.
class VacuumError : public Error {
  public:
    explicit VacuumError(const std::string& what) : Error(4, what) {}
};

// NaN/Inf or nonpositive volume detected during time stepping.
class SolverBlowupError : public Error {
  public:
    explicit SolverBlowupError(const std::string& what) : Error(5, what) {}
};

// Wave content reached the domain boundary, or initial tails do not fit.
class DomainTooSmallError : public Error {
  public:
    explicit DomainTooSmallError(const std::string& what) : Error(6, what) {}
};

// Profile integration exceeded its arc-length budget without closing the tail.
class ProfileDivergenceError : public Error {
  public:
    explicit ProfileDivergenceError(const std::string& what) : Error(7, what) {}
};

}  // namespace rns
