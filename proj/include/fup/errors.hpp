#pragma once

#include <stdexcept>
#include <string>

namespace fup {

/* Requested computation exceeds the configured enumeration/search budgets.
 * Callers may retry with smaller parameters or raised limits. */
class feasibility_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/* An internal cross-check that must hold mathematically failed. This is never
 * swallowed: it either aborts the operation or surfaces as exit code 4. */
class verification_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/* Iterative eigensolver ran out of its iteration budget. Carries the last
 * two Rayleigh quotients for diagnosis. */
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double rayleigh_prev, double rayleigh_last)
      : std::runtime_error(what), rayleigh_prev(rayleigh_prev), rayleigh_last(rayleigh_last) {}

  double rayleigh_prev;
  double rayleigh_last;
};

}  // namespace fup
