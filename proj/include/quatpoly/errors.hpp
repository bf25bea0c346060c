#ifndef QUATPOLY_ERRORS_HPP
#define QUATPOLY_ERRORS_HPP

#include <cstdio>
#include <stdexcept>
#include <string>

namespace quatpoly {

/// An iterative solver stopped before reaching its tolerance.
class convergence_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Short scientific form for residuals in messages.
inline std::string format_residual(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

/// A computed object failed one of its own consistency checks.
/// `invariant()` names the check that failed.
class invariant_error : public std::runtime_error
{
public:
  invariant_error(std::string invariant, const std::string& what)
    : std::runtime_error(invariant + ": " + what), invariant_(std::move(invariant))
  {}

  const std::string& invariant() const noexcept { return invariant_; }

private:
  std::string invariant_;
};

/// An input lies outside the domain of an operation (point outside the ball,
/// inadmissible weights, rank-deficient frame, ...).
class domain_error : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

} // namespace quatpoly

#endif // QUATPOLY_ERRORS_HPP
