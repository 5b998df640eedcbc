#include "bcb/params.hpp"

#include <cmath>
#include <string>

namespace bcb {

namespace {

void check_gain(double mu, const char* name) {
  if (!std::isfinite(mu) || !(mu > 0.0)) {
    throw ValidationError(std::string(name) + " must be strictly positive (got " +
                          std::to_string(mu) + ")");
  }
}

void check_offset(double a, const char* name) {
  if (!std::isfinite(a) || a < -1.0 || a > 1.0) {
    throw ValidationError(std::string(name) + " must lie in [-1, 1] (got " +
                          std::to_string(a) + ")");
  }
}

}  // namespace

ControlParams::ControlParams(double mu_1, double mu_2, double mu_1b, double mu_2b,
                             double lambda, double a_1, double a_2, double a_1b,
                             double a_2b)
    : mu_1_(mu_1),
      mu_2_(mu_2),
      mu_1b_(mu_1b),
      mu_2b_(mu_2b),
      lambda_(lambda),
      a_1_(a_1),
      a_2_(a_2),
      a_1b_(a_1b),
      a_2b_(a_2b) {
  check_gain(mu_1_, "mu_1");
  check_gain(mu_2_, "mu_2");
  check_gain(mu_1b_, "mu_1b");
  check_gain(mu_2b_, "mu_2b");
  if (!std::isfinite(lambda_) || !(lambda_ > 0.0) || !(lambda_ < 1.0)) {
    throw ValidationError("lambda must lie strictly in (0,1) (got " +
                          std::to_string(lambda_) + ")");
  }
  check_offset(a_1_, "a_1");
  check_offset(a_2_, "a_2");
  check_offset(a_1b_, "a_1b");
  check_offset(a_2b_, "a_2b");
}

ControlParams ControlParams::common(double mu, double lambda, double a, double a0) {
  return ControlParams(mu, mu, mu, mu, lambda, a, a, a0, a0);
}

bool ControlParams::symmetric() const {
  return mu_1_ == mu_2_ && mu_1_ == mu_1b_ && mu_1_ == mu_2b_ && a_1_ == a_2_ &&
         a_1b_ == a_2b_;
}

void ControlParams::require_symmetric() const {
  if (!symmetric()) {
    throw AssumptionViolation(
        "operation requires common gains (mu_1 = mu_2 = mu_1b = mu_2b) and common "
        "offsets (a_1 = a_2, a_1b = a_2b)");
  }
}

}  // namespace bcb
