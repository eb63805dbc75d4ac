#include "symest/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "symest/error.hpp"

namespace symest {
namespace {

void check_theta(double theta) {
  if (!MapModel::theta_space().contains(theta)) {
    std::ostringstream msg;
    msg << "theta " << theta << " outside parameter space [-2, 0)";
    throw DomainError(msg.str());
  }
}

}  // namespace

double evaluate(double theta, double y) {
  check_theta(theta);
  if (!std::isfinite(y)) throw DomainError("map argument is not finite");
  return map_value(theta, y);
}

Orbit iterate(double theta, double y0, std::size_t k) {
  check_theta(theta);
  if (!MapModel::invariant_closure().contains(y0)) {
    throw DomainError("initial condition outside [-1, 1]");
  }
  Orbit orbit{theta, y0, {}};
  orbit.values.reserve(k);
  double y = y0;
  for (std::size_t i = 1; i <= k; ++i) {
    y = map_value(theta, y);
    if (!MapModel::invariant_closure().contains(y)) {
      throw EscapeError("orbit escaped [-1, 1]", i);
    }
    orbit.values.push_back(y);
  }
  return orbit;
}

std::vector<int> simulate_symbolic(double theta, double y0, std::size_t n) {
  const Orbit orbit = iterate(theta, y0, n);
  std::vector<int> bits;
  bits.reserve(n);
  for (double y : orbit.values) bits.push_back(y < 0.0 ? 0 : 1);
  return bits;
}

double inverse_branch(double theta, double y_next, int sign) {
  check_theta(theta);
  const double radicand = (y_next - 1.0) / theta;
  if (!(radicand >= 0.0)) {
    throw InversionDomainError("negative radicand in inverse branch", 0);
  }
  const double root = std::sqrt(radicand);
  return sign < 0 ? -root : root;
}

}  // namespace symest
