#ifndef RIKIT_QUADRATURE_HPP
#define RIKIT_QUADRATURE_HPP

#include <functional>

#include "rikit/domain.hpp"

namespace rikit {

// Tanh-sinh quadrature on a finite interval. Robust against integrable
// endpoint singularities; refines the step until the relative change drops
// below tol or max_level is reached.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, int max_level = 12);

// Integral over [a, inf) via the substitution x = a + (1-u)/u on u in (0,1].
double tanh_sinh_to_infinity(const std::function<double(double)>& f, double a,
                             double rel_tol = 1e-10, int max_level = 12);

}  // namespace rikit

#endif  // RIKIT_QUADRATURE_HPP
