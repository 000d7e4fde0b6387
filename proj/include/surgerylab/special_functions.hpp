#ifndef SURGERYLAB_SPECIAL_FUNCTIONS_HPP
#define SURGERYLAB_SPECIAL_FUNCTIONS_HPP

#include <complex>

namespace surgerylab {

// Complex dilogarithm Li_2(z), accurate to ~1e-15 away from the branch cut.
std::complex<double> dilog(std::complex<double> z);

// Bloch-Wigner function D(z) = Im Li_2(z) + log|z| arg(1 - z): the hyperbolic
// volume of the ideal tetrahedron with shape z.
double bloch_wigner(std::complex<double> z);

// Lobachevsky function L(theta) = -int_0^theta log|2 sin t| dt, evaluated by
// the zeta-accelerated series; pi-periodic and odd.  Independent of dilog():
// it is the volume oracle for the regular-tetrahedron checks.
double lobachevsky(double theta);

// Catalan's constant by direct series summation (oracle use only).
double catalan_constant();

}  // namespace surgerylab

#endif
