#pragma once

namespace dsr {

// Cylinder functions of orders zero and one, wrapped so the annulus code has
// a single point of truth for conventions and domain checks. The first call
// into any of them runs a Wronskian self test (J1 Y0 - J0 Y1 = 2/(pi x)) on a
// fixed probe set and throws NumericalError if the platform implementation is
// off.
double bessel_j0(double x);
double bessel_j1(double x);  // odd in x
double bessel_y0(double x);  // x <= 0 is a domain error
double bessel_y1(double x);  // x <= 0 is a domain error

// Derivatives via the standard recurrences, used by root-polishing checks.
double bessel_j1_prime(double x);
double bessel_y1_prime(double x);

}  // namespace dsr
