#pragma once

// Reference solutions written from textbook formulas, independent of the
// library code they check.

#include <array>
#include <cstddef>
#include <vector>

namespace oracle {

/// First `count` positive roots of tan(a) = a.
std::vector<double> tan_roots(std::size_t count);

/// Sphere of radius R, uniform initial c0, constant outward surface flux
/// N [mol/(m^2 s)] from t = 0 (Carslaw & Jaeger series):
///   c(R,t) = c0 - (N R / D) [3 D t / R^2 + 1/5 - 2 sum exp(-a_k^2 D t / R^2) / a_k^2]
double sphere_surface_constant_flux(double c0, double flux, double radius, double diffusivity, double t,
                                    std::size_t terms = 4000);

/// Same solution at interior radius r (r > 0).
double sphere_constant_flux(double c0, double flux, double radius, double diffusivity, double r, double t,
                            std::size_t terms = 4000);

/// Volume average of r^p over the shell [r1, r2].
double shell_average_power(double r1, double r2, int p);

/// exp(A t) for a 2x2 matrix with distinct real eigenvalues, via Sylvester's
/// formula (stable for widely separated negative eigenvalues).
std::array<double, 4> expm2(const std::array<double, 4>& a, double t);

}  // namespace oracle
