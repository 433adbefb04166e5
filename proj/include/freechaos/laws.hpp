#pragma once

#include <utility>

#include "freechaos/errors.hpp"

namespace freechaos {

// Semicircle and (centered) free Poisson / Marchenko-Pastur laws.
//
// For rate lambda <= 1 the free Poisson law carries an atom of mass
// 1 - lambda at zero; the continuous part has total mass min(1, lambda).
struct Law {
    enum class Kind { Semicircle, FreePoisson, CenteredFreePoisson };

    Kind kind;
    double param;  // variance t, or rate lambda

    static Law semicircle(double t);
    static Law free_poisson(double lambda);
    static Law centered_free_poisson(double lambda);

    double atom_mass() const;
    double atom_position() const;
    // Support of the continuous part.
    std::pair<double, double> support() const;
};

// Continuous density at x (atoms excluded); zero outside the support.
double density(const Law& law, double x);

// m-th moment by adaptive quadrature after a trigonometric substitution that
// removes the square-root endpoint behaviour; includes the atom contribution.
// Requires m <= 10 and tol >= 1e-12.
double quadrature_moment(const Law& law, int m, double tol = 1e-10);

}  // namespace freechaos
