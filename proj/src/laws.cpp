#include "freechaos/laws.hpp"

#include <cmath>

#include "freechaos/quadrature.hpp"

namespace freechaos {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 1.57079632679489661923;

void require_positive(double p) {
    if (!(p > 0.0)) throw DomainError("law parameter must be positive");
}
}  // namespace

Law Law::semicircle(double t) {
    require_positive(t);
    return Law{Kind::Semicircle, t};
}

Law Law::free_poisson(double lambda) {
    require_positive(lambda);
    return Law{Kind::FreePoisson, lambda};
}

Law Law::centered_free_poisson(double lambda) {
    require_positive(lambda);
    return Law{Kind::CenteredFreePoisson, lambda};
}

double Law::atom_mass() const {
    if (kind == Kind::Semicircle) return 0.0;
    return param <= 1.0 ? 1.0 - param : 0.0;
}

double Law::atom_position() const {
    return kind == Kind::CenteredFreePoisson ? -param : 0.0;
}

std::pair<double, double> Law::support() const {
    const double p = param;
    switch (kind) {
        case Kind::Semicircle:
            return {-2.0 * std::sqrt(p), 2.0 * std::sqrt(p)};
        case Kind::FreePoisson: {
            const double s = std::sqrt(p);
            return {(1.0 - s) * (1.0 - s), (1.0 + s) * (1.0 + s)};
        }
        case Kind::CenteredFreePoisson: {
            const double s = std::sqrt(p);
            return {(1.0 - s) * (1.0 - s) - p, (1.0 + s) * (1.0 + s) - p};
        }
    }
    return {0.0, 0.0};
}

double density(const Law& law, double x) {
    const double p = law.param;
    switch (law.kind) {
        case Law::Kind::Semicircle: {
            const double disc = 4.0 * p - x * x;
            return disc > 0.0 ? std::sqrt(disc) / (2.0 * kPi * p) : 0.0;
        }
        case Law::Kind::FreePoisson: {
            const double centre = 1.0 + p;
            const double disc = 4.0 * p - (x - centre) * (x - centre);
            return (disc > 0.0 && x > 0.0) ? std::sqrt(disc) / (2.0 * kPi * x) : 0.0;
        }
        case Law::Kind::CenteredFreePoisson:
            return density(Law::free_poisson(p), x + p);
    }
    return 0.0;
}

double quadrature_moment(const Law& law, int m, double tol) {
    if (m < 0 || m > 10) throw BoundsError("quadrature moments support 0 <= m <= 10");
    if (!(tol >= 1e-12)) throw DomainError("quadrature tolerance must be >= 1e-12");
    const double p = law.param;

    if (law.kind == Law::Kind::Semicircle) {
        // x = 2 sqrt(t) sin(theta): the integrand becomes smooth.
        const double root = 2.0 * std::sqrt(p);
        auto integrand = [&](double theta) {
            const double s = std::sin(theta);
            const double c = std::cos(theta);
            return std::pow(root * s, m) * (2.0 / kPi) * c * c;
        };
        return adaptive_simpson(integrand, -kHalfPi, kHalfPi, tol);
    }

    const double shift = law.kind == Law::Kind::CenteredFreePoisson ? p : 0.0;
    const double centre = 1.0 + p;
    const double radius = 2.0 * std::sqrt(p);
    const bool critical = std::abs(std::sqrt(p) - 1.0) < 1e-12;

    // x = centre + radius sin(theta).  At lambda = 1 the 1/x factor cancels
    // against cos^2 via 1 - sin^2; elsewhere x stays bounded away from zero.
    auto integrand = [&](double theta) {
        const double s = std::sin(theta);
        const double c = std::cos(theta);
        const double x = centre + radius * s;
        const double power = std::pow(x - shift, m);
        if (critical) return power * (1.0 - s) / kPi;
        return power * (4.0 * p * c * c) / (2.0 * kPi * x);
    };

    double moment = adaptive_simpson(integrand, -kHalfPi, kHalfPi, tol);
    const double atom = law.atom_mass();
    if (atom > 0.0) moment += atom * std::pow(law.atom_position(), m);
    return moment;
}

}  // namespace freechaos
