#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <string>

#include "freechaos/errors.hpp"

namespace freechaos {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact binomial coefficient; zero for k > n.
BigInt binomial(unsigned n, unsigned k);

double to_double(const BigInt& v);
double to_double(const Rational& v);
inline double to_double(double v) { return v; }

// Exact value of a decimal literal such as "-1.25" or "3e-2"; also accepts
// plain fractions like "7/3".
Rational rational_from_string(const std::string& text);

// --- scalar abstraction shared by tensors, sequences and the Fock model ---
//
// Two scalar modes are supported: std::complex<double> for numeric work and
// Rational (real) for exact identities on integer-coefficient inputs.

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<std::complex<double>> {
    using Real = double;
    static std::complex<double> conj(const std::complex<double>& v) { return std::conj(v); }
    static Real real(const std::complex<double>& v) { return v.real(); }
    static Real abs_sq(const std::complex<double>& v) { return std::norm(v); }
    static double abs(const std::complex<double>& v) { return std::abs(v); }
    static bool is_zero(const std::complex<double>& v) { return v == std::complex<double>(0.0); }
    static std::complex<double> from_real(Real r) { return {r, 0.0}; }
};

template <>
struct ScalarTraits<Rational> {
    using Real = Rational;
    static Rational conj(const Rational& v) { return v; }
    static Real real(const Rational& v) { return v; }
    static Real abs_sq(const Rational& v) { return v * v; }
    static Rational abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }
    static bool is_zero(const Rational& v) { return v.is_zero(); }
    static Rational from_real(Real r) { return r; }
};

template <>
struct ScalarTraits<double> {
    using Real = double;
    static double conj(double v) { return v; }
    static Real real(double v) { return v; }
    static Real abs_sq(double v) { return v * v; }
    static double abs(double v) { return v < 0 ? -v : v; }
    static bool is_zero(double v) { return v == 0.0; }
    static double from_real(Real r) { return r; }
};

template <class S>
using RealOf = typename ScalarTraits<S>::Real;

}  // namespace freechaos
