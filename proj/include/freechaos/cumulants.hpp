#pragma once

#include <vector>

#include "freechaos/errors.hpp"
#include "freechaos/numeric.hpp"
#include "freechaos/partitions.hpp"

namespace freechaos {

// Free cumulant / moment sequences.  The numeric mode (exact Rational vs
// binary64) is the template parameter, fixed at construction.
template <class T>
struct CumulantSequence {
    std::vector<T> values;  // kappa_1 .. kappa_M
};

template <class T>
struct MomentSequence {
    std::vector<T> values;  // mu_1 .. mu_M
};

namespace detail {

// Product of kappa_{|b|} over the blocks of one partition.
template <class T>
T block_product(const std::vector<std::vector<int>>& blocks, const std::vector<T>& kappa) {
    T prod = T(1);
    for (const auto& b : blocks) prod *= kappa[b.size() - 1];
    return prod;
}

}  // namespace detail

// mu_m = sum over NC(m) of prod_b kappa_{|b|}.  Enumerates NC(m) directly.
template <class T>
MomentSequence<T> moments_from_cumulants(const CumulantSequence<T>& kappa, int M) {
    if (M < 1) throw BoundsError("sequence length must be >= 1");
    if (M > kMaxEnumeratedGround)
        throw BoundsError("moment transform bounded by m <= " +
                          std::to_string(kMaxEnumeratedGround));
    if (static_cast<int>(kappa.values.size()) < M)
        throw ShapeError("cumulant sequence shorter than requested length");

    MomentSequence<T> mu;
    mu.values.assign(static_cast<size_t>(M), T(0));
    for (int m = 1; m <= M; ++m) {
        T sum = T(0);
        for_each_noncrossing(m, [&](const std::vector<std::vector<int>>& blocks) {
            sum += detail::block_product(blocks, kappa.values);
        });
        mu.values[static_cast<size_t>(m) - 1] = sum;
    }
    return mu;
}

// Inverse transform: solves the non-crossing relation recursively in m.  The
// single-block partition contributes kappa_m with coefficient one, so
// kappa_m = mu_m - (sum over multi-block partitions).
template <class T>
CumulantSequence<T> cumulants_from_moments(const MomentSequence<T>& mu, int M) {
    if (M < 1) throw BoundsError("sequence length must be >= 1");
    if (M > kMaxEnumeratedGround)
        throw BoundsError("moment transform bounded by m <= " +
                          std::to_string(kMaxEnumeratedGround));
    if (static_cast<int>(mu.values.size()) < M)
        throw ShapeError("moment sequence shorter than requested length");

    CumulantSequence<T> kappa;
    kappa.values.assign(static_cast<size_t>(M), T(0));
    for (int m = 1; m <= M; ++m) {
        T rest = T(0);
        for_each_noncrossing(m, [&](const std::vector<std::vector<int>>& blocks) {
            if (blocks.size() == 1) return;  // the kappa_m term itself
            rest += detail::block_product(blocks, kappa.values);
        });
        kappa.values[static_cast<size_t>(m) - 1] = mu.values[static_cast<size_t>(m) - 1] - rest;
    }
    return kappa;
}

// kappa_m = lambda for all m (free Poisson); centering zeroes kappa_1 only.
template <class T>
CumulantSequence<T> free_poisson_cumulants(const T& lambda, bool centered, int M) {
    if (!(lambda > T(0))) throw DomainError("free Poisson rate must be positive");
    if (M < 1) throw BoundsError("sequence length must be >= 1");
    CumulantSequence<T> kappa;
    kappa.values.assign(static_cast<size_t>(M), lambda);
    if (centered) kappa.values[0] = T(0);
    return kappa;
}

// Moment of the centered free Poisson law: sum_j lambda^j R_{m,j}.
template <class T>
T centered_poisson_moment(const T& lambda, int m) {
    if (!(lambda > T(0))) throw DomainError("free Poisson rate must be positive");
    if (m < 1 || m > kMaxEnumeratedGround)
        throw BoundsError("moment order bounded by m <= " +
                          std::to_string(kMaxEnumeratedGround));
    T sum = T(0);
    T power = T(1);
    for (int j = 1; j <= m; ++j) {
        power *= lambda;
        const BigInt r = riordan_refined(m, j);
        if (r != 0) sum += power * r.convert_to<T>();
    }
    return sum;
}

// Entrywise sum, modeling the cumulants of a sum of freely independent
// variables.
template <class T>
CumulantSequence<T> sum_cumulants(const CumulantSequence<T>& a, const CumulantSequence<T>& b) {
    if (a.values.size() != b.values.size())
        throw ShapeError("cumulant sequences have different lengths");
    CumulantSequence<T> out = a;
    for (size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
    return out;
}

}  // namespace freechaos
