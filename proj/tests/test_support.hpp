#pragma once

// Shared helpers for the unit and acceptance suites: brute-force oracles kept
// independent of the library code paths they check, plus seeded random data.

#include <complex>
#include <random>
#include <vector>

#include "freechaos/kernel.hpp"
#include "freechaos/partitions.hpp"

namespace testsupport {

// Every set partition of {1..m} via restricted-growth strings.  Used as the
// independent enumeration oracle (the library recurses on first blocks).
inline std::vector<freechaos::Partition> all_set_partitions(int m) {
    std::vector<freechaos::Partition> out;
    std::vector<int> label(static_cast<size_t>(m), 0);
    auto rec = [&](auto&& self, int pos, int used) -> void {
        if (pos == m) {
            std::vector<std::vector<int>> blocks(static_cast<size_t>(used));
            for (int e = 0; e < m; ++e)
                blocks[static_cast<size_t>(label[static_cast<size_t>(e)])].push_back(e + 1);
            out.push_back(freechaos::Partition::from_blocks(m, std::move(blocks)));
            return;
        }
        for (int b = 0; b <= used; ++b) {
            label[static_cast<size_t>(pos)] = b;
            self(self, pos + 1, b == used ? used + 1 : used);
        }
    };
    rec(rec, 0, 0);
    return out;
}

// Literal nested-loop contraction: sums f(i..., y_r..y_1) g(y_1..y_r, j...)
// over all index tuples, with explicit multi-indices throughout.
template <class S>
freechaos::Tensor<S> contract_bruteforce(const freechaos::Tensor<S>& f,
                                         const freechaos::Tensor<S>& g, int r) {
    const int q = f.order();
    const int p = g.order();
    const int d = f.dim();
    const int n = q + p - 2 * r;

    std::vector<S> dense(static_cast<size_t>(freechaos::detail::flat_pow(d, n)), S(0));
    std::vector<int> free_idx(static_cast<size_t>(n), 0);
    std::vector<int> sum_idx(static_cast<size_t>(r), 0);

    auto advance = [&](std::vector<int>& idx) {
        for (size_t k = idx.size(); k-- > 0;) {
            if (++idx[k] < d) return true;
            idx[k] = 0;
        }
        return false;
    };

    size_t out_flat = 0;
    do {
        S sum(0);
        std::fill(sum_idx.begin(), sum_idx.end(), 0);
        do {
            std::vector<int> fi(free_idx.begin(), free_idx.begin() + (q - r));
            for (int k = r; k >= 1; --k) fi.push_back(sum_idx[static_cast<size_t>(k - 1)]);
            std::vector<int> gi(sum_idx.begin(), sum_idx.end());
            for (int k = q - r; k < n; ++k) gi.push_back(free_idx[static_cast<size_t>(k)]);
            sum += f.at(fi) * g.at(gi);
        } while (r > 0 && advance(sum_idx));
        dense[out_flat++] = sum;
    } while (n > 0 && advance(free_idx));

    return freechaos::Tensor<S>::from_dense(n, d, dense);
}

inline freechaos::Kernel random_kernel(std::mt19937_64& rng, int order, int dim,
                                       bool real_only = false) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const auto size = static_cast<size_t>(freechaos::detail::flat_pow(dim, order));
    std::vector<std::complex<double>> dense(size);
    for (auto& c : dense)
        c = real_only ? std::complex<double>(uni(rng), 0.0)
                      : std::complex<double>(uni(rng), uni(rng));
    return freechaos::Kernel::from_dense(order, dim, dense);
}

inline freechaos::Kernel mirror_symmetrize(const freechaos::Kernel& f) {
    return freechaos::scale(std::complex<double>(0.5),
                            freechaos::axpy(std::complex<double>(1.0), freechaos::adjoint(f), f));
}

inline freechaos::Kernel random_mirror_kernel(std::mt19937_64& rng, int order, int dim) {
    return mirror_symmetrize(random_kernel(rng, order, dim, /*real_only=*/true));
}

}  // namespace testsupport
