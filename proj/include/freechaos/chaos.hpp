#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "freechaos/cumulants.hpp"
#include "freechaos/errors.hpp"
#include "freechaos/kernel.hpp"

namespace freechaos {

// Max-entry distance accepted as mirror symmetric by the moment engine.
inline constexpr double kMirrorTolerance = 1e-10;
// Norm drift accepted by convergence scans.
inline constexpr double kScanNormTolerance = 1e-8;

enum class SeqClass { AOnly, BAndD, BAndE };
enum class SeqQuery { A, B, D, E };

// A contraction-depth vector (r_1..r_{m-1}) arising from iterated products of
// m order-q integrals, with the partial-degree admissibility built in.
struct ContractionSequence {
    int q = 0;
    int m = 0;
    std::vector<int> r;
    SeqClass cls = SeqClass::AOnly;

    bool in_b() const { return cls != SeqClass::AOnly; }
    std::string r_string() const;
};

// All admissible sequences of the requested class in lexicographic order.
// q in {2, 4, 6}, 2 <= m <= 8.
std::vector<ContractionSequence> enumerate_sequences(int q, int m, SeqQuery which);

const char* to_string(SeqClass cls);

template <class S>
struct MomentReport {
    S total{};                // phi[I(f)^m]
    RealOf<S> d_sum{};        // contribution of depth vectors in {0, q/2, q}
    RealOf<S> e_sum{};        // remainder of the closed sequences
    std::vector<std::pair<ContractionSequence, S>> per_sequence;
};

namespace detail {

template <class S>
void require_moment_input(const Tensor<S>& f, int m) {
    const int q = f.order();
    if (q % 2 != 0 || q < 2) throw DomainError("moment engine requires even order q >= 2");
    if (q != 2 && q != 4) throw BoundsError("moment engine supports q in {2, 4}");
    if (m < 2 || m > 8 || (q == 4 && m > 6))
        throw BoundsError("moment order bounded by m <= 8 (q=4: m <= 6)");
    if constexpr (std::is_same_v<S, Rational>) {
        if (!is_mirror_symmetric(f, Rational(0)))
            throw DomainError("moment engine requires a mirror symmetric kernel");
    } else {
        if (!is_mirror_symmetric(f, kMirrorTolerance))
            throw DomainError("moment engine requires a mirror symmetric kernel");
    }
}

inline bool is_diagonal_depth(int r, int q) { return r == 0 || r == q / 2 || r == q; }

}  // namespace detail

// phi[I(f)^m] by left-to-right iterated contraction over every closed
// sequence, reported with its split into {0, q/2, q}-valued sequences and the
// remainder.  Deterministic: sequences are evaluated in lexicographic order.
template <class S>
MomentReport<S> wigner_moment(const Tensor<S>& f, int m) {
    detail::require_moment_input(f, m);
    const int q = f.order();

    MomentReport<S> report;
    std::vector<int> rs;
    rs.reserve(static_cast<size_t>(m) - 1);

    auto dfs = [&](auto&& self, const Tensor<S>& h, int products) -> void {
        if (products == m - 1) {
            const S value = h.at(FlatIndex(0));
            ContractionSequence seq{q, m, rs, SeqClass::BAndD};
            for (int r : rs)
                if (!detail::is_diagonal_depth(r, q)) seq.cls = SeqClass::BAndE;
            if (seq.cls == SeqClass::BAndD)
                report.d_sum += ScalarTraits<S>::real(value);
            else
                report.e_sum += ScalarTraits<S>::real(value);
            report.total += value;
            report.per_sequence.emplace_back(std::move(seq), value);
            return;
        }
        const int remaining_after = m - 2 - products;  // products left after the next one
        for (int r = 0; r <= std::min(q, h.order()); ++r) {
            const int degree = h.order() + q - 2 * r;
            if (degree > remaining_after * q) continue;  // cannot close to a scalar
            rs.push_back(r);
            self(self, contract(h, f, r), products + 1);
            rs.pop_back();
        }
    };
    dfs(dfs, f, 0);
    return report;
}

// phi[I(f)^4] - 2 phi[I(f)^3].
template <class S>
RealOf<S> fourth_moment_statistic(const Tensor<S>& f) {
    const auto m4 = wigner_moment(f, 4);
    const auto m3 = wigner_moment(f, 3);
    return ScalarTraits<S>::real(m4.total) - RealOf<S>(2) * ScalarTraits<S>::real(m3.total);
}

// The multiplication formula as a kernel family: order q+p-2r -> f c_r g.
template <class S>
std::map<int, Tensor<S>> wigner_product_expand(const Tensor<S>& f, const Tensor<S>& g) {
    if (f.dim() != g.dim()) throw ShapeError("product expansion requires equal dimensions");
    std::map<int, Tensor<S>> out;
    for (int r = 0; r <= std::min(f.order(), g.order()); ++r) {
        Tensor<S> term = contract(f, g, r);
        auto [it, inserted] = out.emplace(term.order(), term);
        if (!inserted) it->second = axpy(S(1), term, it->second);
    }
    return out;
}

// Both sides of the variance identity for I(f)^2 - I(f), evaluated through
// independent routes: the left side from iterated-contraction moments, the
// right side from pairwise contraction norms.
template <class S>
struct VarianceIdentityReport {
    RealOf<S> lhs{};               // phi[F^4] - 2 phi[F^3] + phi[F^2]
    RealOf<S> rhs{};               // 2 lambda^2 + midpoint defect + offband defects
    RealOf<S> twice_lambda_sq{};
    RealOf<S> midpoint_sq{};
    std::map<int, RealOf<S>> offband_sq;
};

template <class S>
VarianceIdentityReport<S> variance_identity(const Tensor<S>& f) {
    VarianceIdentityReport<S> rep;
    const int q = f.order();
    const RealOf<S> lambda = norm_sq(f);

    rep.lhs = ScalarTraits<S>::real(wigner_moment(f, 4).total) -
              RealOf<S>(2) * ScalarTraits<S>::real(wigner_moment(f, 3).total) +
              ScalarTraits<S>::real(wigner_moment(f, 2).total);

    rep.twice_lambda_sq = RealOf<S>(2) * lambda * lambda;
    rep.midpoint_sq = norm_sq(axpy(S(-1), f, contract(f, f, q / 2)));
    rep.rhs = rep.twice_lambda_sq + rep.midpoint_sq;
    for (int r = 1; r <= q - 1; ++r) {
        if (r == q / 2) continue;
        rep.offband_sq[r] = norm_sq(contract(f, f, r));
        rep.rhs += rep.offband_sq[r];
    }
    return rep;
}

// Squared distances to the free Poisson criterion: the midpoint contraction
// must reproduce f and every other inner contraction must vanish.
template <class S>
struct DefectReport {
    RealOf<S> midpoint_sq{};
    std::map<int, RealOf<S>> offband_sq;

    RealOf<S> total() const {
        RealOf<S> t = midpoint_sq;
        for (const auto& [r, v] : offband_sq) t += v;
        return t;
    }
};

template <class S>
DefectReport<S> poisson_defect(const Tensor<S>& f) {
    const int q = f.order();
    if (q % 2 != 0 || q < 2) throw DomainError("defect requires even order q >= 2");
    if constexpr (std::is_same_v<S, Rational>) {
        if (!is_mirror_symmetric(f, Rational(0)))
            throw DomainError("defect requires a mirror symmetric kernel");
    } else {
        if (!is_mirror_symmetric(f, kMirrorTolerance))
            throw DomainError("defect requires a mirror symmetric kernel");
    }
    DefectReport<S> rep;
    rep.midpoint_sq = norm_sq(axpy(S(-1), f, contract(f, f, q / 2)));
    for (int r = 1; r <= q - 1; ++r)
        if (r != q / 2) rep.offband_sq[r] = norm_sq(contract(f, f, r));
    return rep;
}

// Checks the Cauchy-Schwarz domination of a single off-diagonal closed
// sequence: |term| <= (1 + ||f||)^{2m} ||f c_{r_j} f|| for the first
// off-diagonal depth r_j.
struct DominationReport {
    double term = 0.0;
    double bound_factor = 0.0;
    double envelope = 0.0;
    bool bounded = false;
};

DominationReport em_domination_check(const Kernel& f, const ContractionSequence& s);

// One row of a convergence scan across a kernel family.
struct ScanRow {
    int n = 0;
    double norm_sq = 0.0;
    double statistic = 0.0;               // phi[F^4] - 2 phi[F^3]
    double statistic_gap = 0.0;           // |statistic - (2 lambda^2 - lambda)|
    double defect_midpoint_sq = 0.0;
    double defect_offband_sq = 0.0;
    std::vector<double> moments;          // phi[F^m], m = 2..m_max
    std::vector<double> moment_gaps;      // |phi[F^m] - phi[Z(lambda)^m]|
};

using KernelFamily = std::function<Kernel(int)>;

// Evaluates moments, the fourth-moment statistic and the Poisson defect for
// each family member.  Trends are reported, never asserted.
std::vector<ScanRow> convergence_scan(const KernelFamily& family, double lambda, int m_max,
                                      const std::vector<int>& n_list);

// Built-in families used by the scans: the exact fixed point and the
// order-4 diagonal (semicircular-limit) negative control.
KernelFamily poisson_family(int p, int d);
KernelFamily semicircle4_family(double lambda);

}  // namespace freechaos
