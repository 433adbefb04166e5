#include "freechaos/chaos.hpp"

#include <algorithm>

namespace freechaos {

std::string ContractionSequence::r_string() const {
    std::string out;
    for (size_t i = 0; i < r.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(r[i]);
    }
    return out;
}

const char* to_string(SeqClass cls) {
    switch (cls) {
        case SeqClass::AOnly: return "A";
        case SeqClass::BAndD: return "D";
        case SeqClass::BAndE: return "E";
    }
    return "?";
}

std::vector<ContractionSequence> enumerate_sequences(int q, int m, SeqQuery which) {
    if (q != 2 && q != 4 && q != 6) throw BoundsError("sequence enumeration supports q in {2, 4, 6}");
    if (m < 2 || m > 8) throw BoundsError("sequence enumeration supports 2 <= m <= 8");

    std::vector<ContractionSequence> out;
    std::vector<int> rs;
    rs.reserve(static_cast<size_t>(m) - 1);

    auto classify = [&](int degree) {
        if (degree != 0) return SeqClass::AOnly;
        for (int r : rs)
            if (!detail::is_diagonal_depth(r, q)) return SeqClass::BAndE;
        return SeqClass::BAndD;
    };

    auto dfs = [&](auto&& self, int degree) -> void {
        if (static_cast<int>(rs.size()) == m - 1) {
            const SeqClass cls = classify(degree);
            const bool keep = which == SeqQuery::A ||
                              (which == SeqQuery::B && cls != SeqClass::AOnly) ||
                              (which == SeqQuery::D && cls == SeqClass::BAndD) ||
                              (which == SeqQuery::E && cls == SeqClass::BAndE);
            if (keep) out.push_back(ContractionSequence{q, m, rs, cls});
            return;
        }
        for (int r = 0; r <= std::min(q, degree); ++r) {
            rs.push_back(r);
            self(self, degree + q - 2 * r);
            rs.pop_back();
        }
    };
    dfs(dfs, q);
    return out;
}

DominationReport em_domination_check(const Kernel& f, const ContractionSequence& s) {
    if (s.q != f.order())
        throw ShapeError("sequence order does not match the kernel");
    if (s.cls != SeqClass::BAndE)
        throw ClassificationError("domination check applies to off-diagonal closed sequences only");

    DominationReport rep;
    Kernel h = f;
    for (int r : s.r) h = contract(h, f, r);
    if (h.order() != 0) throw ClassificationError("sequence does not close to a scalar");
    rep.term = std::abs(h.at(FlatIndex(0)));

    int first_offband = -1;
    for (int r : s.r)
        if (!detail::is_diagonal_depth(r, s.q)) {
            first_offband = r;
            break;
        }
    rep.bound_factor = std::sqrt(norm_sq(contract(f, f, first_offband)));
    rep.envelope = std::pow(1.0 + std::sqrt(norm_sq(f)), 2 * s.m);
    rep.bounded = rep.term <= rep.envelope * rep.bound_factor + 1e-12;
    return rep;
}

std::vector<ScanRow> convergence_scan(const KernelFamily& family, double lambda, int m_max,
                                      const std::vector<int>& n_list) {
    if (m_max < 2) throw BoundsError("scan requires m_max >= 2");
    std::vector<ScanRow> rows;
    rows.reserve(n_list.size());
    for (int n : n_list) {
        const Kernel f = family(n);
        ScanRow row;
        row.n = n;
        row.norm_sq = norm_sq(f);
        if (std::abs(row.norm_sq - lambda) > kScanNormTolerance)
            throw NormalizationError("family member n=" + std::to_string(n) +
                                     " drifted from the prescribed norm");

        std::vector<double> mu(static_cast<size_t>(m_max) + 1, 0.0);
        for (int m = 2; m <= m_max; ++m) {
            mu[static_cast<size_t>(m)] = wigner_moment(f, m).total.real();
            row.moments.push_back(mu[static_cast<size_t>(m)]);
            row.moment_gaps.push_back(
                std::abs(mu[static_cast<size_t>(m)] - centered_poisson_moment(lambda, m)));
        }
        row.statistic = (m_max >= 4 ? mu[4] : wigner_moment(f, 4).total.real()) -
                        2.0 * (m_max >= 3 ? mu[3] : wigner_moment(f, 3).total.real());
        row.statistic_gap = std::abs(row.statistic - (2.0 * lambda * lambda - lambda));

        const auto defect = poisson_defect(f);
        row.defect_midpoint_sq = defect.midpoint_sq;
        for (const auto& [r, v] : defect.offband_sq) row.defect_offband_sq += v;
        rows.push_back(std::move(row));
    }
    return rows;
}

KernelFamily poisson_family(int p, int d) {
    const Kernel fixed = poisson_kernel<std::complex<double>>(p, d);
    return [fixed](int) { return fixed; };
}

KernelFamily semicircle4_family(double lambda) {
    if (!(lambda > 0.0)) throw DomainError("family rate must be positive");
    return [lambda](int n) {
        if (n < 1) throw DomainError("family index must be positive");
        return diagonal_kernel<std::complex<double>>(
            4, n, n, std::complex<double>(std::sqrt(lambda / n), 0.0));
    };
}

}  // namespace freechaos
