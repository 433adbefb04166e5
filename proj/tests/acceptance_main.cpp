// Acceptance suite: one pass/fail line per criterion, exit non-zero on any
// failure.  Tolerances and runtime ceilings are pinned in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "freechaos/chaos.hpp"
#include "freechaos/cumulants.hpp"
#include "freechaos/fock.hpp"
#include "freechaos/kernel.hpp"
#include "freechaos/laws.hpp"
#include "freechaos/partitions.hpp"
#include "test_support.hpp"

using namespace freechaos;
using C = std::complex<double>;

namespace {

struct Check {
    std::vector<std::string> problems;

    void require(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }
};

// 1. Counting golden values; |NC(m)| = C_m and the binomial link, exactly.
void criterion_counts(Check& c) {
    c.require(riordan(1) == 0, "R_1 != 0");
    c.require(riordan(2) == 1, "R_2 != 1");
    c.require(riordan(3) == 1, "R_3 != 1");
    c.require(riordan(4) == 3, "R_4 != 3");
    c.require(riordan_refined(4, 1) == 1, "R_{4,1} != 1");
    c.require(riordan_refined(4, 2) == 2, "R_{4,2} != 2");

    for (int m = 1; m <= 12; ++m) {
        BigInt count = 0;
        for_each_noncrossing(m, [&](const auto&) { ++count; });
        c.require(count == catalan(static_cast<unsigned>(m)),
                  "|NC(" + std::to_string(m) + ")| != C_m");
    }
    for (unsigned m = 0; m <= 12; ++m) {
        BigInt forward = 0, inverse = 0;
        for (unsigned j = 0; j <= m; ++j) {
            forward += binomial(m, j) * riordan(j);
            const BigInt term = binomial(m, j) * catalan(j);
            inverse += (m - j) % 2 == 0 ? term : -term;
        }
        c.require(forward == catalan(m), "binomial link fails at m=" + std::to_string(m));
        c.require(inverse == riordan(m), "inversion fails at m=" + std::to_string(m));
    }
}

// 2. Moment formulas through the cumulant transform, exact rationals.
void criterion_moment_formulas(Check& c) {
    for (const Rational& t : {Rational(1, 2), Rational(1), Rational(2), Rational(7, 3)}) {
        CumulantSequence<Rational> k;
        k.values.assign(10, Rational(0));
        k.values[1] = t;
        const auto mu = moments_from_cumulants(k, 10);
        Rational tp = 1;
        for (int m = 1; 2 * m <= 10; ++m) {
            tp *= t;
            c.require(mu.values[static_cast<size_t>(2 * m) - 1] ==
                          catalan(static_cast<unsigned>(m)).convert_to<Rational>() * tp,
                      "semicircular moment mismatch at 2m=" + std::to_string(2 * m));
            c.require(mu.values[static_cast<size_t>(2 * m) - 2] == 0,
                      "odd semicircular moment non-zero");
        }
    }
    for (const Rational& lam : {Rational(1, 2), Rational(1), Rational(2), Rational(7, 3)}) {
        const auto mu = moments_from_cumulants(free_poisson_cumulants(lam, true, 10), 10);
        for (int m = 1; m <= 10; ++m)
            c.require(mu.values[static_cast<size_t>(m) - 1] == centered_poisson_moment(lam, m),
                      "centered Poisson moment mismatch at m=" + std::to_string(m));
    }
    const Rational lam(7, 3);
    c.require(centered_poisson_moment(lam, 3) == lam, "third moment != lambda");
    c.require(centered_poisson_moment(lam, 4) == lam + 2 * lam * lam,
              "fourth moment != lambda + 2 lambda^2");
}

// 3. Quadrature cross-check against the combinatorial formulas.
void criterion_quadrature(Check& c) {
    for (double t : {0.5, 1.0, 2.0}) {
        const Law law = Law::semicircle(t);
        double tp = 1.0;
        for (int m = 1; m <= 5; ++m) {
            tp *= t;
            const double expect = to_double(catalan(static_cast<unsigned>(m))) * tp;
            const double got = quadrature_moment(law, 2 * m, 1e-11);
            c.require(std::abs(got - expect) <= 1e-8,
                      "semicircle moment 2m=" + std::to_string(2 * m) + " off by " +
                          std::to_string(std::abs(got - expect)));
        }
    }
    for (double lam : {0.5, 1.0, 2.0}) {
        const Law law = Law::centered_free_poisson(lam);
        for (int m = 1; m <= 6; ++m) {
            const double expect = centered_poisson_moment(lam, m);
            const double got = quadrature_moment(law, m, 1e-10);
            c.require(std::abs(got - expect) <= 1e-6,
                      "centered MP moment m=" + std::to_string(m) + " off at lambda=" +
                          std::to_string(lam));
        }
    }
}

// 4. The projection kernel realizes the centered free Poisson law exactly.
void criterion_poisson_fixed_point(Check& c) {
    for (int p : {1, 2, 3}) {
        const auto f = poisson_kernel<Rational>(p, p);
        for (int m = 2; m <= 8; ++m) {
            const auto report = wigner_moment(f, m);
            c.require(report.total == centered_poisson_moment(Rational(p), m),
                      "moment mismatch at p=" + std::to_string(p) + ", m=" + std::to_string(m));
            c.require(report.e_sum == 0, "off-diagonal sum non-zero for q=2");
        }
        c.require(fourth_moment_statistic(f) == Rational(2 * p * p - p),
                  "statistic != 2p^2 - p at p=" + std::to_string(p));
    }
}

// 5. Diagonal closed sequences are counted by Riordan numbers.
void criterion_d_count(Check& c) {
    for (int q : {2, 4, 6})
        for (int m = 2; m <= 8; ++m)
            c.require(BigInt(enumerate_sequences(q, m, SeqQuery::D).size()) ==
                          riordan(static_cast<unsigned>(m)),
                      "|D_m| != R_m at q=" + std::to_string(q) + ", m=" + std::to_string(m));
}

// 6. The variance identity on random mirror symmetric kernels.
void criterion_variance_identity(Check& c) {
    std::mt19937_64 rng(60001);
    for (int trial = 0; trial < 100; ++trial) {
        const int q = trial % 2 == 0 ? 2 : 4;
        const int d = 2 + static_cast<int>(rng() % 5);  // 2..6
        const Kernel f = testsupport::random_mirror_kernel(rng, q, d);
        const auto rep = variance_identity(f);
        c.require(std::abs(rep.lhs - rep.rhs) <= 1e-10 * std::max(1.0, std::abs(rep.rhs)),
                  "identity violated at trial " + std::to_string(trial) + " (q=" +
                      std::to_string(q) + ", d=" + std::to_string(d) + ")");
    }
}

// 7. Contraction engine vs Fock oracle, plus semicircular first-chaos moments.
void criterion_oracle_equivalence(Check& c) {
    std::mt19937_64 rng(70001);
    for (int trial = 0; trial < 50; ++trial) {
        const int q = trial % 2 == 0 ? 2 : 4;
        const int d = 2 + static_cast<int>(rng() % 2);  // 2..3
        const Kernel f = testsupport::random_mirror_kernel(rng, q, d);
        for (int m = 2; m <= 5; ++m) {
            const double engine = wigner_moment(f, m).total.real();
            const C oracle = oracle_moment(f, m);
            c.require(std::abs(oracle - C(engine)) <= 1e-9 * std::max(1.0, std::abs(engine)),
                      "pipelines disagree at trial " + std::to_string(trial) + ", m=" +
                          std::to_string(m));
        }
    }

    // unit kernels in the first chaos: even moments are Catalan numbers
    std::vector<Kernel> units;
    units.push_back(Kernel::from_entries(1, 2, {{FlatIndex(0), C(1.0)}}));
    units.push_back(Kernel::from_entries(
        1, 2, {{FlatIndex(0), C(std::sqrt(0.5))}, {FlatIndex(1), C(-std::sqrt(0.5))}}));
    units.push_back(Kernel::from_entries(
        1, 3,
        {{FlatIndex(0), C(1.0 / 3.0)}, {FlatIndex(1), C(2.0 / 3.0)}, {FlatIndex(2), C(-2.0 / 3.0)}}));
    for (const auto& f : units) {
        for (int k = 1; 2 * k <= 6; ++k) {
            const double expect = to_double(catalan(static_cast<unsigned>(k)));
            const C got = oracle_moment(f, 2 * k);
            c.require(std::abs(got - C(expect)) <= 1e-9 * std::max(1.0, expect),
                      "first-chaos even moment != Catalan at 2k=" + std::to_string(2 * k));
        }
    }
}

// 8. Negative control: the diagonal order-4 family is semicircular, not Poisson.
void criterion_negative_control(Check& c) {
    const double lambda = 1.0;
    const auto family = semicircle4_family(lambda);
    const std::vector<int> ns{4, 16, 64, 256};

    double prev_gap = 1e100;
    double prev_offband_norm = -1.0;
    for (int n : ns) {
        const Kernel f = family(n);
        const double m4 = wigner_moment(f, 4).total.real();
        const double gap = std::abs(m4 - 2.0 * lambda * lambda);
        c.require(gap < prev_gap, "fourth moment gap not shrinking at n=" + std::to_string(n));
        prev_gap = gap;

        const auto defect = poisson_defect(f);
        double offband_sq = 0.0;
        for (const auto& [r, v] : defect.offband_sq) offband_sq += v;
        const double offband_norm = std::sqrt(offband_sq);
        if (prev_offband_norm > 0.0) {
            const double ratio = offband_norm / prev_offband_norm;
            c.require(std::abs(ratio - 0.5) <= 0.1,
                      "offband norm ratio " + std::to_string(ratio) + " not within 20% of 1/2");
        }
        prev_offband_norm = offband_norm;

        if (n >= 16) {
            const double stat = fourth_moment_statistic(f);
            c.require(std::abs(stat - (2.0 * lambda * lambda - lambda)) >= lambda / 2.0,
                      "statistic too close to the Poisson value at n=" + std::to_string(n));
        }
    }
    c.require(prev_gap <= 0.05 * lambda * lambda, "fourth moment did not approach 2 lambda^2");
}

// 9. No non-zero order-4 kernel looks free Poisson: the defect is strictly
//    positive and the r = q-1 contraction only vanishes for the zero kernel.
void criterion_defect_positivity(Check& c) {
    std::mt19937_64 rng(90001);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 4);  // 2..5
        const Kernel f = testsupport::random_mirror_kernel(rng, 4, d);
        if (f.is_zero()) continue;  // not expected with continuous entries
        const auto defect = poisson_defect(f);
        c.require(defect.total() > 1e-12,
                  "defect not strictly positive at trial " + std::to_string(trial));
        c.require(defect.offband_sq.at(3) > 1e-12,
                  "r=q-1 contraction vanished for a non-zero kernel at trial " +
                      std::to_string(trial));
    }
    const Kernel zero(4, 3);
    c.require(poisson_defect(zero).total() == 0.0, "zero kernel has non-zero defect");
    c.require(norm_sq(contract(zero, zero, 3)) == 0.0, "zero kernel has non-zero r=q-1 norm");
}

// 10. The multiplication formula at the vector level.
void criterion_product_formula(Check& c) {
    std::mt19937_64 rng(100001);
    for (int trial = 0; trial < 50; ++trial) {
        const int q = 1 + static_cast<int>(rng() % 4);
        const int p = 1 + static_cast<int>(rng() % 4);
        const int d = 2 + static_cast<int>(rng() % 2);  // 2..3
        const Kernel f = testsupport::random_kernel(rng, q, d);
        const Kernel g = testsupport::random_kernel(rng, p, d);

        const auto vac = FockVector<C>::vacuum(d, q + p);
        const auto lhs = wigner_apply(f, wigner_apply(g, vac));
        auto rhs = FockVector<C>::zero(d, q + p);
        for (int r = 0; r <= std::min(q, p); ++r)
            rhs = add(rhs, wigner_apply(contract(f, g, r), vac));

        const auto diff = add(lhs, scale(C(-1.0), rhs));
        double worst = 0.0;
        for (const auto& [w, amp] : diff.entries()) worst = std::max(worst, std::abs(amp));
        c.require(worst <= 1e-10,
                  "product formula off by " + std::to_string(worst) + " at trial " +
                      std::to_string(trial));
    }
}

struct Criterion {
    int id;
    const char* label;
    double limit_seconds;
    std::function<void(Check&)> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "counting golden values and the Catalan-Riordan link", 10.0, criterion_counts},
        {2, "moment formulas through the cumulant transform", 10.0, criterion_moment_formulas},
        {3, "quadrature cross-check of both densities", 30.0, criterion_quadrature},
        {4, "exact free Poisson in the second chaos", 60.0, criterion_poisson_fixed_point},
        {5, "diagonal closed sequences counted by Riordan numbers", 10.0, criterion_d_count},
        {6, "variance identity on random mirror symmetric kernels", 120.0,
         criterion_variance_identity},
        {7, "contraction engine vs Fock oracle", 180.0, criterion_oracle_equivalence},
        {8, "semicircular negative control for the order-4 family", 120.0,
         criterion_negative_control},
        {9, "strictly positive Poisson defect beyond the second chaos", 60.0,
         criterion_defect_positivity},
        {10, "multiplication formula at the vector level", 60.0, criterion_product_formula},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.body(check);
        } catch (const std::exception& e) {
            check.problems.push_back(std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > criterion.limit_seconds)
            check.problems.push_back("runtime " + std::to_string(elapsed) + "s exceeds " +
                                     std::to_string(criterion.limit_seconds) + "s");

        if (check.problems.empty()) {
            std::printf("PASS criterion %2d: %s [%.2fs < %.0fs]\n", criterion.id, criterion.label,
                        elapsed, criterion.limit_seconds);
        } else {
            ++failures;
            std::printf("FAIL criterion %2d: %s [%.2fs]\n", criterion.id, criterion.label,
                        elapsed);
            for (const auto& p : check.problems) std::printf("      - %s\n", p.c_str());
        }
    }
    return failures == 0 ? 0 : 1;
}
