// Command-line front end: combinatorial tables, law moments, chaos moments of
// kernels from files, convergence scans across built-in families, and the
// Fock-space cross-check.  Emits TSV or JSON; exits non-zero when any internal
// identity check fails, with a machine-readable failure list in the output.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "freechaos/chaos.hpp"
#include "freechaos/cumulants.hpp"
#include "freechaos/fock.hpp"
#include "freechaos/kernel.hpp"
#include "freechaos/laws.hpp"
#include "freechaos/partitions.hpp"

using json = nlohmann::ordered_json;
using namespace freechaos;
using C = std::complex<double>;

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string rat_str(const Rational& r) { return r.str(); }

struct Output {
    json doc;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> tsv_rows;
    std::vector<std::string> failures;

    void fail(const std::string& msg) { failures.push_back(msg); }

    void render(std::ostream& out, const std::string& format) {
        doc["failures"] = failures;
        if (format == "json") {
            out << doc.dump(2) << '\n';
            return;
        }
        for (size_t i = 0; i < header.size(); ++i) out << (i ? "\t" : "") << header[i];
        out << '\n';
        for (const auto& row : tsv_rows) {
            for (size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i];
            out << '\n';
        }
        for (const auto& f : failures) out << "#fail\t" << f << '\n';
    }
};

struct CommonOpts {
    std::string format = "tsv";
    std::string mode = "float";
    std::string out_path;
    double tol = 1e-6;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_mode = true) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"tsv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", opts.out_path,
                    "Write output to this file (FREECHAOS_OUT_DIR prefixes relative paths)");
    cmd->add_option("--tol", opts.tol, "Tolerance for internal identity checks")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    if (with_mode)
        cmd->add_option("--mode", opts.mode, "Numeric mode")
            ->check(CLI::IsMember({"exact", "float"}))
            ->capture_default_str();
}

int finish(Output& output, const CommonOpts& opts) {
    if (opts.out_path.empty()) {
        output.render(std::cout, opts.format);
    } else {
        std::string path = opts.out_path;
        if (const char* dir = std::getenv("FREECHAOS_OUT_DIR"); dir && *dir && path.front() != '/')
            path = std::string(dir) + "/" + path;
        std::ofstream out(path);
        if (!out) {
            std::cerr << "cannot open output file: " << path << '\n';
            return 1;
        }
        output.render(out, opts.format);
    }
    return output.failures.empty() ? 0 : 1;
}

// ---- counts ----------------------------------------------------------------

int cmd_counts(int max_m, const CommonOpts& opts) {
    const auto table = CountTable::build(max_m);
    Output output;
    output.doc["command"] = "counts";

    const int jmax = std::max(1, max_m / 2);
    output.header = {"m", "catalan", "riordan", "eq_u"};
    for (int j = 1; j <= jmax; ++j) output.header.push_back("r_" + std::to_string(j));

    json rows = json::array();
    for (int m = 0; m <= max_m; ++m) {
        // Catalan and Riordan numbers are linked binomially; verify per row.
        BigInt convolution = 0;
        for (int j = 0; j <= m; ++j)
            convolution += binomial(static_cast<unsigned>(m), static_cast<unsigned>(j)) *
                           table.riordan[static_cast<size_t>(j)];
        BigInt inversion = 0;
        for (int j = 0; j <= m; ++j) {
            const BigInt term = binomial(static_cast<unsigned>(m), static_cast<unsigned>(j)) *
                                table.catalan[static_cast<size_t>(j)];
            inversion += (m - j) % 2 == 0 ? term : -term;
        }
        const bool ok = convolution == table.catalan[static_cast<size_t>(m)] &&
                        inversion == table.riordan[static_cast<size_t>(m)];
        if (!ok) output.fail("identity violated at m=" + std::to_string(m));

        json row;
        row["m"] = m;
        row["catalan"] = table.catalan[static_cast<size_t>(m)].str();
        row["riordan"] = table.riordan[static_cast<size_t>(m)].str();
        row["eq_u"] = ok ? "ok" : "FAIL";
        json refined = json::array();
        std::vector<std::string> cells{std::to_string(m),
                                       table.catalan[static_cast<size_t>(m)].str(),
                                       table.riordan[static_cast<size_t>(m)].str(),
                                       ok ? "ok" : "FAIL"};
        for (int j = 1; j <= jmax; ++j) {
            if (m >= 1 && j <= m) {
                const auto& v = table.refined[static_cast<size_t>(m)][static_cast<size_t>(j)];
                refined.push_back(v.str());
                cells.push_back(v.str());
            } else {
                cells.emplace_back("");
            }
        }
        row["refined"] = refined;
        rows.push_back(row);
        output.tsv_rows.push_back(cells);
    }
    output.doc["rows"] = rows;
    return finish(output, opts);
}

// ---- moments ---------------------------------------------------------------

int cmd_moments(const std::string& dist, const std::string& param, int max_m,
                const std::string& method, const CommonOpts& opts) {
    Output output;
    output.doc["command"] = "moments";
    output.doc["dist"] = dist;
    output.doc["param"] = param;

    const bool exact = opts.mode == "exact";
    const bool combinatorial = method == "combinatorial" || method == "both";
    const bool quadrature = method == "quadrature" || method == "both";
    if (exact && quadrature) {
        output.fail("quadrature runs in float mode only; use --method combinatorial with --mode exact");
        return finish(output, opts);
    }
    if (max_m < 1 || max_m > (quadrature ? 10 : 14)) {
        output.fail("max-m out of range (quadrature <= 10, combinatorial <= 14)");
        return finish(output, opts);
    }

    const Rational lam_exact = rational_from_string(param);
    const double lam = to_double(lam_exact);
    if (!(lam > 0.0)) {
        output.fail("law parameter must be positive");
        return finish(output, opts);
    }

    output.header = {"m"};
    if (combinatorial) output.header.push_back("combinatorial");
    if (quadrature) output.header.push_back("quadrature");
    if (combinatorial && quadrature) output.header.push_back("gap");

    // combinatorial values through the cumulant transform
    std::vector<Rational> comb_exact;
    std::vector<double> comb;
    if (combinatorial) {
        if (dist == "semicircle") {
            CumulantSequence<Rational> k;
            k.values.assign(static_cast<size_t>(max_m), Rational(0));
            if (max_m >= 2) k.values[1] = lam_exact;
            comb_exact = moments_from_cumulants(k, max_m).values;
        } else {
            comb_exact =
                moments_from_cumulants(free_poisson_cumulants(lam_exact, true, max_m), max_m)
                    .values;
        }
        for (const auto& v : comb_exact) comb.push_back(to_double(v));
    }

    const Law law =
        dist == "semicircle" ? Law::semicircle(lam) : Law::centered_free_poisson(lam);

    json rows = json::array();
    for (int m = 1; m <= max_m; ++m) {
        json row;
        row["m"] = m;
        std::vector<std::string> cells{std::to_string(m)};
        double qv = 0.0;
        if (combinatorial) {
            if (exact) {
                row["combinatorial"] = rat_str(comb_exact[static_cast<size_t>(m) - 1]);
                cells.push_back(rat_str(comb_exact[static_cast<size_t>(m) - 1]));
            } else {
                row["combinatorial"] = comb[static_cast<size_t>(m) - 1];
                cells.push_back(fmt17(comb[static_cast<size_t>(m) - 1]));
            }
        }
        if (quadrature) {
            qv = quadrature_moment(law, m, std::max(std::min(opts.tol, 1e-10), 1e-12));
            row["quadrature"] = qv;
            cells.push_back(fmt17(qv));
        }
        if (combinatorial && quadrature) {
            const double gap = std::abs(qv - comb[static_cast<size_t>(m) - 1]);
            row["gap"] = gap;
            cells.push_back(fmt17(gap));
            if (gap > opts.tol)
                output.fail("method gap " + fmt17(gap) + " above tolerance at m=" +
                            std::to_string(m));
        }
        rows.push_back(row);
        output.tsv_rows.push_back(cells);
    }
    output.doc["rows"] = rows;
    return finish(output, opts);
}

// ---- chaos -----------------------------------------------------------------

template <class S>
void chaos_rows(const Tensor<S>& f, int m_max, bool report_sequences, bool with_oracle,
                double tol, Output& output) {
    json moments = json::array();

    auto value_cell = [&](const S& v) -> std::pair<json, std::string> {
        if constexpr (std::is_same_v<S, Rational>) {
            return {json(rat_str(v)), rat_str(v)};
        } else {
            return {json(v.real()), fmt17(v.real())};
        }
    };

    std::vector<RealOf<S>> mu(static_cast<size_t>(std::max(m_max, 4)) + 1, RealOf<S>(0));
    for (int m = 2; m <= m_max; ++m) {
        const auto report = wigner_moment(f, m);
        mu[static_cast<size_t>(m)] = ScalarTraits<S>::real(report.total);

        if constexpr (!std::is_same_v<S, Rational>) {
            if (std::abs(report.total.imag()) > tol)
                output.fail("moment m=" + std::to_string(m) + " has imaginary part " +
                            fmt17(report.total.imag()));
            const double recombined = report.d_sum + report.e_sum;
            if (std::abs(recombined - report.total.real()) >
                tol * std::max(1.0, std::abs(recombined)))
                output.fail("closed-sequence split does not sum to the total at m=" +
                            std::to_string(m));
        } else {
            if (report.d_sum + report.e_sum != report.total)
                output.fail("closed-sequence split does not sum to the total at m=" +
                            std::to_string(m));
        }

        auto [jval, cell] = value_cell(report.total);
        json row;
        row["m"] = m;
        row["moment"] = jval;
        std::vector<std::string> cells{"moment", std::to_string(m), "", "", cell};
        if (with_oracle) {
            const S oracle = oracle_moment(f, m);
            auto [joracle, ocell] = value_cell(oracle);
            row["oracle"] = joracle;
            cells.push_back(ocell);
            if constexpr (std::is_same_v<S, Rational>) {
                if (oracle != report.total)
                    output.fail("oracle disagrees with the contraction engine at m=" +
                                std::to_string(m));
            } else {
                const double gap = std::abs(oracle - report.total);
                if (gap > 1e-9 * std::max(1.0, std::abs(report.total)))
                    output.fail("oracle gap " + fmt17(gap) + " at m=" + std::to_string(m));
            }
        }
        moments.push_back(row);
        output.tsv_rows.push_back(cells);

        if (report_sequences) {
            for (const auto& [seq, value] : report.per_sequence) {
                auto [jv, vcell] = value_cell(value);
                output.tsv_rows.push_back({"sequence", std::to_string(m),
                                           seq.r_string(), to_string(seq.cls), vcell});
                output.doc["sequences"].push_back({{"m", m},
                                                   {"sequence", seq.r_string()},
                                                   {"class", to_string(seq.cls)},
                                                   {"value", jv}});
            }
        }
    }
    output.doc["moments"] = moments;

    // the fourth-moment statistic needs m = 3, 4 regardless of m_max
    for (int m : {3, 4})
        if (m > m_max)
            mu[static_cast<size_t>(m)] = ScalarTraits<S>::real(wigner_moment(f, m).total);
    const RealOf<S> statistic = mu[4] - RealOf<S>(2) * mu[3];
    if constexpr (std::is_same_v<S, Rational>) {
        output.doc["statistic"] = rat_str(statistic);
        output.tsv_rows.push_back({"statistic", "", "", "", rat_str(statistic)});
    } else {
        output.doc["statistic"] = static_cast<double>(statistic);
        output.tsv_rows.push_back({"statistic", "", "", "", fmt17(statistic)});
    }

    const auto defect = poisson_defect(f);
    auto real_cell = [&](const RealOf<S>& v) -> std::pair<json, std::string> {
        if constexpr (std::is_same_v<S, Rational>) {
            return {json(rat_str(v)), rat_str(v)};
        } else {
            return {json(v), fmt17(v)};
        }
    };
    auto [jm, mcell] = real_cell(defect.midpoint_sq);
    output.doc["defect"]["midpoint_sq"] = jm;
    output.tsv_rows.push_back({"defect_midpoint", "", "", "", mcell});
    for (const auto& [r, v] : defect.offband_sq) {
        auto [jv, vcell] = real_cell(v);
        output.doc["defect"]["offband_sq"][std::to_string(r)] = jv;
        output.tsv_rows.push_back({"defect_offband", "", std::to_string(r), "", vcell});
    }
}

int cmd_chaos(const std::string& kernel_path, int m_max, bool report_sequences, bool with_oracle,
              const CommonOpts& opts) {
    Output output;
    output.doc["command"] = "chaos";
    output.doc["kernel"] = kernel_path;
    output.header = {"record", "m", "sequence", "class", "value"};
    if (with_oracle) output.header.push_back("oracle");

    try {
        if (opts.mode == "exact") {
            const RationalKernel f = read_kernel_rational_file(kernel_path);
            chaos_rows(f, m_max, report_sequences, with_oracle, opts.tol, output);
        } else {
            const Kernel f = read_kernel_file(kernel_path);
            if (with_oracle && f.order() * m_max > 24)
                output.fail("oracle column limited to q*m <= 24");
            else
                chaos_rows(f, m_max, report_sequences, with_oracle, std::max(opts.tol, 1e-10),
                           output);
        }
    } catch (const Error& e) {
        output.fail(e.what());
    }
    return finish(output, opts);
}

// ---- scan ------------------------------------------------------------------

int cmd_scan(const std::string& family_name, int p, int d, double lambda,
             const std::vector<int>& n_list, int m_max, const CommonOpts& opts) {
    Output output;
    output.doc["command"] = "scan";
    output.doc["family"] = family_name;

    KernelFamily family;
    double rate = lambda;
    if (family_name == "poisson") {
        if (d <= 0) d = p;
        family = poisson_family(p, d);
        rate = p;
    } else {
        family = semicircle4_family(lambda);
    }

    output.header = {"n", "norm_sq", "statistic", "statistic_gap", "defect_midpoint",
                     "defect_offband"};
    for (int m = 2; m <= m_max; ++m) output.header.push_back("moment_m" + std::to_string(m));
    for (int m = 2; m <= m_max; ++m) output.header.push_back("gap_m" + std::to_string(m));

    json rows = json::array();
    try {
        for (const auto& row : convergence_scan(family, rate, m_max, n_list)) {
            json r;
            r["n"] = row.n;
            r["norm_sq"] = row.norm_sq;
            r["statistic"] = row.statistic;
            r["statistic_gap"] = row.statistic_gap;
            r["defect_midpoint_sq"] = row.defect_midpoint_sq;
            r["defect_offband_sq"] = row.defect_offband_sq;
            r["moments"] = row.moments;
            r["moment_gaps"] = row.moment_gaps;
            rows.push_back(r);
            std::vector<std::string> cells{std::to_string(row.n),
                                           fmt17(row.norm_sq),
                                           fmt17(row.statistic),
                                           fmt17(row.statistic_gap),
                                           fmt17(row.defect_midpoint_sq),
                                           fmt17(row.defect_offband_sq)};
            for (double v : row.moments) cells.push_back(fmt17(v));
            for (double v : row.moment_gaps) cells.push_back(fmt17(v));
            output.tsv_rows.push_back(cells);
        }
    } catch (const Error& e) {
        output.fail(e.what());
    }
    output.doc["rows"] = rows;
    return finish(output, opts);
}

// ---- oracle ----------------------------------------------------------------

int cmd_oracle(const std::string& kernel_path, int m, int level, const CommonOpts& opts) {
    Output output;
    output.doc["command"] = "oracle";
    output.doc["kernel"] = kernel_path;
    output.header = {"m", "level", "value", "imag"};
    try {
        if (opts.mode == "exact") {
            const RationalKernel f = read_kernel_rational_file(kernel_path);
            const Rational v = oracle_moment(f, m, level);
            const int used_level = level < 0 ? f.order() * m : level;
            output.doc["rows"] = {{{"m", m}, {"level", used_level}, {"value", rat_str(v)}}};
            output.tsv_rows.push_back(
                {std::to_string(m), std::to_string(used_level), rat_str(v), "0"});
        } else {
            const Kernel f = read_kernel_file(kernel_path);
            const C v = oracle_moment(f, m, level);
            const int used_level = level < 0 ? f.order() * m : level;
            output.doc["rows"] = {
                {{"m", m}, {"level", used_level}, {"value", v.real()}, {"imag", v.imag()}}};
            output.tsv_rows.push_back(
                {std::to_string(m), std::to_string(used_level), fmt17(v.real()), fmt17(v.imag())});
        }
    } catch (const Error& e) {
        output.fail(e.what());
    }
    return finish(output, opts);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Desk-scale computations on the free Wigner chaos: non-crossing counts, "
                 "free cumulant transforms, kernel contraction moments, and a Fock-space "
                 "cross-check"};
    app.require_subcommand(1);

    // counts
    auto* counts = app.add_subcommand("counts", "Catalan/Riordan tables with identity checks");
    int max_m = 8;
    counts->add_option("--max-m", max_m, "Largest ground size")
        ->check(CLI::Range(0, 14))
        ->capture_default_str();
    CommonOpts counts_opts;
    add_common(counts, counts_opts, /*with_mode=*/false);

    // moments
    auto* moments = app.add_subcommand("moments", "Law moments: combinatorial vs quadrature");
    std::string dist = "cpoisson", param = "1", method = "both";
    int moments_max_m = 6;
    moments->add_option("--dist", dist, "Distribution")
        ->check(CLI::IsMember({"semicircle", "cpoisson"}))
        ->capture_default_str();
    moments->add_option("--param", param, "Variance t or rate lambda (accepts p/q in exact mode)")
        ->capture_default_str();
    moments->add_option("--max-m", moments_max_m, "Largest moment order")->capture_default_str();
    moments->add_option("--method", method, "Evaluation route")
        ->check(CLI::IsMember({"combinatorial", "quadrature", "both"}))
        ->capture_default_str();
    CommonOpts moments_opts;
    add_common(moments, moments_opts);

    // chaos
    auto* chaos = app.add_subcommand("chaos", "Moments of I(f)^m for a kernel file");
    std::string kernel_path;
    int m_max = 4;
    bool report_sequences = false, with_oracle = false;
    chaos->add_option("--kernel", kernel_path, "Kernel file")->required();
    chaos->add_option("--m-max", m_max, "Largest moment order")
        ->check(CLI::Range(2, 8))
        ->capture_default_str();
    chaos->add_flag("--report-sequences", report_sequences, "Dump per-sequence values");
    chaos->add_flag("--oracle", with_oracle, "Add the Fock-space cross-check column");
    CommonOpts chaos_opts;
    chaos_opts.tol = 1e-10;
    add_common(chaos, chaos_opts);

    // scan
    auto* scan = app.add_subcommand("scan", "Convergence scan across a built-in kernel family");
    std::string family_name = "poisson";
    int p = 1, d = 0, scan_m_max = 4;
    double lambda = 1.0;
    std::vector<int> n_list;
    scan->add_option("--family", family_name, "Family name")
        ->check(CLI::IsMember({"poisson", "semicircle4"}))
        ->capture_default_str();
    scan->add_option("--p", p, "Projection rank (poisson family)")->capture_default_str();
    scan->add_option("--d", d, "Basis size (poisson family; defaults to p)");
    scan->add_option("--lambda", lambda, "Rate (semicircle4 family)")->capture_default_str();
    scan->add_option("--n-list", n_list, "Family indices")->required()->delimiter(',');
    scan->add_option("--m-max", scan_m_max, "Largest moment order")
        ->check(CLI::Range(2, 8))
        ->capture_default_str();
    CommonOpts scan_opts;
    add_common(scan, scan_opts, /*with_mode=*/false);

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Vacuum expectation through the Fock model");
    std::string oracle_kernel;
    int oracle_m = 2, oracle_level = -1;
    oracle->add_option("--kernel", oracle_kernel, "Kernel file")->required();
    oracle->add_option("--m", oracle_m, "Moment order")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    oracle->add_option("--level", oracle_level, "Fock truncation level (default q*m)");
    CommonOpts oracle_opts;
    add_common(oracle, oracle_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (counts->parsed()) return cmd_counts(max_m, counts_opts);
        if (moments->parsed())
            return cmd_moments(dist, param, moments_max_m, method, moments_opts);
        if (chaos->parsed())
            return cmd_chaos(kernel_path, m_max, report_sequences, with_oracle, chaos_opts);
        if (scan->parsed())
            return cmd_scan(family_name, p, d, lambda, n_list, scan_m_max, scan_opts);
        if (oracle->parsed()) return cmd_oracle(oracle_kernel, oracle_m, oracle_level, oracle_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
