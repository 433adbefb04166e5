// Python bindings for the main operations: counting tables, the cumulant
// transform, law densities/moments, kernel contractions, chaos moments and
// the Fock-space oracle.  Multi-indices are 0-based on this surface; the
// kernel text format stays 1-based.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <fstream>
#include <sstream>

#include "freechaos/chaos.hpp"
#include "freechaos/cumulants.hpp"
#include "freechaos/fock.hpp"
#include "freechaos/kernel.hpp"
#include "freechaos/laws.hpp"
#include "freechaos/partitions.hpp"

namespace py = pybind11;
using namespace freechaos;
using C = std::complex<double>;

namespace {

py::int_ to_py_int(const BigInt& v) {
    return py::cast<py::int_>(py::module_::import("builtins").attr("int")(v.str()));
}

Law law_from_name(const std::string& kind, double param) {
    if (kind == "semicircle") return Law::semicircle(param);
    if (kind == "free_poisson") return Law::free_poisson(param);
    if (kind == "centered_free_poisson") return Law::centered_free_poisson(param);
    throw DomainError("unknown law kind: " + kind);
}

SeqQuery query_from_name(const std::string& name) {
    if (name == "A") return SeqQuery::A;
    if (name == "B") return SeqQuery::B;
    if (name == "D") return SeqQuery::D;
    if (name == "E") return SeqQuery::E;
    throw DomainError("sequence class must be one of A, B, D, E");
}

Kernel kernel_from_entries(int order, int dim,
                           const std::vector<std::pair<std::vector<int>, C>>& entries) {
    Kernel probe(order, dim);
    std::vector<Kernel::Entry> flat;
    flat.reserve(entries.size());
    for (const auto& [idx, val] : entries) flat.emplace_back(probe.flatten(idx), val);
    return Kernel::from_entries(order, dim, std::move(flat));
}

py::dict moment_report_dict(const MomentReport<C>& report) {
    py::dict out;
    out["total"] = report.total;
    out["d_sum"] = report.d_sum;
    out["e_sum"] = report.e_sum;
    py::list per;
    for (const auto& [seq, value] : report.per_sequence) {
        py::dict item;
        item["r"] = seq.r;
        item["class"] = to_string(seq.cls);
        item["value"] = value;
        per.append(item);
    }
    out["per_sequence"] = per;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Moments of free Wigner chaos elements from finite-rank kernels, "
              "non-crossing partition counts, and the free Poisson law";

    py::register_exception<BoundsError>(m, "BoundsError", PyExc_ValueError);
    py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
    py::register_exception<ClassificationError>(m, "ClassificationError", PyExc_ValueError);
    py::register_exception<NormalizationError>(m, "NormalizationError", PyExc_ValueError);
    py::register_exception<QuadratureError>(m, "QuadratureFailure", PyExc_ArithmeticError);

    // counting
    m.def("catalan", [](unsigned mm) { return to_py_int(catalan(mm)); }, py::arg("m"));
    m.def("riordan", [](unsigned mm) { return to_py_int(riordan(mm)); }, py::arg("m"));
    m.def("riordan_refined",
          [](int mm, int j) { return to_py_int(riordan_refined(mm, j)); }, py::arg("m"),
          py::arg("j"));
    m.def("enumerate_nc",
          [](int mm) {
              py::list out;
              for (const auto& p : enumerate_nc(mm)) out.append(p.blocks);
              return out;
          },
          py::arg("m"), "Non-crossing partitions of {1..m} in canonical lexicographic order");
    m.def("is_noncrossing",
          [](int mm, const std::vector<std::vector<int>>& blocks) {
              return is_noncrossing(Partition::from_blocks(mm, blocks));
          },
          py::arg("m"), py::arg("blocks"));

    // cumulant transform (binary64 surface)
    m.def("moments_from_cumulants",
          [](const std::vector<double>& kappa, int M) {
              return moments_from_cumulants(CumulantSequence<double>{kappa}, M).values;
          },
          py::arg("cumulants"), py::arg("m"));
    m.def("cumulants_from_moments",
          [](const std::vector<double>& mu, int M) {
              return cumulants_from_moments(MomentSequence<double>{mu}, M).values;
          },
          py::arg("moments"), py::arg("m"));
    m.def("free_poisson_cumulants",
          [](double lam, bool centered, int M) {
              return free_poisson_cumulants(lam, centered, M).values;
          },
          py::arg("rate"), py::arg("centered"), py::arg("m"));
    m.def("centered_poisson_moment",
          [](double lam, int mm) { return centered_poisson_moment(lam, mm); }, py::arg("rate"),
          py::arg("m"));

    // laws
    m.def("density",
          [](const std::string& kind, double param, double x) {
              return density(law_from_name(kind, param), x);
          },
          py::arg("kind"), py::arg("param"), py::arg("x"));
    m.def("quadrature_moment",
          [](const std::string& kind, double param, int mm, double tol) {
              return quadrature_moment(law_from_name(kind, param), mm, tol);
          },
          py::arg("kind"), py::arg("param"), py::arg("m"), py::arg("tol") = 1e-10);

    // kernels
    py::class_<Kernel>(m, "Kernel")
        .def(py::init<int, int>(), py::arg("order"), py::arg("dim"))
        .def_static("from_entries", &kernel_from_entries, py::arg("order"), py::arg("dim"),
                    py::arg("entries"),
                    "Build from [(multi_index, value)] with 0-based indices")
        .def_property_readonly("order", &Kernel::order)
        .def_property_readonly("dim", &Kernel::dim)
        .def("at", [](const Kernel& k, const std::vector<int>& idx) { return k.at(idx); },
             py::arg("index"))
        .def("entries",
             [](const Kernel& k) {
                 py::list out;
                 for (const auto& [flat, val] : k.entries())
                     out.append(py::make_tuple(k.multi_index(flat), val));
                 return out;
             })
        .def("norm_sq", [](const Kernel& k) { return norm_sq(k); })
        .def("is_zero", &Kernel::is_zero)
        .def("__repr__", [](const Kernel& k) {
            std::ostringstream s;
            s << "Kernel(order=" << k.order() << ", dim=" << k.dim() << ", nnz="
              << k.entries().size() << ")";
            return s.str();
        });

    m.def("adjoint", [](const Kernel& f) { return adjoint(f); }, py::arg("f"));
    m.def("is_mirror_symmetric",
          [](const Kernel& f, double tol) { return is_mirror_symmetric(f, tol); }, py::arg("f"),
          py::arg("tol") = 1e-12);
    m.def("contract", [](const Kernel& f, const Kernel& g, int r) { return contract(f, g, r); },
          py::arg("f"), py::arg("g"), py::arg("r"));
    m.def("inner_product",
          [](const Kernel& f, const Kernel& g) { return inner_product(f, g); }, py::arg("f"),
          py::arg("g"));
    m.def("axpy", [](C a, const Kernel& f, const Kernel& g) { return axpy(a, f, g); },
          py::arg("alpha"), py::arg("f"), py::arg("g"));
    m.def("scale", [](C a, const Kernel& f) { return scale(a, f); }, py::arg("alpha"),
          py::arg("f"));
    m.def("poisson_kernel", [](int p, int d) { return poisson_kernel<C>(p, d); }, py::arg("p"),
          py::arg("d"));
    m.def("diagonal_kernel",
          [](int order, int d, int count, C value) {
              return diagonal_kernel<C>(order, d, count, value);
          },
          py::arg("order"), py::arg("dim"), py::arg("count"), py::arg("value"));
    m.def("read_kernel_file", &read_kernel_file, py::arg("path"));
    m.def("write_kernel_file",
          [](const std::string& path, const Kernel& k) {
              std::ofstream out(path);
              if (!out) throw Error("cannot open " + path);
              write_kernel(out, k);
          },
          py::arg("path"), py::arg("kernel"));

    // chaos engine
    m.def("enumerate_sequences",
          [](int q, int mm, const std::string& which) {
              py::list out;
              for (const auto& s : enumerate_sequences(q, mm, query_from_name(which))) {
                  py::dict item;
                  item["r"] = s.r;
                  item["class"] = to_string(s.cls);
                  out.append(item);
              }
              return out;
          },
          py::arg("q"), py::arg("m"), py::arg("which"));
    m.def("wigner_moment",
          [](const Kernel& f, int mm) { return moment_report_dict(wigner_moment(f, mm)); },
          py::arg("f"), py::arg("m"));
    m.def("fourth_moment_statistic",
          [](const Kernel& f) { return fourth_moment_statistic(f); }, py::arg("f"));
    m.def("wigner_product_expand",
          [](const Kernel& f, const Kernel& g) { return wigner_product_expand(f, g); },
          py::arg("f"), py::arg("g"));
    m.def("variance_identity",
          [](const Kernel& f) {
              const auto rep = variance_identity(f);
              py::dict out;
              out["lhs"] = rep.lhs;
              out["rhs"] = rep.rhs;
              out["twice_lambda_sq"] = rep.twice_lambda_sq;
              out["midpoint_sq"] = rep.midpoint_sq;
              out["offband_sq"] = rep.offband_sq;
              return out;
          },
          py::arg("f"));
    m.def("poisson_defect",
          [](const Kernel& f) {
              const auto rep = poisson_defect(f);
              py::dict out;
              out["midpoint_sq"] = rep.midpoint_sq;
              out["offband_sq"] = rep.offband_sq;
              out["total"] = rep.total();
              return out;
          },
          py::arg("f"));
    m.def("convergence_scan",
          [](const std::string& family, double lambda_or_p, int d, int m_max,
             const std::vector<int>& n_list) {
              KernelFamily fam;
              double rate = lambda_or_p;
              if (family == "poisson") {
                  const int p = static_cast<int>(lambda_or_p);
                  fam = poisson_family(p, d > 0 ? d : p);
                  rate = p;
              } else if (family == "semicircle4") {
                  fam = semicircle4_family(lambda_or_p);
              } else {
                  throw DomainError("unknown family: " + family);
              }
              py::list out;
              for (const auto& row : convergence_scan(fam, rate, m_max, n_list)) {
                  py::dict r;
                  r["n"] = row.n;
                  r["norm_sq"] = row.norm_sq;
                  r["statistic"] = row.statistic;
                  r["statistic_gap"] = row.statistic_gap;
                  r["defect_midpoint_sq"] = row.defect_midpoint_sq;
                  r["defect_offband_sq"] = row.defect_offband_sq;
                  r["moments"] = row.moments;
                  r["moment_gaps"] = row.moment_gaps;
                  out.append(r);
              }
              return out;
          },
          py::arg("family"), py::arg("param"), py::arg("d") = 0, py::arg("m_max") = 4,
          py::arg("n_list"));

    // Fock oracle
    m.def("oracle_moment",
          [](const Kernel& f, int mm, int level) { return oracle_moment(f, mm, level); },
          py::arg("f"), py::arg("m"), py::arg("level") = -1);
}
