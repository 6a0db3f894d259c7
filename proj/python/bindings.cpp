#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pptd/bounds.hpp"
#include "pptd/code_lp.hpp"
#include "pptd/errors.hpp"
#include "pptd/fidelity.hpp"
#include "pptd/state_io.hpp"
#include "pptd/states.hpp"
#include "pptd/symmetry_lp.hpp"

namespace py = pybind11;
using namespace pptd;

namespace {

DensityMatrix to_state(const CMatrix& rho, int dim_a, int dim_b) {
  return DensityMatrix(TensorShape::bipartite(dim_a, dim_b), rho);
}

py::dict fidelity(const CMatrix& rho, int dim_a, int dim_b, double K, double tol) {
  const auto state = to_state(rho, dim_a, dim_b);
  const auto r = fidelity_ppt(state, K, tol);
  py::dict out;
  out["value"] = r.value;
  out["dual_value"] = r.dual_value;
  out["gap"] = r.gap;
  out["dual_bound"] = dual_bound(state, K, r.dual_D);
  out["F"] = r.primal_F.matrix();
  out["D"] = r.dual_D.matrix();
  out["iterations"] = r.iterations;
  return out;
}

py::dict power_lp(const PowerLpResult& r) {
  py::dict out;
  out["value"] = r.value;
  out["B"] = r.B.coeffs();
  out["S"] = r.S.coeffs();
  return out;
}

py::list bound_rows(const std::vector<BoundReport>& reports) {
  py::list rows;
  for (const auto& b : reports) {
    py::dict row;
    row["name"] = b.name;
    row["kind"] = std::string(to_string(b.kind));
    row["value"] = b.value;
    row["provenance"] = b.provenance;
    rows.append(row);
  }
  return rows;
}

py::dict code_outcome(const CodeLpOutcome& o) {
  py::dict out;
  out["n"] = o.params.n;
  out["K"] = o.params.K_dim;
  out["d"] = o.params.d_min;
  out["verdict"] = std::string(to_string(o.verdict));
  out["residual"] = o.residual;
  out["verified"] = o.verified;
  if (o.enumerators) {
    out["A_prime"] = o.enumerators->A_prime.coeffs();
    out["A"] = o.enumerators->A_poly.coeffs();
    out["B"] = o.enumerators->B_poly.coeffs();
    out["S"] = o.enumerators->S_poly.coeffs();
  } else {
    out["certificate"] = o.certificate;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "p.p.t. distillation toolkit (C++ core)";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  m.attr("DEFAULT_TOLERANCE") = solver::kDefaultTolerance;

  m.def("max_entangled", [](int d) { return max_entangled(d).matrix(); }, py::arg("d"));
  m.def("isotropic_state", [](int d, double f) { return isotropic_state(d, f).matrix(); },
        py::arg("d"), py::arg("f"));
  m.def("werner_state", [](int d, double p) { return werner_state(d, p).matrix(); }, py::arg("d"),
        py::arg("p"));
  m.def("partial_transpose",
        [](const CMatrix& a, int dim_a, int dim_b) {
          return partial_transpose(HermitianOperator(TensorShape::bipartite(dim_a, dim_b), a)).matrix();
        },
        py::arg("a"), py::arg("dim_a"), py::arg("dim_b"));

  m.def("fidelity_ppt", &fidelity, py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"), py::arg("K"),
        py::arg("tol") = solver::kDefaultTolerance,
        "F_Gamma(rho; K) by SDP; returns value, dual data and the optimal F.");
  m.def("fidelity_isotropic_closed", &fidelity_isotropic_closed, py::arg("d"), py::arg("f"),
        py::arg("K"));
  m.def("fidelity_werner1_closed", &fidelity_werner1_closed, py::arg("d"), py::arg("K"));
  m.def("fidelity_maxent_closed", &fidelity_maxent_closed, py::arg("d"), py::arg("K"));

  m.def("isotropic_power_lp",
        [](int d, double f, int n, double K) { return power_lp(isotropic_power_lp(d, f, n, K)); },
        py::arg("d"), py::arg("f"), py::arg("n"), py::arg("K"));
  m.def("werner_power_lp",
        [](int d, double p, int n, double K) { return power_lp(werner_power_lp(d, p, n, K)); },
        py::arg("d"), py::arg("p"), py::arg("n"), py::arg("K"));
  m.def("werner_rains_bound", &werner_rains_bound, py::arg("d"), py::arg("p"));

  m.def("isotropic_bounds", [](int d, double f) { return bound_rows(isotropic_bounds(d, f)); },
        py::arg("d"), py::arg("f"));
  m.def("werner_bounds", [](int d, double p) { return bound_rows(werner_bounds(d, p)); },
        py::arg("d"), py::arg("p"));
  m.def("state_bounds",
        [](const CMatrix& rho, int dim_a, int dim_b) {
          return bound_rows(state_bounds(to_state(rho, dim_a, dim_b)));
        },
        py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"));
  m.def("hashing_rate", &hashing_rate, py::arg("d"), py::arg("f"));
  m.def("max_correlated_rate",
        [](const CMatrix& alpha) { return max_correlated_rate(CorrelationMatrix(alpha)); },
        py::arg("alpha"));
  m.def("max_correlated_pt_eigs", &max_correlated_pt_eigs, py::arg("beta"));

  m.def("code_lp",
        [](int n, double K, int d, int k) { return code_outcome(code_lp_feasible({n, K, d, k})); },
        py::arg("n"), py::arg("K"), py::arg("d"), py::arg("alphabet") = 2);
  m.def("code_lp_table",
        [](int n_max, int k) {
          py::list rows;
          for (const auto& o : code_lp_table(n_max, k)) rows.append(code_outcome(o));
          return rows;
        },
        py::arg("n_max"), py::arg("alphabet") = 2);

  m.def("read_state", [](const std::string& text) {
    const auto rho = parse_state(text);
    return py::make_tuple(rho.matrix(), rho.shape().dims());
  });
  m.def("write_state", [](const CMatrix& rho, int dim_a, int dim_b) {
    return write_state(to_state(rho, dim_a, dim_b));
  });
}
