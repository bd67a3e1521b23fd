#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lsa/json_io.hpp"

namespace py = pybind11;

namespace {

using Array3 = py::array_t<lsa::Complex, py::array::c_style | py::array::forcecast>;

lsa::Tensor3 tensor_from_array(const Array3& a) {
  if (a.ndim() != 3) throw lsa::Error("structure constants: expected a 3-dimensional array");
  const auto d0 = static_cast<int>(a.shape(0));
  const auto d1 = static_cast<int>(a.shape(1));
  const auto d2 = static_cast<int>(a.shape(2));
  lsa::Tensor3 t(d0, d1, d2);
  auto v = a.unchecked<3>();
  for (int i = 0; i < d0; ++i)
    for (int j = 0; j < d1; ++j)
      for (int k = 0; k < d2; ++k) t(i, j, k) = v(i, j, k);
  return t;
}

Array3 tensor_to_array(const lsa::Tensor3& t) {
  Array3 out({t.dim(0), t.dim(1), t.dim(2)});
  auto v = out.mutable_unchecked<3>();
  for (int i = 0; i < t.dim(0); ++i)
    for (int j = 0; j < t.dim(1); ++j)
      for (int k = 0; k < t.dim(2); ++k) v(i, j, k) = t(i, j, k);
  return out;
}

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string dump(const lsa::io::Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_lsa, m) {
  m.doc() = "Left-symmetric algebras, the S-equation and phase spaces";
  py::register_exception<lsa::Error>(m, "LsaError", PyExc_ValueError);
  m.attr("DEFAULT_TOLERANCE") = lsa::kDefaultTolerance;

  py::class_<lsa::Algebra>(m, "Algebra")
      .def(py::init([](const Array3& c, std::vector<std::string> labels) {
             return lsa::Algebra(tensor_from_array(c), std::move(labels));
           }),
           py::arg("constants"), py::arg("labels") = std::vector<std::string>{})
      .def_property_readonly("dim", &lsa::Algebra::dim)
      .def_property_readonly("basis", &lsa::Algebra::basis_labels)
      .def_property_readonly("constants", [](const lsa::Algebra& a) { return tensor_to_array(a.constants()); })
      .def("multiply", &lsa::Algebra::multiply)
      .def("left_symmetry_residual", &lsa::Algebra::left_symmetry_residual)
      .def("to_json", [](const lsa::Algebra& a) { return dump(lsa::io::algebra_to_json(a)); })
      .def_static("from_json", [](const std::string& s) { return lsa::io::algebra_from_json(lsa::io::Json::parse(s)); });

  py::class_<lsa::SymmetricTensor>(m, "SymmetricTensor")
      .def(py::init<lsa::Matrix, double>(), py::arg("r"), py::arg("tol") = lsa::kDefaultTolerance)
      .def_property_readonly("dim", &lsa::SymmetricTensor::dim)
      .def_property_readonly("matrix", &lsa::SymmetricTensor::matrix);

  py::class_<lsa::LieAlgebra>(m, "LieAlgebra")
      .def_property_readonly("dim", &lsa::LieAlgebra::dim)
      .def_property_readonly("constants", [](const lsa::LieAlgebra& l) { return tensor_to_array(l.constants()); })
      .def("jacobi_residual", &lsa::LieAlgebra::jacobi_residual);

  py::class_<lsa::PhaseSpace>(m, "PhaseSpace")
      .def_property_readonly("n", &lsa::PhaseSpace::n)
      .def_property_readonly("base", &lsa::PhaseSpace::base)
      .def_property_readonly("r", &lsa::PhaseSpace::r)
      .def_property_readonly("lie", &lsa::PhaseSpace::lie)
      .def_property_readonly("omega", [](const lsa::PhaseSpace& p) { return p.omega().matrix(); })
      .def_property_readonly("lsa", &lsa::PhaseSpace::lsa)
      .def_property_readonly("s_residual", &lsa::PhaseSpace::s_residual)
      .def_property_readonly("verified", &lsa::PhaseSpace::verified)
      .def("to_json", [](const lsa::PhaseSpace& p) { return dump(lsa::io::phase_space_to_json(p)); });

  m.def("left_symmetry_residual", [](const lsa::Algebra& a, double tol) {
    return dump(lsa::io::residual_to_json(lsa::left_symmetry_residual(a), tol));
  }, py::arg("algebra"), py::arg("tol") = lsa::kDefaultTolerance);
  m.def("sub_adjacent", &lsa::sub_adjacent, py::arg("algebra"), py::arg("tol") = lsa::kDefaultTolerance);
  m.def("s_residual", [](const lsa::Algebra& a, const lsa::SymmetricTensor& r, double tol) {
    return dump(lsa::io::residual_to_json(lsa::s_residual_tensor(a, r), tol));
  }, py::arg("algebra"), py::arg("r"), py::arg("tol") = lsa::kDefaultTolerance);
  m.def("s_residual_operator", [](const lsa::Algebra& a, const lsa::SymmetricTensor& r, double tol) {
    return dump(lsa::io::residual_to_json(lsa::s_residual_operator(a, r), tol));
  }, py::arg("algebra"), py::arg("r"), py::arg("tol") = lsa::kDefaultTolerance);
  m.def("dual_product", &lsa::dual_product, py::arg("algebra"), py::arg("r"));
  m.def("check_bialgebra", [](const lsa::Algebra& a, const lsa::Algebra& d, double tol) {
    return dump(lsa::io::bialgebra_to_json(lsa::check_bialgebra(a, d), tol));
  }, py::arg("algebra"), py::arg("dual"), py::arg("tol") = lsa::kDefaultTolerance);

  m.def("build_phase_space", &lsa::build_phase_space, py::arg("algebra"), py::arg("r"),
        py::arg("tol") = lsa::kDefaultTolerance);
  m.def("semidirect_phase_space", &lsa::semidirect_phase_space, py::arg("algebra"),
        py::arg("tol") = lsa::kDefaultTolerance);
  m.def("check_parakahler", [](const lsa::PhaseSpace& p, double tol) {
    return dump(lsa::io::parakahler_to_json(lsa::check_parakahler(p, tol), tol));
  }, py::arg("phase_space"), py::arg("tol") = lsa::kDefaultTolerance);
  m.def("phase_space_isomorphism", [](const lsa::Algebra& a, const lsa::SymmetricTensor& r) {
    return lsa::phase_space_isomorphism(a, r).matrix();
  }, py::arg("algebra"), py::arg("r"));
  m.def("verify_symplectomorphism", [](const lsa::PhaseSpace& p1, const lsa::PhaseSpace& p2, const lsa::Matrix& phi,
                                       double tol) {
    return dump(lsa::io::symplectomorphism_to_json(lsa::verify_symplectomorphism(p1, p2, lsa::LinearMap(phi), tol), tol));
  }, py::arg("source"), py::arg("target"), py::arg("phi"), py::arg("tol") = lsa::kDefaultTolerance);

  m.def("solve", [](const lsa::Algebra& a, int starts, std::uint64_t seed, const std::string& algebra_id,
                    const lsa::ParamMap& algebra_params, double tol) {
    lsa::SolveConfig cfg;
    cfg.starts = starts;
    cfg.seed = seed;
    cfg.validate();
    lsa::SolutionSet s;
    {
      py::gil_scoped_release release;
      s = lsa::solve(a, cfg, tol);
    }
    return dump(lsa::io::solution_set_to_json(s, cfg, algebra_id, algebra_params));
  }, py::arg("algebra"), py::arg("starts") = 500, py::arg("seed") = 0, py::arg("algebra_id") = "",
     py::arg("algebra_params") = lsa::ParamMap{}, py::arg("tol") = lsa::kDefaultTolerance);
  m.def("family_membership", [](const lsa::SymmetricTensor& r, const std::string& family,
                                const lsa::ParamMap& algebra_params, double tol) {
    const lsa::FamilyFit f = lsa::family_membership(r, family, algebra_params, tol);
    return py::make_tuple(f.member, f.residual, f.params, f.branch);
  }, py::arg("r"), py::arg("family"), py::arg("algebra_params") = lsa::ParamMap{}, py::arg("tol") = 1e-6);

  m.def("list_entries", [] {
    const lsa::CatalogListing l = lsa::list_entries();
    return py::make_tuple(l.algebra_ids, l.family_ids);
  });
  m.def("instantiate_algebra", [](const std::string& id, const lsa::ParamMap& p) {
    return lsa::instantiate_algebra(id, p);
  }, py::arg("id"), py::arg("params") = lsa::ParamMap{});
  m.def("instantiate_family", [](const std::string& id, const lsa::ParamMap& p, const std::string& branch) {
    return lsa::instantiate_family(id, p, branch);
  }, py::arg("id"), py::arg("params") = lsa::ParamMap{}, py::arg("branch") = "");
  m.def("family_algebra", [](const std::string& id, const lsa::ParamMap& p) {
    return lsa::family_algebra(id, p);
  }, py::arg("id"), py::arg("params") = lsa::ParamMap{});
  m.def("catalog_export", [] { return dump(lsa::io::catalog_to_json()); });
  m.def("regression_sweep", [](int samples, std::uint64_t seed, double tol) {
    lsa::SweepReport rep;
    {
      py::gil_scoped_release release;
      rep = lsa::regression_sweep(samples, seed, tol);
    }
    return dump(lsa::io::sweep_to_json(rep));
  }, py::arg("samples") = 20, py::arg("seed") = 0, py::arg("tol") = lsa::kDefaultTolerance);
}
