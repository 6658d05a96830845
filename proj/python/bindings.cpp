#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "projlat/algebra.hpp"
#include "projlat/coordinatization.hpp"
#include "projlat/errors.hpp"
#include "projlat/graph_projections.hpp"
#include "projlat/lattice.hpp"
#include "projlat/lattice_maps.hpp"
#include "projlat/pair_geometry.hpp"
#include "projlat/report.hpp"
#include "projlat/ring_isos.hpp"
#include "projlat/sampling.hpp"

namespace py = pybind11;
using namespace projlat;

namespace {

Element element_from_blocks(const std::vector<Matrix>& blocks) {
  std::vector<Index> sizes;
  for (const Matrix& b : blocks) sizes.push_back(b.rows());
  return Element(Shape(sizes), blocks);
}

// Python callables see and return lists of blocks.
RingMap wrap(py::function f) {
  return [f](const Element& x) {
    py::gil_scoped_acquire gil;
    return element_from_blocks(f(x.blocks()).cast<std::vector<Matrix>>());
  };
}

py::cpp_function unwrap(RingMap f) {
  return py::cpp_function([f](const std::vector<Matrix>& blocks) { return f(element_from_blocks(blocks)).blocks(); });
}

Projection as_projection(const std::vector<Matrix>& blocks, const Tolerances& tol) {
  return canonicalize(element_from_blocks(blocks), tol);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Projection lattices of finite direct sums of matrix algebras";

  static py::exception<Error> base(m, "ProjlatError");
  py::register_exception<NotInvertible>(m, "NotInvertible", base.ptr());
  py::register_exception<NotOrderThree>(m, "NotOrderThree", base.ptr());
  py::register_exception<NotLSOrthogonal>(m, "NotLSOrthogonal", base.ptr());
  py::register_exception<NotAGraphProjection>(m, "NotAGraphProjection", base.ptr());
  py::register_exception<OrthogonalityNotPreserved>(m, "OrthogonalityNotPreserved", base.ptr());
  py::register_exception<NotInvertibleProvenance>(m, "NotInvertibleProvenance", base.ptr());
  py::register_exception<BadSplit>(m, "BadSplit", base.ptr());
  py::register_exception<NotAProjection>(m, "NotAProjection", base.ptr());
  py::register_exception<ShapeMismatch>(m, "ShapeMismatch", base.ptr());
  py::register_exception<NotRingIso>(m, "NotRingIso", base.ptr());
  py::register_exception<NotRealLinear>(m, "NotRealLinear", base.ptr());

  py::class_<Tolerances>(m, "Tolerances")
      .def(py::init([](double rank_rel, double proj_tol, double eq_tol) {
             Tolerances t{rank_rel, proj_tol, eq_tol};
             t.validate();
             return t;
           }),
           py::arg("rank_rel") = 1e-9, py::arg("proj_tol") = 1e-8, py::arg("eq_tol") = 1e-8)
      .def_readwrite("rank_rel", &Tolerances::rank_rel)
      .def_readwrite("proj_tol", &Tolerances::proj_tol)
      .def_readwrite("eq_tol", &Tolerances::eq_tol);

  // Elements cross the boundary as lists of complex numpy blocks; projections
  // are canonicalized on the way in.
  const Tolerances def;

  m.def("left_support", [](const std::vector<Matrix>& x, const Tolerances& t) {
    return left_support(element_from_blocks(x), t).element().blocks();
  }, py::arg("x"), py::arg("tol") = def);
  m.def("right_support", [](const std::vector<Matrix>& x, const Tolerances& t) {
    return right_support(element_from_blocks(x), t).element().blocks();
  }, py::arg("x"), py::arg("tol") = def);
  m.def("invert", [](const std::vector<Matrix>& x, const Tolerances& t) {
    return invert(element_from_blocks(x), t).blocks();
  }, py::arg("x"), py::arg("tol") = def);
  m.def("polar_decompose", [](const std::vector<Matrix>& x, const Tolerances& t) {
    const PolarDecomposition p = polar_decompose(element_from_blocks(x), t);
    return py::make_tuple(p.partial_isometry.blocks(), p.modulus.blocks());
  }, py::arg("x"), py::arg("tol") = def);
  m.def("center_valued_norm", [](const std::vector<Matrix>& x) {
    return center_valued_norm(element_from_blocks(x)).blocks();
  });
  m.def("is_central", [](const std::vector<Matrix>& x, const Tolerances& t) {
    return is_central(element_from_blocks(x), t);
  }, py::arg("x"), py::arg("tol") = def);

  m.def("meet", [](const std::vector<Matrix>& p, const std::vector<Matrix>& q, const Tolerances& t) {
    return meet(as_projection(p, t), as_projection(q, t), t).element().blocks();
  }, py::arg("p"), py::arg("q"), py::arg("tol") = def);
  m.def("join", [](const std::vector<Matrix>& p, const std::vector<Matrix>& q, const Tolerances& t) {
    return join(as_projection(p, t), as_projection(q, t), t).element().blocks();
  }, py::arg("p"), py::arg("q"), py::arg("tol") = def);
  m.def("leq", [](const std::vector<Matrix>& p, const std::vector<Matrix>& q, const Tolerances& t) {
    return leq(as_projection(p, t), as_projection(q, t), t);
  }, py::arg("p"), py::arg("q"), py::arg("tol") = def);
  m.def("ranks", [](const std::vector<Matrix>& p, const Tolerances& t) { return as_projection(p, t).ranks(); },
        py::arg("p"), py::arg("tol") = def);

  m.def("halmos_decompose", [](const std::vector<Matrix>& p, const std::vector<Matrix>& q, const Tolerances& t) {
    const HalmosDecomposition d = halmos_decompose(as_projection(p, t), as_projection(q, t), t);
    const ProjectionPair r = reconstruct(d, t);
    py::dict out;
    out["p_and_q"] = d.p_and_q.element().blocks();
    out["p_and_qc"] = d.p_and_qc.element().blocks();
    out["pc_and_q"] = d.pc_and_q.element().blocks();
    out["pc_and_qc"] = d.pc_and_qc.element().blocks();
    out["e1"] = d.e1.element().blocks();
    out["e2"] = d.e2.element().blocks();
    out["a"] = d.a.blocks();
    out["b"] = d.b.blocks();
    out["v"] = d.v.blocks();
    out["angles"] = d.angles;
    out["reconstructed"] = py::make_tuple(r.p.element().blocks(), r.q.element().blocks());
    return out;
  }, py::arg("p"), py::arg("q"), py::arg("tol") = def);
  m.def("ls_orthogonal", [](const std::vector<Matrix>& p, const std::vector<Matrix>& q, const Tolerances& t) {
    return ls_orthogonal(as_projection(p, t), as_projection(q, t), t);
  }, py::arg("p"), py::arg("q"), py::arg("tol") = def);
  m.def("orthogonalizer", [](const std::vector<Matrix>& p, const std::vector<Matrix>& q, const Tolerances& t) {
    return orthogonalizer(as_projection(p, t), as_projection(q, t), t).blocks();
  }, py::arg("p"), py::arg("q"), py::arg("tol") = def);

  py::enum_<Slot>(m, "Slot")
      .value("s12", Slot::s12)
      .value("s13", Slot::s13)
      .value("s23", Slot::s23)
      .value("s21", Slot::s21);
  m.def("graph_projection", [](const std::vector<Matrix>& x, Slot slot) {
    const Element e = element_from_blocks(x);
    std::vector<Index> ambient;
    for (Index k : e.shape().blocks()) ambient.push_back(3 * k);
    return graph_projection(standard_frame(Shape(ambient)), e, slot).element().blocks();
  }, py::arg("x"), py::arg("slot") = Slot::s12, "P_slot[x] in the contiguous-thirds frame of M_3(corner).");
  m.def("recover_operator", [](const std::vector<Matrix>& q, Slot slot, const Tolerances& t) {
    const Projection p = as_projection(q, t);
    return recover_operator(standard_frame(p.shape()), p, slot, t).blocks();
  }, py::arg("q"), py::arg("slot") = Slot::s12, py::arg("tol") = def);

  py::class_<LatticeMap>(m, "LatticeMap")
      .def("__call__", [](const LatticeMap& phi, const std::vector<Matrix>& p, const Tolerances& t) {
        return phi(as_projection(p, t)).element().blocks();
      }, py::arg("p"), py::arg("tol") = def)
      .def_property_readonly("source", [](const LatticeMap& phi) { return phi.source().blocks(); })
      .def_property_readonly("target", [](const LatticeMap& phi) { return phi.target().blocks(); })
      .def("describe", &LatticeMap::describe)
      .def("to_json", [](const LatticeMap& phi) { return io::to_json(phi).dump(); });

  m.def("identity_map", [](const std::vector<Index>& shape) { return identity_map(Shape(shape)); });
  m.def("from_conjugation", [](const std::vector<Matrix>& t, const Tolerances& tol) {
    return from_conjugation(element_from_blocks(t), tol);
  }, py::arg("T"), py::arg("tol") = def);
  m.def("from_semilinear", [](const std::vector<Matrix>& t, bool conjugate, const Tolerances& tol) {
    return from_semilinear(element_from_blocks(t),
                           conjugate ? FieldAutomorphism::conjugation : FieldAutomorphism::identity, tol);
  }, py::arg("T"), py::arg("conjugate") = true, py::arg("tol") = def);
  m.def("from_ring_iso", [](const std::vector<Index>& shape, py::function psi, const Tolerances& tol) {
    return from_ring_iso(Shape(shape), wrap(std::move(psi)), std::nullopt, tol);
  }, py::arg("shape"), py::arg("psi"), py::arg("tol") = def);
  m.def("compose", &compose, py::arg("outer"), py::arg("inner"));
  m.def("invert_map", &invert_map, py::arg("phi"), py::arg("tol") = def);
  m.def("verify_lattice_iso", [](const LatticeMap& phi, std::size_t samples, std::uint64_t seed, const Tolerances& t) {
    const LatticeIsoReport r = verify_lattice_iso(phi, samples, seed, t);
    py::dict out;
    out["passed"] = r.passed;
    out["checks"] = r.checks;
    out["max_residual"] = r.max_residual;
    out["failures"] = r.failures;
    return out;
  }, py::arg("phi"), py::arg("samples") = 50, py::arg("seed") = 0, py::arg("tol") = def);
  m.def("preserves_orthogonality", [](const LatticeMap& phi, std::size_t samples, std::uint64_t seed,
                                      const Tolerances& t) {
    return preserves_orthogonality(phi, samples, seed, t).preserved;
  }, py::arg("phi"), py::arg("samples") = 50, py::arg("seed") = 0, py::arg("tol") = def);

  m.def("coordinatize", [](const LatticeMap& phi, std::size_t samples, std::uint64_t seed, const Tolerances& t) {
    const CoordinatizationResult r = coordinatize(phi, samples, seed, t);
    py::dict out;
    out["psi"] = unwrap(r.psi);
    out["Psi"] = unwrap(r.Psi);
    std::vector<std::vector<Matrix>> normalizers;
    for (const Element& s : r.normalizers) normalizers.push_back(s.blocks());
    out["normalizers"] = normalizers;
    out["target_frame"] = r.target_frame.basis().blocks();
    py::list diag;
    for (const Residual& d : r.diagnostics) diag.append(py::make_tuple(d.name, d.value, d.tolerance, d.passed));
    out["diagnostics"] = diag;
    out["passed"] = r.passed();
    return out;
  }, py::arg("phi"), py::arg("samples") = 20, py::arg("seed") = 0, py::arg("tol") = def);

  m.def("uniqueness_residual", [](py::function psi, const std::vector<Index>& shape, std::size_t samples,
                                  std::uint64_t seed, const Tolerances& t) {
    const UniquenessReport u = uniqueness_residual(wrap(std::move(psi)), Shape(shape), samples, seed, t);
    py::dict out;
    out["max_residual"] = u.max_residual;
    out["max_support_deviation"] = u.max_support_deviation;
    out["support_condition_holds"] = u.support_condition_holds;
    out["certified"] = u.certified;
    return out;
  }, py::arg("psi"), py::arg("shape"), py::arg("samples") = 20, py::arg("seed") = 0, py::arg("tol") = def);

  m.def("block_split9", [](const std::vector<Matrix>& x, const std::vector<std::pair<Index, Index>>& splits) {
    std::vector<BlockSplit> s;
    for (const auto& [a, b] : splits) s.push_back({a, b});
    std::vector<std::vector<Matrix>> out;
    for (const SplitPiece& p : block_split9(element_from_blocks(x), s)) out.push_back(p.piece.blocks());
    return out;
  });

  m.def("classify_linearity", [](py::function psi, const std::vector<Index>& shape, const Tolerances& t) {
    return classify_linearity(wrap(std::move(psi)), Shape(shape), t).element().blocks();
  }, py::arg("psi"), py::arg("shape"), py::arg("tol") = def);
  m.def("inner_factor", [](py::function psi, const std::vector<Index>& shape, std::size_t samples, std::uint64_t seed,
                           const Tolerances& t) {
    const RingIsoFactorization f = inner_factor(wrap(std::move(psi)), Shape(shape), samples, seed, t);
    py::dict out;
    out["q"] = f.q.element().blocks();
    out["y"] = f.y.blocks();
    std::vector<std::string> kinds;
    for (BlockKind k : f.kind) kinds.push_back(k == BlockKind::linear ? "linear" : "conjugate_linear");
    out["kinds"] = kinds;
    out["source_block"] = f.source_block;
    out["residual"] = f.residual;
    return out;
  }, py::arg("psi"), py::arg("shape"), py::arg("samples") = 20, py::arg("seed") = 0, py::arg("tol") = def);
  m.def("dye_extension", [](const LatticeMap& phi, std::size_t samples, std::uint64_t seed, const Tolerances& t) {
    const DyeResult d = dye_extension(phi, samples, seed, t);
    py::dict out;
    out["Psi"] = unwrap(d.Psi);
    py::list cert;
    for (const CertificateEntry& e : d.certificate) cert.append(py::make_tuple(e.name, e.max_residual, e.passed));
    out["certificate"] = cert;
    out["passed"] = d.passed();
    return out;
  }, py::arg("phi"), py::arg("samples") = 20, py::arg("seed") = 0, py::arg("tol") = def);

  m.def("generate", [](const std::string& kind, const std::vector<Index>& shape, std::uint64_t seed) {
    return generate(kind, Shape(shape), seed).dump();
  }, py::arg("kind"), py::arg("shape"), py::arg("seed") = 0, "Seeded instance as a JSON string.");
  m.def("verify_suite", [](const std::vector<Index>& shape, std::uint64_t seed, std::size_t samples) {
    RunConfig c;
    c.command = "verify-suite";
    c.shape = Shape(shape);
    c.seed = seed;
    c.samples = samples;
    return verify_suite(c).to_json(false).dump();
  }, py::arg("shape"), py::arg("seed") = 0, py::arg("samples") = 20, "Report JSON without timings.");
}
