#include "projlat/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "linalg.hpp"
#include "projlat/algebra.hpp"
#include "projlat/coordinatization.hpp"
#include "projlat/errors.hpp"
#include "projlat/graph_projections.hpp"
#include "projlat/lattice.hpp"
#include "projlat/lattice_maps.hpp"
#include "projlat/pair_geometry.hpp"
#include "projlat/ring_isos.hpp"
#include "projlat/sampling.hpp"

namespace projlat {

using io::json;

std::string to_string(Status status, const std::string& reason) {
  switch (status) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::skipped: return reason.empty() ? "SKIPPED" : "SKIPPED(" + reason + ")";
  }
  return "FAIL";
}

bool Report::passed() const { return first_failure() == nullptr; }

const Check* Report::first_failure() const {
  for (const Check& c : checks_) {
    if (c.status == Status::fail) return &c;
  }
  return nullptr;
}

json Report::to_json(bool include_timings) const {
  json config{{"command", config_.command},
              {"shape", io::to_json(config_.shape)},
              {"seed", config_.seed},
              {"samples", config_.samples},
              {"tolerances", io::to_json(config_.tol)}};
  if (!config_.input.empty()) config["input"] = config_.input;
  if (!config_.output.empty()) config["output"] = config_.output;
  json checks = json::array();
  for (const Check& c : checks_) {
    json e{{"name", c.name},
           {"anchor", c.anchor},
           {"status", projlat::to_string(c.status, c.reason)},
           {"max_residual", c.max_residual},
           {"tolerance", c.tolerance}};
    if (!c.reason.empty() && c.status == Status::fail) e["error"] = c.reason;
    if (c.counterexample) e["counterexample"] = *c.counterexample;
    checks.push_back(std::move(e));
  }
  json out{{"config", std::move(config)}, {"checks", std::move(checks)}};
  if (result_) out["result"] = *result_;
  if (include_timings) {
    json t = json::object();
    for (const auto& [phase, seconds] : timings_) t[phase] = seconds;
    out["timings"] = std::move(t);
  }
  out["passed"] = passed();
  return out;
}

std::string Report::summary() const {
  std::ostringstream os;
  for (const Check& c : checks_) {
    os << to_string(c.status, c.reason) << "  " << c.name << "  [" << c.anchor << "]  residual " << c.max_residual
       << " (tol " << c.tolerance << ")";
    if (c.status == Status::fail && !c.reason.empty()) os << "  " << c.reason;
    os << '\n';
  }
  if (const Check* f = first_failure()) {
    os << "FAILED: first failing check is '" << f->name << "'\n";
  } else {
    os << "all checks passed\n";
  }
  return os.str();
}

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  std::optional<json> counterexample;
};

Outcome bound(double residual, double tolerance) { return {residual, tolerance, residual <= tolerance, std::nullopt}; }

// Runs one check; NotOrderThree becomes SKIPPED, any other library error a FAIL.
void run(Report& report, const std::string& name, const std::string& anchor, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Check c{name, anchor};
  try {
    Outcome o = body();
    c.status = o.passed ? Status::pass : Status::fail;
    c.max_residual = o.residual;
    c.tolerance = o.tolerance;
    c.counterexample = std::move(o.counterexample);
  } catch (const NotOrderThree&) {
    c.status = Status::skipped;
    c.reason = "NotOrderThree";
  } catch (const Error& e) {
    c.status = Status::fail;
    c.reason = e.what();
  }
  report.add(std::move(c));
  report.add_timing(name, std::chrono::duration<double>(Clock::now() - t0).count());
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t k) { return seed * 0x100000001b3ULL + k; }

void require_order_three(const Shape& shape) { (void)standard_frame(shape); }

json residual_json(const Residual& r) {
  return json{{"name", r.name}, {"value", r.value}, {"tolerance", r.tolerance}, {"passed", r.passed}};
}

// max ‖Φ(p) − l(Ψ(p))‖ over seeded projections.
double round_trip_b(const LatticeMap& phi, const RingMap& Psi, std::size_t samples, std::uint64_t seed,
                    const Tolerances& tol) {
  const LatticeMap back = from_ring_iso(phi.source(), Psi, std::nullopt, tol);
  Rng rng(seed);
  double worst = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const Projection p = random_projection(phi.source(), rng);
    worst = std::max(worst, distance(back(p), phi(p)));
  }
  return worst;
}

void coordinatization_checks(Report& report, const LatticeMap& phi, const RunConfig& cfg, json* payload,
                             const std::optional<json>& probes) {
  const Tolerances& tol = cfg.tol;
  run(report, "lattice isomorphism hypothesis", "lattice isomorphism", [&] {
    const LatticeIsoReport r = verify_lattice_iso(phi, cfg.samples, cfg.seed, tol);
    Outcome o = bound(r.max_residual, tol.proj_tol);
    o.passed = r.passed;
    if (!r.passed) o.counterexample = json{{"failures", r.failures}, {"seed", r.seed}};
    return o;
  });
  std::optional<CoordinatizationResult> result;
  run(report, "coordinatize", "coordinatization theorem", [&] {
    require_order_three(phi.source());
    result = coordinatize(phi, cfg.samples, cfg.seed, tol);
    double worst = 0.0, tolerance = 0.0;
    bool ok = true;
    for (const Residual& r : result->diagnostics) {
      if (r.value / r.tolerance >= worst / std::max(tolerance, 1e-300)) {
        worst = r.value;
        tolerance = r.tolerance;
      }
      ok = ok && r.passed;
    }
    return Outcome{worst, tolerance, ok, std::nullopt};
  });
  if (!result) return;
  for (const Residual& r : result->diagnostics) {
    report.add(Check{r.name, "coordinatization theorem", r.passed ? Status::pass : Status::fail, r.value, r.tolerance});
  }
  run(report, "from_ring_iso(Psi) = Phi", "converse of the coordinatization theorem", [&] {
    return bound(round_trip_b(phi, result->Psi, cfg.samples, sub_seed(cfg.seed, 11), tol),
                 tol.proj_tol * 10.0);
  });
  if (payload == nullptr) return;
  json probe_list = json::array();
  std::vector<Element> xs;
  if (probes) {
    if (!probes->is_array()) throw ParseError("probes must be a JSON array of corner elements");
    for (const json& p : *probes) xs.push_back(io::element_from_json(p));
  } else {
    Rng rng(sub_seed(cfg.seed, 12));
    xs.push_back(Element::identity(result->source_frame.corner()));
    for (int k = 0; k < 4; ++k) xs.push_back(random_element(result->source_frame.corner(), rng));
  }
  for (const Element& x : xs) {
    require_same_shape(x.shape(), result->source_frame.corner(), "probe");
    probe_list.push_back(json{{"x", io::to_json(x)}, {"psi", io::to_json(result->psi(x))}});
  }
  json normalizers = json::array();
  for (const Element& s : result->normalizers) normalizers.push_back(io::to_json(s));
  json residuals = json::array();
  for (const Residual& r : result->diagnostics) residuals.push_back(residual_json(r));
  *payload = json{{"probes", std::move(probe_list)},
                  {"source_frame", io::to_json(result->source_frame)},
                  {"target_frame", io::to_json(result->target_frame)},
                  {"normalizers", std::move(normalizers)},
                  {"residuals", std::move(residuals)}};
}

}  // namespace

json generate(const std::string& kind, const Shape& shape, std::uint64_t seed) {
  Rng rng(seed);
  if (kind == "projection-pair") {
    const Projection p = random_projection(shape, rng);
    const Projection q = random_projection(shape, rng);
    return json{{"kind", "projection_pair"}, {"p", io::to_json(p)}, {"q", io::to_json(q)}};
  }
  if (kind == "lattice-map") {
    return io::to_json(from_conjugation(random_invertible(shape, rng, 100.0)));
  }
  if (kind == "ring-iso") {
    const Element t = random_invertible(shape, rng, 100.0);
    std::vector<bool> flags;
    for (std::size_t b = 0; b < shape.num_blocks(); ++b) flags.push_back(uniform_int(rng, 0, 1) == 1);
    return io::to_json(StandardRingIso{t, flags});
  }
  throw PreconditionViolated("unknown instance kind '" + kind + "' (expected projection-pair, lattice-map, ring-iso)");
}

Report run_halmos(const RunConfig& config, const json& pair) {
  Report report(config);
  const Tolerances& tol = config.tol;
  const Projection p = io::projection_from_json(pair.at("p"), tol);
  const Projection q = io::projection_from_json(pair.at("q"), tol);
  require_same_shape(p.shape(), q.shape(), "halmos input");
  std::optional<HalmosDecomposition> d;
  run(report, "reconstruction", "two-projection canonical form", [&] {
    d = halmos_decompose(p, q, tol);
    const ProjectionPair r = reconstruct(*d, tol);
    return bound(std::max(distance(r.p, p), distance(r.q, q)), tol.proj_tol);
  });
  if (d) {
    run(report, "a^2 + b^2 = e1", "two-projection canonical form",
        [&] { return bound(distance(d->a * d->a + d->b * d->b, d->e1.element()), tol.eq_tol); });
    run(report, "ab = ba", "two-projection canonical form",
        [&] { return bound(distance(d->a * d->b, d->b * d->a), tol.eq_tol); });
    run(report, "vv* = e1, v*v = e2", "two-projection canonical form", [&] {
      return bound(std::max(distance(d->v * d->v.adjoint(), d->e1.element()),
                            distance(d->v.adjoint() * d->v, d->e2.element())),
                   tol.eq_tol);
    });
    json angles = json::array();
    for (const auto& a : d->angles) angles.push_back(a);
    report.set_result(json{{"ranks",
                            {{"p_and_q", d->p_and_q.ranks()},
                             {"p_and_qc", d->p_and_qc.ranks()},
                             {"pc_and_q", d->pc_and_q.ranks()},
                             {"pc_and_qc", d->pc_and_qc.ranks()},
                             {"generic", d->e1.ranks()}}},
                           {"angles", std::move(angles)},
                           {"a", io::to_json(d->a)},
                           {"b", io::to_json(d->b)},
                           {"v", io::to_json(d->v)},
                           {"ls_orthogonal", ls_orthogonal(p, q, tol)}});
  }
  return report;
}

Report run_coordinatize(const RunConfig& config, const json& map, const std::optional<json>& probes) {
  RunConfig cfg = config;
  const LatticeMap phi = io::lattice_map_from_json(map, cfg.tol);
  cfg.shape = phi.source();
  Report report(cfg);
  json payload;
  coordinatization_checks(report, phi, cfg, &payload, probes);
  if (!payload.is_null()) report.set_result(std::move(payload));
  return report;
}

Report run_dye(const RunConfig& config, const json& map) {
  RunConfig cfg = config;
  const LatticeMap phi = io::lattice_map_from_json(map, cfg.tol);
  cfg.shape = phi.source();
  Report report(cfg);
  std::optional<DyeResult> dye;
  run(report, "orthogonality preserved", "orthogonality-preserving extension", [&] {
    try {
      dye = dye_extension(phi, cfg.samples, cfg.seed, cfg.tol);
    } catch (const OrthogonalityNotPreserved& e) {
      Outcome o{0.0, cfg.tol.proj_tol, false, std::nullopt};
      o.counterexample = json{{"p", io::to_json(e.witness_p())},
                              {"q", io::to_json(e.witness_q())},
                              {"description", e.what()}};
      return o;
    }
    return Outcome{0.0, cfg.tol.proj_tol, true, std::nullopt};
  });
  if (dye) {
    json cert = json::array();
    for (const CertificateEntry& e : dye->certificate) {
      report.add(Check{e.name, "orthogonality-preserving extension", e.passed ? Status::pass : Status::fail,
                       e.max_residual, e.name.rfind("Psi(p)", 0) == 0 ? cfg.tol.proj_tol : cfg.tol.eq_tol});
      cert.push_back(json{{"name", e.name}, {"max_residual", e.max_residual}, {"passed", e.passed}});
    }
    report.set_result(json{{"certificate", std::move(cert)}});
  }
  return report;
}

Report run_factor(const RunConfig& config, const json& ring_iso) {
  RunConfig cfg = config;
  const StandardRingIso iso = io::ring_iso_from_json(ring_iso);
  cfg.shape = iso.T.shape();
  Report report(cfg);
  const RingMap psi = iso.as_function(cfg.tol);
  std::optional<RingIsoFactorization> f;
  run(report, "factorization residual", "inner factorization of ring isomorphisms", [&] {
    f = inner_factor(psi, cfg.shape, cfg.samples, cfg.seed, cfg.tol);
    return bound(f->residual, cfg.tol.eq_tol * std::max(1.0, condition_number(f->y)) * 10.0);
  });
  if (!f) return report;
  run(report, "linearity locus", "real *-isomorphisms split by a central projection", [&] {
    double worst = 0.0;
    for (std::size_t b = 0; b < iso.conjugate_block.size(); ++b) {
      const bool linear = f->kind[b] == BlockKind::linear;
      if (linear == iso.conjugate_block[b]) worst = 1.0;
    }
    return bound(worst, 0.0);
  });
  run(report, "y collinear with T per block", "inner factorization of ring isomorphisms", [&] {
    double worst = 0.0;
    for (std::size_t b = 0; b < iso.T.num_blocks(); ++b) {
      const Matrix& y = f->y.block(b);
      const Matrix& t = iso.T.block(b);
      const double c = std::abs((y.adjoint() * t).trace()) / (y.norm() * t.norm());
      worst = std::max(worst, 1.0 - c);
    }
    return bound(worst, 1e-8);
  });
  std::vector<std::string> kinds;
  for (BlockKind k : f->kind) kinds.push_back(k == BlockKind::linear ? "linear" : "conjugate_linear");
  report.set_result(json{{"q_ranks", f->q.ranks()},
                         {"y", io::to_json(f->y)},
                         {"kinds", kinds},
                         {"source_block", f->source_block},
                         {"residual", f->residual}});
  return report;
}

Report verify_suite(const RunConfig& config) {
  Report report(config);
  const Shape& shape = config.shape;
  const Tolerances& tol = config.tol;
  const std::size_t n = config.samples;
  const std::uint64_t seed = config.seed;

  run(report, "lattice axioms", "lattice laws of P(M)", [&] {
    Rng rng(sub_seed(seed, 1));
    double worst = 0.0;
    bool ok = true;
    std::optional<json> ce;
    for (std::size_t k = 0; k < n; ++k) {
      const Projection common = random_subprojection(random_projection(shape, rng), rng);
      const Projection p = join(common, random_projection(shape, rng), tol);
      const Projection q = join(common, random_projection(shape, rng), tol);
      const Projection r = random_projection(shape, rng);
      const Projection pq = meet(p, q, tol);
      const Projection pvq = join(p, q, tol);
      const double res = std::max({distance(pq, meet(q, p, tol)), distance(pvq, join(q, p, tol)),
                                   distance(meet(pq, r, tol), meet(p, meet(q, r, tol), tol)),
                                   distance(join(pvq, r, tol), join(p, join(q, r, tol), tol)),
                                   distance(meet(p, pvq, tol), p), distance(join(p, pq, tol), p)});
      bool exact = true;
      for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
        exact = exact && pq.ranks()[b] + pvq.ranks()[b] == p.ranks()[b] + q.ranks()[b];
      }
      exact = exact && meet(p, p.complement(), tol).is_zero() &&
              join(p, p.complement(), tol).ranks() == shape.blocks() && leq(pq, p, tol) && leq(p, pvq, tol);
      worst = std::max(worst, res);
      if ((res > tol.proj_tol || !exact) && ok) {
        ok = false;
        ce = json{{"p", io::to_json(p)}, {"q", io::to_json(q)}, {"r", io::to_json(r)}};
      }
    }
    return Outcome{worst, tol.proj_tol, ok, ce};
  });

  run(report, "center-valued norm (i)-(v)", "center-valued norm", [&] {
    Rng rng(sub_seed(seed, 2));
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const Element x = random_element(shape, rng);
      const Element y = random_element(shape, rng);
      const Element a = random_central(shape, rng);
      const Element nx = center_valued_norm(x), ny = center_valued_norm(y);
      worst = std::max(worst, std::max(0.0, -min_eigenvalue(nx + ny - center_valued_norm(x + y))));
      worst = std::max(worst, distance(center_valued_norm(a), modulus(a)));
      worst = std::max(worst, distance(center_valued_norm(a * x), modulus(a) * nx));
      worst = std::max(worst, std::max(0.0, -min_eigenvalue(nx * ny - center_valued_norm(x * y))));
      worst = std::max(worst, std::max(0.0, -min_eigenvalue(nx - modulus(x))));
      if (center_valued_norm(Element::zero(shape)).norm() != 0.0) worst = 1.0;
    }
    return bound(worst, tol.eq_tol);
  });

  run(report, "principal ideals vs least squares", "principal right ideals", [&] {
    Rng rng(sub_seed(seed, 3));
    std::size_t disagreements = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const Element a = random_element(shape, rng) * random_projection(shape, rng).element();
      const Element x = (k % 2 == 0) ? Element(a * random_element(shape, rng)) : random_element(shape, rng);
      double ls = 0.0;
      for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
        const Matrix sol = a.block(b).completeOrthogonalDecomposition().solve(x.block(b));
        ls = std::max(ls, detail::op_norm(a.block(b) * sol - x.block(b)));
      }
      const bool oracle = ls <= 1e-8 * std::max(1.0, x.norm());
      if (oracle != principal_ideal_leq(x, a, tol)) ++disagreements;
    }
    return bound(static_cast<double>(disagreements), 0.0);
  });

  run(report, "halmos round trip", "two-projection canonical form", [&] {
    Rng rng(sub_seed(seed, 4));
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const Projection p = random_projection(shape, rng);
      const Projection q = random_projection(shape, rng);
      const ProjectionPair r = reconstruct(halmos_decompose(p, q, tol), tol);
      worst = std::max({worst, distance(r.p, p), distance(r.q, q)});
    }
    return bound(worst, tol.proj_tol);
  });

  run(report, "LS-orthogonality vs rank additivity", "LS-orthogonality characterization", [&] {
    Rng rng(sub_seed(seed, 5));
    std::size_t disagreements = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const AnglePair pair = random_pair_with_angles(shape, rng, 1e-6);
      const bool a = ls_orthogonal(pair.p, pair.q, tol);
      const bool b = ls_char_minimal_cover(pair.p, pair.q, 4, sub_seed(seed, 100 + k), tol);
      if (a != b) ++disagreements;
    }
    return bound(static_cast<double>(disagreements), 0.0);
  });

  run(report, "orthogonalizer identities", "orthogonalization lemma", [&] {
    Rng rng(sub_seed(seed, 6));
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const AnglePair pair = random_pair_with_angles(shape, rng, 1e-2);
      const Element s = orthogonalizer(pair.p, pair.q, tol);
      const double kappa = std::max(1.0, condition_number(s));
      const Projection j = join(pair.p, pair.q, tol);
      const Element jc = j.complement().element();
      const Element target = j.element() - pair.p.element();
      const double r1 = std::max(distance(s * jc, jc), distance(jc * s, jc));
      const double r2 = distance(s * pair.p.element(), pair.p.element());
      const double r3 = distance(left_support(s * pair.q.element() * invert(s, tol), tol).element(), target);
      worst = std::max(worst, std::max({r1, r2, r3}) / kappa);
    }
    return bound(worst, tol.eq_tol);
  });

  run(report, "corner witness projection", "corner witness projection", [&] {
    Rng rng(sub_seed(seed, 7));
    double worst = 0.0;
    std::size_t used = 0;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<Index> ranks;
      for (Index m : shape.blocks()) ranks.push_back(m / 2);
      const Projection pq = random_projection_with_ranks(shape, [&] {
        std::vector<Index> r;
        for (Index m : shape.blocks()) r.push_back(2 * (m / 2));
        return r;
      }(), rng);
      const Projection p = random_subprojection(pq, ranks, rng);
      const Projection q = canonicalize(pq.element() - p.element(), tol);
      if (p.is_zero()) continue;
      Element x = p.element() * random_element(shape, rng) * q.element();
      if (x.norm() == 0.0) continue;
      x = Complex(0.5 * uniform(rng, 0.0, 1.0) / x.norm()) * x;
      const Projection e = corner_witness_projection(x, p, q, tol);
      worst = std::max({worst, distance(p.element() * e.element() * q.element(), x), (e.element() * pq.complement().element()).norm()});
      ++used;
    }
    if (used == 0) return bound(0.0, tol.eq_tol);
    return bound(worst, tol.eq_tol);
  });

  run(report, "graph product and sum", "graph projection calculus", [&] {
    const ThreeFrame f = standard_frame(shape);
    Rng rng(sub_seed(seed, 8));
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const Element x = random_element(f.corner(), rng);
      const Element y = random_element(f.corner(), rng);
      worst = std::max(worst, distance(lattice_product(f, x, y, tol), graph_projection(f, x * y, Slot::s13)));
      worst = std::max(worst, distance(lattice_sum(f, x, y, tol), graph_projection(f, x + y, Slot::s12)));
      worst = std::max(worst, distance(recover_operator(f, graph_projection(f, x, Slot::s12), Slot::s12, tol), x) /
                                  std::max(1.0, x.norm()));
    }
    return bound(worst, 1e-7);
  });

  run(report, "inverse coincidence", "graph projection calculus", [&] {
    const ThreeFrame f = standard_frame(shape);
    Rng rng(sub_seed(seed, 9));
    std::size_t wrong = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const bool singular = k % 2 == 1;
      Element x = random_invertible(f.corner(), rng, 100.0);
      if (singular) x = x * random_subprojection(Projection::one(f.corner()), [&] {
                          std::vector<Index> r;
                          for (Index m : f.corner().blocks()) r.push_back(m - 1);
                          return r;
                        }(), rng).element();
      const InverseCoincidence c = inverse_coincidence(f, x, tol);
      if (c.invertible == singular) ++wrong;
    }
    return bound(static_cast<double>(wrong), 0.0);
  });

  run(report, "lattice map verification", "lattice isomorphism", [&] {
    Rng rng(sub_seed(seed, 10));
    const LatticeMap phi = from_conjugation(random_invertible(shape, rng, 100.0), tol);
    const LatticeIsoReport good = verify_lattice_iso(phi, n, seed, tol);
    const LatticeMap anti = opaque_map(shape, shape, [](const Projection& p) { return p.complement(); }, "p -> 1 - p");
    const LatticeIsoReport bad = verify_lattice_iso(anti, std::min<std::size_t>(n, 5), seed, tol);
    Outcome o = bound(good.max_residual, tol.proj_tol);
    o.passed = good.passed && !bad.passed;
    return o;
  });

  run(report, "orthogonality preservation", "orthogonality-preserving maps", [&] {
    Rng rng(sub_seed(seed, 11));
    const bool unitary = preserves_orthogonality(from_conjugation(random_unitary(shape, rng), tol), n, seed, tol).preserved;
    const bool transpose =
        preserves_orthogonality(from_semilinear(Element::identity(shape), FieldAutomorphism::conjugation, tol), n, seed,
                                tol)
            .preserved;
    const OrthogonalityReport skew =
        preserves_orthogonality(from_conjugation(random_invertible(shape, rng, 10.0), tol), n, seed, tol);
    const bool has_pairs = std::any_of(shape.blocks().begin(), shape.blocks().end(), [](Index m) { return m > 1; });
    Outcome o{0.0, 0.0, unitary && transpose && (!has_pairs || !skew.preserved), std::nullopt};
    return o;
  });

  run(report, "classify linearity and inner factor", "inner factorization of ring isomorphisms", [&] {
    Rng rng(sub_seed(seed, 12));
    double worst = 0.0;
    for (std::size_t k = 0; k < std::max<std::size_t>(n / 5, 1); ++k) {
      std::vector<bool> flags;
      for (std::size_t b = 0; b < shape.num_blocks(); ++b) flags.push_back(uniform_int(rng, 0, 1) == 1);
      const StandardRingIso iso{random_invertible(shape, rng, 100.0), flags};
      const RingIsoFactorization f = inner_factor(iso.as_function(tol), shape, 10, sub_seed(seed, k), tol);
      for (std::size_t b = 0; b < flags.size(); ++b) {
        if ((f.kind[b] == BlockKind::conjugate_linear) != flags[b]) worst = std::max(worst, 1.0);
      }
      worst = std::max(worst, f.residual / std::max(1.0, condition_number(f.y)));
    }
    return bound(worst, tol.eq_tol);
  });

  // Order-3 families.
  run(report, "coordinatize Ad_T", "coordinatization theorem", [&] {
    require_order_three(shape);
    Rng rng(sub_seed(seed, 13));
    const Element t = random_invertible(shape, rng, 100.0);
    const Element t_inv = invert(t, tol);
    const CoordinatizationResult r = coordinatize(from_conjugation(t, tol), n, seed, tol);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const Element x = random_element(shape, rng);
      worst = std::max(worst, distance(r.Psi(x), t * x * t_inv));
    }
    return bound(worst, 1e-6 * condition_number(t));
  });

  run(report, "coordinatize transpose", "coordinatization theorem", [&] {
    require_order_three(shape);
    Rng rng(sub_seed(seed, 14));
    const CoordinatizationResult r =
        coordinatize(from_semilinear(Element::identity(shape), FieldAutomorphism::conjugation, tol), n, seed, tol);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const Element x = random_element(shape, rng);
      worst = std::max(worst, distance(r.Psi(x), x.conjugate()));
    }
    return bound(worst, tol.eq_tol);
  });

  run(report, "uniqueness across seeds", "identity lemma", [&] {
    require_order_three(shape);
    Rng rng(sub_seed(seed, 15));
    const LatticeMap phi = from_conjugation(random_invertible(shape, rng, 10.0), tol);
    const CoordinatizationResult a = coordinatize(phi, 5, seed, tol);
    const CoordinatizationResult b = coordinatize(phi, 5, seed + 1, tol);
    const RingMap a_inv = invert_real_linear(a.Psi, shape, tol);
    const UniquenessReport u =
        uniqueness_residual([&](const Element& x) { return a_inv(b.Psi(x)); }, shape, n, sub_seed(seed, 16), tol);
    return bound(u.max_residual, 1e-7);
  });

  run(report, "round trip from_ring_iso(coordinatize)", "converse of the coordinatization theorem", [&] {
    require_order_three(shape);
    Rng rng(sub_seed(seed, 17));
    const LatticeMap phi = from_conjugation(random_invertible(shape, rng, 10.0), tol);
    const CoordinatizationResult r = coordinatize(phi, 5, seed, tol);
    return bound(round_trip_b(phi, r.Psi, n, sub_seed(seed, 18), tol), 1e-7);
  });

  run(report, "dye extension", "orthogonality-preserving extension", [&] {
    require_order_three(shape);
    Rng rng(sub_seed(seed, 19));
    const DyeResult d = dye_extension(from_conjugation(random_unitary(shape, rng), tol), n, seed, tol);
    double worst = 0.0;
    for (const CertificateEntry& e : d.certificate) worst = std::max(worst, e.max_residual);
    Outcome o = bound(worst, tol.eq_tol);
    o.passed = d.passed();
    return o;
  });

  return report;
}

}  // namespace projlat
