// projlat: command-line front end for the projection-lattice toolkit.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 input or usage error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "projlat/errors.hpp"
#include "projlat/report.hpp"
#include "projlat/serialization.hpp"

namespace {

struct Options {
  std::string shape = "3";
  std::optional<std::uint64_t> seed;
  std::size_t samples = 50;
  double tol_rank = 1e-9;
  double tol_proj = 1e-8;
  double tol_eq = 1e-8;
  std::string out;
  bool json = false;
  std::string kind;
  std::string input;
  std::string probes;
};

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("PROJLAT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw projlat::ParseError(std::string("PROJLAT_SEED is not an unsigned integer: ") + env);
    }
  }
  return 0;
}

projlat::RunConfig make_config(const std::string& command, const Options& o) {
  projlat::RunConfig c;
  c.command = command;
  c.shape = projlat::Shape::parse(o.shape);
  c.seed = resolve_seed(o);
  c.samples = o.samples;
  c.tol = projlat::Tolerances{o.tol_rank, o.tol_proj, o.tol_eq};
  c.tol.validate();
  c.input = o.input;
  c.output = o.out;
  return c;
}

int emit(const projlat::Report& report, const Options& o) {
  const projlat::io::json j = report.to_json();
  if (!o.out.empty()) projlat::io::write_file(o.out, j);
  if (o.json) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << report.summary();
  }
  return report.passed() ? 0 : 1;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--shape", o.shape, "block sizes, e.g. \"3,3\"");
  app->add_option("--seed", o.seed, "random seed (falls back to $PROJLAT_SEED, then 0)");
  app->add_option("--samples", o.samples, "number of random samples per check");
  app->add_option("--tol-rank", o.tol_rank, "relative singular-value cutoff");
  app->add_option("--tol-proj", o.tol_proj, "projection tolerance");
  app->add_option("--tol-eq", o.tol_eq, "element-equality tolerance");
  app->add_option("--out", o.out, "output path");
  app->add_flag("--json", o.json, "print the JSON report to stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"projlat: projection lattices, two-projection geometry and coordinatization"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "write a seeded random instance");
  gen->add_option("kind", o.kind, "projection-pair | lattice-map | ring-iso")
      ->required()
      ->check(CLI::IsMember({"projection-pair", "lattice-map", "ring-iso"}));
  add_common(gen, o);

  auto* halmos = app.add_subcommand("halmos", "two-projection decomposition of a pair file");
  halmos->add_option("input", o.input, "pair JSON {\"p\": .., \"q\": ..}")->required();
  add_common(halmos, o);

  auto* coord = app.add_subcommand("coordinatize", "rebuild the ring isomorphism of a lattice map");
  coord->add_option("input", o.input, "lattice map JSON")->required();
  coord->add_option("--probes", o.probes, "JSON list of corner elements to evaluate psi on");
  add_common(coord, o);

  auto* dye = app.add_subcommand("dye", "extend an orthogonality-preserving lattice map");
  dye->add_option("input", o.input, "lattice map JSON")->required();
  add_common(dye, o);

  auto* factor = app.add_subcommand("factor", "inner factorization of a ring isomorphism");
  factor->add_option("input", o.input, "ring isomorphism JSON")->required();
  add_common(factor, o);

  auto* suite = app.add_subcommand("verify-suite", "run every invariant family");
  add_common(suite, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      const projlat::RunConfig c = make_config("gen", o);
      const projlat::io::json inst = projlat::generate(o.kind, c.shape, c.seed);
      if (o.out.empty()) {
        std::cout << inst.dump(2) << '\n';
      } else {
        projlat::io::write_file(o.out, inst);
      }
      return 0;
    }
    if (halmos->parsed()) {
      const auto c = make_config("halmos", o);
      return emit(projlat::run_halmos(c, projlat::io::read_file(o.input)), o);
    }
    if (coord->parsed()) {
      const auto c = make_config("coordinatize", o);
      std::optional<projlat::io::json> probes;
      if (!o.probes.empty()) probes = projlat::io::read_file(o.probes);
      return emit(projlat::run_coordinatize(c, projlat::io::read_file(o.input), probes), o);
    }
    if (dye->parsed()) {
      const auto c = make_config("dye", o);
      return emit(projlat::run_dye(c, projlat::io::read_file(o.input)), o);
    }
    if (factor->parsed()) {
      const auto c = make_config("factor", o);
      return emit(projlat::run_factor(c, projlat::io::read_file(o.input)), o);
    }
    const auto c = make_config("verify-suite", o);
    return emit(projlat::verify_suite(c), o);
  } catch (const projlat::Error& e) {
    std::cerr << "projlat: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "projlat: malformed input: " << e.what() << '\n';
    return 2;
  }
}
