#include "projlat/serialization.hpp"

#include <fstream>
#include <sstream>

#include "projlat/errors.hpp"

namespace projlat::io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Complex entry(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw ParseError("matrix entries must be numbers or [re, im] pairs");
}

}  // namespace

json to_json(const Shape& shape) { return json(shape.blocks()); }

json to_json(const Element& x) {
  json blocks = json::array();
  for (const Matrix& m : x.blocks()) blocks.push_back(matrix_json(m));
  return json{{"shape", to_json(x.shape())}, {"blocks", std::move(blocks)}};
}

json to_json(const Projection& p) {
  json j = to_json(p.element());
  j["ranks"] = p.ranks();
  return j;
}

json to_json(const ThreeFrame& frame) {
  return json{{"ambient", to_json(frame.ambient())}, {"corner", to_json(frame.corner())},
              {"basis", to_json(frame.basis())}};
}

json to_json(const StandardRingIso& psi) {
  json flags = json::array();
  for (bool f : psi.conjugate_block) flags.push_back(f);
  return json{{"kind", "ring_iso"}, {"T", to_json(psi.T)}, {"conjugate_blocks", std::move(flags)}};
}

json to_json(const Tolerances& tol) {
  return json{{"rank_rel", tol.rank_rel}, {"proj_tol", tol.proj_tol}, {"eq_tol", tol.eq_tol}};
}

json to_json(const LatticeMap& phi) {
  return std::visit(overloaded{
                        [](const provenance::FromConjugation& c) -> json {
                          return json{{"kind", "conjugation"}, {"T", to_json(c.T)}, {"sigma", "id"}};
                        },
                        [](const provenance::FromSemilinear& s) -> json {
                          return json{{"kind", "conjugation"},
                                      {"T", to_json(s.T)},
                                      {"sigma", s.sigma == FieldAutomorphism::conjugation ? "conj" : "id"}};
                        },
                        [](const provenance::Composite& c) -> json {
                          json maps = json::array();
                          for (const auto& part : c.parts) maps.push_back(to_json(*part));
                          return json{{"kind", "composite"}, {"maps", std::move(maps)}};
                        },
                        [](const provenance::FromRingIso&) -> json {
                          throw ParseError("lattice maps built from arbitrary ring maps are not serializable");
                        },
                        [](const provenance::Opaque& o) -> json {
                          throw ParseError("opaque lattice map '" + o.description + "' is not serializable");
                        },
                    },
                    phi.provenance());
}

Shape shape_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("shape must be a non-empty array of block sizes");
  std::vector<Index> blocks;
  for (const json& n : j) {
    if (!n.is_number_integer() || n.get<long long>() <= 0) throw ParseError("block sizes must be positive integers");
    blocks.push_back(n.get<Index>());
  }
  return Shape(std::move(blocks));
}

Element element_from_json(const json& j) {
  const Shape shape = shape_from_json(field(j, "shape"));
  const json& blocks = field(j, "blocks");
  if (!blocks.is_array() || blocks.size() != shape.num_blocks()) throw ParseError("one matrix per block is required");
  std::vector<Matrix> out;
  for (std::size_t b = 0; b < shape.num_blocks(); ++b) {
    const Index n = shape[b];
    const json& rows = blocks[b];
    if (!rows.is_array() || static_cast<Index>(rows.size()) != n) {
      throw ParseError("block " + std::to_string(b) + " must have " + std::to_string(n) + " rows");
    }
    Matrix m(n, n);
    for (Index i = 0; i < n; ++i) {
      const json& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Index>(row.size()) != n) {
        throw ParseError("block " + std::to_string(b) + " must be square");
      }
      for (Index k = 0; k < n; ++k) m(i, k) = entry(row[static_cast<std::size_t>(k)]);
    }
    out.push_back(std::move(m));
  }
  try {
    return Element(shape, std::move(out));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

Projection projection_from_json(const json& j, const Tolerances& tol) {
  const Element x = element_from_json(j);
  try {
    Projection p = canonicalize(x, tol);
    if (j.contains("ranks") && j.at("ranks") != json(p.ranks())) throw ParseError("\"ranks\" disagree with the matrix");
    return p;
  } catch (const NotAProjection& e) {
    throw ParseError(std::string("not a projection: ") + e.what());
  }
}

StandardRingIso ring_iso_from_json(const json& j) {
  if (field(j, "kind") != "ring_iso") throw ParseError("expected \"kind\": \"ring_iso\"");
  Element t = element_from_json(field(j, "T"));
  std::vector<bool> flags(t.num_blocks(), false);
  if (j.contains("conjugate_blocks")) {
    const json& f = j.at("conjugate_blocks");
    if (!f.is_array() || f.size() != t.num_blocks()) throw ParseError("one conjugation flag per block is required");
    for (std::size_t b = 0; b < flags.size(); ++b) {
      if (!f[b].is_boolean()) throw ParseError("conjugation flags must be booleans");
      flags[b] = f[b].get<bool>();
    }
  }
  return {std::move(t), std::move(flags)};
}

LatticeMap lattice_map_from_json(const json& j, const Tolerances& tol) {
  const json& kind = field(j, "kind");
  if (kind == "conjugation") {
    const Element t = element_from_json(field(j, "T"));
    const std::string sigma = j.value("sigma", std::string("id"));
    if (sigma != "id" && sigma != "conj") throw ParseError("\"sigma\" must be \"id\" or \"conj\"");
    if (sigma == "id") return from_conjugation(t, tol);
    return from_semilinear(t, FieldAutomorphism::conjugation, tol);
  }
  if (kind == "ring_iso") return from_ring_iso(ring_iso_from_json(j), tol);
  if (kind == "composite") {
    const json& maps = field(j, "maps");
    if (!maps.is_array() || maps.empty()) throw ParseError("\"maps\" must be a non-empty array");
    LatticeMap out = lattice_map_from_json(maps[0], tol);
    for (std::size_t i = 1; i < maps.size(); ++i) out = compose(lattice_map_from_json(maps[i], tol), out);
    return out;
  }
  throw ParseError("unknown lattice map kind " + kind.dump());
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace projlat::io
