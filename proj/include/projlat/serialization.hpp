#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "projlat/element.hpp"
#include "projlat/graph_projections.hpp"
#include "projlat/lattice_maps.hpp"
#include "projlat/projection.hpp"
#include "projlat/tolerances.hpp"

namespace projlat::io {

using json = nlohmann::ordered_json;

// Element: {"shape": [n..], "blocks": [[[ [re, im], .. ], ..], ..]}, row-major.
json to_json(const Shape& shape);
json to_json(const Element& x);
// Projection: the element plus "ranks".
json to_json(const Projection& p);
json to_json(const ThreeFrame& frame);
json to_json(const StandardRingIso& psi);
json to_json(const Tolerances& tol);
// Opaque maps and maps built from arbitrary ring maps throw ParseError.
json to_json(const LatticeMap& phi);

Shape shape_from_json(const json& j);
Element element_from_json(const json& j);
Projection projection_from_json(const json& j, const Tolerances& tol = {});
StandardRingIso ring_iso_from_json(const json& j);
LatticeMap lattice_map_from_json(const json& j, const Tolerances& tol = {});

/// Reads and parses a JSON file. Throws ParseError naming the path.
json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const json& j);

}  // namespace projlat::io
