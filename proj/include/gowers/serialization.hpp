#pragma once

// JSON and CSV interchange. Doubles are written in shortest round-trip form,
// so reading back what was written reproduces every value bit for bit.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "gowers/cube.hpp"
#include "gowers/decomposable.hpp"
#include "gowers/fourier_algebra.hpp"
#include "gowers/group.hpp"
#include "gowers/regularity.hpp"
#include "gowers/spectral.hpp"

namespace gowers {

using Json = nlohmann::json;

Json to_json(const GroupSpec& g);
GroupSpec group_from_json(const Json& j);
/// "8" or "2,2,3".
GroupSpec parse_group(const std::string& text);

Json to_json(const GroupFunction& f);
GroupFunction group_function_from_json(const Json& j);

void write_csv(std::ostream& out, const GroupFunction& f);
/// Reads index,value rows; the group must be supplied.
GroupFunction read_csv(std::istream& in, const GroupSpec& g);

Json to_json(const CubeFunction& F);
CubeFunction cube_function_from_json(const Json& j);

Json to_json(const Spectrum& s);

Json to_json(const Partition& P);
Partition partition_from_json(const Json& j, const GroupSpec& g);

/// {"orders", "d", "functions": {label: values}} over the given vertex range.
Json to_json(const VertexMap& fs, int d);
VertexMap vertex_map_from_json(const Json& j, int& d);

Json to_json(const AdDecomposition& D);
AdDecomposition ad_decomposition_from_json(const Json& j);

Json to_json(const DecomposableFunction& F);
DecomposableFunction decomposable_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gowers
