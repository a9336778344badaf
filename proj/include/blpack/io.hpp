#pragma once

#include "blpack/solver.hpp"

#include <json.hpp>

#include <string>

namespace blpack {

using Json = nlohmann::json;

struct ComplexInput {
    Triangulation complex;
    BranchStructure branch;
};

/// {"faces": [[i,j,k],...], "branch": [[v,k],...]}
Json complex_to_json(const Triangulation& t, const BranchStructure& b = {});
ComplexInput complex_from_json(const Json& j);

/// {"complex": ..., "branch": ..., "circles": [{"v","cx","cy","r"}], "report": {"sweeps","max_residual"}}
Json packing_to_json(const Packing& p);
Packing packing_from_json(const Json& j);

/// Parses text; syntax errors raise ParseError naming line and column.
Json parse_json(const std::string& text);

/// Throws IoError or ParseError.
Json read_json_file(const std::string& path);

/// Writes through a temporary file in the same directory, then renames.
void write_file_atomic(const std::string& path, const std::string& contents);

/// Two-space indented dump ending in a newline.
std::string dump_json(const Json& j);

}  // namespace blpack
