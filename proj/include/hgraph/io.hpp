#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hgraph/config.hpp"
#include "hgraph/field.hpp"
#include "hgraph/mesh.hpp"

namespace hgraph {

/// Parses the JSON configuration document. Throws std::runtime_error with a
/// field-level diagnostic on any malformed input.
ProblemConfig parse_config_text(const std::string& text);
ProblemConfig load_config(const std::string& path);

/// Canonical serialized form of a configuration (stable key order) and the
/// FNV-1a hash used as the run identity.
std::string config_canonical_text(const ProblemConfig& config);
std::uint64_t fnv1a_hash(const std::string& text);

enum class ExportFormat { Obj, Vtk, Csv };

/// Serializes the field over the mesh; 17-significant-digit decimal
/// formatting, bit-exact for fixed inputs.
std::string export_solution(const Mesh& mesh, const ScalarField& field, ExportFormat format);

/// JSON bundle holding mesh and nodal values, re-loadable by the export
/// subcommand.
std::string solution_bundle(const Mesh& mesh, const ScalarField& field);
void load_solution_bundle(const std::string& text, Mesh& mesh, ScalarField& field);

void write_file(const std::string& path, const std::string& bytes);
std::string read_file(const std::string& path);

/// Command dispatch. Exit codes: 0 success with all checks passed, 1 checks
/// failed, 2 solver nonconvergence, 3 invalid input.
int dispatch(std::vector<std::string> args);
int dispatch(int argc, const char* const* argv);

}  // namespace hgraph
