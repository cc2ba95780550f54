#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "ddh/field.hpp"
#include "ddh/grid.hpp"

namespace ddh {

/// Raised for unreadable, unparsable or unwritable files; the CLI maps it
/// to its I/O exit code.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// {"n": N, "values": [...]} with 4^N finite numbers, row-major, y-major
/// outer and x-minor inner. Finite doubles round-trip exactly.
std::string grid_to_json(const GridFunction& f);
GridFunction grid_from_json(const std::string& text);

/// {"n": N, "k": [...]} with 4^N integers in 0..N, row-major as above.
std::string field_to_json(const DirectionField& v);
DirectionField field_from_json(const std::string& text);

GridFunction read_grid_file(const std::filesystem::path& path);
DirectionField read_field_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

/// Writes to a temporary sibling then renames, so interrupted runs never
/// leave a partial file at `path`.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace ddh
