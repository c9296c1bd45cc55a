#pragma once

#include <string>

#include "greedy_opt/linalg.hpp"

namespace greedy_opt {

/// Reads a comma-separated numeric matrix. A first line that does not parse
/// as numbers is skipped as a header. Blank lines are ignored; ragged rows
/// are an error.
Matrix read_matrix_csv(const std::string& path);

/// A single row or single column file read as a vector.
Vector read_vector_csv(const std::string& path);

/// Shortest decimal text that round-trips at 17 significant digits,
/// independent of the global locale.
std::string format_double(double v);

/// Writes `contents` to `path` through a temporary file and a rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace greedy_opt
