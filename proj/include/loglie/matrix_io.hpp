#ifndef LOGLIE_MATRIX_IO_HPP
#define LOGLIE_MATRIX_IO_HPP

#include <string>
#include <vector>

#include "loglie/symmat.hpp"

namespace loglie {

enum class MatrixKind { Unspecified, Spd, Corr };

struct MatrixFile {
  std::vector<SymMat> matrices;
  MatrixKind kind = MatrixKind::Unspecified;
};

/// Reads a .csv (one matrix, n rows of n comma-separated floats) or .json
/// file ({"matrices": [...], "kind": "spd"|"corr"}); format picked by
/// extension, JSON when ambiguous. Throws ParseError / NotSymmetric.
MatrixFile read_matrix_file(const std::string& path);

MatrixFile parse_csv(const std::string& text);
MatrixFile parse_json(const std::string& text);

/// Shortest-faithful decimal with up to 17 significant digits (%.17g);
/// round-trips to the same double.
std::string format_double(double v);

std::string matrix_to_json(const SymMat& m);
std::string matrix_to_csv(const SymMat& m);

}  // namespace loglie

#endif
