#pragma once

// Matrix file formats and exact token parsing.
//
// Text format: a "m n" header line, then m rows of whitespace-separated
// tokens. Tokens are exact rationals ("3", "-5/2"), decimals converted
// exactly ("2.2" -> 11/5), or "-inf". A JSON equivalent with the same
// token strings is accepted interchangeably and may carry generator
// metadata.

#include <map>
#include <string>

#include "maxplus/matrix.hpp"

namespace maxplus::io {

class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// "3", "-5/2", "2.2", "-inf" (and "+inf" for completeness).
ExtRational parse_scalar(const std::string& token);
Rational parse_rational(const std::string& token);  // rejects infinities

struct MatrixFile {
  Matrix matrix;
  std::map<std::string, std::string> meta;  // from the JSON form only
};

MatrixFile parse_matrix(const std::string& text);
MatrixFile load_matrix(const std::string& path);

std::string serialize_matrix(const Matrix& m);  // canonical text form
std::string serialize_matrix_json(const Matrix& m,
                                  const std::map<std::string, std::string>& meta = {});
void save_matrix(const std::string& path, const Matrix& m, bool json = false,
                 const std::map<std::string, std::string>& meta = {});

}  // namespace maxplus::io
