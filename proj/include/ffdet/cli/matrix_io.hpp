#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

#include "ffdet/det/matrix.hpp"
#include "ffdet/errors.hpp"
#include "ffdet/modular.hpp"

namespace ffdet::cli {

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Polynomial matrix document: s variables, entry degree cap p.
struct PolyMatrix {
  std::size_t s = 0;
  std::uint32_t p = 0;
  Matrix<IntPoly> entries;
};

using MatrixInput = std::variant<Matrix<mpz_class>, PolyMatrix>;

/// Integer format: "n m" then n rows of m signed decimal integers.
Matrix<mpz_class> parse_int_matrix(std::istream& in);

/// Polynomial format (JSON):
///   {"s": 1, "p": 1, "n": 2, "m": 2,
///    "entries": [[[[1, 0], [2, 1]], [[3, 0]]], [[[1, 1]], [[-4, 0]]]]}
/// entries[i][j] is a list of terms [coefficient, e_1, ..., e_s]; coefficients
/// may be JSON integers or decimal strings.
PolyMatrix parse_poly_matrix(const std::string& text);

/// Dispatches on the first non-blank character: '{' selects the polynomial format.
MatrixInput parse_matrix(std::istream& in);
MatrixInput read_matrix_file(const std::string& path);

std::string format_int_matrix(const Matrix<mpz_class>& a);
std::string format_poly_matrix(const PolyMatrix& a);

}  // namespace ffdet::cli
