#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "ccl/core/matrix.hpp"

// Text formats for matrices and input distributions.
//
//   matrix:        "<bool|sign> <rows> <cols>" then `rows` lines of `cols`
//                  symbols (0/1 for bool, +/- for sign); final newline optional.
//   distribution:  "dist <rows> <cols>" then `rows` lines of space-separated
//                  rationals (p/q or integers).
namespace ccl::io {

using AnyMatrix = std::variant<BooleanMatrix, SignMatrix>;

AnyMatrix parse_matrix(std::string_view text);
BooleanMatrix parse_boolean_matrix(std::string_view text);
SignMatrix parse_sign_matrix(std::string_view text);

// Canonical form: single spaces in the header, trailing newline.
std::string serialize(const BooleanMatrix& m);
std::string serialize(const SignMatrix& m);

InputDistribution parse_distribution(std::string_view text);
std::string serialize(const InputDistribution& d);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace ccl::io
