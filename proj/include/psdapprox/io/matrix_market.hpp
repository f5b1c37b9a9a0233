#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "psdapprox/core.hpp"

namespace psdapprox::io {

using AnyHermitian = std::variant<HermitianMatrix<double>, HermitianMatrix<Complex>>;

/// Reads `%%MatrixMarket matrix <coordinate|array> <real|integer|complex>
/// <general|symmetric|hermitian>`. Symmetric and hermitian files have their
/// stored triangle mirrored; general files must be Hermitian within the core
/// tolerance. Errors carry the 1-based line number in the message.
AnyHermitian read_matrix_market(std::istream& in);
AnyHermitian read_matrix_market(const std::filesystem::path& path);

/// Real vector from an n x 1 array file, or from a plain whitespace-separated
/// list of numbers when the file has no banner.
std::vector<double> read_vector(const std::filesystem::path& path);

/// Shortest decimal that parses back to the same double; "inf", "-inf", "nan"
/// for non-finite values.
std::string format_double(double v);

/// Array format, lower triangle, `symmetric` (real) or `hermitian` (complex).
template <class T>
void write_matrix_market(std::ostream& out, const HermitianMatrix<T>& m);
template <class T>
void write_matrix_market(const std::filesystem::path& path, const HermitianMatrix<T>& m);

/// Array format, `general`.
template <class T>
void write_general(const std::filesystem::path& path, const Matrix<T>& m);

void write_vector(const std::filesystem::path& path, std::span<const double> v);
/// Integer n x 1 array, 1-based.
void write_permutation(const std::filesystem::path& path, std::span<const Index> p);

}  // namespace psdapprox::io
