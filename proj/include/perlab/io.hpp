#pragma once

#include "perlab/dynamics.hpp"
#include "perlab/equidist.hpp"
#include "perlab/intersect.hpp"
#include "perlab/poly.hpp"

#include <string>
#include <vector>

namespace perlab {

// JSON coefficient array, lowest degree first, entries "num/den" (see
// docs/schema.md). Univariate by default.
std::string poly_to_json(const Poly& p);
Poly poly_from_json(const std::string& text);

// {"F": [...], "G": [...]} with integer-string coefficients; slot i holds the
// coefficient of X^i Y^(d-i), d inferred from the array length.
std::string map_to_json(const RationalMap& f);
RationalMap map_from_json_text(const std::string& text);
RationalMap map_from_json_file(const std::string& path);
// array of map objects, all of one degree
ProductMap product_from_json_file(const std::string& path);

// {"bidegree": [e1, e2], "coeff": [[c00, c01, ...], ...]} with coeff[i][j]
// the integer-string coefficient of x^i y^j.
BihomCurve curve_from_json_file(const std::string& path);

// [{"center": [re, im], "r": ...}, ...]
std::vector<BumpFunction> bumps_from_json_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// fixed-format floating point for byte-stable artifacts
std::string format_double(double v);

}  // namespace perlab
