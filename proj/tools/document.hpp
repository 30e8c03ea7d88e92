#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "simplexvol/gram.hpp"

namespace simplexvol::cli {

// On-disk matrix document:
//   {"kind": "angle_matrix" | "angle_gram" | "distance_gram" | "vertices",
//    "n": <dimension>, "geometry": "spherical" | "hyperbolic" (optional),
//    "data": [[number | "decimal string", ...], ...]}
// For matrix kinds data is the full (n+1) x (n+1) symmetric matrix; for
// "vertices" row i is the i-th vertex vector. String entries parse exactly
// via strtod.
struct MatrixDocument {
    std::string kind;
    std::size_t n = 0;
    std::optional<GeometryTag> geometry;
    std::vector<std::vector<double>> data;
};

MatrixDocument document_from_json(const nlohmann::json& j);
nlohmann::json document_to_json(const MatrixDocument& doc);
MatrixDocument load_document(const std::string& path);

// Conversions into core types; angles arrive in radians unless degrees is set.
AngleMatrix to_angle_matrix(const MatrixDocument& doc, bool degrees);
AngleGramMatrix to_angle_gram(const MatrixDocument& doc, bool degrees, double tol);
DistanceGramMatrix to_distance_gram(const MatrixDocument& doc);
SimplexVertices to_vertices(const MatrixDocument& doc);

MatrixDocument document_from_angle_matrix(const AngleMatrix& am);
MatrixDocument document_from_angle_gram(const AngleGramMatrix& a);
MatrixDocument document_from_distance_gram(const DistanceGramMatrix& g);
MatrixDocument document_from_vertices(const SimplexVertices& verts);

} // namespace simplexvol::cli
