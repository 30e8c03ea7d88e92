#include "document.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>

#include "simplexvol/errors.hpp"
#include "simplexvol/hyperbolic.hpp"

namespace simplexvol::cli {

namespace {

double parse_entry(const nlohmann::json& v, std::size_t i, std::size_t j) {
    const std::string at = " at (" + std::to_string(i) + "," + std::to_string(j) + ")";
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        const char* begin = s.c_str();
        char* end = nullptr;
        const double x = std::strtod(begin, &end);
        if (end == begin || *end != '\0')
            throw ValidationError("unparseable decimal string" + at);
        return x;
    }
    throw ValidationError("matrix entry must be a number or decimal string" + at);
}

GeometryTag parse_geometry(const std::string& s) {
    if (s == "spherical") return GeometryTag::Spherical;
    if (s == "hyperbolic") return GeometryTag::Hyperbolic;
    throw ValidationError("geometry must be \"spherical\" or \"hyperbolic\"");
}

const char* kKinds[] = {"angle_matrix", "angle_gram", "distance_gram", "vertices"};

} // namespace

MatrixDocument document_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("document must be a JSON object");
    MatrixDocument doc;
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ValidationError("document needs a string \"kind\"");
    doc.kind = j["kind"].get<std::string>();
    bool known = false;
    for (const char* k : kKinds) known = known || doc.kind == k;
    if (!known) throw ValidationError("unknown document kind \"" + doc.kind + "\"");

    if (!j.contains("n") || !j["n"].is_number_unsigned())
        throw ValidationError("document needs a nonnegative integer \"n\"");
    doc.n = j["n"].get<std::size_t>();

    if (j.contains("geometry") && !j["geometry"].is_null())
        doc.geometry = parse_geometry(j["geometry"].get<std::string>());

    if (!j.contains("data") || !j["data"].is_array())
        throw ValidationError("document needs a 2-D \"data\" array");
    const std::size_t m = doc.n + 1;
    if (j["data"].size() != m)
        throw ValidationError("data must have n+1 rows (got " +
                              std::to_string(j["data"].size()) + ", expected " +
                              std::to_string(m) + ")");
    doc.data.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& row = j["data"][i];
        if (!row.is_array() || row.size() != m)
            throw ValidationError("data row " + std::to_string(i) + " must have n+1 entries");
        doc.data[i].resize(m);
        for (std::size_t c = 0; c < m; ++c) doc.data[i][c] = parse_entry(row[c], i, c);
    }
    return doc;
}

nlohmann::json document_to_json(const MatrixDocument& doc) {
    nlohmann::json j;
    j["kind"] = doc.kind;
    j["n"] = doc.n;
    if (doc.geometry) j["geometry"] = to_string(*doc.geometry);
    j["data"] = doc.data;
    return j;
}

MatrixDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("invalid JSON in " + path + ": " + e.what());
    }
    return document_from_json(j);
}

namespace {

SymMatrix symmetric_from_doc(const MatrixDocument& doc) {
    return SymMatrix::from_rows(doc.data); // names the first asymmetric entry
}

} // namespace

AngleMatrix to_angle_matrix(const MatrixDocument& doc, bool degrees) {
    if (doc.kind != "angle_matrix")
        throw ValidationError("expected an angle_matrix document, got " + doc.kind);
    SymMatrix a = symmetric_from_doc(doc);
    if (degrees) {
        SymMatrix b(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i; j < a.size(); ++j)
                b.set(i, j, a(i, j) / 180.0 * std::numbers::pi);
        a = b;
    }
    return AngleMatrix::make(a);
}

AngleGramMatrix to_angle_gram(const MatrixDocument& doc, bool degrees, double tol) {
    if (doc.kind == "angle_matrix") return angle_gram_from_angles(to_angle_matrix(doc, degrees));
    if (doc.kind == "angle_gram") {
        const SymMatrix g = symmetric_from_doc(doc);
        return AngleGramMatrix{doc.n, g, classify_angle_gram(g, tol).tag};
    }
    if (doc.kind == "distance_gram") {
        const DistanceGramMatrix g = to_distance_gram(doc);
        return g.geometry == GeometryTag::Spherical ? spherical_dual(g).gram
                                                    : hyperbolic_dual(g).gram;
    }
    if (doc.kind == "vertices") return angle_gram_from_vertices(to_vertices(doc));
    throw ValidationError("cannot interpret document kind " + doc.kind + " as an angle Gram");
}

DistanceGramMatrix to_distance_gram(const MatrixDocument& doc) {
    if (doc.kind != "distance_gram")
        throw ValidationError("expected a distance_gram document, got " + doc.kind);
    const SymMatrix g = symmetric_from_doc(doc);
    GeometryTag tag;
    if (doc.geometry) {
        tag = *doc.geometry;
    } else {
        // entries above 1 can only be cosh distances
        double off_max = -2.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = i + 1; j < g.size(); ++j) off_max = std::max(off_max, g(i, j));
        tag = off_max > 1.0 ? GeometryTag::Hyperbolic : GeometryTag::Spherical;
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (std::fabs(g(i, i) - 1.0) > 1e-12)
            throw ValidationError("distance Gram diagonal must be 1");
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            if (tag == GeometryTag::Spherical && std::fabs(g(i, j)) > 1.0)
                throw ValidationError("spherical distance Gram entries must lie in [-1,1]");
            if (tag == GeometryTag::Hyperbolic && g(i, j) < 1.0)
                throw ValidationError("hyperbolic distance Gram entries must be >= 1");
        }
    }
    return DistanceGramMatrix{doc.n, g, tag};
}

SimplexVertices to_vertices(const MatrixDocument& doc) {
    if (doc.kind != "vertices")
        throw ValidationError("expected a vertices document, got " + doc.kind);
    if (!doc.geometry) throw ValidationError("vertices documents need a geometry tag");
    const std::size_t m = doc.n + 1;
    Matrix v(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t c = 0; c < m; ++c) v(c, i) = doc.data[i][c]; // row i -> column i

    for (std::size_t i = 0; i < m; ++i) {
        Vec col = v.col(i);
        if (*doc.geometry == GeometryTag::Spherical) {
            const double nrm = euclid_norm(col);
            if (std::fabs(nrm - 1.0) > 1e-9)
                throw ValidationError("vertex " + std::to_string(i) + " is not a unit vector");
            for (double& x : col) x /= nrm;
        } else {
            const double q = mink_inner(col, col);
            if (std::fabs(q + 1.0) > 1e-9 || col.back() <= 0.0)
                throw ValidationError("vertex " + std::to_string(i) +
                                      " is not on the upper hyperboloid");
            const double s = 1.0 / std::sqrt(-q);
            for (double& x : col) x *= s;
        }
        v.set_col(i, col);
    }
    return SimplexVertices{doc.n, *doc.geometry, v};
}

MatrixDocument document_from_angle_matrix(const AngleMatrix& am) {
    MatrixDocument doc;
    doc.kind = "angle_matrix";
    doc.n = am.n;
    doc.data.assign(am.n + 1, std::vector<double>(am.n + 1));
    for (std::size_t i = 0; i <= am.n; ++i)
        for (std::size_t j = 0; j <= am.n; ++j) doc.data[i][j] = am.a(i, j);
    return doc;
}

MatrixDocument document_from_angle_gram(const AngleGramMatrix& a) {
    MatrixDocument doc;
    doc.kind = "angle_gram";
    doc.n = a.n;
    if (a.geometry == GeometryTag::Spherical || a.geometry == GeometryTag::Hyperbolic)
        doc.geometry = a.geometry;
    doc.data.assign(a.n + 1, std::vector<double>(a.n + 1));
    for (std::size_t i = 0; i <= a.n; ++i)
        for (std::size_t j = 0; j <= a.n; ++j) doc.data[i][j] = a.g(i, j);
    return doc;
}

MatrixDocument document_from_distance_gram(const DistanceGramMatrix& g) {
    MatrixDocument doc;
    doc.kind = "distance_gram";
    doc.n = g.n;
    doc.geometry = g.geometry;
    doc.data.assign(g.n + 1, std::vector<double>(g.n + 1));
    for (std::size_t i = 0; i <= g.n; ++i)
        for (std::size_t j = 0; j <= g.n; ++j) doc.data[i][j] = g.g(i, j);
    return doc;
}

MatrixDocument document_from_vertices(const SimplexVertices& verts) {
    MatrixDocument doc;
    doc.kind = "vertices";
    doc.n = verts.n;
    doc.geometry = verts.geometry;
    const std::size_t m = verts.n + 1;
    doc.data.assign(m, std::vector<double>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t c = 0; c < m; ++c) doc.data[i][c] = verts.v(c, i);
    return doc;
}

} // namespace simplexvol::cli
