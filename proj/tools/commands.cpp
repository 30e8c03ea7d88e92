#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "document.hpp"
#include "simplexvol/degeneration.hpp"
#include "simplexvol/errors.hpp"
#include "simplexvol/hyperbolic.hpp"
#include "simplexvol/volume.hpp"

namespace simplexvol::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string iso_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::string csv_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

nlohmann::json estimate_to_json(const VolumeEstimate& est) {
    return nlohmann::json{{"value", est.value},
                          {"std_error", est.std_error},
                          {"method", to_string(est.method)},
                          {"samples", est.samples}};
}

void emit_json(const nlohmann::json& j, const GlobalOptions& opt) {
    write_text(opt.output, j.dump(2) + "\n");
}

} // namespace

nlohmann::json run_manifest(const std::string& command, const GlobalOptions& opt) {
    return nlohmann::json{{"command", command}, {"seed", opt.seed},     {"samples", opt.samples},
                          {"chunk", opt.chunk}, {"tol", opt.tol},       {"version", kVersion},
                          {"timestamp", iso_timestamp()}};
}

void write_text(const std::string& output_path, const std::string& text) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path);
    if (!out) throw ValidationError("cannot open output file: " + output_path);
    out << text;
}

int cmd_classify(const std::string& input, const GlobalOptions& opt) {
    const MatrixDocument doc = load_document(input);
    SymMatrix g(0);
    if (doc.kind == "angle_matrix")
        g = angle_gram_from_angles(to_angle_matrix(doc, opt.degrees)).g;
    else if (doc.kind == "angle_gram")
        g = SymMatrix::from_rows(doc.data);
    else
        throw ValidationError("classify expects an angle_matrix or angle_gram document");

    const Classification c = classify_angle_gram(g, opt.tol);
    nlohmann::json j;
    j["tag"] = [&] {
        switch (c.tag) {
        case GeometryTag::Spherical: return "Spherical";
        case GeometryTag::Hyperbolic: return "Hyperbolic";
        case GeometryTag::ClosureBoundary: return "ClosureBoundary";
        default: return "Invalid";
        }
    }();
    j["min_eigenvalue"] = c.min_eigenvalue;
    j["max_eigenvalue"] = c.max_eigenvalue;
    j["det"] = c.det;
    j["min_adjugate_entry"] = c.min_adjugate_entry;
    j["minor_positive_definite"] = c.minor_positive_definite;
    j["tol"] = c.tol;
    j["manifest"] = run_manifest("classify", opt);
    emit_json(j, opt);
    return 0;
}

int cmd_volume(const std::string& input, const std::string& method, const GlobalOptions& opt) {
    if (opt.samples < 1) throw ValidationError("--samples must be positive");
    const MatrixDocument doc = load_document(input);
    const AngleGramMatrix a = to_angle_gram(doc, opt.degrees, opt.tol);
    if (a.geometry == GeometryTag::ClosureBoundary)
        throw GeometryError("boundary matrix: use `degenerate` to approach it");
    if (a.geometry == GeometryTag::Invalid)
        throw GeometryError("matrix is not a spherical or hyperbolic angle Gram");

    VolumeEstimate est;
    if (a.geometry == GeometryTag::Spherical) {
        est = spherical_volume(a, opt.mc());
    } else if (method == "cone") {
        est = hyperbolic_volume(a, opt.mc(), VolumeMethod::ConeMC);
    } else if (method == "klein") {
        est = hyperbolic_volume(a, opt.mc(), VolumeMethod::KleinMC);
    } else {
        throw ValidationError("--method must be klein or cone");
    }

    nlohmann::json j = estimate_to_json(est);
    j["geometry"] = to_string(a.geometry);
    j["manifest"] = run_manifest("volume", opt);
    emit_json(j, opt);
    return 0;
}

int cmd_convert(const std::string& input, const std::string& target, const GlobalOptions& opt) {
    const MatrixDocument doc = load_document(input);
    MatrixDocument out;
    const auto unsupported = [&]() -> ValidationError {
        return ValidationError("unsupported conversion: " + doc.kind + " -> " + target);
    };

    if (target == "angle_gram") {
        out = document_from_angle_gram(to_angle_gram(doc, opt.degrees, opt.tol));
    } else if (target == "angle_matrix") {
        if (doc.kind != "angle_gram" && doc.kind != "angle_matrix") throw unsupported();
        out = document_from_angle_matrix(
            angles_from_angle_gram(to_angle_gram(doc, opt.degrees, opt.tol)));
    } else if (target == "vertices") {
        if (doc.kind != "angle_gram" && doc.kind != "angle_matrix") throw unsupported();
        out = document_from_vertices(
            vertices_from_angle_gram(to_angle_gram(doc, opt.degrees, opt.tol)));
    } else if (target == "distance_gram") {
        if (doc.kind != "vertices") throw unsupported();
        out = document_from_distance_gram(distance_gram_from_vertices(to_vertices(doc)));
    } else {
        throw ValidationError("unknown target kind \"" + target + "\"");
    }

    nlohmann::json j = document_to_json(out);
    j["manifest"] = run_manifest("convert", opt);
    emit_json(j, opt);
    return 0;
}

namespace {

SimplexVertices vertices_from_any(const MatrixDocument& doc, const GlobalOptions& opt) {
    if (doc.kind == "vertices") return to_vertices(doc);
    const AngleGramMatrix a = to_angle_gram(doc, opt.degrees, opt.tol);
    if (a.geometry != GeometryTag::Hyperbolic)
        throw GeometryError("a hyperbolic simplex is required (got " + to_string(a.geometry) +
                            ")");
    return vertices_from_angle_gram(a);
}

} // namespace

int cmd_inball(const std::string& input, const GlobalOptions& opt) {
    const MatrixDocument doc = load_document(input);
    const SimplexVertices verts = vertices_from_any(doc, opt);
    if (verts.geometry != GeometryTag::Hyperbolic)
        throw GeometryError("inball is defined for hyperbolic simplices");
    const InscribedBall ball = inscribed_ball(verts);
    nlohmann::json j;
    j["center"] = ball.center;
    j["radius"] = ball.radius;
    j["equidistance_residual"] = ball.equidistance_residual;
    j["manifest"] = run_manifest("inball", opt);
    emit_json(j, opt);
    return 0;
}

namespace {

struct DegenerateConfig {
    AngleGramMatrix a0;
    SymMatrix a1;
    std::size_t steps = 24;
    PathSpacing spacing = PathSpacing::Geometric;
    double t0 = 0.0;
    double t_max = 0.999;
    double threshold = 0.02;
    std::uint64_t seed = 1;
    std::uint64_t samples = 1'000'000;
    std::uint64_t chunk = 65'536;
};

DegenerateConfig parse_degenerate_config(const std::string& path, const GlobalOptions& opt,
                                         bool seed_given, bool samples_given) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("invalid JSON config: ") + e.what());
    }
    if (!j.contains("a0")) throw ValidationError("config needs an \"a0\" document");

    DegenerateConfig cfg;
    cfg.a0 = to_angle_gram(document_from_json(j["a0"]), opt.degrees, opt.tol);

    if (!j.contains("target")) throw ValidationError("config needs a \"target\"");
    const auto& tgt = j["target"];
    if (tgt.contains("matrix")) {
        cfg.a1 = SymMatrix::from_rows(tgt["matrix"].get<std::vector<std::vector<double>>>());
    } else if (tgt.contains("family")) {
        const std::string family = tgt["family"].get<std::string>();
        if (family == "lune") {
            if (!tgt.contains("alpha")) throw ValidationError("lune target needs \"alpha\"");
            cfg.a1 = lune_boundary_matrix(tgt["alpha"].get<double>());
        } else if (family == "euclidean") {
            cfg.a1 = euclidean_boundary_matrix(cfg.a0);
        } else if (family == "ideal") {
            cfg.a1 = ideal_boundary_matrix(cfg.a0.n);
        } else {
            throw ValidationError("unknown boundary family \"" + family + "\"");
        }
    } else {
        throw ValidationError("target needs a \"family\" or an explicit \"matrix\"");
    }

    if (j.contains("steps")) cfg.steps = j["steps"].get<std::size_t>();
    if (j.contains("spacing")) {
        const std::string s = j["spacing"].get<std::string>();
        if (s == "geometric")
            cfg.spacing = PathSpacing::Geometric;
        else if (s == "linear")
            cfg.spacing = PathSpacing::Linear;
        else
            throw ValidationError("spacing must be \"geometric\" or \"linear\"");
    }
    if (j.contains("t0")) cfg.t0 = j["t0"].get<double>();
    if (j.contains("t_max")) cfg.t_max = j["t_max"].get<double>();
    if (j.contains("threshold")) cfg.threshold = j["threshold"].get<double>();
    if (j.contains("mc")) {
        const auto& mc = j["mc"];
        if (mc.contains("seed")) cfg.seed = mc["seed"].get<std::uint64_t>();
        if (mc.contains("samples")) cfg.samples = mc["samples"].get<std::uint64_t>();
        if (mc.contains("chunk")) cfg.chunk = mc["chunk"].get<std::uint64_t>();
    }
    // explicit command-line flags win over the config
    if (seed_given) cfg.seed = opt.seed;
    if (samples_given) cfg.samples = opt.samples;
    if (cfg.samples < 1) throw ValidationError("samples must be positive");

    // schedules must be strictly increasing; build_path re-validates the rest
    if (j.contains("schedule")) throw ValidationError("custom schedules are built from steps/spacing");
    return cfg;
}

std::string degeneration_csv(const DegenerationReport& rep, const nlohmann::json& manifest) {
    nlohmann::json m = manifest;
    const std::string stamp = m["timestamp"].get<std::string>();
    m.erase("timestamp");
    std::ostringstream out;
    out << "# manifest: " << m.dump() << "\n";
    out << "# timestamp: " << stamp << "\n";
    out << "t,volume,std_error,succ_diff,lambda_min,det,min_adjugate\n";
    for (const DegenerationStep& s : rep.steps)
        out << csv_number(s.t) << ',' << csv_number(s.volume.value) << ','
            << csv_number(s.volume.std_error) << ',' << csv_number(s.succ_diff) << ','
            << csv_number(s.lambda_min) << ',' << csv_number(s.det) << ','
            << csv_number(s.min_adjugate) << "\n";
    return out.str();
}

} // namespace

int cmd_degenerate(const std::string& config_path, const std::string& csv_path,
                   const GlobalOptions& opt, bool seed_given, bool samples_given) {
    const DegenerateConfig cfg =
        parse_degenerate_config(config_path, opt, seed_given, samples_given);
    const MatrixPath path =
        build_path(cfg.a0, cfg.a1, cfg.steps, cfg.spacing, cfg.t0, cfg.t_max, opt.tol);
    const MCConfig mc{cfg.seed, cfg.samples, cfg.chunk};
    const DegenerationReport rep = run_continuity_experiment(path, mc, cfg.threshold, opt.tol);

    GlobalOptions manifest_opt = opt;
    manifest_opt.seed = cfg.seed;
    manifest_opt.samples = cfg.samples;
    manifest_opt.chunk = cfg.chunk;
    const nlohmann::json manifest = run_manifest("degenerate", manifest_opt);

    nlohmann::json j;
    j["steps"] = nlohmann::json::array();
    for (const DegenerationStep& s : rep.steps)
        j["steps"].push_back(nlohmann::json{{"t", s.t},
                                            {"tag", to_string(s.tag)},
                                            {"volume", s.volume.value},
                                            {"std_error", s.volume.std_error},
                                            {"succ_diff", s.succ_diff},
                                            {"succ_diff_se", s.succ_diff_se},
                                            {"lambda_min", s.lambda_min},
                                            {"lambda_max", s.lambda_max},
                                            {"det", s.det},
                                            {"min_adjugate", s.min_adjugate}});
    j["summary"] = nlohmann::json{{"verdict", to_string(rep.verdict)},
                                  {"max_last_quartile_diff", rep.max_last_quartile_diff},
                                  {"threshold", rep.cauchy_threshold},
                                  {"steps", rep.steps.size()}};
    j["manifest"] = manifest;
    emit_json(j, opt);
    if (!csv_path.empty()) write_text(csv_path, degeneration_csv(rep, manifest));
    return 0;
}

int cmd_tail(const std::string& input, const std::string& point_spec, const std::string& radii,
             std::optional<double> hypothesis_r, const GlobalOptions& opt) {
    if (opt.samples < 1) throw ValidationError("--samples must be positive");
    const MatrixDocument doc = load_document(input);
    const SimplexVertices verts = vertices_from_any(doc, opt);

    Vec x;
    if (point_spec == "inball") {
        x = inscribed_ball(verts).center;
    } else {
        std::stringstream ss(point_spec);
        std::string item;
        while (std::getline(ss, item, ',')) x.push_back(std::stod(item));
        if (x.size() != verts.n + 1)
            throw ValidationError("--point needs " + std::to_string(verts.n + 1) +
                                  " comma-separated coordinates or \"inball\"");
        const double q = mink_inner(x, x);
        if (std::fabs(q + 1.0) > 1e-6 || x.back() <= 0.0)
            throw ValidationError("--point is not on the upper hyperboloid");
        const double s = 1.0 / std::sqrt(-q);
        for (double& c : x) c *= s;
    }

    Vec rs;
    {
        std::stringstream ss(radii);
        std::string item;
        while (std::getline(ss, item, ',')) rs.push_back(std::stod(item));
        if (rs.empty()) throw ValidationError("--radii must list at least one radius");
    }

    if (hypothesis_r) {
        const Vec d = point_face_distances(verts, x);
        for (double v : d)
            if (v > *hypothesis_r) {
                std::cerr << "warning: point is " << v
                          << " away from a face hyperplane, beyond the hypothesis r = "
                          << *hypothesis_r << "\n";
                break;
            }
    }

    const auto tails = tail_volume_schedule(verts, x, rs, opt.mc());
    const nlohmann::json manifest = run_manifest("tail", opt);

    if (opt.format == "json") {
        nlohmann::json j;
        j["rows"] = nlohmann::json::array();
        for (const TailVolumeResult& t : tails)
            j["rows"].push_back(nlohmann::json{{"R", t.radius},
                                               {"tail_volume", t.estimate.value},
                                               {"std_error", t.estimate.std_error}});
        j["point"] = x;
        j["manifest"] = manifest;
        emit_json(j, opt);
        return 0;
    }

    nlohmann::json m = manifest;
    const std::string stamp = m["timestamp"].get<std::string>();
    m.erase("timestamp");
    std::ostringstream out;
    out << "# manifest: " << m.dump() << "\n";
    out << "# timestamp: " << stamp << "\n";
    out << "R,tail_volume,std_error\n";
    for (const TailVolumeResult& t : tails)
        out << csv_number(t.radius) << ',' << csv_number(t.estimate.value) << ','
            << csv_number(t.estimate.std_error) << "\n";
    write_text(opt.output, out.str());
    return 0;
}

} // namespace simplexvol::cli
