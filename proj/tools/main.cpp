#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "commands.hpp"
#include "simplexvol/errors.hpp"

using namespace simplexvol;
using namespace simplexvol::cli;

int main(int argc, char** argv) {
    CLI::App app{"spherical and hyperbolic simplex volumes from angle Gram matrices"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions opt;
    auto* seed_opt = app.add_option("--seed", opt.seed, "Monte Carlo seed");
    auto* samples_opt = app.add_option("--samples", opt.samples, "Monte Carlo samples");
    app.add_option("--chunk", opt.chunk, "samples per deterministic chunk");
    app.add_option("--tol", opt.tol, "classification tolerance (relative)");
    app.add_option("--output", opt.output, "output file (default stdout)");
    auto* format_opt = app.add_option("--format", opt.format,
                                      "json or csv output where applicable (tail defaults to csv)")
                           ->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--degrees", opt.degrees, "read angle matrices in degrees");

    std::string input, method = "klein", target, csv_path, point_spec = "inball";
    std::string radii = "0,1,2,4,8";
    double hypothesis_r = -1.0;

    auto* classify = app.add_subcommand("classify", "classify an angle (Gram) matrix");
    classify->add_option("input", input, "matrix document (JSON)")->required();

    auto* volume = app.add_subcommand("volume", "estimate the simplex volume");
    volume->add_option("input", input, "matrix document (JSON)")->required();
    volume->add_option("--method", method, "hyperbolic estimator: klein or cone");

    auto* convert = app.add_subcommand("convert", "convert between document kinds");
    convert->add_option("input", input, "matrix document (JSON)")->required();
    convert->add_option("--to", target, "target kind")->required();

    auto* inball = app.add_subcommand("inball", "inscribed ball of a hyperbolic simplex");
    inball->add_option("input", input, "vertices or hyperbolic angle document")->required();

    auto* degenerate =
        app.add_subcommand("degenerate", "volumes along a path toward a boundary matrix");
    degenerate->add_option("config", input, "path config (JSON)")->required();
    degenerate->add_option("--csv", csv_path, "also write the per-step table as CSV");

    auto* tail = app.add_subcommand("tail", "volume outside balls around a point");
    tail->add_option("input", input, "vertices or hyperbolic angle document")->required();
    tail->add_option("--point", point_spec, "\"inball\" or comma-separated coordinates");
    tail->add_option("--radii", radii, "comma-separated R schedule");
    tail->add_option("--hypothesis-r", hypothesis_r,
                     "warn when the point is farther than this from a face hyperplane");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*classify) return cmd_classify(input, opt);
        if (*volume) return cmd_volume(input, method, opt);
        if (*convert) return cmd_convert(input, target, opt);
        if (*inball) return cmd_inball(input, opt);
        if (*degenerate)
            return cmd_degenerate(input, csv_path, opt, seed_opt->count() > 0,
                                  samples_opt->count() > 0);
        if (*tail) {
            if (format_opt->count() == 0) opt.format = "csv";
            return cmd_tail(input, point_spec, radii,
                            hypothesis_r >= 0.0 ? std::optional<double>(hypothesis_r)
                                                : std::nullopt,
                            opt);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const GeometryError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
