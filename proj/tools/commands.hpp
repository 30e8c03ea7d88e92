#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "simplexvol/mc.hpp"

namespace simplexvol::cli {

struct GlobalOptions {
    std::uint64_t seed = 1;
    std::uint64_t samples = 1'000'000;
    std::uint64_t chunk = 65'536;
    double tol = 1e-9;
    std::string output;       // empty -> stdout
    std::string format = "json"; // json | csv where applicable
    bool degrees = false;

    MCConfig mc() const { return MCConfig{seed, samples, chunk}; }
};

nlohmann::json run_manifest(const std::string& command, const GlobalOptions& opt);
void write_text(const std::string& output_path, const std::string& text);

int cmd_classify(const std::string& input, const GlobalOptions& opt);
int cmd_volume(const std::string& input, const std::string& method, const GlobalOptions& opt);
int cmd_convert(const std::string& input, const std::string& target, const GlobalOptions& opt);
int cmd_inball(const std::string& input, const GlobalOptions& opt);
int cmd_degenerate(const std::string& config_path, const std::string& csv_path,
                   const GlobalOptions& opt, bool seed_given, bool samples_given);
int cmd_tail(const std::string& input, const std::string& point_spec, const std::string& radii,
             std::optional<double> hypothesis_r, const GlobalOptions& opt);

} // namespace simplexvol::cli
