#pragma once

#include "io.hpp"
#include "partition.hpp"
#include "scalar.hpp"

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

namespace besov {

/// runtime knobs; everything has a default so an empty JSON object is a valid config
struct Config {
    double witness_tol = 1e-3;          ///< relative agreement of the last two rungs of a witness row
    double factor_tol = 1e-6;           ///< real-line constant ladders
    std::size_t mask_budget = kDefaultMaskBudget;
    std::vector<int> refinement = {1, 2};  ///< witness rung n = base n * factor, box fixed
    std::size_t max_grid_points = std::size_t(1) << 24;
    int threads = 1;                    ///< concurrent witness rows
    std::filesystem::path output_dir;   ///< relative output paths resolve here

    void validate() const {
        if (!(witness_tol > 0.0) || !(factor_tol > 0.0)) throw domain_error("tolerances must be positive");
        if (refinement.empty()) throw domain_error("refinement schedule is empty");
        for (std::size_t i = 0; i < refinement.size(); ++i) {
            int f = refinement[i];
            if (f < 1 || (f & (f - 1)) != 0) throw domain_error("refinement factors must be powers of two");
            if (i > 0 && f <= refinement[i - 1]) throw domain_error("refinement factors must increase");
        }
        if (threads < 1) throw domain_error("threads must be >= 1");
        if (max_grid_points < 16) throw domain_error("max_grid_points too small");
    }

    /// relative paths land in output_dir when one is set
    std::filesystem::path resolve(const std::filesystem::path& p) const {
        if (p.is_absolute() || output_dir.empty()) return p;
        return output_dir / p;
    }
};

inline constexpr const char* kOutputDirEnv = "BESOVLAB_OUTPUT_DIR";

inline Config config_from_json(const nlohmann::json& j) {
    Config c;
    if (!j.is_object()) throw domain_error("config must be a JSON object");
    static const char* known[] = {"witness_tol", "factor_tol", "mask_budget_bytes", "refinement", "max_grid_points",
                                  "threads", "output_dir"};
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (const char* n : known) ok = ok || k == n;
        if (!ok) throw domain_error("unknown config key '" + k + "'");
    }
    try {
        c.witness_tol = j.value("witness_tol", c.witness_tol);
        c.factor_tol = j.value("factor_tol", c.factor_tol);
        c.mask_budget = j.value("mask_budget_bytes", c.mask_budget);
        c.refinement = j.value("refinement", c.refinement);
        c.max_grid_points = j.value("max_grid_points", c.max_grid_points);
        c.threads = j.value("threads", c.threads);
        if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw domain_error(std::string("bad config: ") + e.what());
    }
    c.validate();
    return c;
}

inline nlohmann::ordered_json to_json(const Config& c) {
    nlohmann::ordered_json j;
    j["witness_tol"] = c.witness_tol;
    j["factor_tol"] = c.factor_tol;
    j["mask_budget_bytes"] = c.mask_budget;
    j["refinement"] = c.refinement;
    j["max_grid_points"] = c.max_grid_points;
    j["threads"] = c.threads;
    j["output_dir"] = c.output_dir.string();
    return j;
}

/// file (optional) then the output-directory environment override
inline Config load_config(const std::filesystem::path& file = {}) {
    Config c = file.empty() ? Config{} : config_from_json(io::read_json(file));
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) c.output_dir = env;
    return c;
}

}  // namespace besov
