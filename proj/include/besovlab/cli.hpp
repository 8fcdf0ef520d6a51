#pragma once

#include "config.hpp"
#include "examples.hpp"
#include "harness.hpp"
#include "io.hpp"
#include "norms.hpp"
#include "params.hpp"
#include "regions.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace besov::cli {

inline constexpr int kOk = 0;
inline constexpr int kRuntimeError = 1;
inline constexpr int kUsageError = 2;

namespace detail {

/// stdout when `path` is empty, otherwise a file under the configured output dir
inline void deliver(const std::string& text, const std::string& path, const Config& cfg, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    auto target = cfg.resolve(path);
    auto f = io::open_out(target);
    f << text;
    f.flush();
    if (!f) throw io_error("write failed for '" + target.string() + "'");
}

inline ReportFormat report_format(const std::string& s) { return s == "json" ? ReportFormat::JSON : ReportFormat::CSV; }

inline std::vector<ExtendedExponent> parse_exponents(const std::vector<std::string>& v) {
    std::vector<ExtendedExponent> ps;
    for (const auto& s : v) ps.push_back(ExtendedExponent::parse(s));
    return ps;
}

}  // namespace detail

/**
 * @brief Entry point of the besovlab tool.
 *
 * Exit codes: 0 success, 2 for bad arguments or parameters outside a
 * domain (usage goes to `err`), 1 for runtime failures such as I/O.
 */
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Besov quasi-norm laboratory: embedding oracle, witness experiments, norm evaluation", "besovlab"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    std::string config_path;
    std::uint64_t seed = 1;
    std::optional<int> threads;
    app.add_option("--config", config_path, "JSON config file (tolerances, budgets, output_dir)")->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "seed for every randomized trial")->capture_default_str();
    app.add_option("--threads", threads, "concurrent witness rows (overrides config)");

    // verdict
    auto* verdict = app.add_subcommand("verdict", "embedding verdict for one parameter point");
    std::string direction = "s2b", vt, vp, vq;
    int vd = 2;
    verdict->add_option("--direction", direction, "s2b: S^t -> B^t; b2s: B^{td} -> S^t")
        ->check(CLI::IsMember({"s2b", "b2s"}))
        ->capture_default_str();
    verdict->add_option("--t", vt, "smoothness (decimal or fraction)")->required();
    verdict->add_option("--p", vp, "integrability, > 0 or inf")->required();
    verdict->add_option("--q", vq, "summability, > 0 or inf")->required();
    verdict->add_option("--d", vd, "dimension")->capture_default_str();

    // norm
    auto* norm = app.add_subcommand("norm", "Besov quasi-norm of a stored grid function");
    std::string n_input, n_space, n_t, n_p, n_q, n_emit = "json", n_out;
    std::optional<int> n_levels;
    norm->add_option("--input", n_input, "grid-function container")->required();
    norm->add_option("--space", n_space, "iso or mixed")->required()->check(CLI::IsMember({"iso", "mixed"}));
    norm->add_option("--t", n_t, "smoothness")->required();
    norm->add_option("--p", n_p, "integrability")->required();
    norm->add_option("--q", n_q, "summability")->required();
    norm->add_option("--levels", n_levels, "partition depth J (default: deepest level the grid holds)");
    norm->add_option("--emit", n_emit, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    norm->add_option("--out", n_out, "output file (default stdout)");

    // witness
    auto* witness = app.add_subcommand("witness", "run a named witness case over a range of ell");
    std::string w_case, w_emit = "csv", w_out;
    std::optional<int> w_lmin, w_lmax;
    std::vector<int> w_sched;
    witness->add_option("--case", w_case, "case id (see `cases`)")->required();
    witness->add_option("--lmin", w_lmin, "first ell (default: case range)");
    witness->add_option("--lmax", w_lmax, "last ell (default: case range)");
    witness->add_option("--grid-schedule", w_sched, "refinement factors applied to the base n, e.g. 1 2 4");
    witness->add_option("--emit", w_emit, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    witness->add_option("--out", w_out, "output file (default stdout)");

    // regions
    auto* regions = app.add_subcommand("regions", "verdict regions in the (1/p, t) plane");
    int r_figure = 1, r_d = 2;
    double r_extent = 2.0;
    std::string r_out;
    regions->add_option("--figure", r_figure, "1: S^t -> B^t, 2: B^{td} -> S^t")->required()->check(CLI::IsMember({1, 2}));
    regions->add_option("--extent", r_extent, "window [0,E] x [-E,E]")->capture_default_str();
    regions->add_option("--d", r_d, "dimension")->capture_default_str();
    regions->add_option("--out", r_out, "output file (default stdout)");

    // probe-multiplier
    auto* probe = app.add_subcommand("probe-multiplier", "empirical multiplier ratios, k = (j, 1), d = 2");
    std::vector<std::string> m_p = {"1/2", "1", "2", "inf"};
    int m_jmin = 2, m_jmax = 8, m_trials = 100;
    std::string m_out;
    probe->add_option("--p", m_p, "exponents")->capture_default_str();
    probe->add_option("--jmin", m_jmin, "first level")->capture_default_str();
    probe->add_option("--jmax", m_jmax, "last level")->capture_default_str();
    probe->add_option("--trials", m_trials, "random spectra per level")->capture_default_str();
    probe->add_option("--out", m_out, "output file (default stdout)");

    // example
    auto* example = app.add_subcommand("example", "synthesize a witness function and store it");
    std::string e_spec, e_out;
    std::size_t e_n = 0;
    double e_R = 0.0;
    example->add_option("--spec", e_spec, "ExampleSpec JSON file")->required()->check(CLI::ExistingFile);
    example->add_option("--n", e_n, "samples per axis (power of two)")->required();
    example->add_option("--R", e_R, "box half-width")->required();
    example->add_option("--out", e_out, "container path (sidecar written next to it)")->required();

    auto* cases = app.add_subcommand("cases", "list witness cases and clause coverage");

    for (auto* sub : {verdict, norm, witness, regions, probe, example, cases}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    auto usage = [&](const std::string& msg) {
        err << "error: " << msg << "\n\n";
        auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return kUsageError;
    };

    try {
        Config cfg = load_config(config_path);
        if (threads) cfg.threads = *threads;
        cfg.validate();

        if (*verdict) {
            auto x = make_params(Scalar::parse(vt), ExtendedExponent::parse(vp), ExtendedExponent::parse(vq), vd);
            Verdict v = direction == "s2b" ? embed_mixed_into_iso(x) : embed_iso_into_mixed(x);
            out << to_json(v).dump() << '\n';
        } else if (*norm) {
            auto f = import_grid_function(n_input);
            const auto& g = f.grid();
            int J = n_levels.value_or(max_level_for(g));
            if (J < 0) throw domain_error("--levels must be >= 0");
            auto P = n_space == "iso" ? build_cube_partition(g, J, cfg.mask_budget)
                                      : build_tensor_partition(g, J, cfg.mask_budget);
            auto p = ExtendedExponent::parse(n_p), q = ExtendedExponent::parse(n_q);
            double t = Scalar::parse(n_t).value();
            auto r = n_space == "iso" ? iso_besov_norm(f, t, p, q, P) : mixed_besov_norm(f, t, p, q, P);
            std::ostringstream s;
            if (n_emit == "csv")
                write_csv(s, r);
            else
                s << to_json(r).dump(2) << '\n';
            detail::deliver(s.str(), n_out, cfg, out);
        } else if (*witness) {
            const auto& c = find_case(w_case);
            if (!w_sched.empty()) {
                cfg.refinement = w_sched;
                cfg.validate();
            }
            auto tab = run_witness(c, w_lmin.value_or(c.lmin), w_lmax.value_or(c.lmax), cfg);
            std::ostringstream s;
            write_report(s, {tab}, detail::report_format(w_emit));
            detail::deliver(s.str(), w_out, cfg, out);
        } else if (*regions) {
            auto rd = region_diagram(r_figure == 1 ? Direction::MixedIntoIso : Direction::IsoIntoMixed_Source, r_d,
                                     r_extent);
            detail::deliver(to_json(rd).dump(2) + "\n", r_out, cfg, out);
        } else if (*probe) {
            auto ps = detail::parse_exponents(m_p);
            auto sweep = probe_sweep(ps, m_jmin, m_jmax, m_trials, seed);
            detail::deliver(to_json(sweep).dump(2) + "\n", m_out, cfg, out);
        } else if (*example) {
            auto spec = example_spec_from_json(io::read_json(e_spec));
            FrequencyGrid g(spec.d, e_n, e_R);
            auto f = make_example(spec, g);
            auto target = cfg.resolve(e_out);
            export_grid_function(f, target);
            nlohmann::ordered_json j;
            j["out"] = target.string();
            j["grid"] = grid_json(g);
            j["spec"] = to_json(spec);
            out << j.dump(2) << '\n';
        } else if (*cases) {
            nlohmann::ordered_json j;
            auto& cs = j["cases"] = nlohmann::ordered_json::array();
            for (const auto& c : witness_registry()) cs.push_back(to_json(c));
            auto& cov = j["clause_coverage"] = nlohmann::ordered_json::array();
            for (const auto& c : clause_coverage())
                cov.push_back({{"clause", c.clause}, {"cases", c.cases}, {"annotation", c.annotation}});
            out << j.dump(2) << '\n';
        }
    } catch (const domain_error& e) {
        return usage(e.what());
    } catch (const io_error& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kOk;
}

}  // namespace besov::cli
