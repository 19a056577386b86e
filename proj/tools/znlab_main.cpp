#include <fstream>
#include <iostream>
#include <sstream>

#include "znlab/clock_model.hpp"
#include "znlab/dyon_exchange.hpp"
#include "znlab/emit.hpp"
#include "znlab/gauge_hamiltonian.hpp"
#include "znlab/mft.hpp"
#include "znlab/rmft.hpp"
#include "znlab/rng.hpp"
#include "znlab/run_config.hpp"

namespace {

using nlohmann::json;
using namespace znlab;

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("cannot read config file: " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void output_json(const RunConfig& cfg, json body) {
    const std::string out = cfg.get("out");
    if (out.empty()) {
        body["schema_version"] = "1";
        body["meta"] = config_metadata(cfg);
        std::cout << body.dump(2) << "\n";
    } else {
        write_json(out, std::move(body), cfg);
        std::cout << "wrote " << out << "\n";
    }
}

void output_csv(const RunConfig& cfg, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows, const std::string& path) {
    if (path.empty()) {
        for (std::size_t i = 0; i < header.size(); ++i) std::cout << (i ? "," : "") << header[i];
        std::cout << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << row[i];
            std::cout << "\n";
        }
    } else {
        write_csv(path, header, rows);
        std::ofstream meta(path + ".meta.json", std::ios::binary);
        meta << config_metadata(cfg).dump(2) << "\n";
        std::cout << "wrote " << path << "\n";
    }
}

std::map<int, int> parse_charges(const std::string& text, int order) {
    std::map<int, int> charges;
    if (text.empty()) return charges;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ConfigError("charges expects site:value pairs, got '" + item + "'");
        const int site = std::stoi(item.substr(0, colon));
        const int value = ZnPhase::normalize(std::stoi(item.substr(colon + 1)), order);
        if (value != 0) charges[site] = value;
    }
    return charges;
}

std::vector<int> draw_tau(const TorusLattice& lat, int order, const RngFamily& rng,
                          bool resample_until_trivial, std::uint64_t draw_index) {
    std::vector<int> tau(lat.num_plaquettes(), 0);
    for (int attempt = 0; attempt < 4096; ++attempt) {
        auto gen = rng.stream("tau", draw_index * 4096 + attempt);
        std::uniform_int_distribution<int> dist(0, order - 1);
        long long sum = 0;
        for (auto& t : tau) {
            t = dist(gen);
            sum += t;
        }
        if (!resample_until_trivial || sum % order == 0) return tau;
    }
    throw DomainError("failed to draw a zero-obstruction tau configuration");
}

json spectrum_to_json(const SpectrumResult& res) {
    json body;
    for (const double e : res.eigenvalues) body["eigenvalues"].push_back(e);
    body["eigenvalues_formatted"] = json::array();
    for (const double e : res.eigenvalues) body["eigenvalues_formatted"].push_back(format_double(e));
    for (const auto& c : res.clusters)
        body["clusters"].push_back({{"first", c.first}, {"count", c.count}, {"mean", c.mean}});
    if (res.sector_labels) {
        for (const auto& [za, zb] : *res.sector_labels)
            body["sectors"].push_back({{"z_a", za}, {"z_b", zb}});
    } else {
        body["sectors"] = json::array();
    }
    body["solver"] = {{"method", res.method},
                      {"iterations", res.iterations},
                      {"max_residual", res.max_residual},
                      {"cluster_tolerance", res.cluster_tolerance}};
    return body;
}

GaugeModelSpec gauge_spec_from(const RunConfig& cfg, const RngFamily& rng) {
    GaugeModelSpec spec;
    spec.order = cfg.get_int("N");
    spec.lattice = TorusLattice::build(cfg.get_int("L1"), cfg.get_int("L2"));
    spec.lambda1 = cfg.get_double("lambda1");
    spec.lambda2 = cfg.get_double("lambda2");
    if (cfg.values.count("tau") && cfg.get("tau") == "random")
        spec.tau_exponents = draw_tau(spec.lattice, spec.order, rng,
                                      cfg.get("ntau_obstruction") == "resample", 0);
    if (cfg.values.count("charges"))
        spec.static_charges = parse_charges(cfg.get("charges"), spec.order);
    if (cfg.values.count("mass")) spec.mass = cfg.get_double("mass");
    return spec;
}

int run_spectrum(const RunConfig& cfg) {
    const RngFamily rng(cfg.get_u64("seed"));
    const int n = cfg.get_int("N");
    int k = cfg.get_int("k");
    if (k == 0) k = n * n + 4;
    const double degeneracy_tol =
        cfg.get_double("degeneracy_tol") > 0.0 ? cfg.get_double("degeneracy_tol")
                                               : 1e-8 * cfg.get_double("lambda2");
    EigenOptions opts;
    opts.tolerance = cfg.get_double("eig_tol");
    opts.max_iterations = cfg.get_int("max_iter");
    opts.seed = cfg.get_u64("seed");

    SpectrumResult res;
    if (cfg.get("model") == "gauge") {
        res = spectrum(gauge_spec_from(cfg, rng), k, degeneracy_tol, opts);
    } else {
        ClockModelSpec clock;
        clock.order = n;
        clock.l1 = cfg.get_int("L1");
        clock.l2 = cfg.get_int("L2");
        clock.lambda1 = cfg.get_double("lambda1");
        clock.lambda2 = cfg.get_double("lambda2");
        clock.twist_a = cfg.get_int("twist_a");
        clock.twist_b = cfg.get_int("twist_b");
        clock.charge_sector = cfg.get_int("sector");
        res = clock_spectrum(clock, k, degeneracy_tol, opts);
    }
    json body = spectrum_to_json(res);
    body["resolved"] = {{"k", k}, {"degeneracy_tol", degeneracy_tol}};
    output_json(cfg, std::move(body));
    return 0;
}

int run_gap(const RunConfig& cfg) {
    GaugeModelSpec spec;
    spec.order = cfg.get_int("N");
    spec.lattice = TorusLattice::build(cfg.get_int("L1"), cfg.get_int("L2"));
    spec.lambda1 = 0.0;
    spec.lambda2 = cfg.get_double("lambda2");
    const VortexGapResult gap = vortex_pair_gap(spec);
    output_json(cfg, json{{"pair_gap", gap.pair_gap},
                          {"single_vortex_gap", gap.single_vortex_gap},
                          {"formula", gap.formula}});
    return 0;
}

int run_braid(const RunConfig& cfg) {
    GaugeModelSpec spec;
    spec.order = cfg.get_int("N");
    spec.lattice = TorusLattice::build(cfg.get_int("L1"), cfg.get_int("L2"));
    spec.lambda1 = 0.0;
    spec.lambda2 = 1.0;
    const bool around_both = cfg.get_int("around_both") != 0;
    const BraidingGeometry geom = default_braiding_geometry(spec.lattice, around_both);
    const BraidingReport rep = braiding_check(spec, cfg.get_int("q"), geom.fermion_path,
                                              geom.vortex_path, geom.encircle_loop, around_both);
    output_json(cfg, json{{"algebraic_phase_exponent", rep.algebraic_exponent},
                          {"numeric_phase_exponent", rep.numeric_exponent},
                          {"expected_exponent", rep.expected_exponent},
                          {"winding", rep.winding},
                          {"agree", rep.agree}});
    return 0;
}

int run_duality(const RunConfig& cfg) {
    const RngFamily rng(cfg.get_u64("seed"));
    GaugeModelSpec spec;
    spec.order = cfg.get_int("N");
    spec.lattice = TorusLattice::build(cfg.get_int("L1"), cfg.get_int("L2"));
    spec.lambda1 = cfg.get_double("lambda1");
    spec.lambda2 = cfg.get_double("lambda2");
    const DualityReport rep = spectral_compare(spec, cfg.get_int("levels"));
    json body;
    body["gauge_levels"] = rep.gauge_levels;
    body["clock_union_levels"] = rep.clock_union_levels;
    body["level_differences"] = rep.level_differences;
    body["max_difference"] = rep.max_difference;
    body["gauge_dimension"] = rep.gauge_dimension;
    body["clock_sector_dimension_total"] = rep.clock_sector_dimension_total;
    for (const auto& row : rep.sector_ground_energy) body["sector_ground_energy"].push_back(row);
    output_json(cfg, std::move(body));
    return 0;
}

int run_rgc(const RunConfig& cfg) {
    const RngFamily rng(cfg.get_u64("seed"));
    const int draws = cfg.get_int("draws");
    GaugeModelSpec base;
    base.order = cfg.get_int("N");
    base.lattice = TorusLattice::build(cfg.get_int("L1"), cfg.get_int("L2"));
    base.lambda1 = cfg.get_double("lambda1");
    base.lambda2 = cfg.get_double("lambda2");

    json body;
    double worst_entry = 0.0, worst_eig = 0.0;
    for (int i = 0; i < draws; ++i) {
        GaugeModelSpec spec = base;
        spec.tau_exponents = draw_tau(spec.lattice, spec.order, rng,
                                      cfg.get("ntau_obstruction") == "resample", i);
        const RgcReport rep = rgc_isospectrality(spec);
        body["draws"].push_back({{"draw", i},
                                 {"obstruction", rep.obstruction},
                                 {"entrywise_equal", rep.entrywise_equal},
                                 {"max_entry_difference", rep.max_entry_difference},
                                 {"max_eigenvalue_difference", rep.max_eigenvalue_difference}});
        if (rep.absorbable) {
            worst_entry = std::max(worst_entry, rep.max_entry_difference);
            worst_eig = std::max(worst_eig, rep.max_eigenvalue_difference);
        }
    }
    body["max_entry_difference"] = worst_entry;
    body["max_eigenvalue_difference"] = worst_eig;
    output_json(cfg, std::move(body));
    return 0;
}

int run_mft_scan(const RunConfig& cfg) {
    const int d = cfg.get_int("d");
    const double h = cfg.get_double("h");
    const double lo = cfg.get_double("beta_min");
    const double hi = cfg.get_double("beta_max");
    const int steps = cfg.get_int("beta_steps");
    if (steps < 1) throw ConfigError("beta_steps must be >= 1");

    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < steps; ++i) {
        const double beta = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
        const MftMinimizeResult res = mft_minimize(d, beta, h);
        MftParams p{d, beta, h, res.u0_star};
        rows.push_back({format_double(beta), format_double(res.u0_star),
                        format_double(res.f_star), format_double(mft_magnetization(p)),
                        std::to_string(res.local_minima.size())});
    }
    output_csv(cfg, {"beta", "U0_star", "F_per_Np", "m_at_U0_star", "n_local_minima"}, rows,
               cfg.get("out"));
    return 0;
}

RmftSolveOptions rmft_options_from(const RunConfig& cfg) {
    RmftSolveOptions so;
    so.tolerance = cfg.get_double("rmft_tol");
    so.damping = cfg.get_double("damping");
    so.max_iterations = cfg.get_int("max_iter");
    so.epsilon_order = cfg.get_double("eps_order");
    so.quadrature_order = cfg.get_int("quad_order");
    so.seed = cfg.get_u64("seed");
    return so;
}

int run_rmft_solve(const RunConfig& cfg) {
    const double t_over_j = cfg.get_double("T_over_J");
    const double j0_over_j = cfg.get_double("J0_over_J");
    if (t_over_j <= 0.0) throw ConfigError("T_over_J must be > 0");
    const RmftSolution sol =
        rmft_solve(cfg.get_int("d"), 1.0 / t_over_j, 1.0, j0_over_j, cfg.get_double("h"),
                   rmft_options_from(cfg));
    std::vector<std::vector<std::string>> rows{{format_double(t_over_j), format_double(j0_over_j),
                                                format_double(sol.u0), format_double(sol.q),
                                                format_double(sol.free_energy),
                                                to_string(sol.phase),
                                                std::to_string(sol.iterations),
                                                sol.converged ? "1" : "0",
                                                format_double(sol.grad_norm)}};
    output_csv(cfg,
               {"T_over_J", "J0_over_J", "U0", "Q", "F_per_Np", "phase", "iterations", "converged",
                "grad_norm"},
               rows, cfg.get("out"));
    return 0;
}

int run_phase_diagram(const RunConfig& cfg) {
    SweepOptions opts;
    opts.axes = cfg.get("axes") == "TJ" ? SweepAxes::TOverJ_J0OverJ : SweepAxes::TOverJ0_JOverJ0;
    opts.x_min = cfg.get_double("x_min");
    opts.x_max = cfg.get_double("x_max");
    opts.y_min = cfg.get_double("y_min");
    opts.y_max = cfg.get_double("y_max");
    opts.nx = cfg.get_int("nx");
    opts.ny = cfg.get_int("ny");
    opts.d = cfg.get_int("d");
    opts.h = cfg.get_double("h");
    opts.solve = rmft_options_from(cfg);
    const PhaseDiagram diagram = phase_diagram_sweep(opts);

    const bool tj = opts.axes == SweepAxes::TOverJ_J0OverJ;
    const std::string xcol = tj ? "T_over_J" : "T_over_J0";
    const std::string ycol = tj ? "J0_over_J" : "J_over_J0";
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : diagram.grid) {
        for (const auto& pt : row) {
            const auto& s = pt.solution;
            rows.push_back({format_double(pt.x), format_double(pt.y), format_double(s.u0),
                            format_double(s.q), format_double(s.free_energy), to_string(s.phase),
                            std::to_string(s.iterations), s.converged ? "1" : "0"});
        }
    }
    const std::string out = cfg.get("out");
    output_csv(cfg, {xcol, ycol, "U0", "Q", "F_per_Np", "phase", "iterations", "converged"}, rows,
               out);

    if (!out.empty()) {
        const auto dot = out.rfind('.');
        const std::string base = dot == std::string::npos ? out : out.substr(0, dot);
        std::vector<std::vector<std::string>> brows;
        for (const auto& b : diagram.boundaries)
            brows.push_back({format_double(b.x1), format_double(b.y1), format_double(b.x2),
                             format_double(b.y2), std::to_string(b.phase_lo),
                             std::to_string(b.phase_hi)});
        write_csv(base + "_boundaries.csv", {"x1", "y1", "x2", "y2", "phase_lo", "phase_hi"},
                  brows);
        json summary;
        summary["has_triple_point"] = diagram.has_triple_point;
        if (diagram.has_triple_point) {
            summary["triple_point"] = {{"x", diagram.triple_x}, {"y", diagram.triple_y}};
        }
        int counts[3] = {0, 0, 0};
        for (const auto& row : diagram.grid)
            for (const auto& pt : row) ++counts[static_cast<int>(pt.solution.phase)];
        summary["counts"] = {{"confinement", counts[0]}, {"higgs", counts[1]},
                             {"gauge_glass", counts[2]}};
        write_json(base + "_summary.json", std::move(summary), cfg);
        std::cout << "wrote " << base + "_boundaries.csv" << " and " << base + "_summary.json"
                  << "\n";
    }
    return 0;
}

int usage() {
    std::cerr << "usage: znlab <subcommand> [config=FILE] [key=value ...]\n  subcommands:";
    for (const auto& s : known_subcommands()) std::cerr << " " << s;
    std::cerr << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) return usage();
    const std::string subcommand = argv[1];
    try {
        std::string file_text;
        std::vector<std::pair<std::string, std::string>> flags;
        for (int i = 2; i < argc; ++i) {
            std::string arg = argv[i];
            if (arg.rfind("--", 0) == 0) arg = arg.substr(2);
            const auto eq = arg.find('=');
            if (eq == std::string::npos)
                throw ConfigError("expected key=value argument, got '" + arg + "'");
            const std::string key = arg.substr(0, eq), value = arg.substr(eq + 1);
            if (key == "config")
                file_text += read_file(value);
            else
                flags.push_back({key, value});
        }
        const RunConfig cfg = resolve_config(subcommand, file_text, flags);
        if (subcommand == "spectrum") return run_spectrum(cfg);
        if (subcommand == "gap") return run_gap(cfg);
        if (subcommand == "braid") return run_braid(cfg);
        if (subcommand == "duality-check") return run_duality(cfg);
        if (subcommand == "rgc-check") return run_rgc(cfg);
        if (subcommand == "mft-scan") return run_mft_scan(cfg);
        if (subcommand == "rmft-solve") return run_rmft_solve(cfg);
        if (subcommand == "rmft-phase-diagram") return run_phase_diagram(cfg);
        return usage();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
