// Command-line front end: compute, solve, verify, search, repro-example.
//
// Exit codes: 0 success, 1 verify found an indefinite gap, 2 usage or parse
// error, 3 domain / infeasibility / convergence error, 4 golden example out of
// tolerance.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "parsum/io.hpp"
#include "parsum/parsum.hpp"
#include "parsum/quad.hpp"

namespace {

using nlohmann::json;
using namespace parsum;

constexpr int kExitIndefinite = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitGolden = 4;

void print_eigenvalues(const SymMatrix<double>& m) {
    std::cout << "eigenvalues:";
    for (double v : eigenvalues(m)) std::cout << ' ' << format_real(v);
    std::cout << '\n';
}

int run_compute(const std::string& mean, std::optional<double> p, const std::string& a_path,
                const std::string& b_path, bool with_eigs, bool as_json) {
    MeanKind kind;
    if (mean == "parallel") kind = ParallelSumMean{};
    else if (mean == "harmonic") kind = HarmonicMean{};
    else if (mean == "power") {
        if (!p) throw ParamError("--mean power requires --p");
        kind = PowerMean{*p};
    } else {
        throw ParamError("unknown mean '" + mean + "' (parallel, harmonic, power)");
    }
    const auto a = load_matrix(a_path);
    const auto b = load_matrix(b_path);
    const auto out = compute_mean(kind, a, b);
    if (as_json) {
        json j = {{"mean", mean}, {"result", matrix_to_json(out)}};
        if (p) j["p"] = *p;
        if (with_eigs) j["eigenvalues"] = eigenvalues(out);
        std::cout << j.dump() << '\n';
    } else {
        std::cout << format_matrix(out);
        if (with_eigs) print_eigenvalues(out);
    }
    return 0;
}

int run_solve(const std::string& a_path, const std::string& b_path, const std::string& h_path, double rel_tol,
              bool as_json) {
    const auto a = load_matrix(a_path);
    const auto b = load_matrix(b_path);
    const auto h = load_matrix(h_path);
    const auto res = solve_equation(a, b, h, rel_tol);
    if (as_json) {
        json j = {{"c", matrix_to_json(res.c)},
                  {"residual", res.residual},
                  {"feasibility",
                   {{"min_eig", res.feasibility.min_eig},
                    {"threshold", res.feasibility.threshold},
                    {"classification", to_string(res.feasibility.classification)}}}};
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "C:\n" << format_matrix(res.c);
        std::cout << "residual: " << format_real(res.residual) << '\n';
        std::cout << "feasibility: " << to_string(res.feasibility.classification)
                  << " (min_eig=" << format_real(res.feasibility.min_eig)
                  << ", threshold=" << format_real(res.feasibility.threshold) << ")\n";
    }
    return 0;
}

int run_verify(LabSuiteConfig cfg, const std::vector<std::string>& suites, const std::string& precision,
               bool as_json) {
    if (!suites.empty()) {
        cfg.suites.clear();
        for (const auto& s : suites) cfg.suites.push_back(lab_suite_from_string(s));
    }
    std::vector<LabRecord> records;
    if (precision == "quad") records = run_lab_suite<quad>(cfg);
    else if (precision == "double") records = run_lab_suite<double>(cfg);
    else throw ParamError("--precision must be 'quad' or 'double'");

    const auto summary = summarize(records);
    if (as_json) {
        for (const auto& r : records) std::cout << to_json(r).dump() << '\n';
        std::cout << json{{"type", "summary"},
                          {"evaluated", summary.evaluated},
                          {"indefinite", summary.indefinite},
                          {"skipped", summary.skipped}}
                         .dump()
                  << '\n';
    } else {
        for (const auto& r : records) {
            if (r.classification == PsdClass::Indefinite && !r.error) {
                std::cout << "INDEFINITE " << r.name << " n=" << r.n << " seed=" << r.seed
                          << " min_eig=" << format_real(r.min_eig) << '\n';
            }
        }
        std::cout << "evaluated " << summary.evaluated << ", indefinite " << summary.indefinite << ", skipped "
                  << summary.skipped << '\n';
    }
    return summary.indefinite == 0 ? 0 : kExitIndefinite;
}

int run_search_cmd(SearchConfig cfg, std::size_t refine_steps) {
    auto result = run_search(cfg);
    if (refine_steps > 0) {
        for (auto& rec : result.records) rec = refine_counterexample(rec, refine_steps);
    }
    std::cout << search_jsonl(result);
    return 0;
}

int run_repro(bool as_json) {
    const auto r = reproduce_golden_example();
    if (as_json) {
        json j = {{"eig_a", r.eig_a},       {"eig_b", r.eig_b},       {"min_eig_gap", r.min_eig_gap},
                  {"eig_a_ok", r.eig_a_ok()}, {"eig_b_ok", r.eig_b_ok()}, {"gap_ok", r.gap_ok()}};
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "eigenvalues of A: " << format_real(r.eig_a[0]) << ' ' << format_real(r.eig_a[1])
                  << (r.eig_a_ok() ? "  ok" : "  OUT OF TOLERANCE") << '\n';
        std::cout << "eigenvalues of B: " << format_real(r.eig_b[0]) << ' ' << format_real(r.eig_b[1])
                  << (r.eig_b_ok() ? "  ok" : "  OUT OF TOLERANCE") << '\n';
        std::cout << "min eig of ((A^1/2+B^1/2)/2)^2 - A:B: " << format_real(r.min_eig_gap)
                  << (r.gap_ok() ? "  ok" : "  OUT OF TOLERANCE") << '\n';
    }
    return r.ok() ? 0 : kExitGolden;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parallel sum, operator means and operator-inequality checks for symmetric matrices"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "Structured output");

    // compute
    auto* compute = app.add_subcommand("compute", "Compute A:B, H2(A,B) or M_p(A,B)");
    std::string mean = "parallel";
    std::optional<double> mean_p;
    std::string a_path, b_path, h_path;
    bool with_eigs = false;
    compute->add_option("--mean", mean, "parallel | harmonic | power")->capture_default_str();
    compute->add_option("--p", mean_p, "Exponent for --mean power");
    compute->add_flag("--eigenvalues", with_eigs, "Also print the eigenvalues of the result");
    compute->add_option("A", a_path, "Matrix file A")->required();
    compute->add_option("B", b_path, "Matrix file B")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "Solve C^T A C + (I-C)^T B (I-C) = H for C");
    double solve_tol = kFeasibilityRelTol;
    solve->add_option("A", a_path, "Matrix file A")->required();
    solve->add_option("B", b_path, "Matrix file B")->required();
    solve->add_option("H", h_path, "Matrix file H")->required();
    solve->add_option("--rel-tol", solve_tol, "Feasibility tolerance")->capture_default_str();

    // verify
    auto* verify = app.add_subcommand("verify", "Run the randomized inequality suites");
    LabSuiteConfig lab;
    std::vector<std::string> suite_names;
    std::vector<double> eig_range;
    std::string precision = "quad";
    verify->add_option("--seed", lab.seed, "Base seed")->required();
    verify->add_option("--suite", suite_names,
                       "scalar_lambda | projection | bab_aba | power_family | h2_power_chain | power_mean_bound");
    verify->add_option("--pairs", lab.pairs_per_point, "Random pairs per parameter point")->capture_default_str();
    verify->add_option("--p", lab.extra_p, "Extra exponents for power_family");
    verify->add_option("--dims", lab.dims, "Dimensions cycled through")->capture_default_str();
    verify->add_option("--eig-range", eig_range, "lo hi for log-uniform eigenvalues")->expected(2);
    verify->add_option("--rel-tol", lab.rel_tol, "Gap tolerance")->capture_default_str();
    verify->add_option("--threads", lab.threads, "Worker threads")->capture_default_str();
    verify->add_option("--precision", precision, "quad | double")->capture_default_str();

    // search
    auto* search = app.add_subcommand("search", "Mine counterexamples to H2(A,B) <= H2(A^p,B^p)^(1/p)");
    std::string config_path;
    std::optional<std::uint64_t> search_seed;
    std::vector<double> search_p;
    std::optional<std::size_t> samples, search_dim;
    std::vector<double> search_range;
    std::optional<double> threshold;
    std::optional<unsigned> search_threads;
    std::size_t refine_steps = 0;
    search->add_option("--config", config_path, "JSON config file");
    search->add_option("--seed", search_seed, "Base seed (required unless set in --config)");
    search->add_option("--p", search_p, "Exponents to test");
    search->add_option("--samples", samples, "Samples per p");
    search->add_option("--dim", search_dim, "Matrix dimension (2..16)");
    search->add_option("--eig-range", search_range, "lo hi for log-uniform eigenvalues")->expected(2);
    search->add_option("--threshold", threshold, "Relative violation threshold");
    search->add_option("--threads", search_threads, "Worker threads");
    search->add_option("--refine", refine_steps, "Hill-climb steps applied to each violation");

    auto* repro = app.add_subcommand("repro-example", "Reproduce the reference two-by-two example");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*compute) return run_compute(mean, mean_p, a_path, b_path, with_eigs, as_json);
        if (*solve) return run_solve(a_path, b_path, h_path, solve_tol, as_json);
        if (*verify) {
            if (!eig_range.empty()) {
                lab.eig_lo = eig_range[0];
                lab.eig_hi = eig_range[1];
            }
            return run_verify(lab, suite_names, precision, as_json);
        }
        if (*search) {
            SearchConfig cfg;
            bool seeded = false;
            if (!config_path.empty()) {
                const auto j = json::parse(read_file(config_path), nullptr, false);
                if (j.is_discarded()) throw ParseError(config_path + ": invalid JSON");
                cfg = search_config_from_json(j);
                seeded = j.contains("seed");
            }
            if (search_seed) {
                cfg.seed = *search_seed;
                seeded = true;
            }
            if (!seeded) throw ParamError("search requires --seed (or \"seed\" in --config)");
            if (!search_p.empty()) cfg.p_values = search_p;
            if (samples) cfg.samples_per_p = *samples;
            if (search_dim) cfg.dim = *search_dim;
            if (!search_range.empty()) {
                cfg.eig_lo = search_range[0];
                cfg.eig_hi = search_range[1];
            }
            if (threshold) cfg.violation_threshold = *threshold;
            if (search_threads) cfg.threads = *search_threads;
            return run_search_cmd(cfg, refine_steps);
        }
        if (*repro) return run_repro(as_json);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParamError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const NonConvergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitUsage;
}
