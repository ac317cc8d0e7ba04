// Runs every acceptance criterion at its stated size and tolerance and prints
// one PASS/FAIL line per criterion. Exit status is nonzero if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "parsum/generator.hpp"
#include "parsum/inequality_lab.hpp"
#include "parsum/io.hpp"
#include "parsum/lab_suite.hpp"
#include "parsum/means.hpp"
#include "parsum/quad.hpp"
#include "parsum/random.hpp"
#include "parsum/search.hpp"

using namespace parsum;

namespace {

constexpr std::uint64_t kSearchSeed = 42;  // the seed the committed fixture was mined with
const std::vector<std::size_t> kDims{2, 3, 4, 6};

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Run {
    int status;
    std::string out;
};

Run run_cli(const std::string& args) {
    const std::string cmd = std::string(PARSUM_CLI) + " " + args;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, {}};
    std::string out;
    char buf[1 << 16];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

template <class T>
double scale_of(const SymMatrix<T>& m) {
    return 1.0 + static_cast<double>(m.max_abs());
}

// ---------------------------------------------------------------------------

Outcome golden_example(double& seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = run_cli("--json repro-example");
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Outcome o;
    if (r.status != 0) return {false, "repro-example exited " + std::to_string(r.status)};
    const auto j = nlohmann::json::parse(r.out);
    const auto lib = reproduce_golden_example();
    o.pass = j.at("eig_a_ok") == true && j.at("eig_b_ok") == true && j.at("gap_ok") == true && lib.ok() &&
             j.at("min_eig_gap").get<double>() == lib.min_eig_gap && seconds < 1.0;
    o.detail = "gap " + format_real(lib.min_eig_gap) + ", eig(A) " + fmt(lib.eig_a[0]) + " " + fmt(lib.eig_a[1]) +
               ", eig(B) " + fmt(lib.eig_b[0]) + " " + fmt(lib.eig_b[1]) + ", " + fmt(seconds) + " s";
    return o;
}

Outcome generator_inequality(double& seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t failures = 0;
    double worst = 0.0;  // most negative min_eig / scale
    for (std::size_t k = 0; k < 1000; ++k) {
        Engine rng(derive_seed(2, 0, k));
        const std::size_t n = kDims[k % kDims.size()];
        const auto a = random_pd(rng, n, 1e-4, 1e2);
        const auto b = random_pd(rng, n, 1e-4, 1e2);
        const auto c = random_general(rng, n, -2.0, 2.0);
        const auto f = generator_F(a, b, c);
        const double min_eig = eigenvalues(f - parallel_sum(a, b)).front();
        const double rel = min_eig / scale_of(f);
        worst = std::min(worst, rel);
        if (rel < -1e-9) ++failures;
    }
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {failures == 0 && seconds < 10.0,
            "1000 triples, " + std::to_string(failures) + " below -1e-9*scale, worst " + fmt(worst) + ", " +
                fmt(seconds) + " s"};
}

Outcome generator_round_trip(double& seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t bad_round_trip = 0, missed_infeasible = 0, errors = 0;
    double worst = 0.0;
    for (std::size_t k = 0; k < 500; ++k) {
        Engine rng(derive_seed(3, 0, k));
        const std::size_t n = kDims[k % kDims.size()];
        const auto a = random_pd(rng, n, 1e-4, 1e2);
        const auto b = random_pd(rng, n, 1e-4, 1e2);
        const std::size_t rank = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n + 1));
        const auto delta = random_psd(rng, n, rank, 1e-4, 1e2);
        const auto ab = parallel_sum(a, b);
        const SymMatrix<double> h = ab + delta;
        try {
            const auto res = solve_equation(a, b, h);
            const double rel = max_abs_diff(generator_F(a, b, res.c), h) / scale_of(h);
            worst = std::max(worst, rel);
            if (rel > 1e-8) ++bad_round_trip;
        } catch (const std::exception&) {
            ++errors;
        }
        const SymMatrix<double> below = ab - 1e-3 * SymMatrix<double>::identity(n);
        try {
            solve_equation(a, b, below);
            ++missed_infeasible;
        } catch (const InfeasibleError&) {
        } catch (const std::exception&) {
            ++missed_infeasible;
        }
    }
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {bad_round_trip == 0 && missed_infeasible == 0 && errors == 0,
            "500 round trips, worst residual " + fmt(worst) + "*scale, " + std::to_string(bad_round_trip + errors) +
                " failed; infeasible H rejected " + std::to_string(500 - missed_infeasible) + "/500, " +
                fmt(seconds) + " s"};
}

Outcome variational_oracle(double& seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t oracle_failures = 0, value_failures = 0, errors = 0;
    double worst = 0.0;
    for (std::size_t k = 0; k < 200; ++k) {
        Engine rng(derive_seed(4, 0, k));
        const std::size_t n = 1 + k % 6;
        // moderate conditioning keeps steepest descent inside its step cap
        const auto a = random_pd(rng, n, 0.1, 10.0);
        const auto b = random_pd(rng, n, 0.1, 10.0);
        const auto x = random_vector(rng, n);
        const double closed = quadratic_form(parallel_sum(a, b), x);
        const double xx = dot(x, x);
        try {
            const double err = std::abs(variational_infimum_oracle(a, b, x) - closed) / (1.0 + xx);
            worst = std::max(worst, err);
            if (err > 1e-8) ++oracle_failures;
        } catch (const NonConvergence&) {
            ++errors;
        }
        const double scale = 1.0 + std::abs(closed);
        for (int e = 0; e < 50; ++e) {
            const auto eta = random_vector(rng, n);
            if (variational_value(a, b, x, eta) < closed - 1e-9 * scale) ++value_failures;
        }
    }
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {oracle_failures == 0 && value_failures == 0 && errors == 0,
            "200 instances, worst oracle error " + fmt(worst) + "*(1+|x|^2), " +
                std::to_string(oracle_failures + errors) + " oracle failures, " + std::to_string(value_failures) +
                "/10000 eta below minimum, " + fmt(seconds) + " s"};
}

std::string summary_text(const LabSummary& s) {
    return std::to_string(s.evaluated) + " evaluated, " + std::to_string(s.indefinite) + " indefinite, " +
           std::to_string(s.skipped) + " skipped";
}

Outcome family_suites(double& seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    LabSuiteConfig cfg;
    cfg.suites = {LabSuite::ScalarLambda, LabSuite::Projection, LabSuite::BabAba, LabSuite::PowerFamily};
    cfg.pairs_per_point = 500;
    cfg.seed = 5;
    const auto summary = summarize(run_lab_suite<quad>(cfg));

    // equality certifications and proof identities, same pair distribution
    std::size_t equality_failures = 0, identity_failures = 0, checks = 0;
    double worst_equality = 0.0, worst_identity = 0.0;
    const auto note = [](double rel, double tol, double& worst, std::size_t& failures) {
        worst = std::max(worst, rel);
        if (rel > tol) ++failures;
    };
    for (std::size_t j = 0; j < kPowerFamilyGrid.size(); ++j) {
        const double p = kPowerFamilyGrid[j];
        for (std::size_t k = 0; k < 500; ++k) {
            Engine rng(derive_seed(cfg.seed, 5000 + j, k));
            const std::size_t n = kDims[k % kDims.size()];
            const auto a = random_pd(rng, n, cfg.eig_lo, cfg.eig_hi).cast<quad>();
            const auto b = random_pd(rng, n, cfg.eig_lo, cfg.eig_hi).cast<quad>();
            const auto ab = parallel_sum(a, b);

            const auto fam = ineq_power_family(a, b, p);
            const auto via_generator = generator_F(a, b, power_family_generator_choice(a, b, p));
            note(static_cast<double>(max_abs_diff(fam.rhs, via_generator)) / scale_of(fam.rhs), 1e-8, worst_identity,
                 identity_failures);
            ++checks;

            if (j == 0) {
                const auto at_one = ineq_power_family(a, b, 1.0);
                note(static_cast<double>(max_abs_diff(at_one.rhs, ab)) / scale_of(ab), 1e-9, worst_equality,
                     equality_failures);
                const auto attained = generator_F(a, b, solve_spd(a + b, b));
                note(static_cast<double>(max_abs_diff(attained, ab)) / scale_of(ab), 1e-9, worst_equality,
                     equality_failures);
                const auto bab = ineq_bab_aba(a, b);
                const auto bab_generator = generator_F(a, b, bab_aba_generator_choice(a, b));
                note(static_cast<double>(max_abs_diff(bab.rhs, bab_generator)) / scale_of(bab.rhs), 1e-8,
                     worst_identity, identity_failures);
                ++checks;
            }
        }
    }
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {summary.indefinite == 0 && summary.skipped == 0 && equality_failures == 0 && identity_failures == 0,
            "float128: " + summary_text(summary) + "; equality worst " + fmt(worst_equality) + "*scale (" +
                std::to_string(equality_failures) + " failed); " + std::to_string(checks) +
                " proof identities worst " + fmt(worst_identity) + "*scale (" + std::to_string(identity_failures) +
                " failed), " + fmt(seconds) + " s"};
}

Outcome power_chain(double& seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    LabSuiteConfig cfg;
    cfg.suites = {LabSuite::H2PowerChain, LabSuite::PowerMeanBound};
    cfg.pairs_per_point = 500;
    cfg.seed = 6;
    const auto records = run_lab_suite<quad>(cfg);
    const auto summary = summarize(records);
    std::string skipped;
    for (const auto& r : records)
        if (r.error) skipped += " [" + r.name + " p=" + fmt(r.parameters.front().second) + ": " + *r.error + "]";
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {summary.indefinite == 0,
            "float128: " + summary_text(summary) + skipped + ", " + fmt(seconds) + " s"};
}

SearchConfig quarter_config() {
    SearchConfig cfg;
    cfg.p_values = {0.25};
    cfg.samples_per_p = 100000;
    cfg.dim = 2;
    cfg.seed = kSearchSeed;
    return cfg;
}

Outcome conjecture_falsified(double& seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cfg = quarter_config();
    const auto result = run_search(cfg);
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::size_t certified = 0;
    for (const auto& rec : result.records)
        if (is_violation(conjecture_gap_detail(rec.a, rec.b, rec.p), cfg.violation_threshold)) ++certified;

    // the committed fixture is re-derived bit for bit and re-checked
    const auto j = nlohmann::json::parse(read_file(std::string(PARSUM_FIXTURE_DIR) + "/counterexample_p025.json"));
    const auto fixture = record_from_json(j);
    bool fixture_ok = search_config_from_json(j.at("search")).seed == cfg.seed;
    bool found = false;
    for (const auto& rec : result.records) {
        if (rec.sample_index != fixture.sample_index) continue;
        found = true;
        fixture_ok = fixture_ok && rec.seed == fixture.seed && rec.a == fixture.a && rec.b == fixture.b &&
                     rec.min_eig_gap == fixture.min_eig_gap;
    }
    const double reference = std::stod(j.at("reference_gap_50_digits").get<std::string>());
    const double regap = conjecture_gap(fixture.a, fixture.b, fixture.p);
    fixture_ok = fixture_ok && found && std::abs(regap - reference) <= 1e-10 * std::abs(reference);

    return {certified >= 1 && certified == result.records.size() && fixture_ok && seconds < 30.0,
            "seed " + std::to_string(cfg.seed) + ", 1e5 samples: " + std::to_string(certified) +
                " certified violations, most negative gap " + fmt(result.summaries[0].most_negative_gap.value_or(0)) +
                "; fixture sample " + std::to_string(fixture.sample_index) + (fixture_ok ? " re-verified" : " MISMATCH") +
                " (gap " + format_real(regap) + "), " + fmt(seconds) + " s single-threaded"};
}

Outcome conjecture_supported(double& seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    auto cfg = quarter_config();
    cfg.p_values = {0.5, 0.6, 0.75, 0.9, 1.0};
    const auto result = run_search(cfg);
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::size_t violations = 0, skipped = 0;
    std::string per_p;
    for (const auto& s : result.summaries) {
        violations += s.violations;
        skipped += s.skipped;
        per_p += " p=" + fmt(s.p) + ":" + std::to_string(s.violations) + "/" + std::to_string(s.samples);
    }
    return {violations == 0 && skipped == 0,
            "violations" + per_p + " (empirical support only, not a proof), " + fmt(seconds) + " s"};
}

Outcome determinism(double& seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string cmd = "search --seed " + std::to_string(kSearchSeed) + " --p 0.25 --samples 100000 --dim 2";
    const auto first = run_cli(cmd);
    const auto second = run_cli(cmd);
    const auto threaded = run_cli(cmd + " --threads 4");
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = first.status == 0 && second.status == 0 && threaded.status == 0 && !first.out.empty() &&
                    first.out == second.out && first.out == threaded.out;
    std::size_t lines = 0;
    for (char ch : first.out) lines += ch == '\n';
    return {ok, std::to_string(lines) + " JSON lines, " + std::to_string(first.out.size()) + " bytes, repeat " +
                    (first.out == second.out ? "identical" : "DIFFERS") + ", --threads 4 " +
                    (first.out == threaded.out ? "identical" : "DIFFERS") + ", " + fmt(seconds) + " s"};
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        Outcome (*run)(double&);
    };
    const std::vector<Criterion> criteria{
        {1, "golden example reproduction", golden_example},
        {2, "generator inequality F(C) >= A:B", generator_inequality},
        {3, "generator equation round trip", generator_round_trip},
        {4, "variational oracle equivalence", variational_oracle},
        {5, "scalar, projection, BAB/ABA and power-family inequalities", family_suites},
        {6, "H2 power chain and power-mean bound", power_chain},
        {7, "conjecture falsified at p = 1/4", conjecture_falsified},
        {8, "no violations for p in [1/2, 1]", conjecture_supported},
        {9, "byte-identical search output", determinism},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        double seconds = 0.0;
        Outcome o;
        try {
            o = c.run(seconds);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.title << "  ("
                  << o.detail << ")" << std::endl;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
