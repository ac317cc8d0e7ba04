#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "parsum/errors.hpp"
#include "parsum/inequality_lab.hpp"
#include "parsum/parallel.hpp"
#include "parsum/random.hpp"

namespace parsum {

enum class LabSuite { ScalarLambda, Projection, BabAba, PowerFamily, H2PowerChain, PowerMeanBound };

inline constexpr LabSuite kAllLabSuites[] = {LabSuite::ScalarLambda, LabSuite::Projection,
                                             LabSuite::BabAba,       LabSuite::PowerFamily,
                                             LabSuite::H2PowerChain, LabSuite::PowerMeanBound};

inline const std::vector<double> kH2ChainGrid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, -1.0, -0.5, 1.5, 2.0};
inline const std::vector<double> kPowerMeanGrid{1.0, 1.5, 2.0, 3.0};

inline std::string_view to_string(LabSuite s) {
    switch (s) {
    case LabSuite::ScalarLambda: return "scalar_lambda";
    case LabSuite::Projection: return "projection";
    case LabSuite::BabAba: return "bab_aba";
    case LabSuite::PowerFamily: return "power_family";
    case LabSuite::H2PowerChain: return "h2_power_chain";
    case LabSuite::PowerMeanBound: return "power_mean_bound";
    }
    return "?";
}

inline LabSuite lab_suite_from_string(std::string_view name) {
    for (LabSuite s : kAllLabSuites)
        if (to_string(s) == name) return s;
    throw ParamError("unknown inequality suite: " + std::string(name));
}

struct LabSuiteConfig {
    std::vector<LabSuite> suites{std::begin(kAllLabSuites), std::end(kAllLabSuites)};
    std::vector<double> extra_p;  ///< appended to the power_family grid
    std::vector<std::size_t> dims{2, 3, 4, 6};
    std::size_t pairs_per_point = 500;
    std::uint64_t seed = 0;
    double eig_lo = 1e-4;
    double eig_hi = 1e2;
    double rel_tol = kLabRelTol;
    unsigned threads = 1;
};

/// One evaluated instance, reduced to what the JSON-lines stream carries.
struct LabRecord {
    std::string name;
    std::size_t n = 0;
    std::vector<std::pair<std::string, double>> parameters;
    double min_eig = 0.0;
    double threshold = 0.0;
    PsdClass classification = PsdClass::PositiveSemidefiniteWithinTol;
    std::uint64_t seed = 0;
    std::optional<std::string> error;  ///< set when the instance was skipped
};

struct LabSummary {
    std::size_t evaluated = 0;
    std::size_t indefinite = 0;
    std::size_t skipped = 0;
};

inline LabSummary summarize(const std::vector<LabRecord>& records) {
    LabSummary s;
    for (const auto& r : records) {
        if (r.error) ++s.skipped;
        else {
            ++s.evaluated;
            if (r.classification == PsdClass::Indefinite) ++s.indefinite;
        }
    }
    return s;
}

/// Parameter points swept for a suite; nullopt for suites without a parameter.
inline std::vector<std::optional<double>> lab_points(LabSuite suite, const LabSuiteConfig& cfg) {
    auto wrap = [](const std::vector<double>& v) {
        return std::vector<std::optional<double>>(v.begin(), v.end());
    };
    switch (suite) {
    case LabSuite::ScalarLambda: return wrap(kLambdaGrid);
    case LabSuite::PowerFamily: {
        auto grid = wrap(kPowerFamilyGrid);
        for (double p : cfg.extra_p) grid.emplace_back(p);
        return grid;
    }
    case LabSuite::H2PowerChain: return wrap(kH2ChainGrid);
    case LabSuite::PowerMeanBound: return wrap(kPowerMeanGrid);
    case LabSuite::Projection:
    case LabSuite::BabAba: return {std::nullopt};
    }
    return {};
}

namespace detail {

template <class T>
InequalityReport<T> evaluate_lab_instance(LabSuite suite, std::optional<double> param, Engine& rng,
                                          std::size_t n, const LabSuiteConfig& cfg) {
    const auto a = random_pd(rng, n, cfg.eig_lo, cfg.eig_hi).cast<T>();
    const auto b = random_pd(rng, n, cfg.eig_lo, cfg.eig_hi).cast<T>();
    switch (suite) {
    case LabSuite::ScalarLambda: return ineq_scalar_lambda(a, b, *param, cfg.rel_tol);
    case LabSuite::Projection: {
        const auto rank = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n + 1));
        return ineq_projection(a, b, random_projection(rng, n, rank).cast<T>(), cfg.rel_tol);
    }
    case LabSuite::BabAba: return ineq_bab_aba(a, b, cfg.rel_tol);
    case LabSuite::PowerFamily: return ineq_power_family(a, b, *param, cfg.rel_tol);
    case LabSuite::H2PowerChain: return ineq_h2_power_chain(a, b, *param, cfg.rel_tol);
    case LabSuite::PowerMeanBound: return ineq_power_mean_bound(a, b, *param, cfg.rel_tol);
    }
    throw ParamError("unknown suite");
}

} // namespace detail

/// Runs the configured suites with random PD pairs, evaluating in scalar type T.
///
/// Instance k at parameter point j of suite s uses dimension dims[k % dims.size()]
/// and is drawn from derive_seed(seed, 1000 * s + j, k). Records come back in
/// (suite, point, k) order whatever the thread count.
template <class T>
std::vector<LabRecord> run_lab_suite(const LabSuiteConfig& cfg) {
    if (cfg.dims.empty()) throw ParamError("lab suite: no dimensions");
    if (cfg.pairs_per_point < 1) throw ParamError("lab suite: pairs_per_point must be >= 1");

    struct Job {
        LabSuite suite;
        std::optional<double> param;
        std::uint64_t stream;
        std::size_t index;
    };
    std::vector<Job> jobs;
    for (LabSuite suite : cfg.suites) {
        const auto points = lab_points(suite, cfg);
        for (std::size_t j = 0; j < points.size(); ++j) {
            const std::uint64_t stream = 1000 * static_cast<std::uint64_t>(suite) + j;
            for (std::size_t k = 0; k < cfg.pairs_per_point; ++k) jobs.push_back({suite, points[j], stream, k});
        }
    }

    std::vector<LabRecord> records(jobs.size());
    detail::parallel_for_index(jobs.size(), cfg.threads, [&](std::size_t idx) {
        const Job& job = jobs[idx];
        LabRecord& rec = records[idx];
        rec.name = std::string(to_string(job.suite));
        rec.n = cfg.dims[job.index % cfg.dims.size()];
        rec.seed = derive_seed(cfg.seed, job.stream, job.index);
        if (job.param) {
            rec.parameters = {{job.suite == LabSuite::ScalarLambda ? "lambda" : "p", *job.param}};
        }
        try {
            Engine rng(rec.seed);
            const auto report = detail::evaluate_lab_instance<T>(job.suite, job.param, rng, rec.n, cfg);
            rec.parameters = report.parameters;
            rec.min_eig = static_cast<double>(report.gap_verdict.min_eig);
            rec.threshold = static_cast<double>(report.gap_verdict.threshold);
            rec.classification = report.gap_verdict.classification;
        } catch (const DomainError& e) {
            rec.error = e.what();
        } catch (const NonConvergence& e) {
            rec.error = e.what();
        }
    });
    return records;
}

} // namespace parsum
