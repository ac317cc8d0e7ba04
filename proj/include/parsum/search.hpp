#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "parsum/errors.hpp"
#include "parsum/linalg.hpp"
#include "parsum/matrix.hpp"
#include "parsum/means.hpp"
#include "parsum/parallel.hpp"
#include "parsum/random.hpp"

namespace parsum {

/// Largest dimension the miner accepts.
inline constexpr std::size_t kSearchMaxDim = 16;

/// Seeded sampling plan for the conjecture H2(A,B) <= H2(A^p,B^p)^{1/p}.
struct SearchConfig {
    std::vector<double> p_values;
    std::size_t samples_per_p = 1000;
    std::size_t dim = 2;
    std::uint64_t seed = 0;
    double eig_lo = 1e-4;
    double eig_hi = 1e2;
    double violation_threshold = 1e-10;
    unsigned threads = 1;

    void validate() const {
        if (p_values.empty()) throw ParamError("search: no p values");
        for (double p : p_values)
            if (p == 0.0 || !std::isfinite(p)) throw ParamError("search: p must be finite and non-zero");
        if (samples_per_p < 1) throw ParamError("search: samples_per_p must be >= 1");
        if (dim < 2 || dim > kSearchMaxDim) throw ParamError("search: dim must lie in [2, 16]");
        if (!(eig_lo > 0.0 && eig_lo < eig_hi)) throw ParamError("search: need 0 < eig_lo < eig_hi");
        if (!(violation_threshold >= 0.0)) throw ParamError("search: violation_threshold must be >= 0");
        if (threads < 1) throw ParamError("search: threads must be >= 1");
    }
};

struct CounterexampleRecord {
    double p;
    SymMatrix<double> a;
    SymMatrix<double> b;
    double min_eig_gap;  ///< lambda_min(H2(A^p,B^p)^{1/p} - H2(A,B))
    std::uint64_t seed;  ///< sub-seed the pair was drawn from
    std::size_t sample_index;
};

struct PSummary {
    double p = 0.0;
    std::size_t samples = 0;
    std::size_t violations = 0;
    std::size_t skipped = 0;
    std::optional<double> most_negative_gap;
    std::optional<double> tightest_non_violating_gap;
};

struct SearchResult {
    std::vector<CounterexampleRecord> records;  ///< ordered by (p index, sample index)
    std::vector<PSummary> summaries;            ///< one per configured p, same order
};

struct ConjectureGap {
    double min_eig;
    double scale;  ///< 1 + ||H2(A,B)||_max
};

template <class T>
ConjectureGap conjecture_gap_detail(const SymMatrix<T>& a, const SymMatrix<T>& b, double p) {
    if (p == 0.0) throw ParamError("conjecture_gap: p must be non-zero");
    const SymMatrix<T> h2 = harmonic_mean(a, b);
    const SymMatrix<T> h2p = harmonic_mean(power(a, p), power(b, p));
    const SymMatrix<T> lhs = power(h2p, 1.0 / p);
    return {static_cast<double>(eigh(lhs - h2).lambda.front()), 1.0 + static_cast<double>(h2.max_abs())};
}

/// lambda_min(H2(A^p,B^p)^{1/p} - H2(A,B)); negative means the pair violates the conjecture.
template <class T>
double conjecture_gap(const SymMatrix<T>& a, const SymMatrix<T>& b, double p) {
    return conjecture_gap_detail(a, b, p).min_eig;
}

inline bool is_violation(const ConjectureGap& g, double violation_threshold) {
    return g.min_eig < -violation_threshold * g.scale;
}

/// The PD pair drawn for sample (p_index, sample_index).
inline std::pair<SymMatrix<double>, SymMatrix<double>> search_sample(const SearchConfig& cfg, std::size_t p_index,
                                                                     std::size_t sample_index,
                                                                     std::uint64_t* sub_seed = nullptr) {
    const std::uint64_t s = derive_seed(cfg.seed, p_index, sample_index);
    if (sub_seed) *sub_seed = s;
    Engine rng(s);
    SymMatrix<double> a = random_pd(rng, cfg.dim, cfg.eig_lo, cfg.eig_hi);
    SymMatrix<double> b = random_pd(rng, cfg.dim, cfg.eig_lo, cfg.eig_hi);
    return {std::move(a), std::move(b)};
}

namespace detail {

struct SampleOutcome {
    bool skipped = false;
    std::uint64_t seed = 0;
    ConjectureGap gap{0.0, 1.0};
};

inline SampleOutcome evaluate_sample(const SearchConfig& cfg, std::size_t p_index, std::size_t sample_index) {
    SampleOutcome out;
    try {
        auto [a, b] = search_sample(cfg, p_index, sample_index, &out.seed);
        out.gap = conjecture_gap_detail(a, b, cfg.p_values[p_index]);
    } catch (const DomainError&) {
        out.skipped = true;
    } catch (const NonConvergence&) {
        out.skipped = true;
    }
    return out;
}

} // namespace detail

/// Samples every configured p and collects violations of the conjecture.
///
/// Sample (i, k) is drawn from derive_seed(seed, i, k) alone, and workers fill
/// disjoint slots, so the result does not depend on cfg.threads.
inline SearchResult run_search(const SearchConfig& cfg) {
    cfg.validate();
    SearchResult result;
    for (std::size_t pi = 0; pi < cfg.p_values.size(); ++pi) {
        const double p = cfg.p_values[pi];
        std::vector<detail::SampleOutcome> outcomes(cfg.samples_per_p);

        detail::parallel_for_index(cfg.samples_per_p, cfg.threads,
                                   [&](std::size_t k) { outcomes[k] = detail::evaluate_sample(cfg, pi, k); });

        PSummary summary;
        summary.p = p;
        for (std::size_t k = 0; k < outcomes.size(); ++k) {
            const auto& o = outcomes[k];
            ++summary.samples;
            if (o.skipped) {
                ++summary.skipped;
                continue;
            }
            const double g = o.gap.min_eig;
            if (!summary.most_negative_gap || g < *summary.most_negative_gap) summary.most_negative_gap = g;
            if (is_violation(o.gap, cfg.violation_threshold)) {
                ++summary.violations;
                auto [a, b] = search_sample(cfg, pi, k);
                result.records.push_back({p, std::move(a), std::move(b), g, o.seed, k});
            } else if (!summary.tightest_non_violating_gap || g < *summary.tightest_non_violating_gap) {
                summary.tightest_non_violating_gap = g;
            }
        }
        result.summaries.push_back(summary);
    }
    return result;
}

/// Hill-climbs a violation towards a more negative gap.
///
/// Each step perturbs one upper-triangle entry (mirrored) of A or B by a
/// Gaussian multiple of `scale` times the matrix magnitude. Improvements are
/// kept; on failure the scale halves, and it restarts from the initial value
/// once it drops below 1e-9. The returned gap is never above the input's.
inline CounterexampleRecord refine_counterexample(const CounterexampleRecord& rec, std::size_t steps,
                                                  double initial_scale = 0.05) {
    CounterexampleRecord best = rec;
    if (steps == 0) return best;
    Engine rng(mix64(rec.seed ^ 0x5eed5eed5eed5eedULL));
    const std::size_t n = rec.a.dim();
    double scale = initial_scale;
    for (std::size_t step = 0; step < steps; ++step) {
        const bool pick_a = uniform01(rng) < 0.5;
        const std::size_t i = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
        const std::size_t j = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
        const double z = standard_normal(rng);

        const SymMatrix<double>& src = pick_a ? best.a : best.b;
        Matrix<double> m = src.general();
        const double delta = scale * z * src.max_abs();
        m(i, j) += delta;
        if (i != j) m(j, i) += delta;
        const SymMatrix<double> candidate(m);

        bool improved = false;
        try {
            const auto& ca = pick_a ? candidate : best.a;
            const auto& cb = pick_a ? best.b : candidate;
            const double g = conjecture_gap(ca, cb, best.p);
            if (g < best.min_eig_gap) {
                (pick_a ? best.a : best.b) = candidate;
                best.min_eig_gap = g;
                improved = true;
            }
        } catch (const DomainError&) {
        } catch (const NonConvergence&) {
        }
        if (improved) {
            scale = std::min(initial_scale, scale * 2.0);
        } else {
            scale *= 0.5;
            if (scale < 1e-9) scale = initial_scale;
        }
    }
    return best;
}

/// Reference two-by-two pair for which M_{1/2}(A,B) fails to dominate A:B, with its
/// reference eigenvalues and gap.
struct GoldenExampleReport {
    std::vector<double> eig_a;
    std::vector<double> eig_b;
    double min_eig_gap;  ///< lambda_min(((A^{1/2}+B^{1/2})/2)^2 - A:B)

    static constexpr double kEigA[2] = {5.00338e-6, 0.184955};
    static constexpr double kEigB[2] = {0.00018522, 0.985315};
    static constexpr double kGap = -1.57101e-6;
    static constexpr double kEigRelTol = 1e-4;
    static constexpr double kGapRelTol = 1e-2;

    static bool within(double got, double want, double rel) { return std::abs(got - want) <= rel * std::abs(want); }

    bool eig_a_ok() const { return within(eig_a[0], kEigA[0], kEigRelTol) && within(eig_a[1], kEigA[1], kEigRelTol); }
    bool eig_b_ok() const { return within(eig_b[0], kEigB[0], kEigRelTol) && within(eig_b[1], kEigB[1], kEigRelTol); }
    bool gap_ok() const { return within(min_eig_gap, kGap, kGapRelTol); }
    bool ok() const { return eig_a_ok() && eig_b_ok() && gap_ok(); }
};

inline SymMatrix<double> golden_example_a() {
    return SymMatrix<double>::from_rows({{0.14623, -0.07525}, {-0.07525, 0.03873}});
}

inline SymMatrix<double> golden_example_b() {
    return SymMatrix<double>::from_rows({{0.733, -0.43}, {-0.43, 0.2525}});
}

inline GoldenExampleReport reproduce_golden_example() {
    const auto a = golden_example_a();
    const auto b = golden_example_b();
    const auto gap = power_mean(a, b, 0.5) - parallel_sum(a, b);
    return {eigenvalues(a), eigenvalues(b), eigenvalues(gap).front()};
}

} // namespace parsum
