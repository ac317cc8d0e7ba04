#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "parsum/errors.hpp"
#include "parsum/lab_suite.hpp"
#include "parsum/matrix.hpp"
#include "parsum/search.hpp"

namespace parsum {

namespace detail {

inline double parse_real(std::string_view tok) {
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError("not a real number: '" + std::string(tok) + "'");
    }
    return v;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

} // namespace detail

/// 17 significant digits; parses back to the same double.
inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline SymMatrix<double> matrix_from_json(const nlohmann::json& j) {
    try {
        const auto rows = j.at("rows").get<std::vector<std::vector<double>>>();
        if (j.contains("dim") && j.at("dim").get<std::size_t>() != rows.size()) {
            throw ParseError("matrix JSON: dim does not match row count");
        }
        if (rows.empty()) throw ParseError("matrix JSON: no rows");
        for (const auto& r : rows)
            if (r.size() != rows.size()) throw ParseError("matrix JSON: matrix is not square");
        return SymMatrix<double>::from_rows(rows);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("matrix JSON: ") + e.what());
    }
}

/// Plain text (n, then n rows of n reals) or JSON {"dim": n, "rows": [...]}.
/// The result is symmetrized.
inline SymMatrix<double> parse_matrix(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) throw ParseError("empty matrix input");
    if (text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("matrix JSON: ") + e.what());
        }
        return matrix_from_json(j);
    }

    std::vector<std::vector<std::string_view>> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        auto toks = detail::split_ws(text.substr(pos, end - pos));
        if (!toks.empty()) lines.push_back(std::move(toks));
        pos = end + 1;
    }
    if (lines.front().size() != 1) throw ParseError("first line must hold the dimension only");
    std::size_t n = 0;
    const auto dim_tok = lines.front().front();
    const auto [ptr, ec] = std::from_chars(dim_tok.data(), dim_tok.data() + dim_tok.size(), n);
    if (ec != std::errc() || ptr != dim_tok.data() + dim_tok.size() || n == 0) {
        throw ParseError("invalid dimension: '" + std::string(dim_tok) + "'");
    }
    if (lines.size() != n + 1) {
        throw ParseError("expected " + std::to_string(n) + " rows, found " + std::to_string(lines.size() - 1));
    }
    Matrix<double> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = lines[i + 1];
        if (row.size() != n) throw ParseError("row " + std::to_string(i + 1) + " does not have " + std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j) m(i, j) = detail::parse_real(row[j]);
    }
    return SymMatrix<double>(m);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline SymMatrix<double> load_matrix(const std::string& path) {
    try {
        return parse_matrix(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

template <SquareMatrix M>
std::string format_matrix(const M& m) {
    std::string out = std::to_string(m.dim()) + "\n";
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            if (j) out += ' ';
            out += format_real(static_cast<double>(m(i, j)));
        }
        out += '\n';
    }
    return out;
}

template <SquareMatrix M>
nlohmann::json matrix_to_json(const M& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(static_cast<double>(m(i, j)));
        rows.push_back(std::move(row));
    }
    return {{"dim", m.dim()}, {"rows", std::move(rows)}};
}

// ---- search --------------------------------------------------------------

inline nlohmann::json to_json(const CounterexampleRecord& r) {
    return {{"p", r.p},
            {"seed", r.seed},
            {"sample_index", r.sample_index},
            {"min_eig_gap", r.min_eig_gap},
            {"a_rows", r.a.rows()},
            {"b_rows", r.b.rows()}};
}

inline CounterexampleRecord record_from_json(const nlohmann::json& j) {
    try {
        return {j.at("p").get<double>(),
                SymMatrix<double>::from_rows(j.at("a_rows").get<std::vector<std::vector<double>>>()),
                SymMatrix<double>::from_rows(j.at("b_rows").get<std::vector<std::vector<double>>>()),
                j.at("min_eig_gap").get<double>(),
                j.at("seed").get<std::uint64_t>(),
                j.at("sample_index").get<std::size_t>()};
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("counterexample record: ") + e.what());
    } catch (const DomainError& e) {
        throw ParseError(std::string("counterexample record: ") + e.what());
    }
}

inline nlohmann::json optional_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline nlohmann::json to_json(const PSummary& s) {
    return {{"type", "summary"},
            {"p", s.p},
            {"samples", s.samples},
            {"violations", s.violations},
            {"skipped", s.skipped},
            {"most_negative_gap", optional_json(s.most_negative_gap)},
            {"tightest_non_violating_gap", optional_json(s.tightest_non_violating_gap)}};
}

/// Keys: p_values, samples_per_p, dim, seed, eig_range [lo, hi], violation_threshold, threads.
/// Absent keys keep the values already in `base`.
inline SearchConfig search_config_from_json(const nlohmann::json& j, SearchConfig base = {}) {
    try {
        if (j.contains("p_values")) base.p_values = j.at("p_values").get<std::vector<double>>();
        if (j.contains("samples_per_p")) base.samples_per_p = j.at("samples_per_p").get<std::size_t>();
        if (j.contains("dim")) base.dim = j.at("dim").get<std::size_t>();
        if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("eig_range")) {
            const auto r = j.at("eig_range").get<std::vector<double>>();
            if (r.size() != 2) throw ParseError("search config: eig_range must be [lo, hi]");
            base.eig_lo = r[0];
            base.eig_hi = r[1];
        }
        if (j.contains("violation_threshold")) base.violation_threshold = j.at("violation_threshold").get<double>();
        if (j.contains("threads")) base.threads = j.at("threads").get<unsigned>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("search config: ") + e.what());
    }
    return base;
}

inline nlohmann::json to_json(const SearchConfig& c) {
    return {{"p_values", c.p_values},
            {"samples_per_p", c.samples_per_p},
            {"dim", c.dim},
            {"seed", c.seed},
            {"eig_range", {c.eig_lo, c.eig_hi}},
            {"violation_threshold", c.violation_threshold},
            {"threads", c.threads}};
}

/// Violation lines followed by one summary line per p.
inline std::string search_jsonl(const SearchResult& r) {
    std::string out;
    for (const auto& rec : r.records) out += to_json(rec).dump() + "\n";
    for (const auto& s : r.summaries) out += to_json(s).dump() + "\n";
    return out;
}

// ---- inequality lab -----------------------------------------------------

inline nlohmann::json to_json(const LabRecord& r) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    nlohmann::json j = {{"name", r.name},
                        {"n", r.n},
                        {"parameters", std::move(params)},
                        {"min_eig", r.min_eig},
                        {"threshold", r.threshold},
                        {"classification", to_string(r.classification)},
                        {"seed", r.seed}};
    if (r.error) {
        j["classification"] = nullptr;
        j["error"] = *r.error;
    }
    return j;
}

} // namespace parsum
