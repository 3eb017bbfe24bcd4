#include "eue/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>

#include "eue/bounds.hpp"
#include "eue/graph.hpp"

namespace eue {

const char* family_name(GraphFamily f) {
    switch (f) {
    case GraphFamily::Path: return "path";
    case GraphFamily::Clique: return "clique";
    case GraphFamily::Lollipop: return "lollipop";
    case GraphFamily::RandomThreshold: return "random-threshold";
    case GraphFamily::File: return "file";
    }
    return "?";
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string ExperimentSpec::graph_description() const {
    switch (family) {
    case GraphFamily::Path: return "path(n=" + std::to_string(n) + ")";
    case GraphFamily::Clique: return "clique(n=" + std::to_string(n) + ")";
    case GraphFamily::Lollipop:
        return "lollipop(n=" + std::to_string(n) + ",k=" + std::to_string(clique_size) + ")";
    case GraphFamily::RandomThreshold:
        return "random-threshold(n=" + std::to_string(n) + ",threshold=" + format_double(threshold) + ")";
    case GraphFamily::File: return "file(" + file + ")";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& v, std::size_t line) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0') throw ConfigError(line, "expected a number, got \"" + v + "\"");
    return x;
}

std::uint64_t parse_uint(const std::string& v, std::size_t line) {
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0' || v.find('-') != std::string::npos)
        throw ConfigError(line, "expected a non-negative integer, got \"" + v + "\"");
    return x;
}

bool parse_bool(const std::string& v, std::size_t line) {
    if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
    if (v == "false" || v == "no" || v == "0" || v == "off") return false;
    throw ConfigError(line, "expected true/false, got \"" + v + "\"");
}

struct SectionState {
    ExperimentSpec spec;
    std::size_t header_line = 0;
    std::string rule_hint;
    std::vector<std::pair<std::string, double>> table_entries;
    std::size_t table_line = 0;
    bool have_family = false, have_n = false, have_threshold = false, have_clique = false, have_p = false;
};

// Patterns are binary strings read as numbers; bit i (rightmost char is
// bit 0) is the edge's state i+1 steps ago.
EvolutionRule rule_from_table(const std::vector<std::pair<std::string, double>>& entries, std::size_t line) {
    if (entries.empty()) throw ConfigError(line, "empty rule table");
    const std::size_t k = entries.front().first.size();
    if (k == 0 || k > 20) throw ConfigError(line, "table pattern length must be in [1, 20]");
    if (entries.size() != (std::size_t{1} << k))
        throw ConfigError(line, "table must cover all " + std::to_string(std::size_t{1} << k) + " patterns of length " +
                                    std::to_string(k) + ", got " + std::to_string(entries.size()));
    std::vector<double> table(std::size_t{1} << k, -1.0);
    for (const auto& [pattern, prob] : entries) {
        if (pattern.size() != k) throw ConfigError(line, "table patterns must all have the same length");
        unsigned value = 0;
        for (char c : pattern) {
            if (c != '0' && c != '1') throw ConfigError(line, "table pattern \"" + pattern + "\" is not binary");
            value = (value << 1) | static_cast<unsigned>(c - '0');
        }
        if (table[value] >= 0.0) throw ConfigError(line, "duplicate table pattern \"" + pattern + "\"");
        if (!(prob >= 0.0 && prob <= 1.0)) throw ConfigError(line, "table probabilities must be in [0,1]");
        table[value] = prob;
    }
    return EvolutionRule::general(static_cast<unsigned>(k), std::move(table));
}

void finalize_section(const SectionState& st, std::vector<ExperimentSpec>& out) {
    const std::size_t line = st.header_line;
    if (!st.have_family) throw ConfigError(line, "section is missing \"family\"");
    ExperimentSpec s = st.spec;
    if (s.family != GraphFamily::File && !st.have_n) throw ConfigError(line, "section is missing \"n\"");
    if (s.family == GraphFamily::RandomThreshold && !st.have_threshold)
        throw ConfigError(line, "random-threshold needs \"threshold\"");
    if (s.family == GraphFamily::Lollipop && !st.have_clique) throw ConfigError(line, "lollipop needs \"clique-size\"");
    if (s.family == GraphFamily::File && s.file.empty()) throw ConfigError(line, "file family needs \"file\"");

    if (st.rule_hint == "general" && st.table_entries.empty())
        throw ConfigError(line, "rule = general needs a \"table\"");
    if (st.rule_hint == "birth-death" && !s.q) throw ConfigError(line, "rule = birth-death needs \"q\"");
    if (st.rule_hint == "bernoulli" && s.q) throw ConfigError(line, "rule = bernoulli takes no \"q\"");
    if (!st.table_entries.empty()) {
        if (st.have_p) throw ConfigError(st.table_line, "a table rule takes no \"p\" list");
        if (s.q) throw ConfigError(st.table_line, "a table rule takes no \"q\"");
        s.general_rule = rule_from_table(st.table_entries, st.table_line);
    } else {
        if (!st.have_p || s.p_values.empty()) throw ConfigError(line, "section needs a non-empty \"p\" list");
        for (double p : s.p_values)
            if (!(p > 0.0 && p <= 1.0)) throw ConfigError(line, "p values must be in (0,1]");
        if (s.q && !(*s.q >= 0.0 && *s.q <= 1.0)) throw ConfigError(line, "q must be in [0,1]");
    }
    if (s.trials < 1) throw ConfigError(line, "trials must be >= 1");
    out.push_back(std::move(s));
}

} // namespace

std::vector<ExperimentSpec> parse_experiment_config(std::istream& in) {
    std::vector<ExperimentSpec> specs;
    std::optional<SectionState> section;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line != "[experiment]") throw ConfigError(lineno, "unknown section \"" + line + "\"");
            if (section) finalize_section(*section, specs);
            section.emplace();
            section->header_line = lineno;
            continue;
        }
        if (!section) throw ConfigError(lineno, "key outside of an [experiment] section");

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(lineno, "expected \"key = value\"");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) throw ConfigError(lineno, "empty value for \"" + key + "\"");
        ExperimentSpec& s = section->spec;

        if (key == "name") {
            s.name = value;
        } else if (key == "family") {
            section->have_family = true;
            if (value == "path") s.family = GraphFamily::Path;
            else if (value == "clique") s.family = GraphFamily::Clique;
            else if (value == "lollipop") s.family = GraphFamily::Lollipop;
            else if (value == "random-threshold") s.family = GraphFamily::RandomThreshold;
            else if (value == "file") s.family = GraphFamily::File;
            else throw ConfigError(lineno, "unknown family \"" + value + "\"");
        } else if (key == "n" || key == "size") {
            s.n = parse_uint(value, lineno);
            section->have_n = true;
        } else if (key == "threshold") {
            s.threshold = parse_number(value, lineno);
            if (!(s.threshold >= 0.0 && s.threshold <= 1.0)) throw ConfigError(lineno, "threshold must be in [0,1]");
            section->have_threshold = true;
        } else if (key == "clique-size") {
            s.clique_size = parse_uint(value, lineno);
            section->have_clique = true;
        } else if (key == "file") {
            s.file = value;
        } else if (key == "p") {
            s.p_values.clear();
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                if (item.empty()) throw ConfigError(lineno, "empty entry in p list");
                s.p_values.push_back(parse_number(item, lineno));
            }
            section->have_p = true;
        } else if (key == "q") {
            s.q = parse_number(value, lineno);
        } else if (key == "rule") {
            if (value != "bernoulli" && value != "birth-death" && value != "general")
                throw ConfigError(lineno, "unknown rule \"" + value + "\"");
            section->rule_hint = value;
        } else if (key == "table") {
            section->table_entries.clear();
            section->table_line = lineno;
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                const std::size_t colon = item.find(':');
                if (colon == std::string::npos)
                    throw ConfigError(lineno, "table entries look like \"pattern:probability\"");
                section->table_entries.emplace_back(trim(item.substr(0, colon)),
                                                    parse_number(trim(item.substr(colon + 1)), lineno));
            }
        } else if (key == "trials") {
            s.trials = parse_uint(value, lineno);
        } else if (key == "static-trials") {
            s.static_trials = parse_uint(value, lineno);
        } else if (key == "seed") {
            s.seed = parse_uint(value, lineno);
        } else if (key == "strategy") {
            try {
                s.strategy = strategy_from_name(value);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(lineno, e.what());
            }
        } else if (key == "start") {
            if (value == "sweep") {
                s.start_policy = StartPolicy::Sweep;
            } else {
                s.start_policy = StartPolicy::Fixed;
                s.start = static_cast<NodeId>(parse_uint(value, lineno));
            }
        } else if (key == "chaining") {
            s.chaining = parse_bool(value, lineno);
        } else if (key == "step-limit") {
            s.step_limit = parse_uint(value, lineno);
        } else {
            throw ConfigError(lineno, "unknown key \"" + key + "\"");
        }
    }
    if (section) finalize_section(*section, specs);
    if (specs.empty()) throw ConfigError(lineno ? lineno : 1, "no [experiment] section found");
    return specs;
}

namespace {

StaticGraph make_row_graph(const ExperimentSpec& spec, std::uint64_t graph_seed) {
    switch (spec.family) {
    case GraphFamily::Path: return gen_path(spec.n);
    case GraphFamily::Clique: return gen_clique(spec.n);
    case GraphFamily::Lollipop: return gen_lollipop(spec.n, spec.clique_size);
    case GraphFamily::RandomThreshold: {
        Rng rng = make_rng(graph_seed);
        return gen_random_threshold(spec.n, spec.threshold, rng);
    }
    case GraphFamily::File: {
        std::ifstream in(spec.file);
        if (!in) throw GraphError(GraphError::Kind::ParseError, "cannot open graph file \"" + spec.file + "\"");
        return read_edge_list(in);
    }
    }
    throw std::logic_error("unreachable");
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::pair<double, double> row_bounds(const ExperimentSpec& spec, const TableRow& row) {
    const double cg = row.static_est.mean;
    if (spec.general_rule) return {kNaN, kNaN}; // no closed-form bound
    if (spec.q) {
        if (spec.strategy == Strategy::RWD && std::min(row.p, 1.0 - *spec.q) > 0.0) {
            const BoundReport b = rwd_k1_bounds(cg, row.p, *spec.q);
            return {b.lower, b.upper};
        }
        return {kNaN, kNaN}; // no Birth-Death RWA bound
    }
    switch (spec.strategy) {
    case Strategy::RWA: {
        const BoundReport b = rwa_k0_bounds(cg, row.p, row.delta, row.Delta);
        return {b.lower, b.upper};
    }
    case Strategy::RWD: {
        const BoundReport b = rwd_k0_bounds(cg, row.p);
        return {b.lower, b.upper};
    }
    case Strategy::SRW: return {cg, cg};
    }
    return {kNaN, kNaN};
}

} // namespace

std::vector<TableRow> run_experiment_rows(const ExperimentSpec& spec) {
    std::vector<TableRow> rows;
    const std::size_t row_count = spec.general_rule ? 1 : spec.p_values.size();
    rows.reserve(row_count);
    const std::uint64_t static_trials = spec.static_trials ? spec.static_trials : spec.trials;
    for (std::size_t i = 0; i < row_count; ++i) {
        const StaticGraph g = make_row_graph(spec, derive_seed(spec.seed, 2 * i));
        const DegreeStats deg = degree_stats(g);
        // Static and temporal measurements share one derived stream (common
        // random numbers); at p = 1 they coincide trial by trial.
        const std::uint64_t row_seed = derive_seed(spec.seed, 2 * i + 1);

        TableRow row;
        row.size = g.node_count();
        row.delta = deg.min_degree;
        row.Delta = deg.max_degree;
        row.p = spec.general_rule ? kNaN : spec.p_values[i];
        row.q = spec.q;

        row.static_est = estimate_static_cover_time(g, spec.start_policy, spec.start, static_trials, row_seed);

        ExperimentConfig cfg;
        cfg.rule = spec.general_rule ? *spec.general_rule
                   : spec.q          ? EvolutionRule::birth_death(row.p, *spec.q)
                                     : EvolutionRule::bernoulli(row.p);
        cfg.strategy = spec.strategy;
        cfg.trials = spec.trials;
        cfg.start_policy = spec.start_policy;
        cfg.start = spec.start;
        cfg.chaining = spec.chaining;
        cfg.seed = row_seed;
        cfg.step_limit = spec.step_limit;
        row.temporal_est = estimate_cover_time(g, cfg);

        std::tie(row.lower, row.upper) = row_bounds(spec, row);
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::string csv_cell(double v) { return std::isnan(v) ? std::string() : format_double(v); }

void write_metadata(std::ostream& out, std::span<const ExperimentSpec> specs) {
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const ExperimentSpec& s = specs[i];
        out << "# experiment " << i + 1 << ":";
        if (!s.name.empty()) out << " name=" << s.name;
        out << " graph=" << s.graph_description();
        if (s.family == GraphFamily::RandomThreshold) out << " (regenerated per row)";
        out << " strategy=" << strategy_name(s.strategy);
        if (s.general_rule) out << " rule=" << s.general_rule->describe();
        if (s.q) out << " q=" << format_double(*s.q);
        out << " trials=" << s.trials << " static-trials=" << (s.static_trials ? s.static_trials : s.trials)
            << " seed=" << s.seed << " start=";
        if (s.start_policy == StartPolicy::Sweep)
            out << "sweep";
        else
            out << s.start;
        out << " chaining=" << (s.chaining ? "true" : "false") << '\n';
    }
}

} // namespace

void write_csv(std::ostream& out, std::span<const ExperimentSpec> specs,
               std::span<const std::vector<TableRow>> rows) {
    write_metadata(out, specs);
    out << "size,delta,Delta,p,q,static,temporal,lower,upper,trials,se\n";
    for (const auto& section : rows)
        for (const TableRow& r : section) {
            out << r.size << ',' << r.delta << ',' << r.Delta << ',' << csv_cell(r.p) << ','
                << (r.q ? format_double(*r.q) : std::string()) << ',' << format_double(r.static_est.mean) << ','
                << format_double(r.temporal_est.mean) << ',' << csv_cell(r.lower) << ',' << csv_cell(r.upper) << ','
                << r.temporal_est.trials << ',' << format_double(r.temporal_est.std_error) << '\n';
        }
}

void write_pretty(std::ostream& out, std::span<const ExperimentSpec> specs,
                  std::span<const std::vector<TableRow>> rows) {
    write_metadata(out, specs);
    const std::vector<std::string> header = {"size", "delta", "Delta", "p",      "q",
                                             "static", "temporal", "lower", "upper", "trials"};
    std::vector<std::vector<std::string>> cells;
    cells.push_back(header);
    auto rounded = [](double v) { return std::isnan(v) ? std::string("-") : std::to_string(std::llround(v)); };
    for (const auto& section : rows)
        for (const TableRow& r : section)
            cells.push_back({std::to_string(r.size), std::to_string(r.delta), std::to_string(r.Delta),
                             std::isnan(r.p) ? "-" : format_double(r.p), r.q ? format_double(*r.q) : "-",
                             std::to_string(r.static_est.rounded()), std::to_string(r.temporal_est.rounded()),
                             rounded(r.lower), rounded(r.upper), std::to_string(r.temporal_est.trials)});
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << row[c];
            if (c + 1 < row.size()) out << std::string(width[c] - row[c].size() + 2, ' ');
        }
        out << '\n';
    }
}

} // namespace eue
