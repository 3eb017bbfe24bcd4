#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eue/montecarlo.hpp"

namespace eue {

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& msg)
        : std::runtime_error("config line " + std::to_string(line) + ": " + msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

enum class GraphFamily { Path, Clique, Lollipop, RandomThreshold, File };

const char* family_name(GraphFamily f);

// One [experiment] section of the config: a graph family, a list of p
// values (one table row each) and the measurement protocol.
struct ExperimentSpec {
    std::string name;
    GraphFamily family = GraphFamily::RandomThreshold;
    std::size_t n = 0;
    double threshold = 0;      // random-threshold
    std::size_t clique_size = 0; // lollipop
    std::string file;
    std::vector<double> p_values;
    std::optional<double> q; // Birth-Death rows when present
    // General rule from a "table" key (one row; p/q columns stay empty).
    std::optional<EvolutionRule> general_rule;
    std::uint64_t trials = 1000;
    std::uint64_t static_trials = 0; // 0 = same as trials
    std::uint64_t seed = 0;
    Strategy strategy = Strategy::RWA;
    StartPolicy start_policy = StartPolicy::Fixed;
    NodeId start = 0;
    bool chaining = true;
    std::uint64_t step_limit = 1'000'000'000;

    std::string graph_description() const;
};

// Flat "key = value" sections; errors carry the offending line number.
std::vector<ExperimentSpec> parse_experiment_config(std::istream& in);

struct TableRow {
    std::size_t size = 0;
    std::size_t delta = 0;
    std::size_t Delta = 0;
    double p = 0;
    std::optional<double> q;
    CoverTimeEstimate static_est;
    CoverTimeEstimate temporal_est;
    double lower = 0; // NaN when no bound formula applies
    double upper = 0;
};

// One row per p value. The graph is regenerated per row (seeded from the
// spec seed and the row index) and the realized degree stats recorded; the
// bounds are computed from the measured static cover time.
std::vector<TableRow> run_experiment_rows(const ExperimentSpec& spec);

// Metadata comment lines, one fixed header, then all rows in section order.
// Byte-identical output for identical specs.
void write_csv(std::ostream& out, std::span<const ExperimentSpec> specs,
               std::span<const std::vector<TableRow>> rows);

// Aligned table with nearest-natural rounding.
void write_pretty(std::ostream& out, std::span<const ExperimentSpec> specs,
                  std::span<const std::vector<TableRow>> rows);

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

} // namespace eue
