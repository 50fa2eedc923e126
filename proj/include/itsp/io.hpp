#ifndef ITSP_IO_HPP
#define ITSP_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "itsp/model.hpp"
#include "itsp/tsp.hpp"

namespace itsp::io {

/// A parsed and validated instance document.
struct ParsedInstance {
    std::variant<LpuuInstance, UtspInstance> value;
    UncertaintyKind kind = UncertaintyKind::crisp;

    bool is_lpuu() const { return std::holds_alternative<LpuuInstance>(value); }
    const LpuuInstance& lpuu() const { return std::get<LpuuInstance>(value); }
    const UtspInstance& utsp() const { return std::get<UtspInstance>(value); }
};

/// Parses a JSON instance document ({"type": "utsp" | "lpuu", ...}) and runs
/// full validation. Throws ValidationError with the offending field path.
ParsedInstance parse_instance(const std::string& text, const ValidateOptions& opts = {});

/// Canonical serialisation; parse(serialize(parse(text))) == parse(text).
std::string serialize_instance(const ParsedInstance& inst);

ParsedInstance load_instance_file(const std::string& path, const ValidateOptions& opts = {});

// ---------------------------------------------------------------------------
// Instance generation
// ---------------------------------------------------------------------------

/// Parameters for the seeded random instance generator. All drawn values are
/// snapped to a 1/64 grid so that desk-scale sums stay exact in doubles.
struct GenConfig {
    std::string kind = "interval"; // interval | dist | crisp
    bool utsp = true;              // otherwise LPUU with m rows
    int n = 5;
    int m = 3;                     // LPUU only
    std::uint64_t seed = 0;
    double spread = 0.5;           // half-width (interval) / half-range (uniform) cap
};

/// Deterministic for fixed arguments; emits a canonical document.
std::string generate_instance(const GenConfig& cfg);

/// In-memory counterparts used by tests and batch drivers.
UtspInstance generate_utsp(const std::string& kind, int n, std::uint64_t seed, double spread);
LpuuInstance generate_lpuu(const std::string& kind, int m, int n, std::uint64_t seed, double spread);

// ---------------------------------------------------------------------------
// Solve / report plumbing
// ---------------------------------------------------------------------------

enum class Criterion { maximin, maximal, expected, all };
enum class MaximalVariant { hypograph, edge, both };
enum class OutputFormat { human, json, csv };

struct RunConfig {
    std::string input_path;
    Criterion criterion = Criterion::maximin;
    TspMethod tsp_method = TspMethod::held_karp;
    MaximalVariant maximal_variant = MaximalVariant::both;
    std::optional<double> penalty_override;
    std::uint64_t seed = 1;
    long samples = 10000;
    OutputFormat format = OutputFormat::human;
    std::string out_path;             // empty = stdout
    std::vector<int> tour;            // check-maximal (UTSP)
    std::vector<double> decision;     // check-maximal (LPUU)
};

/// Exit codes shared by the CLI: 0 success, 1 infeasible, 2 input error,
/// 3 numeric failure.
enum ExitCode : int {
    kExitOk = 0,
    kExitInfeasible = 1,
    kExitInputError = 2,
    kExitNumericFailure = 3,
};

/// One solved criterion, ready for rendering.
struct ReportRow {
    std::string instance_id;
    std::string criterion;
    std::string variant;   // hypograph | edge | "" for point solutions
    std::string solution;  // "1-2-3-4" for tours, "(x1, x2)" for vectors
    double value = 0.0;
    double v_star = 0.0;
    long set_size = 1;
    std::uint64_t seed = 0;
    std::vector<std::string> set_members; // full sets (json/human only)
};

struct Report {
    std::vector<ReportRow> rows;
    std::vector<std::string> notes;
    double elapsed_ms = 0.0;
};

std::string render_report(const Report& report, OutputFormat format);

/// Dispatches `solve` over the model x criterion table. Fills `report`;
/// returns an exit code. Infeasible inner regions report exit 1 with the
/// note "inner feasibility space empty".
int run_solve(const RunConfig& cfg, Report& report);

/// `check-maximal` for a tour (UTSP) or decision vector (LPUU).
int run_check_maximal(const RunConfig& cfg, Report& report);

/// `enumerate-maximal` (UTSP only): lists the requested maximal sets.
int run_enumerate_maximal(const RunConfig& cfg, Report& report);

/// `oracle`: cross-checks closed forms against the brute-force oracles.
int run_oracle(const RunConfig& cfg, Report& report);

} // namespace itsp::io

#endif // ITSP_IO_HPP
