#include "itsp/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "itsp/lpuu.hpp"
#include "itsp/oracle.hpp"
#include "itsp/rng.hpp"
#include "itsp/simplex.hpp"

namespace itsp::io {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Uncertain scalar <-> JSON
// ---------------------------------------------------------------------------

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ValidationError(path + ": " + msg);
}

double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

UncertainScalar parse_scalar(const json& j, const std::string& path) {
    if (j.is_number()) return UncertainScalar::crisp(j.get<double>());
    if (!j.is_object()) fail(path, "expected a number or an object");
    if (j.contains("lo") || j.contains("hi")) {
        if (!j.contains("lo") || !j.contains("hi")) fail(path, "interval needs both lo and hi");
        const double lo = number_at(j.at("lo"), path + ".lo");
        const double hi = number_at(j.at("hi"), path + ".hi");
        if (!(lo <= hi)) {
            std::ostringstream os;
            os << "lo > hi (" << lo << " > " << hi << ")";
            fail(path, os.str());
        }
        return UncertainScalar::interval(lo, hi);
    }
    if (!j.contains("dist")) fail(path, "expected lo/hi or dist");
    const std::string kind = j.at("dist").is_string() ? j.at("dist").get<std::string>() : "";
    if (kind == "uniform")
        return UncertainScalar::uniform(number_at(j.at("a"), path + ".a"),
                                        number_at(j.at("b"), path + ".b"));
    if (kind == "normal")
        return UncertainScalar::normal(number_at(j.at("mu"), path + ".mu"),
                                       number_at(j.at("sigma"), path + ".sigma"));
    if (kind == "discrete") {
        if (!j.contains("values") || !j.contains("probs") || !j.at("values").is_array() ||
            !j.at("probs").is_array())
            fail(path, "discrete needs values and probs arrays");
        std::vector<double> values, probs;
        for (std::size_t i = 0; i < j.at("values").size(); ++i)
            values.push_back(number_at(j.at("values")[i], path + ".values"));
        for (std::size_t i = 0; i < j.at("probs").size(); ++i)
            probs.push_back(number_at(j.at("probs")[i], path + ".probs"));
        return UncertainScalar::discrete(std::move(values), std::move(probs));
    }
    fail(path, "unknown dist kind '" + kind + "'");
}

json scalar_to_json(const UncertainScalar& u) {
    if (u.is_crisp()) return std::get<double>(u.value);
    if (u.is_interval()) {
        const auto& iv = std::get<Interval>(u.value);
        return json{{"lo", iv.lo}, {"hi", iv.hi}};
    }
    const auto& d = std::get<DistributionSpec>(u.value);
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                return json{{"dist", "uniform"}, {"a", v.a}, {"b", v.b}};
            } else if constexpr (std::is_same_v<T, Normal>) {
                return json{{"dist", "normal"}, {"mu", v.mu}, {"sigma", v.sigma}};
            } else {
                return json{{"dist", "discrete"}, {"values", v.values}, {"probs", v.probs}};
            }
        },
        d);
}

std::string idx_path(const std::string& name, std::size_t i) {
    std::ostringstream os;
    os << name << "[" << i << "]";
    return os.str();
}

std::string idx_path(const std::string& name, std::size_t i, std::size_t j) {
    std::ostringstream os;
    os << name << "[" << i << "][" << j << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// Instance documents
// ---------------------------------------------------------------------------

UtspInstance parse_utsp(const json& doc) {
    UtspInstance inst;
    if (!doc.contains("n") || !doc.at("n").is_number_integer()) fail("n", "expected an integer");
    inst.n = doc.at("n").get<int>();
    inst.speed = doc.contains("speed") ? number_at(doc.at("speed"), "speed") : 1.0;
    if (!doc.contains("durations") || !doc.at("durations").is_array())
        fail("durations", "expected an array of rows");
    const json& rows = doc.at("durations");
    if (static_cast<int>(rows.size()) != inst.n) fail("durations", "expected n rows");
    inst.durations.assign(static_cast<std::size_t>(inst.n),
                          std::vector<UncertainScalar>(static_cast<std::size_t>(inst.n)));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != inst.n)
            fail(idx_path("durations", i), "expected n entries");
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            if (i == j) continue; // diagonal ignored
            inst.durations[i][j] = parse_scalar(rows[i][j], idx_path("durations", i, j));
        }
    }
    return inst;
}

LpuuInstance parse_lpuu(const json& doc) {
    LpuuInstance inst;
    const std::string sense = doc.contains("sense") ? doc.at("sense").get<std::string>() : "maximize";
    if (sense == "maximize")
        inst.sense = Sense::maximize;
    else if (sense == "minimize")
        inst.sense = Sense::minimize;
    else
        fail("sense", "expected maximize or minimize");
    if (!doc.contains("c") || !doc.at("c").is_array()) fail("c", "expected an array");
    for (std::size_t j = 0; j < doc.at("c").size(); ++j)
        inst.c.push_back(number_at(doc.at("c")[j], idx_path("c", j)));
    if (!doc.contains("Y") || !doc.at("Y").is_array()) fail("Y", "expected an array of rows");
    for (std::size_t i = 0; i < doc.at("Y").size(); ++i) {
        const json& row = doc.at("Y")[i];
        if (!row.is_array()) fail(idx_path("Y", i), "expected an array");
        std::vector<UncertainScalar> r;
        for (std::size_t j = 0; j < row.size(); ++j)
            r.push_back(parse_scalar(row[j], idx_path("Y", i, j)));
        inst.Y.push_back(std::move(r));
    }
    if (!doc.contains("Z") || !doc.at("Z").is_array()) fail("Z", "expected an array");
    for (std::size_t k = 0; k < doc.at("Z").size(); ++k)
        inst.Z.push_back(parse_scalar(doc.at("Z")[k], idx_path("Z", k)));
    if (!doc.contains("penalty_L")) fail("penalty_L", "missing");
    inst.penalty_L = number_at(doc.at("penalty_L"), "penalty_L");
    return inst;
}

} // namespace

ParsedInstance parse_instance(const std::string& text, const ValidateOptions& opts) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("syntax error: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("type") || !doc.at("type").is_string())
        throw ValidationError("type: missing (expected \"utsp\" or \"lpuu\")");

    ParsedInstance parsed;
    const std::string type = doc.at("type").get<std::string>();
    if (type == "utsp") {
        UtspInstance inst = parse_utsp(doc);
        validate(inst, opts);
        parsed.kind = uncertainty_kind(inst);
        parsed.value = std::move(inst);
    } else if (type == "lpuu") {
        LpuuInstance inst = parse_lpuu(doc);
        validate(inst, opts);
        parsed.kind = uncertainty_kind(inst);
        parsed.value = std::move(inst);
    } else {
        throw ValidationError("type: unknown instance type '" + type + "'");
    }
    return parsed;
}

std::string serialize_instance(const ParsedInstance& inst) {
    json doc;
    if (inst.is_lpuu()) {
        const LpuuInstance& lp = inst.lpuu();
        doc["type"] = "lpuu";
        doc["sense"] = to_string(lp.sense);
        doc["c"] = lp.c;
        json yrows = json::array();
        for (const auto& row : lp.Y) {
            json r = json::array();
            for (const auto& u : row) r.push_back(scalar_to_json(u));
            yrows.push_back(std::move(r));
        }
        doc["Y"] = std::move(yrows);
        json z = json::array();
        for (const auto& u : lp.Z) z.push_back(scalar_to_json(u));
        doc["Z"] = std::move(z);
        doc["penalty_L"] = lp.penalty_L;
    } else {
        const UtspInstance& ut = inst.utsp();
        doc["type"] = "utsp";
        doc["n"] = ut.n;
        doc["speed"] = ut.speed;
        json rows = json::array();
        for (int i = 0; i < ut.n; ++i) {
            json row = json::array();
            for (int j = 0; j < ut.n; ++j) {
                if (i == j)
                    row.push_back(nullptr);
                else
                    row.push_back(scalar_to_json(ut.durations[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
            }
            rows.push_back(std::move(row));
        }
        doc["durations"] = std::move(rows);
    }
    return doc.dump(2) + "\n";
}

ParsedInstance load_instance_file(const std::string& path, const ValidateOptions& opts) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str(), opts);
}

// ---------------------------------------------------------------------------
// Generator
// ---------------------------------------------------------------------------

namespace {

// Snap to a power-of-two grid so desk-scale sums of generated values are
// exact in doubles.
double snap(double v) { return std::round(v * 64.0) / 64.0; }

UncertainScalar gen_scalar(std::mt19937_64& rng, const std::string& kind, double center_lo,
                           double center_hi, double spread) {
    const double center = snap(uniform_in(rng, center_lo, center_hi));
    const double half = snap(uniform_in(rng, 0.0, spread));
    const double lo = std::max(0.0, center - half);
    const double hi = center + half;
    if (kind == "crisp") return UncertainScalar::crisp(center);
    if (kind == "interval") return UncertainScalar::interval(lo, hi);
    if (kind == "dist") return UncertainScalar::uniform(lo, hi);
    throw ValidationError("kind: expected crisp, interval, or dist");
}

} // namespace

UtspInstance generate_utsp(const std::string& kind, int n, std::uint64_t seed, double spread) {
    if (n < 3 || n > 18) throw ValidationError("n: generator supports 3..18 cities");
    if (spread < 0.0) throw ValidationError("spread: must be nonnegative");
    std::mt19937_64 rng(seed);
    UtspInstance inst;
    inst.n = n;
    inst.speed = 1.0;
    inst.durations.assign(static_cast<std::size_t>(n),
                          std::vector<UncertainScalar>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const UncertainScalar u = gen_scalar(rng, kind, 1.0, 9.0, spread);
            inst.durations[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = u;
            inst.durations[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = u;
        }
    validate(inst);
    return inst;
}

LpuuInstance generate_lpuu(const std::string& kind, int m, int n, std::uint64_t seed, double spread) {
    if (n < 1 || n > 8 || m < 1 || m > 8) throw ValidationError("m, n: generator supports 1..8");
    if (spread < 0.0) throw ValidationError("spread: must be nonnegative");
    std::mt19937_64 rng(seed);
    LpuuInstance inst;
    inst.sense = Sense::maximize;
    double abs_c = 0.0;
    for (int j = 0; j < n; ++j) {
        const double cj = snap(uniform_in(rng, -1.0, 3.0));
        inst.c.push_back(cj);
        abs_c += std::abs(cj);
    }
    // Y entries stay strictly positive so the inner region is bounded and
    // x = 0 is always feasible against the positive Z lower bounds.
    for (int i = 0; i < m; ++i) {
        std::vector<UncertainScalar> row;
        for (int j = 0; j < n; ++j)
            row.push_back(gen_scalar(rng, kind, 0.5, 3.0, std::min(spread, 0.4375)));
        inst.Y.push_back(std::move(row));
    }
    for (int k = 0; k < m; ++k) inst.Z.push_back(gen_scalar(rng, kind, 1.0, 6.0, std::min(spread, 0.9375)));
    inst.penalty_L = -(2.0 + abs_c * 1e6);
    validate(inst);
    return inst;
}

std::string generate_instance(const GenConfig& cfg) {
    ParsedInstance parsed;
    if (cfg.utsp) {
        UtspInstance inst = generate_utsp(cfg.kind, cfg.n, cfg.seed, cfg.spread);
        parsed.kind = uncertainty_kind(inst);
        parsed.value = std::move(inst);
    } else {
        LpuuInstance inst = generate_lpuu(cfg.kind, cfg.m, cfg.n, cfg.seed, cfg.spread);
        parsed.kind = uncertainty_kind(inst);
        parsed.value = std::move(inst);
    }
    return serialize_instance(parsed);
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string tour_string(const Tour& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.order.size(); ++i) {
        if (i) os << "-";
        os << t.order[i];
    }
    return os.str();
}

std::string vector_string(const std::vector<double>& x) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) os << ", ";
        os << fmt_num(x[i]);
    }
    os << ")";
    return os.str();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

} // namespace

std::string render_report(const Report& report, OutputFormat format) {
    std::ostringstream os;
    switch (format) {
    case OutputFormat::csv: {
        os << "instance_id,criterion,variant,solution,value,v_star,set_size,seed\n";
        for (const auto& r : report.rows)
            os << csv_escape(r.instance_id) << "," << r.criterion << "," << r.variant << ","
               << csv_escape(r.solution) << "," << fmt_num(r.value) << "," << fmt_num(r.v_star)
               << "," << r.set_size << "," << r.seed << "\n";
        break;
    }
    case OutputFormat::json: {
        json doc;
        json rows = json::array();
        for (const auto& r : report.rows) {
            json row{{"instance_id", r.instance_id}, {"criterion", r.criterion},
                     {"variant", r.variant},         {"solution", r.solution},
                     {"value", r.value},             {"v_star", r.v_star},
                     {"set_size", r.set_size},       {"seed", r.seed}};
            if (!r.set_members.empty()) row["set"] = r.set_members;
            rows.push_back(std::move(row));
        }
        doc["rows"] = std::move(rows);
        doc["notes"] = report.notes;
        doc["timing_ms"] = report.elapsed_ms;
        os << doc.dump(2) << "\n";
        break;
    }
    case OutputFormat::human: {
        for (const auto& r : report.rows) {
            os << r.instance_id << " | " << r.criterion;
            if (!r.variant.empty()) os << " (" << r.variant << ")";
            os << "\n";
            if (!r.solution.empty()) os << "  solution: " << r.solution << "\n";
            os << "  value: " << fmt_num(r.value) << "\n";
            os << "  v* = " << fmt_num(r.v_star) << "\n";
            if (r.set_size != 1 || !r.set_members.empty()) os << "  set size: " << r.set_size << "\n";
            for (const auto& member : r.set_members) os << "    " << member << "\n";
        }
        for (const auto& note : report.notes) os << "note: " << note << "\n";
        os << "elapsed: " << fmt_num(report.elapsed_ms) << " ms\n";
        break;
    }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Command dispatch
// ---------------------------------------------------------------------------

namespace {

std::string instance_id_of(const std::string& path) {
    const std::filesystem::path p(path);
    return p.stem().string();
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

std::string criterion_name(Criterion c) {
    switch (c) {
    case Criterion::maximin: return "maximin";
    case Criterion::maximal: return "maximal";
    case Criterion::expected: return "expected";
    case Criterion::all: return "all";
    }
    return "?";
}

/// Default candidate set for the probabilistic LPUU search: a coarse grid
/// over the support-relaxation outer region's bounding box plus the LP
/// vertices that maximise the objective and each coordinate. For unbounded
/// supports (normal entries) the box falls back to [0, 10]^n.
std::vector<std::vector<double>> default_candidates(const LpuuInstance& inst) {
    const int n = inst.n();
    std::vector<double> axis_hi(static_cast<std::size_t>(n), 10.0);
    std::vector<std::vector<double>> vertices;
    try {
        Polyhedron outer;
        for (const auto& row : inst.Y) {
            std::vector<double> a;
            for (const auto& u : row) a.push_back(interval_bounds(u).lo);
            outer.A.push_back(std::move(a));
        }
        for (const auto& u : inst.Z) outer.b.push_back(interval_bounds(u).hi);

        for (int j = 0; j < n; ++j) {
            std::vector<double> e(static_cast<std::size_t>(n), 0.0);
            e[static_cast<std::size_t>(j)] = 1.0;
            const LpOutcome out = lp_solve(outer, e, Sense::maximize);
            if (out.optimal()) {
                axis_hi[static_cast<std::size_t>(j)] = std::max(out.value, 0.0);
                vertices.push_back(out.x);
            }
        }
        const LpOutcome best = lp_solve(outer, normalized_objective(inst), Sense::maximize);
        if (best.optimal()) vertices.push_back(best.x);
    } catch (const ValidationError&) {
        // unbounded support; keep the fallback box
        vertices.clear();
    }

    int points = 5;
    if (n > 4) points = 3;
    if (n > 7) points = 2;
    std::vector<std::vector<double>> candidates;
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    while (true) {
        std::vector<double> x(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            x[static_cast<std::size_t>(j)] =
                axis_hi[static_cast<std::size_t>(j)] * idx[static_cast<std::size_t>(j)] / (points - 1);
        candidates.push_back(std::move(x));
        int j = 0;
        while (j < n && ++idx[static_cast<std::size_t>(j)] == points) {
            idx[static_cast<std::size_t>(j)] = 0;
            ++j;
        }
        if (j == n) break;
    }
    candidates.insert(candidates.end(), vertices.begin(), vertices.end());
    return candidates;
}

int solve_utsp(const RunConfig& cfg, const UtspInstance& inst, UncertaintyKind kind,
               const std::string& id, Report& report) {
    const TspCaps caps = TspCaps::from_env();
    const bool want_maximin = cfg.criterion == Criterion::maximin || cfg.criterion == Criterion::all;
    const bool want_maximal = cfg.criterion == Criterion::maximal || cfg.criterion == Criterion::all;
    const bool want_expected = cfg.criterion == Criterion::expected || cfg.criterion == Criterion::all;

    if (kind == UncertaintyKind::dist) {
        if (cfg.samples < 100) throw ValidationError("samples: must be >= 100 for probabilistic solves");
        if (cfg.criterion == Criterion::maximal || cfg.criterion == Criterion::maximin)
            report.notes.push_back("probabilistic model: maximin and maximal solutions coincide "
                                   "with the expected-value tour");
        const ExpectedTourResult r = expected_optimal_tour(inst, cfg.tsp_method, caps);
        const std::string label =
            cfg.criterion == Criterion::all ? "expected" : criterion_name(cfg.criterion);
        ReportRow row{id,     label,             "", tour_string(r.tour),
                      r.expected_length, r.expected_length, 1,  cfg.seed, {}};
        report.rows.push_back(std::move(row));
        report.notes.push_back("degree constraints hold by construction, so the penalty value "
                               "cancels from the probabilistic criterion");
        return kExitOk;
    }

    double v_star = 0.0;
    if (want_maximin || want_maximal) {
        const MaximinTourResult mm = maximin_tour(inst, cfg.tsp_method, caps);
        v_star = mm.v_star;
        if (want_maximin)
            report.rows.push_back(ReportRow{id, "maximin", "", tour_string(mm.tour), mm.v_star,
                                            mm.v_star, 1, cfg.seed, {}});
    }
    if (want_maximal) {
        const bool hypo = cfg.maximal_variant != MaximalVariant::edge;
        const bool edge = cfg.maximal_variant != MaximalVariant::hypograph;
        if (hypo) {
            const auto tours = maximal_tours_hypograph(inst, caps);
            ReportRow row{id, "maximal", "hypograph", tours.empty() ? "" : tour_string(tours.front()),
                          v_star, v_star, static_cast<long>(tours.size()), cfg.seed, {}};
            for (const auto& t : tours) row.set_members.push_back(tour_string(t));
            report.rows.push_back(std::move(row));
        }
        if (edge) {
            const auto tours = maximal_tours_edge_level(inst, caps);
            ReportRow row{id, "maximal", "edge", tours.empty() ? "" : tour_string(tours.front()),
                          v_star, v_star, static_cast<long>(tours.size()), cfg.seed, {}};
            for (const auto& t : tours) row.set_members.push_back(tour_string(t));
            report.rows.push_back(std::move(row));
        }
    }
    if (want_expected) {
        if (kind != UncertaintyKind::crisp) {
            if (cfg.criterion == Criterion::expected)
                throw ValidationError("criterion 'expected' requires a probabilistic (or crisp) instance");
        } else {
            const ExpectedTourResult r = expected_optimal_tour(inst, cfg.tsp_method, caps);
            const double vs = (want_maximin || want_maximal) ? v_star : r.expected_length;
            report.rows.push_back(ReportRow{id, "expected", "", tour_string(r.tour),
                                            r.expected_length, vs, 1, cfg.seed, {}});
        }
    }
    return kExitOk;
}

int solve_lpuu(const RunConfig& cfg, LpuuInstance inst, UncertaintyKind kind,
               const std::string& id, Report& report) {
    if (cfg.penalty_override) inst.penalty_L = *cfg.penalty_override;
    if (cfg.criterion == Criterion::expected)
        throw ValidationError("criterion 'expected' applies to utsp instances");

    if (kind == UncertaintyKind::dist) {
        if (cfg.samples < 100) throw ValidationError("samples: must be >= 100 for probabilistic solves");
        const auto candidates = default_candidates(inst);
        const ScoredCandidate best = maximin_probabilistic(inst, candidates, cfg.samples, cfg.seed);
        std::ostringstream note;
        note << "scored " << candidates.size() << " candidates with " << cfg.samples
             << " samples each; maximin and maximal solutions coincide for the probabilistic model";
        report.notes.push_back(note.str());
        const std::string label =
            cfg.criterion == Criterion::all ? "maximin" : criterion_name(cfg.criterion);
        report.rows.push_back(ReportRow{id, label, "", vector_string(best.x), best.score,
                                        best.score, 1, cfg.seed, {}});
        std::ostringstream fp;
        fp << "feasibility probability of reported solution: " << fmt_num(best.feas_prob)
           << "; score = (c.x - L) * p depends on penalty_L = " << fmt_num(inst.penalty_L);
        report.notes.push_back(fp.str());
        return kExitOk;
    }

    const MaximinResult mm = maximin_interval(inst);
    if (mm.outcome.status == LpStatus::infeasible) {
        report.notes.push_back("inner feasibility space empty");
        if (cfg.criterion == Criterion::maximal || cfg.criterion == Criterion::all)
            report.notes.push_back("degenerate maximality: every x >= 0 is maximal");
        return kExitInfeasible;
    }
    if (mm.outcome.status == LpStatus::unbounded) {
        report.notes.push_back("objective unbounded over the inner feasibility space");
        return kExitOk;
    }

    const bool want_maximin = cfg.criterion == Criterion::maximin || cfg.criterion == Criterion::all;
    const bool want_maximal = cfg.criterion == Criterion::maximal || cfg.criterion == Criterion::all;
    if (want_maximin)
        report.rows.push_back(ReportRow{id, "maximin", "", vector_string(mm.outcome.x),
                                        mm.outcome.value, mm.outcome.value, 1, cfg.seed, {}});
    if (want_maximal) {
        // The maximal set is the polyhedron {x >= 0 : x in outer, c.x >= c.x_m};
        // report the maximin point as its witness.
        report.rows.push_back(ReportRow{id, "maximal", "region", vector_string(mm.outcome.x),
                                        mm.outcome.value, mm.outcome.value, -1, cfg.seed, {}});
        report.notes.push_back(
            "maximal set: every x >= 0 in the outer feasibility space whose objective value "
            "reaches the maximin value (a feasibility problem, not a finite set)");
    }
    report.notes.push_back("interval criteria do not depend on penalty_L");
    return kExitOk;
}

} // namespace

namespace {

int solve_one_file(const RunConfig& cfg, const std::string& path, Report& report) {
    const ParsedInstance parsed = load_instance_file(path);
    const std::string id = instance_id_of(path);
    if (parsed.is_lpuu()) return solve_lpuu(cfg, parsed.lpuu(), parsed.kind, id, report);
    return solve_utsp(cfg, parsed.utsp(), parsed.kind, id, report);
}

} // namespace

int run_solve(const RunConfig& cfg, Report& report) {
    const Timer timer;
    int code;
    if (std::filesystem::is_directory(cfg.input_path)) {
        // Batch mode: every *.json in the directory, output ordered by filename.
        std::vector<std::string> files;
        for (const auto& entry : std::filesystem::directory_iterator(cfg.input_path))
            if (entry.is_regular_file() && entry.path().extension() == ".json")
                files.push_back(entry.path().string());
        std::sort(files.begin(), files.end());
        if (files.empty()) throw ValidationError("batch mode: no .json instances in " + cfg.input_path);
        code = kExitOk;
        for (const auto& file : files) code = std::max(code, solve_one_file(cfg, file, report));
    } else {
        code = solve_one_file(cfg, cfg.input_path, report);
    }
    report.elapsed_ms = timer.ms();
    return code;
}

int run_check_maximal(const RunConfig& cfg, Report& report) {
    const Timer timer;
    const ParsedInstance parsed = load_instance_file(cfg.input_path);
    const std::string id = instance_id_of(cfg.input_path);

    if (parsed.is_lpuu()) {
        if (cfg.decision.empty()) throw ValidationError("check-maximal: provide --x for lpuu instances");
        if (parsed.kind == UncertaintyKind::dist)
            throw ValidationError("check-maximal requires interval or crisp uncertainty");
        const MaximalVerdict verdict = maximal_membership_interval(parsed.lpuu(), cfg.decision);
        std::ostringstream os;
        os << "maximal: " << (verdict.is_maximal ? "true" : "false");
        if (verdict.degenerate_inner_empty) os << " (inner feasibility space empty)";
        report.rows.push_back(ReportRow{id, "check-maximal", "", vector_string(cfg.decision),
                                        verdict.is_maximal ? 1.0 : 0.0, 0.0, 1, cfg.seed, {}});
        report.notes.push_back(os.str());
        report.elapsed_ms = timer.ms();
        return kExitOk;
    }

    if (cfg.tour.empty()) throw ValidationError("check-maximal: provide --tour for utsp instances");
    if (parsed.kind == UncertaintyKind::dist)
        throw ValidationError("check-maximal requires interval or crisp uncertainty");
    const UtspInstance& inst = parsed.utsp();
    if (static_cast<int>(cfg.tour.size()) != inst.n)
        throw ValidationError("tour: expected n cities");
    const Tour t = make_tour(cfg.tour);
    const TspCaps caps = TspCaps::from_env();

    const double v_star = maximin_tour(inst, cfg.tsp_method, caps).v_star;
    const Interval bounds = tour_length_bounds(inst, t);
    const bool hypo = bounds.lo <= v_star + kTol;

    // Edge-level check without enumerating: the cheapest tour under mixed
    // weights (lower on t's edges, upper elsewhere) is the best dominator.
    auto h = upper_time_matrix(inst);
    const auto lo = lower_time_matrix(inst);
    for (const auto& [a, b] : t.edges())
        h[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] =
            h[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(a - 1)] =
                lo[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)];
    const double best_against = crisp_tsp(h, TspMethod::held_karp, caps).length;
    const bool edge = best_against >= bounds.lo - kTol;

    std::ostringstream os;
    os << "maximal: " << (hypo ? "true" : "false") << " (hypograph), " << (edge ? "true" : "false")
       << " (edge)";
    report.rows.push_back(ReportRow{id, "check-maximal", "hypograph", tour_string(t),
                                    hypo ? 1.0 : 0.0, v_star, 1, cfg.seed, {}});
    report.rows.push_back(ReportRow{id, "check-maximal", "edge", tour_string(t), edge ? 1.0 : 0.0,
                                    v_star, 1, cfg.seed, {}});
    report.notes.push_back(os.str());
    report.elapsed_ms = timer.ms();
    return kExitOk;
}

int run_enumerate_maximal(const RunConfig& cfg, Report& report) {
    const Timer timer;
    const ParsedInstance parsed = load_instance_file(cfg.input_path);
    if (parsed.is_lpuu())
        throw ValidationError(
            "enumerate-maximal applies to utsp instances; use solve --criterion maximal for lpuu");
    if (parsed.kind == UncertaintyKind::dist)
        throw ValidationError("enumerate-maximal requires interval or crisp uncertainty");
    RunConfig solve_cfg = cfg;
    solve_cfg.criterion = Criterion::maximal;
    const int code = solve_utsp(solve_cfg, parsed.utsp(), parsed.kind,
                                instance_id_of(cfg.input_path), report);
    report.elapsed_ms = timer.ms();
    return code;
}

int run_oracle(const RunConfig& cfg, Report& report) {
    const Timer timer;
    const ParsedInstance parsed = load_instance_file(cfg.input_path);
    const std::string id = instance_id_of(cfg.input_path);
    const TspCaps caps = TspCaps::from_env();
    bool all_agree = true;

    auto push = [&](const oracle::OracleReport& r) {
        all_agree = all_agree && r.agreement;
        report.rows.push_back(ReportRow{id, std::string("oracle:") + r.subject, "",
                                        r.agreement ? "agree" : "DISAGREE", r.max_discrepancy, 0.0,
                                        r.cases_checked, cfg.seed, {}});
    };

    if (parsed.is_lpuu()) {
        const LpuuInstance& inst = parsed.lpuu();
        if (parsed.kind == UncertaintyKind::dist)
            throw ValidationError("oracle checks cover interval and crisp instances");
        push(oracle::prop1_check(inst));

        // Simplex vs basic-solution enumeration over the inner region.
        oracle::OracleReport lp_report;
        lp_report.subject = "lp_vertex";
        lp_report.cases_checked = 1;
        const Polyhedron inner = inner_polyhedron(inst);
        const LpOutcome fast = lp_solve(inner, normalized_objective(inst), Sense::maximize);
        const LpOutcome slow = oracle::lp_vertex_oracle(inner, normalized_objective(inst), Sense::maximize);
        lp_report.agreement = fast.status == slow.status;
        if (lp_report.agreement && fast.optimal()) {
            lp_report.max_discrepancy = std::abs(fast.value - slow.value);
            lp_report.agreement = lp_report.max_discrepancy <= 1e-6;
        }
        push(lp_report);
    } else {
        const UtspInstance& inst = parsed.utsp();
        if (parsed.kind == UncertaintyKind::dist) {
            const auto table = oracle::tour_enumeration_oracle(inst, caps);
            const auto fast = expected_optimal_tour(inst, cfg.tsp_method, caps);
            oracle::OracleReport r;
            r.subject = "expected_tour";
            r.cases_checked = static_cast<long>(table.rows.size());
            r.max_discrepancy = std::abs(fast.expected_length - *table.expected_length);
            r.agreement = fast.tour == *table.expected_tour && r.max_discrepancy <= 1e-6;
            push(r);
        } else {
            const auto table = oracle::tour_enumeration_oracle(inst, caps);
            const auto solved = solve_utsp_interval(inst, caps);
            oracle::OracleReport r;
            r.subject = "tour_enumeration";
            r.cases_checked = static_cast<long>(table.rows.size());
            r.max_discrepancy = std::abs(solved.maximin_value - table.v_star);
            r.agreement = solved.maximin_tour == table.maximin_tour &&
                          r.max_discrepancy <= 1e-6 &&
                          solved.hypograph_maximal == table.hypograph_maximal &&
                          solved.edge_level_maximal == table.edge_level_maximal;
            push(r);
            push(oracle::prop1_check(inst, caps));
        }
    }
    report.elapsed_ms = timer.ms();
    return all_agree ? kExitOk : kExitInfeasible;
}

} // namespace itsp::io
