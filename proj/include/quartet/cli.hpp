#pragma once

// The command layer behind tools/quartet: each command builds a JSON report
// and renders it as JSON or as an aligned key/value table.

#include <optional>
#include <ostream>
#include <string>

#include "quartet/identities.hpp"
#include "quartet/io.hpp"

namespace quartet::cli {

enum class Command { Invariants, Hyperdet, Canonical, Tetrahedron, Classify3, Verify };
enum class Mode { Float, Exact };
enum class Output { Json, Table };

struct RunConfig {
    Command command = Command::Invariants;
    std::optional<std::string> input_path;
    uint64_t seed = 7;
    int trials = 1000;
    double tolerance = 1e-9;
    double d4_tolerance = 1e-6;
    Mode mode = Mode::Float;
    Output output = Output::Json;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInput = 3;

inline std::string_view command_name(Command c) {
    switch (c) {
        case Command::Invariants: return "invariants";
        case Command::Hyperdet: return "hyperdet";
        case Command::Canonical: return "canonical";
        case Command::Tetrahedron: return "tetrahedron";
        case Command::Classify3: return "classify3";
        case Command::Verify: return "verify";
    }
    return "?";
}

/// Raised for a failed check; the partial report is still printed.
struct CheckFailure : std::runtime_error {
    Json report;
    CheckFailure(const std::string &what, Json r) : std::runtime_error(what), report(std::move(r)) {}
};

// ---------------------------------------------------------------------------
// Report builders.

template <Scalar S>
Json invariants_json(const InvariantSet<S> &inv) {
    return Json{{"I1", to_json(inv.I1)},     {"I2", to_json(inv.I2)},     {"I3", to_json(inv.I3)},
                {"I4", to_json(inv.I4)},     {"H", to_json(inv.H)},       {"L", to_json(inv.L)},
                {"M", to_json(inv.M)},       {"N", to_json(inv.N)},       {"U", to_json(inv.U)},
                {"D_xy", to_json(inv.D_xy)}, {"D_zt", to_json(inv.D_zt)}, {"D_xz", to_json(inv.D_xz)},
                {"D_yt", to_json(inv.D_yt)}, {"D_xt", to_json(inv.D_xt)}, {"D_yz", to_json(inv.D_yz)},
                {"D", to_json(inv.D)}};
}

template <Scalar S>
Json invariants_report(const FourQubitState<S> &z, const RunConfig &cfg) {
    try {
        return Json{{"invariants", invariants_json(full_invariant_set(z, cfg.tolerance))}};
    } catch (const InvariantCheckError &e) {
        throw CheckFailure(e.what(), Json{{"invariants", invariants_json(compute_invariants(z))},
                                          {"failed_relation", e.relation()},
                                          {"error", e.error()}});
    }
}

template <Scalar S>
Json hyperdet_json(const HyperdetReport<S> &r) {
    return Json{{"d4_st", to_json(r.d4_st)},
                {"d4_quartic", to_json(r.d4_quartic)},
                {"d4_schlaefli", to_json(r.d4_schlaefli)},
                {"consensus", r.consensus ? to_json(*r.consensus) : Json(nullptr)},
                {"max_relative_spread", r.max_relative_spread},
                {"S", to_json(r.S_)},
                {"T", to_json(r.T)},
                {"U", to_json(r.U)},
                {"V", to_json(r.V)}};
}

template <Scalar S>
Json hyperdet_report(const FourQubitState<S> &z, const RunConfig &cfg) {
    try {
        return Json{{"hyperdet", hyperdet_json(hyperdeterminant_report(z, cfg.d4_tolerance))}};
    } catch (const RouteDisagreement<S> &e) {
        throw CheckFailure(e.what(), Json{{"hyperdet", hyperdet_json(e.report())}});
    } catch (const IllConditionedPencil &e) {
        throw CheckFailure(e.what(), Json{{"pencil_residual", e.residual()}});
    }
}

inline Json recovery_json(const ParameterRecovery &r) {
    Json roots = Json::array();
    for (size_t i = 0; i < r.roots.size(); ++i) {
        roots.push_back(Json{{"value", to_json(r.roots[i])}, {"multiplicity", r.multiplicity[i]}});
    }
    Json candidates = Json::array();
    for (const auto &c : r.candidates) {
        candidates.push_back(Json{{"a", to_json(c.a)}, {"b", to_json(c.b)}, {"c", to_json(c.c)}, {"d", to_json(c.d)}});
    }
    return Json{{"roots", roots},
                {"multiplicity_pattern", r.pattern},
                {"degenerate", r.degenerate},
                {"candidates", candidates}};
}

template <Scalar S>
Json canonical_report(const FourQubitState<S> &z, const RunConfig &) {
    const InvariantSet<S> inv = compute_invariants(z);
    Json out{{"invariants", Json{{"I1", to_json(inv.I1)},
                                 {"I2", to_json(inv.I2)},
                                 {"I3", to_json(inv.I3)},
                                 {"I4", to_json(inv.I4)}}}};
    if constexpr (is_exact_v<S>) {
        const auto ex = recover_parameters_exact(inv);
        Json roots = nullptr, params = nullptr;
        if (ex.roots) {
            roots = Json::array();
            for (const auto &x : *ex.roots) roots.push_back(to_json(x));
        }
        if (ex.parameters) {
            const auto &p = *ex.parameters;
            params = Json{{"a", to_json(p.a)}, {"b", to_json(p.b)}, {"c", to_json(p.c)}, {"d", to_json(p.d)}};
        }
        out["exact"] = Json{{"multiplicity_pattern", ex.pattern}, {"roots", roots}, {"parameters", params}};
    }
    out["recovery"] = recovery_json(recover_parameters(inv));
    return out;
}

template <Scalar S>
Json tetrahedron_report_json(const FourQubitState<S> &z, const RunConfig &cfg) {
    const auto r = tetrahedron_report(z, cfg.tolerance);
    Json incidence = Json::array();
    for (const auto &row : r.incidence) incidence.push_back(Json(row));
    return Json{{"tetrahedron", Json{{"point_rank", r.point_rank},
                                     {"vanishing_lines", r.vanishing_lines},
                                     {"vanishing_planes", r.vanishing_planes},
                                     {"line_labels", kLineLabels},
                                     {"incidence", incidence},
                                     {"degenerate", r.degenerate}}}};
}

template <Scalar S>
Json classify3_report(const ThreeQubitState<S> &z, const RunConfig &) {
    const auto r = classify_three_qubit(z);
    return Json{{"class", std::string(to_string(r.cls))},
                {"xx", to_json(r.xx)},
                {"xy", to_json(r.xy)},
                {"yy", to_json(r.yy)},
                {"discriminant", to_json(r.discriminant)},
                {"det3", to_json(det3(z))}};
}

template <Scalar S>
Json verify_report(const RunConfig &cfg) {
    VerifyTolerances tol;
    tol.identity = cfg.tolerance;
    tol.d4 = cfg.d4_tolerance;
    const IdentityTally tally = run_verify<S>(cfg.trials, cfg.seed, tol);

    // The opposite-sign form of U is reported but excluded from the exit status.
    IdentityTally opposite;
    for (int t = 0; t < std::min(cfg.trials, 10); ++t) {
        const uint64_t s = cfg.seed * 1000003ULL + static_cast<uint64_t>(t);
        if constexpr (is_exact_v<S>) {
            opposite.add(opposite_sign_u_relation(compute_invariants(random_rational_state(s))), 0.0);
        } else {
            opposite.add(opposite_sign_u_relation(compute_invariants(random_state(s, true))), cfg.tolerance);
        }
    }

    Json ids = Json::array();
    for (const auto &s : tally.stats()) {
        ids.push_back(Json{{"identity", s.name},
                           {"pass", s.passed()},
                           {"worst_error", s.worst_error},
                           {"tolerance", s.tolerance},
                           {"checks", s.checks},
                           {"failures", s.failures}});
    }
    const auto &p = opposite.stats().front();
    Json out{{"trials", cfg.trials},
             {"seed", cfg.seed},
             {"identities", ids},
             {"all_passed", tally.all_passed()},
             {"notes", Json::array({Json{{"identity", p.name},
                                         {"holds", p.passed()},
                                         {"worst_error", p.worst_error},
                                         {"consistent_form", "U = 6(I2 - I4)"}}})}};
    if (!tally.all_passed()) throw CheckFailure("identity suite failed", out);
    return out;
}

// ---------------------------------------------------------------------------
// Rendering.

inline std::string scalar_cell(const Json &v) {
    if (v.is_array() && v.size() == 2 && v[0].is_primitive() && v[1].is_primitive()) {
        auto part = [](const Json &x) { return x.is_string() ? x.get<std::string>() : format_number(x.get<double>()); };
        return part(v[0]) + " " + part(v[1]) + "i";
    }
    if (v.is_number_float()) return format_number(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

/// Arrays of flat objects sharing keys render as column tables.
inline bool is_record_array(const Json &j) {
    if (!j.is_array() || j.empty() || !j[0].is_object()) return false;
    return std::all_of(j.begin(), j.end(), [&](const Json &e) {
        if (!e.is_object() || e.size() != j[0].size()) return false;
        auto k = j[0].begin();
        for (auto it = e.begin(); it != e.end(); ++it, ++k) {
            if (it.key() != k.key() || it.value().is_object()) return false;
        }
        return true;
    });
}

inline std::string render_records(const Json &j) {
    std::vector<std::vector<std::string>> cells(1);
    for (auto it = j[0].begin(); it != j[0].end(); ++it) cells[0].push_back(it.key());
    for (const auto &e : j) {
        cells.emplace_back();
        for (auto it = e.begin(); it != e.end(); ++it) cells.back().push_back(scalar_cell(it.value()));
    }
    std::vector<size_t> width(cells[0].size(), 0);
    for (const auto &row : cells) {
        for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::string out;
    for (const auto &row : cells) {
        out += "  ";
        for (size_t c = 0; c < row.size(); ++c) {
            out += row[c];
            if (c + 1 < row.size()) out += std::string(width[c] - row[c].size() + 2, ' ');
        }
        out += "\n";
    }
    return out;
}

using TableRow = std::pair<std::string, std::string>;

inline void flatten(const Json &j, const std::string &prefix, std::vector<TableRow> &rows) {
    const bool complex_pair = j.is_array() && j.size() == 2 && j[0].is_primitive() && j[1].is_primitive() &&
                              !j[0].is_boolean() && !j[0].is_null();
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
        }
    } else if (is_record_array(j)) {
        rows.emplace_back(prefix, "\n" + render_records(j));
    } else if (j.is_array() && !complex_pair && !std::all_of(j.begin(), j.end(), [](const Json &e) {
                   return e.is_primitive();
               })) {
        for (size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    } else {
        rows.emplace_back(prefix, scalar_cell(j));
    }
}

inline std::string render_table(const Json &report) {
    std::vector<TableRow> rows;
    flatten(report, "", rows);
    size_t width = 0;
    for (const auto &r : rows) {
        if (r.second.empty() || r.second[0] != '\n') width = std::max(width, r.first.size());
    }
    std::string out;
    for (const auto &[k, v] : rows) {
        if (!v.empty() && v[0] == '\n') {
            out += k + ":" + v;
        } else {
            out += k + std::string(width - k.size() + 2, ' ') + v + "\n";
        }
    }
    return out;
}

inline void emit(const Json &report, const RunConfig &cfg, std::ostream &out) {
    if (cfg.output == Output::Json) {
        out << dump_json(report) << "\n";
    } else {
        out << render_table(report);
    }
}

// ---------------------------------------------------------------------------

template <Scalar S>
Json dispatch(const RunConfig &cfg) {
    const std::string_view mode = is_exact_v<S> ? "exact" : "float";
    Json head{{"command", std::string(command_name(cfg.command))}, {"mode", std::string(mode)}};
    auto with_head = [&](Json body) {
        Json r = head;
        for (auto it = body.begin(); it != body.end(); ++it) r[it.key()] = it.value();
        return r;
    };
    try {
        if (cfg.command == Command::Verify) return with_head(verify_report<S>(cfg));

        const AnyState<S> state = read_state_file<S>(*cfg.input_path);
        if (cfg.command == Command::Classify3) {
            const auto *z3 = std::get_if<ThreeQubitState<S>>(&state);
            if (!z3) throw StateFormatError("classify3 needs a three-qubit state (\"n\": 3)");
            return with_head(classify3_report(*z3, cfg));
        }
        const auto *z = std::get_if<FourQubitState<S>>(&state);
        if (!z) throw StateFormatError(std::string(command_name(cfg.command)) + " needs a four-qubit state (\"n\": 4)");
        switch (cfg.command) {
            case Command::Invariants: return with_head(invariants_report(*z, cfg));
            case Command::Hyperdet: return with_head(hyperdet_report(*z, cfg));
            case Command::Canonical: return with_head(canonical_report(*z, cfg));
            case Command::Tetrahedron: return with_head(tetrahedron_report_json(*z, cfg));
            default: break;
        }
    } catch (CheckFailure &f) {
        f.report = with_head(std::move(f.report));
        throw;
    }
    throw std::logic_error("unhandled command");
}

/// Validates the configuration, runs one command and prints its report.
/// Returns 0 on success, 1 on a failed check, 2 on bad arguments and 3 on
/// unreadable or malformed input.
inline int run(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    if (cfg.trials < 1) {
        err << "error: --trials must be at least 1\n";
        return kExitUsage;
    }
    if (!(cfg.tolerance > 0) || !(cfg.d4_tolerance > 0)) {
        err << "error: tolerances must be positive\n";
        return kExitUsage;
    }
    if (cfg.command != Command::Verify && !cfg.input_path) {
        err << "error: " << command_name(cfg.command) << " needs an input state file\n";
        return kExitUsage;
    }
    try {
        const Json report = cfg.mode == Mode::Exact ? dispatch<GaussianRational>(cfg) : dispatch<Complex>(cfg);
        emit(report, cfg, out);
        return kExitOk;
    } catch (const CheckFailure &f) {
        emit(f.report, cfg, out);
        err << "check failed: " << f.what() << "\n";
        return kExitCheckFailed;
    } catch (const StateFormatError &e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    }
}

}  // namespace quartet::cli
