#pragma once

// Batch front-end: problem-file ingestion, command dispatch, and reports.
//
// Exit codes:  0 = all certifications pass,  2 = a mathematical certification
// failed (with a report explaining where),  1 = input or usage error.
// Reports are byte-deterministic for a fixed input file and seed; --format
// selects between a human summary ("text") and the canonical JSON report.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json_io.hpp"

namespace laurel {

constexpr int exit_pass = 0;
constexpr int exit_usage = 1;
constexpr int exit_certification = 2;

struct CliOutcome {
    int exit_code = exit_pass;
    json report;
};

namespace cli_detail {

/// Effective options after CLI flags have been merged over the file's own.
struct Effective {
    std::optional<int> depth;
    bool checked = true;
    unsigned long long seed = 0;
    std::optional<std::vector<Scalar>> candidates;
    std::optional<int> degree;
};

inline Effective effective_options(const ProblemOptions& o) {
    Effective e;
    e.depth = o.depth;
    e.checked = o.checked.value_or(true);
    e.seed = o.seed.value_or(0);
    e.candidates = o.candidates;
    e.degree = o.degree;
    return e;
}

/// The complex a command operates on: the payload itself, or the output of
/// the generator payload (so generated problems can be analyzed in one step).
inline ComplexFamily working_complex(const ProblemFile& pf, const Effective& opt,
                                     const char* command) {
    if (pf.kind == PayloadKind::complex_family) return *pf.complex_payload;
    if (pf.kind == PayloadKind::generator)
        return generate_gauge_complex(opt.seed, *pf.generator_payload).complex;
    throw parse_error(std::string(command) + " needs a complex or generator payload");
}

inline json validation_json(const ValidationReport& rep, const char* kind) {
    json j = json::object();
    j["command"] = "validate";
    j["kind"] = kind;
    j["ok"] = rep.ok;
    j["exact_certificate"] = rep.exact_certificate;
    j["issues"] = rep.issues;
    return j;
}

}  // namespace cli_detail

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

inline CliOutcome cmd_validate(const ProblemFile& pf) {
    using namespace cli_detail;
    Effective opt = effective_options(pf.options);
    CliOutcome out;
    ValidationReport rep;
    const char* kind = "complex";
    switch (pf.kind) {
        case PayloadKind::complex_family:
            rep = validate_complex(*pf.complex_payload);
            break;
        case PayloadKind::indicial:
            kind = "indicial";
            rep = validate_indicial(*pf.indicial_payload);
            break;
        case PayloadKind::strip: {
            kind = "strip";
            rep = validate_indicial(pf.strip_payload->indicial);
            try {
                validate_strip(pf.strip_payload->config);
            } catch (const invariant_violation& e) {
                rep.fail(e.what());
            }
            break;
        }
        case PayloadKind::ibc:
            kind = "ibc";
            rep = validate_ibc(pf.ibc_payload->problem);
            break;
        case PayloadKind::generator: {
            kind = "generator";
            GeneratedComplex g = generate_gauge_complex(opt.seed, *pf.generator_payload);
            rep = validate_complex(g.complex);
            break;
        }
    }
    out.report = validation_json(rep, kind);
    out.exit_code = rep.ok ? exit_pass : exit_certification;
    return out;
}

// ---------------------------------------------------------------------------
// analyze: spectrum scan + per-point cohomology, pairing, nondegeneracy
// ---------------------------------------------------------------------------

inline CliOutcome cmd_analyze(const ProblemFile& pf) {
    using namespace cli_detail;
    Effective opt = effective_options(pf.options);
    ComplexFamily C = working_complex(pf, opt, "analyze");
    int m = C.length();
    if (m == 0) throw parse_error("analyze needs a complex with at least one map");
    if (!C.all_exact() && !opt.candidates)
        throw parse_error(
            "analyze on a truncated family needs an explicit candidate list "
            "(--candidates or options.candidates)");

    std::vector<int> degrees;
    if (opt.degree) {
        if (*opt.degree < 0 || *opt.degree >= m)
            throw parse_error("analyze degree must lie in [0, " + std::to_string(m - 1) + "]");
        degrees.push_back(*opt.degree);
    } else {
        for (int q = 0; q < m; ++q) degrees.push_back(q);
    }

    CliOutcome out;
    json jdegrees = json::array();
    bool all_pass = true;
    for (int q : degrees) {
        SpectrumReport sr = spectrum_scan(C, q, opt.candidates);
        json jq = spectrum_json(sr);
        json points = json::array();
        for (const SpectrumPoint& pt : sr.spectrum) {
            ComplexFamily Cq =
                pt.sigma0 == C.center ? C : recenter_complex(C, pt.sigma0);
            json jp = spectrum_point_json(pt);
            if (opt.depth) {
                CohomBasis window = cohomology_at(Cq, q, *opt.depth);
                jp["dim"] = window.dim;
                jp["depth"] = *opt.depth;
            }
            PairingMatrix pm = cohomology_pairing_matrix(Cq, q, opt.checked);
            NondegVerdict nv = certify_nondegenerate(pm);
            jp["pairing"] = pairing_json(pm);
            jp["pairing_det"] = to_string(nv.det_value);
            jp["nondegenerate"] = nv.pass;
            if (!nv.pass) {
                all_pass = false;
                if (nv.null_u) jp["null_class"] = qmat_json(*nv.null_u);
                else if (nv.null_v) jp["null_class"] = qmat_json(*nv.null_v);
            }
            points.push_back(std::move(jp));
        }
        jq["spectrum"] = std::move(points);
        jdegrees.push_back(std::move(jq));
    }
    out.report = json::object();
    out.report["command"] = "analyze";
    out.report["checked"] = opt.checked;
    out.report["degrees"] = std::move(jdegrees);
    out.report["pass"] = all_pass;
    out.exit_code = all_pass ? exit_pass : exit_certification;
    return out;
}

// ---------------------------------------------------------------------------
// reduce: recursive duality certification
// ---------------------------------------------------------------------------

inline CliOutcome cmd_reduce(const ProblemFile& pf) {
    using namespace cli_detail;
    Effective opt = effective_options(pf.options);
    ComplexFamily C = working_complex(pf, opt, "reduce");
    if (C.length() == 0) throw parse_error("reduce needs a complex with at least one map");
    int q = opt.degree.value_or(0);
    if (q < 0 || q >= C.length())
        throw parse_error("reduce degree must lie in [0, " + std::to_string(C.length() - 1) +
                          "]");
    Certificate cert = recursive_certify(C, q, opt.depth, opt.checked);
    CliOutcome out;
    out.report = json::object();
    out.report["command"] = "reduce";
    out.report["checked"] = opt.checked;
    out.report["certificate"] = certificate_json(cert);
    out.report["pass"] = cert.pass;
    out.exit_code = cert.pass ? exit_pass : exit_certification;
    return out;
}

// ---------------------------------------------------------------------------
// strip: adjoint pairing assembled over strip points
// ---------------------------------------------------------------------------

inline CliOutcome cmd_strip(const ProblemFile& pf) {
    if (pf.kind != PayloadKind::strip) throw parse_error("strip needs a strip payload");
    const StripProblem& sp = *pf.strip_payload;
    try {
        validate_strip(sp.config);
    } catch (const invariant_violation& e) {
        throw parse_error(std::string("invalid strip configuration: ") + e.what());
    }
    StripPairingResult res = strip_pairing(sp.indicial, sp.degree, sp.config, sp.u_sections,
                                           sp.v_sections);
    CliOutcome out;
    out.report = json::object();
    out.report["command"] = "strip";
    out.report["degree"] = sp.degree;
    out.report["gamma"] = to_string(sp.config.gamma);
    json pts = json::array();
    for (const Scalar& p : sp.config.points) pts.push_back(to_string(p));
    out.report["points"] = std::move(pts);
    json refl = json::array();
    for (const Scalar& p : res.reflected) refl.push_back(to_string(p));
    out.report["reflected"] = std::move(refl);
    out.report["per_point"] = qmat_json(res.per_point);
    out.report["total"] = to_string(res.total);
    out.report["pass"] = true;  // cross terms are certified to vanish during assembly
    out.exit_code = exit_pass;
    return out;
}

// ---------------------------------------------------------------------------
// ibc: containment verdicts, chart equations, quotient cohomology
// ---------------------------------------------------------------------------

inline CliOutcome cmd_ibc(const ProblemFile& pf) {
    if (pf.kind != PayloadKind::ibc) throw parse_error("ibc needs an ibc payload");
    const IBCPayload& pl = *pf.ibc_payload;
    CliOutcome out;
    out.report = json::object();
    out.report["command"] = "ibc";

    ValidationReport rep = validate_ibc(pl.problem);
    out.report["valid"] = rep.ok;
    out.report["issues"] = rep.issues;
    bool pass = rep.ok;

    if (rep.ok && !pl.problem.candidates.empty()) {
        IBCVerdict v = check_ibc(pl.problem);
        json jv = json::object();
        jv["pass"] = v.pass;
        if (!v.pass) {
            jv["failing_degree"] = v.failing_degree;
            if (v.witness_source) jv["witness_source"] = qmat_json(*v.witness_source);
            if (v.witness_image) jv["witness_image"] = qmat_json(*v.witness_image);
        }
        out.report["containment"] = std::move(jv);
        if (v.pass) {
            out.report["quotient_dims"] = quotient_cohomology(pl.problem);
        } else {
            pass = false;
        }
    }

    if (rep.ok && pl.charts) {
        ChartSystem sys =
            chart_equations_all(pl.problem, pl.charts->bases, pl.charts->target_dims);
        out.report["chart_system"] = chart_system_json(sys);
    }

    out.report["pass"] = pass;
    out.exit_code = pass ? exit_pass : exit_certification;
    return out;
}

// ---------------------------------------------------------------------------
// generate: seeded corpus complexes with exact expected cohomology
// ---------------------------------------------------------------------------

inline CliOutcome cmd_generate(const ProblemFile& pf) {
    using namespace cli_detail;
    if (pf.kind != PayloadKind::generator)
        throw parse_error("generate needs a generator payload");
    Effective opt = effective_options(pf.options);
    GeneratedComplex g = generate_gauge_complex(opt.seed, *pf.generator_payload);
    CliOutcome out;
    // The report is itself a valid problem file, ready for validate/analyze.
    out.report = json::object();
    out.report["version"] = 1;
    out.report["complex"] = complex_json(g.complex);
    out.report["ground_truth"] = g.ground_truth;
    json prov = json::object();
    prov["command"] = "generate";
    prov["seed"] = opt.seed;
    prov["profile"] = profile_json(*pf.generator_payload);
    out.report["provenance"] = std::move(prov);
    out.exit_code = exit_pass;
    return out;
}

// ---------------------------------------------------------------------------
// Text rendering of reports
// ---------------------------------------------------------------------------

namespace cli_detail {

inline std::string pass_str(bool b) { return b ? "PASS" : "FAIL"; }

inline std::string render_text(const json& r) {
    std::ostringstream os;
    std::string cmd = r.contains("command") ? r["command"].get<std::string>() : "";
    if (cmd == "validate") {
        os << "validate (" << r["kind"].get<std::string>()
           << "): " << pass_str(r["ok"].get<bool>());
        if (r["ok"].get<bool>())
            os << (r["exact_certificate"].get<bool>() ? " [exact certificate]"
                                                      : " [truncated certificate]");
        os << "\n";
        for (const auto& issue : r["issues"]) os << "  issue: " << issue.get<std::string>() << "\n";
    } else if (cmd == "analyze") {
        for (const auto& jq : r["degrees"]) {
            os << "degree " << jq["degree"].get<int>() << ": det(Laplacian) = "
               << jq["det_poly"].get<std::string>() << "\n";
            for (const auto& jp : jq["spectrum"])
                os << "  sigma0 = " << jp["sigma0"].get<std::string>() << ": dim "
                   << jp["dim"].get<int>() << " at depth " << jp["depth"].get<int>()
                   << ", pairing det = " << jp["pairing_det"].get<std::string>()
                   << ", nondegenerate: " << pass_str(jp["nondegenerate"].get<bool>()) << "\n";
            for (const auto& jp : jq["certified_zero"])
                os << "  sigma0 = " << jp["sigma0"].get<std::string>()
                   << ": certified zero at depth " << jp["depth"].get<int>() << "\n";
            for (const auto& ju : jq["unresolved"])
                os << "  unresolved factor (" << ju["factor"].get<std::string>()
                   << ")^" << ju["multiplicity"].get<int>() << "\n";
        }
        os << "analyze: " << pass_str(r["pass"].get<bool>()) << "\n";
    } else if (cmd == "reduce") {
        const json& c = r["certificate"];
        os << "degree " << c["degree"].get<int>() << ": direct dim "
           << c["dim_direct"].get<int>() << ", recursive dim " << c["dim_recursive"].get<int>()
           << ", levels " << c["levels"].size() << "\n";
        int k = 0;
        for (const auto& lev : c["levels"]) {
            os << "  level " << k++ << ": dim " << lev["dim"].get<int>() << ", corank "
               << lev["corank"].get<int>() << ", sigma ranks [";
            bool first = true;
            for (const auto& rk : lev["sigma_power_ranks"]) {
                if (!first) os << ", ";
                os << rk.get<int>();
                first = false;
            }
            os << "]\n";
        }
        if (c.contains("failure")) os << "  failure: " << c["failure"].get<std::string>() << "\n";
        os << "reduce: " << pass_str(r["pass"].get<bool>()) << "\n";
    } else if (cmd == "strip") {
        os << "strip pairing at degree " << r["degree"].get<int>() << ", gamma = "
           << r["gamma"].get<std::string>() << "\n";
        os << "  points:";
        for (const auto& p : r["points"]) os << " " << p.get<std::string>();
        os << "\n  reflected:";
        for (const auto& p : r["reflected"]) os << " " << p.get<std::string>();
        os << "\n  total = " << r["total"].get<std::string>() << "\n";
        os << "strip: " << pass_str(r["pass"].get<bool>()) << "\n";
    } else if (cmd == "ibc") {
        os << "structural validation: " << pass_str(r["valid"].get<bool>()) << "\n";
        for (const auto& issue : r["issues"]) os << "  issue: " << issue.get<std::string>() << "\n";
        if (r.contains("containment")) {
            const json& cv = r["containment"];
            os << "containment: " << pass_str(cv["pass"].get<bool>());
            if (!cv["pass"].get<bool>())
                os << " at degree " << cv["failing_degree"].get<int>();
            os << "\n";
        }
        if (r.contains("quotient_dims")) {
            os << "quotient cohomology dims:";
            for (const auto& d : r["quotient_dims"]) os << " " << d.get<int>();
            os << "\n";
        }
        if (r.contains("chart_system")) {
            const json& cs = r["chart_system"];
            os << "chart variables (" << cs["n_vars"].get<int>() << "):";
            for (const auto& v : cs["variables"]) os << " " << v.get<std::string>();
            os << "\n";
            for (const auto& eq : cs["equations"])
                os << "  [deg " << eq["source_degree"].get<int>() << "] "
                   << eq["text"].get<std::string>() << " = 0\n";
        }
        os << "ibc: " << pass_str(r["pass"].get<bool>()) << "\n";
    } else {
        // generate (and anything else file-shaped) renders as canonical JSON
        os << r.dump(2) << "\n";
    }
    return os.str();
}

}  // namespace cli_detail

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

inline CliOutcome run_command(const std::string& command, const ProblemFile& pf) {
    if (command == "validate") return cmd_validate(pf);
    if (command == "analyze") return cmd_analyze(pf);
    if (command == "reduce") return cmd_reduce(pf);
    if (command == "strip") return cmd_strip(pf);
    if (command == "ibc") return cmd_ibc(pf);
    if (command == "generate") return cmd_generate(pf);
    throw parse_error("unknown command: " + command);
}

/// Full front-end: reads the problem file (or stdin for "-"), merges flag
/// overrides over the file's options, runs the command, and prints the report
/// in the requested format.  Returns the process exit code.
inline int run_cli(const std::string& command, const std::string& path,
                   const ProblemOptions& overrides, const std::string& format,
                   std::ostream& out, std::ostream& err) {
    try {
        std::string text;
        if (path == "-") {
            std::ostringstream ss;
            ss << std::cin.rdbuf();
            text = ss.str();
        } else {
            std::ifstream in(path);
            if (!in) throw parse_error("cannot open input file: " + path);
            std::ostringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        ProblemFile pf = problem_from_string(text);
        if (overrides.depth) pf.options.depth = overrides.depth;
        if (overrides.checked) pf.options.checked = overrides.checked;
        if (overrides.seed) pf.options.seed = overrides.seed;
        if (overrides.degree) pf.options.degree = overrides.degree;
        if (overrides.candidates) pf.options.candidates = overrides.candidates;

        CliOutcome res = run_command(command, pf);
        if (format == "json")
            out << res.report.dump(2) << "\n";
        else
            out << cli_detail::render_text(res.report);
        return res.exit_code;
    } catch (const parse_error& e) {
        err << "input error: " << e.what() << "\n";
        return exit_usage;
    } catch (const shape_mismatch& e) {
        err << "input error: " << e.what() << "\n";
        return exit_usage;
    } catch (const center_mismatch& e) {
        err << "input error: " << e.what() << "\n";
        return exit_usage;
    } catch (const insufficient_truncation& e) {
        err << "input error: " << e.what() << "\n";
        return exit_usage;
    } catch (const invariant_violation& e) {
        err << "certification failure: " << e.what() << "\n";
        return exit_certification;
    } catch (const singular_input& e) {
        err << "certification failure: " << e.what() << "\n";
        return exit_certification;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

/// Parse a comma-separated list of exact scalars (for --candidates).
inline std::vector<Scalar> parse_candidate_list(const std::string& text) {
    std::vector<Scalar> out;
    std::string cur;
    std::istringstream ss(text);
    while (std::getline(ss, cur, ',')) {
        if (cur.empty()) continue;
        out.push_back(parse_scalar(cur));
    }
    return out;
}

}  // namespace laurel
