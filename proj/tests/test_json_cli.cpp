#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "laurel/cli.hpp"

using namespace laurel;

namespace {
Scalar S(long re, long im = 0) { return Scalar(Rat(re), Rat(im)); }
Series mono(int exp, long coeff = 1) { return Series::monomial(S(0), S(coeff), exp); }

std::filesystem::path fixture_dir() {
    auto dir = std::filesystem::temp_directory_path() / "laurel_cli_fixtures";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_fixture(const std::string& name, const std::string& text) {
    auto p = fixture_dir() / name;
    std::ofstream f(p);
    f << text;
    f.close();
    return p.string();
}

struct CliRun {
    int code;
    std::string out;
    std::string err;
    json report;  // parsed when format was json and out is nonempty
};

CliRun cli(const std::string& command, const std::string& path,
           const ProblemOptions& overrides = {}, const std::string& format = "json") {
    std::ostringstream out, err;
    CliRun r;
    r.code = run_cli(command, path, overrides, format, out, err);
    r.out = out.str();
    r.err = err.str();
    if (format == "json" && !r.out.empty() && r.out[0] == '{')
        r.report = json::parse(r.out);
    return r;
}

const char* e1_text = R"({
  "version": 1,
  "complex": {
    "center": "0",
    "order": null,
    "dims": [1, 1],
    "maps": [ [ [ {"valuation": 1, "order": null, "coeffs": ["1"]} ] ] ]
  }
})";

const char* bad_text = R"({
  "version": 1,
  "complex": {
    "center": "0",
    "order": null,
    "dims": [1, 1, 1],
    "maps": [
      [ [ {"valuation": 0, "order": null, "coeffs": ["1"]} ] ],
      [ [ {"valuation": 0, "order": null, "coeffs": ["1"]} ] ]
    ]
  }
})";

const char* jordan_text = R"({
  "version": 1,
  "complex": {
    "center": "0",
    "order": null,
    "dims": [2, 2],
    "maps": [ [
      [ {"valuation": 1, "order": null, "coeffs": ["1"]}, {"valuation": 0, "order": null, "coeffs": ["1"]} ],
      [ {"valuation": 0, "order": null, "coeffs": []},    {"valuation": 1, "order": null, "coeffs": ["1"]} ]
    ] ]
  }
})";

const char* ibc_text = R"({
  "version": 1,
  "ibc": {
    "dims": [2, 2],
    "maps": [ [ ["0", "1"], ["0", "0"] ] ],
    "candidates": [ [ ["1"], ["0"] ], [ ["1"], ["0"] ] ],
    "charts": {
      "bases": [ [ ["1","0"], ["0","1"] ], [ ["1","0"], ["0","1"] ] ],
      "target_dims": [1, 1]
    }
  }
})";

const char* gen_text = R"({
  "version": 1,
  "generator": {
    "dims": [2, 3, 1],
    "blocks": [
      {"degree": 0, "exponent": 2},
      {"degree": 0, "exponent": 1},
      {"degree": 1, "exponent": 3}
    ],
    "gauge_degree": 1,
    "with_grams": true,
    "center": "0"
  },
  "options": {"seed": 7}
})";

const char* strip_text = R"({
  "version": 1,
  "strip": {
    "indicial": {
      "dims": [1, 1],
      "bP": [ [ ["1"] ] ],
      "Lambda": [ [ ["0"] ] ],
      "gamma": "1/2",
      "anchor_degree": 0
    },
    "config": { "gamma": "1/2", "points": ["0", "1/4*i"] },
    "degree": 0,
    "u_sections": [ null, null ],
    "v_sections": [ null, null ]
  }
})";

const char* truncated_text = R"({
  "version": 1,
  "complex": {
    "center": "0",
    "order": null,
    "dims": [1, 1],
    "maps": [ [ [ {"valuation": 1, "order": 3, "coeffs": ["1"]} ] ] ]
  }
})";
}  // namespace

TEST_CASE("serialization round trips") {
    SECTION("scalars") {
        for (const Scalar& s : {S(0), S(1), S(-3), S(0, 1), S(0, -1), Scalar(Rat(1, 2), Rat(-3, 4))})
            CHECK(scalar_from_json(scalar_json(s), "t") == s);
    }
    SECTION("series, exact and truncated") {
        Series exact = Series::poly(S(1, 1), {S(2), S(0), S(0, -5)});
        json je = series_json(exact);
        CHECK(series_json(series_from_json(je, S(1, 1), "t")) == je);
        Series trunc = Series::make(S(0), -2, 1, {S(1), S(2), S(3), S(4)}, false);
        json jt = series_json(trunc);
        CHECK(series_json(series_from_json(jt, S(0), "t")) == jt);
    }
    SECTION("matrices") {
        QMat m(2, 3);
        m.at(0, 0) = S(1);
        m.at(0, 2) = Scalar(Rat(1, 2), Rat(7));
        m.at(1, 1) = S(0, -1);
        json j = qmat_json(m);
        CHECK(qmat_json(qmat_from_json(j, "t")) == j);
    }
    SECTION("map families") {
        SMat A(2, 2, S(0, 1), true);
        A.at(0, 0) = Series::monomial(S(0, 1), S(1), 1);
        A.at(1, 1) = Series::poly(S(0, 1), {S(3), S(0, -2)});
        json j = smat_json(A);
        CHECK(smat_json(smat_from_json(j, "t")) == j);
    }
    SECTION("whole complexes with inner products") {
        SMat P0(1, 1, S(0), true);
        P0.at(0, 0) = mono(1);
        QMat g0 = QMat::identity(1), g1 = QMat::identity(1);
        g1.at(0, 0) = S(2);
        ComplexFamily C = make_complex(S(0), {1, 1}, {P0}, std::vector<QMat>{g0, g1});
        json j = complex_json(C);
        CHECK(complex_json(complex_from_json(j, "t")) == j);
    }
    SECTION("log sections and strip configurations") {
        LogSection u = LogSection::zero(Scalar(Rat(1, 3), Rat(2, 5)), 2, 3);
        u.coeffs[0].at(0, 0) = S(1, -1);
        u.coeffs[2].at(1, 0) = Scalar(Rat(22, 7), Rat(0));
        json j = log_section_json(u);
        CHECK(log_section_json(log_section_from_json(j, "t")) == j);
        StripConfig cfg;
        cfg.gamma = Rat(2, 3);
        cfg.points = {S(0), Scalar(Rat(1, 2), Rat(1, 6))};
        json jc = strip_config_json(cfg);
        CHECK(strip_config_json(strip_config_from_json(jc, "t")) == jc);
    }
    SECTION("indicial and boundary-condition payloads") {
        IndicialInput in;
        in.dims = {2, 1};
        in.bP = {QMat(1, 2)};
        in.bP[0].at(0, 0) = S(1);
        in.Lambda = {QMat(1, 2)};
        in.Lambda[0].at(0, 1) = S(1);
        in.gamma = Rat(3, 4);
        json j = indicial_json(in);
        CHECK(indicial_json(indicial_from_json(j, "t")) == j);

        IBCProblem p;
        p.dims = {2, 2};
        QMat a(2, 2);
        a.at(0, 1) = S(1);
        p.maps = {a};
        QMat e1col(2, 1);
        e1col.at(0, 0) = S(1);
        p.candidates = {e1col, e1col};
        json jp = ibc_json(p);
        CHECK(ibc_json(ibc_from_json(jp, "t")) == jp);
    }
    SECTION("generator profiles") {
        GaugeProfile prof;
        prof.dims = {2, 3, 1};
        prof.blocks = {{0, 2}, {1, 1}};
        prof.gauge_degree = 2;
        prof.with_grams = true;
        prof.center = S(1, 1);
        json j = profile_json(prof);
        CHECK(profile_json(profile_from_json(j, "t")) == j);
    }
}

TEST_CASE("problem files are parsed strictly") {
    CHECK_THROWS_AS(problem_from_string("not json"), parse_error);
    CHECK_THROWS_AS(problem_from_string(R"({"version": 2, "complex": {}})"), parse_error);
    CHECK_THROWS_AS(problem_from_string(R"({"version": 1})"), parse_error);
    // two payloads at once
    std::string both = R"({
      "version": 1,
      "complex": {"center": "0", "dims": [1], "maps": []},
      "ibc": {"dims": [1], "maps": [], "candidates": []}
    })";
    CHECK_THROWS_AS(problem_from_string(both), parse_error);
    // minimal well-formed single-space complex
    ProblemFile pf = problem_from_string(R"({"version":1,"complex":{"center":"0","dims":[1],"maps":[]}})");
    CHECK(pf.kind == PayloadKind::complex_family);
    CHECK(pf.complex_payload->length() == 0);
}

TEST_CASE("validate command") {
    std::string e1 = write_fixture("e1.json", e1_text);
    auto ok = cli("validate", e1);
    CHECK(ok.code == exit_pass);
    CHECK(ok.report["ok"] == true);
    CHECK(ok.report["exact_certificate"] == true);

    std::string bad = write_fixture("bad.json", bad_text);
    auto fail = cli("validate", bad);
    CHECK(fail.code == exit_certification);
    CHECK(fail.report["ok"] == false);
    CHECK_FALSE(fail.report["issues"].empty());

    std::string junk = write_fixture("junk.json", "not json");
    auto usage = cli("validate", junk);
    CHECK(usage.code == exit_usage);
    CHECK(usage.err.find("input error") != std::string::npos);

    auto missing = cli("validate", (fixture_dir() / "does_not_exist.json").string());
    CHECK(missing.code == exit_usage);

    std::ostringstream out, err;
    CHECK(run_cli("frobnicate", e1, {}, "json", out, err) == exit_usage);
}

TEST_CASE("analyze command: frozen reports") {
    std::string e1 = write_fixture("e1.json", e1_text);
    auto r = cli("analyze", e1);
    REQUIRE(r.code == exit_pass);
    CHECK(r.report["pass"] == true);
    REQUIRE(r.report["degrees"].size() == 1);
    const json& d0 = r.report["degrees"][0];
    CHECK(d0["det_poly"] == "(1)*t^2");
    REQUIRE(d0["spectrum"].size() == 1);
    const json& pt = d0["spectrum"][0];
    CHECK(pt["sigma0"] == "0");
    CHECK(pt["dim"] == 1);
    CHECK(pt["pairing_det"] == "1*i");
    CHECK(pt["nondegenerate"] == true);

    std::string jordan = write_fixture("jordan.json", jordan_text);
    auto rj = cli("analyze", jordan);
    REQUIRE(rj.code == exit_pass);
    const json& jpt = rj.report["degrees"][0]["spectrum"][0];
    CHECK(jpt["dim"] == 2);
    CHECK(jpt["pairing_det"] == "-1");

    // text rendering carries the same verdict
    auto rt = cli("analyze", e1, {}, "text");
    CHECK(rt.code == exit_pass);
    CHECK(rt.out.find("analyze: PASS") != std::string::npos);
    CHECK(rt.out.find("pairing det = 1*i") != std::string::npos);
}

TEST_CASE("analyze command: flags and usage errors") {
    std::string e1 = write_fixture("e1.json", e1_text);
    ProblemOptions depth3;
    depth3.depth = 3;
    auto r = cli("analyze", e1, depth3);
    REQUIRE(r.code == exit_pass);
    CHECK(r.report["degrees"][0]["spectrum"][0]["depth"] == 3);

    std::string tiny = write_fixture("tiny.json",
                                     R"({"version":1,"complex":{"center":"0","dims":[1],"maps":[]}})");
    CHECK(cli("validate", tiny).code == exit_pass);
    CHECK(cli("analyze", tiny).code == exit_usage);  // no map to analyze

    std::string trunc = write_fixture("trunc.json", truncated_text);
    CHECK(cli("analyze", trunc).code == exit_usage);  // needs explicit candidates
    ProblemOptions cands;
    cands.candidates = std::vector<Scalar>{S(5)};
    auto rc = cli("analyze", trunc, cands);
    CHECK(rc.code == exit_pass);
    CHECK(rc.report["degrees"][0]["spectrum"].empty());

    ProblemOptions deg;
    deg.degree = 9;
    CHECK(cli("analyze", e1, deg).code == exit_usage);
}

TEST_CASE("reduce command") {
    std::string jordan = write_fixture("jordan.json", jordan_text);
    auto r = cli("reduce", jordan);
    REQUIRE(r.code == exit_pass);
    CHECK(r.report["pass"] == true);
    const json& cert = r.report["certificate"];
    CHECK(cert["degree"] == 0);
    CHECK(cert["dim_direct"] == 2);
    CHECK(cert["dim_recursive"] == 2);
    REQUIRE(cert["levels"].size() == 3);
    CHECK(cert["levels"][0]["dim"] == 2);
    CHECK(cert["levels"][1]["dim"] == 1);
    CHECK(cert["levels"][2]["dim"] == 0);

    auto rt = cli("reduce", jordan, {}, "text");
    CHECK(rt.out.find("reduce: PASS") != std::string::npos);
}

TEST_CASE("strip command") {
    std::string strip = write_fixture("strip.json", strip_text);
    auto r = cli("strip", strip);
    REQUIRE(r.code == exit_pass);
    CHECK(r.report["total"] == "0");
    CHECK(r.report["reflected"].size() == 2);
    CHECK(r.report["reflected"][0] == "0");

    std::string e1 = write_fixture("e1.json", e1_text);
    CHECK(cli("strip", e1).code == exit_usage);  // wrong payload kind
}

TEST_CASE("ibc command") {
    std::string ibc = write_fixture("ibc.json", ibc_text);
    auto r = cli("ibc", ibc);
    REQUIRE(r.code == exit_pass);
    CHECK(r.report["valid"] == true);
    CHECK(r.report["containment"]["pass"] == true);
    CHECK(r.report["quotient_dims"] == std::vector<int>({1, 1}));
    const json& cs = r.report["chart_system"];
    CHECK(cs["n_vars"] == 2);
    REQUIRE(cs["equations"].size() == 1);
    CHECK(cs["equations"][0]["text"] == "-x_2_1*y_2_1");

    auto rt = cli("ibc", ibc, {}, "text");
    CHECK(rt.out.find("ibc: PASS") != std::string::npos);
    CHECK(rt.out.find("-x_2_1*y_2_1 = 0") != std::string::npos);
}

TEST_CASE("generate command: determinism, seed override, pipe-back") {
    std::string gen = write_fixture("gen.json", gen_text);
    auto a = cli("generate", gen);
    auto b = cli("generate", gen);
    REQUIRE(a.code == exit_pass);
    CHECK(a.out == b.out);  // byte-identical reports
    CHECK(a.report["provenance"]["seed"] == 7);
    CHECK(a.report["complex"]["dims"] == std::vector<int>({2, 3, 1}));
    CHECK(a.report["ground_truth"] == std::vector<int>({3, 3, 0}));
    CHECK(a.report["complex"].contains("gram"));

    ProblemOptions seed42;
    seed42.seed = 42;
    auto c = cli("generate", gen, seed42);
    CHECK(c.report["provenance"]["seed"] == 42);
    CHECK(c.out != a.out);

    // the report is itself a problem file: validate and analyze it
    std::string back = write_fixture("gen_back.json", c.out);
    auto v = cli("validate", back);
    CHECK(v.code == exit_pass);
    CHECK(v.report["exact_certificate"] == true);
    ProblemFile pf = problem_from_string(c.out);
    REQUIRE(pf.kind == PayloadKind::complex_family);
    for (int q = 0; q <= 2; ++q)
        CHECK(stabilized_cohomology(*pf.complex_payload, q).dim ==
              c.report["ground_truth"][static_cast<std::size_t>(q)].get<int>());
}
