#pragma once

// JSON serialization for problems and reports.
//
// Every scalar is written as an exact string ("a/b+c/d*i") so downstream
// tooling never parses floats, and objects use insertion-ordered keys so a
// fixed input always produces byte-identical output.  The schemas are
// documented in docs/formats.md.
//
// Requires the single-header nlohmann json (vendor/json.hpp).

#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "complex_family.hpp"
#include "generator.hpp"
#include "germ_cohom.hpp"
#include "ibc.hpp"
#include "indicial.hpp"
#include "mellin.hpp"
#include "pairing.hpp"
#include "polyroots.hpp"
#include "reduction.hpp"
#include "spectrum.hpp"

namespace laurel {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Hashing (provenance fingerprints in reports)
// ---------------------------------------------------------------------------

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

// ---------------------------------------------------------------------------
// Field access helpers (all schema violations become parse_error)
// ---------------------------------------------------------------------------

namespace jdetail {

inline const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw parse_error(where + " must be an object");
    auto it = j.find(key);
    if (it == j.end()) throw parse_error(where + " is missing field '" + key + "'");
    return *it;
}

inline const json* field_opt(const json& j, const char* key) {
    if (!j.is_object()) return nullptr;
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return nullptr;
    return &*it;
}

inline int as_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw parse_error(where + " must be an integer");
    return j.get<int>();
}

inline bool as_bool(const json& j, const std::string& where) {
    if (!j.is_boolean()) throw parse_error(where + " must be a boolean");
    return j.get<bool>();
}

inline const json& as_array(const json& j, const std::string& where) {
    if (!j.is_array()) throw parse_error(where + " must be an array");
    return j;
}

inline std::vector<int> int_vector(const json& j, const std::string& where) {
    as_array(j, where);
    std::vector<int> out;
    for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back(as_int(j[k], where + "[" + std::to_string(k) + "]"));
    return out;
}

}  // namespace jdetail

// ---------------------------------------------------------------------------
// Scalars and rationals
// ---------------------------------------------------------------------------

inline json scalar_json(const Scalar& s) { return json(to_string(s)); }

inline Scalar scalar_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Scalar(Rat(j.get<long long>()));
    if (!j.is_string()) throw parse_error(where + " must be an exact scalar string");
    try {
        return parse_scalar(j.get<std::string>());
    } catch (const parse_error& e) {
        throw parse_error(where + ": " + e.what());
    }
}

inline Rat rat_from_json(const json& j, const std::string& where) {
    Scalar s = scalar_from_json(j, where);
    if (s.im != 0) throw parse_error(where + " must be a real rational");
    return s.re;
}

// ---------------------------------------------------------------------------
// Series:  {valuation, order, coeffs[]};  order null means exact polynomial.
// The coefficient list is dense on exponents valuation .. valuation+len-1.
// ---------------------------------------------------------------------------

inline json series_json(const Series& f) {
    json j = json::object();
    j["valuation"] = f.val;
    j["order"] = f.exact ? json(nullptr) : json(f.ord);
    json cs = json::array();
    for (const Scalar& x : f.c) cs.push_back(to_string(x));
    j["coeffs"] = std::move(cs);
    return j;
}

inline Series series_from_json(const json& j, const Scalar& center, const std::string& where) {
    int val = jdetail::as_int(jdetail::field(j, "valuation", where), where + ".valuation");
    const json& jo = jdetail::field(j, "order", where);
    const json& jc =
        jdetail::as_array(jdetail::field(j, "coeffs", where), where + ".coeffs");
    std::vector<Scalar> cs;
    for (std::size_t k = 0; k < jc.size(); ++k)
        cs.push_back(scalar_from_json(jc[k], where + ".coeffs[" + std::to_string(k) + "]"));
    bool exact = jo.is_null();
    int top = val + static_cast<int>(cs.size()) - 1;
    int order = exact ? top : jdetail::as_int(jo, where + ".order");
    if (!exact && order < top)
        throw parse_error(where + ": order lies below the stored coefficients");
    return Series::make(center, val, std::move(cs), order, exact);
}

// ---------------------------------------------------------------------------
// Exact matrices: a plain 2D array of scalar strings (rows of equal length).
// ---------------------------------------------------------------------------

inline json qmat_json(const QMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json r = json::array();
        for (int j = 0; j < m.cols; ++j) r.push_back(to_string(m.at(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline QMat qmat_from_json(const json& j, const std::string& where) {
    jdetail::as_array(j, where);
    int rows = static_cast<int>(j.size());
    int cols = 0;
    if (rows > 0) {
        jdetail::as_array(j[0], where + "[0]");
        cols = static_cast<int>(j[0].size());
    }
    QMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& r = jdetail::as_array(j[static_cast<std::size_t>(i)],
                                          where + "[" + std::to_string(i) + "]");
        if (static_cast<int>(r.size()) != cols)
            throw parse_error(where + " has rows of unequal length");
        for (int c = 0; c < cols; ++c)
            m.at(i, c) = scalar_from_json(
                r[static_cast<std::size_t>(c)],
                where + "[" + std::to_string(i) + "][" + std::to_string(c) + "]");
    }
    return m;
}

// ---------------------------------------------------------------------------
// Matrices of series.  Inside a complex the center is hoisted to the top
// level and each map is a bare 2D array of series objects; the standalone
// matrix format carries its own center.
// ---------------------------------------------------------------------------

inline json smat_entries_json(const SMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json r = json::array();
        for (int j = 0; j < m.cols; ++j) r.push_back(series_json(m.at(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline SMat smat_entries_from_json(const json& j, int rows, int cols, const Scalar& center,
                                   const std::string& where) {
    jdetail::as_array(j, where);
    if (static_cast<int>(j.size()) != rows)
        throw parse_error(where + " must have " + std::to_string(rows) + " rows");
    SMat m(rows, cols, center);
    for (int i = 0; i < rows; ++i) {
        const json& r = jdetail::as_array(j[static_cast<std::size_t>(i)],
                                          where + "[" + std::to_string(i) + "]");
        if (static_cast<int>(r.size()) != cols)
            throw parse_error(where + "[" + std::to_string(i) + "] must have " +
                              std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c)
            m.at(i, c) = series_from_json(
                r[static_cast<std::size_t>(c)], center,
                where + "[" + std::to_string(i) + "][" + std::to_string(c) + "]");
    }
    return m;
}

inline json smat_json(const SMat& m) {
    json j = json::object();
    j["center"] = to_string(m.center);
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    j["entries"] = smat_entries_json(m);
    return j;
}

inline SMat smat_from_json(const json& j, const std::string& where) {
    Scalar center = scalar_from_json(jdetail::field(j, "center", where), where + ".center");
    int rows = jdetail::as_int(jdetail::field(j, "rows", where), where + ".rows");
    int cols = jdetail::as_int(jdetail::field(j, "cols", where), where + ".cols");
    if (rows < 0 || cols < 0) throw parse_error(where + " has negative dimensions");
    return smat_entries_from_json(jdetail::field(j, "entries", where), rows, cols, center,
                                  where + ".entries");
}

// ---------------------------------------------------------------------------
// Complexes:  {center, order, dims[], maps[][], gram?}.  `order` is
// informative on output (null when every entry is an exact polynomial) and
// ignored on input, where each series entry carries its own order.
// ---------------------------------------------------------------------------

inline json complex_json(const ComplexFamily& C) {
    json j = json::object();
    j["center"] = to_string(C.center);
    j["order"] = C.all_exact() ? json(nullptr) : json(C.known_upto());
    j["dims"] = C.dims;
    json maps = json::array();
    for (const SMat& m : C.maps) maps.push_back(smat_entries_json(m));
    j["maps"] = std::move(maps);
    bool trivial_grams = true;
    for (std::size_t q = 0; q < C.grams.size() && trivial_grams; ++q)
        trivial_grams = C.grams[q] == QMat::identity(C.dims[q]);
    if (!trivial_grams) {
        json gs = json::array();
        for (const QMat& g : C.grams) gs.push_back(qmat_json(g));
        j["gram"] = std::move(gs);
    }
    return j;
}

inline ComplexFamily complex_from_json(const json& j, const std::string& where) {
    Scalar center = scalar_from_json(jdetail::field(j, "center", where), where + ".center");
    std::vector<int> dims =
        jdetail::int_vector(jdetail::field(j, "dims", where), where + ".dims");
    for (int d : dims)
        if (d < 0) throw parse_error(where + ".dims must be nonnegative");
    const json& jm = jdetail::as_array(jdetail::field(j, "maps", where), where + ".maps");
    if (jm.size() + 1 != dims.size())
        throw parse_error(where + ".maps must have one entry fewer than dims");
    std::vector<SMat> maps;
    for (std::size_t q = 0; q + 1 < dims.size(); ++q)
        maps.push_back(smat_entries_from_json(jm[q], dims[q + 1], dims[q], center,
                                              where + ".maps[" + std::to_string(q) + "]"));
    std::vector<QMat> grams;
    if (const json* jg = jdetail::field_opt(j, "gram")) {
        jdetail::as_array(*jg, where + ".gram");
        if (jg->size() != dims.size())
            throw parse_error(where + ".gram must have one matrix per degree");
        for (std::size_t q = 0; q < dims.size(); ++q) {
            QMat g = qmat_from_json((*jg)[q], where + ".gram[" + std::to_string(q) + "]");
            if (g.rows != dims[q] || g.cols != dims[q])
                throw parse_error(where + ".gram[" + std::to_string(q) + "] has wrong shape");
            grams.push_back(std::move(g));
        }
    }
    return make_complex(center, std::move(dims), std::move(maps), std::move(grams));
}

// ---------------------------------------------------------------------------
// Cohomology bases and pairing matrices
// ---------------------------------------------------------------------------

inline std::string basis_hash(const CohomBasis& b) {
    std::string s = std::to_string(b.degree) + "|" + std::to_string(b.depth_used) + "|" +
                    std::to_string(b.dim) + "|" + std::to_string(b.n) + "|" +
                    to_string(b.center) + "|";
    for (int i = 0; i < b.reps.rows; ++i)
        for (int c = 0; c < b.reps.cols; ++c) s += to_string(b.reps.at(i, c)) + ",";
    return hash_hex(fnv1a(s));
}

inline json basis_json(const CohomBasis& b) {
    json j = json::object();
    j["degree"] = b.degree;
    j["depth"] = b.depth_used;
    j["dim"] = b.dim;
    j["n"] = b.n;
    j["center"] = to_string(b.center);
    j["reps"] = qmat_json(b.reps);
    j["hash"] = basis_hash(b);
    return j;
}

inline json pairing_json(const PairingMatrix& pm) {
    json j = json::object();
    j["degree"] = pm.degree;
    j["entries"] = qmat_json(pm.entries);
    json u = json::object();
    u["dim"] = pm.basis_u.dim;
    u["depth"] = pm.basis_u.depth_used;
    u["hash"] = basis_hash(pm.basis_u);
    json v = json::object();
    v["dim"] = pm.basis_v.dim;
    v["depth"] = pm.basis_v.depth_used;
    v["hash"] = basis_hash(pm.basis_v);
    j["basis_u"] = std::move(u);
    j["basis_v"] = std::move(v);
    return j;
}

// ---------------------------------------------------------------------------
// Spectrum reports.  det_poly and unresolved factors are polynomials in
// t = s - center, rendered exactly.
// ---------------------------------------------------------------------------

inline json spectrum_point_json(const SpectrumPoint& p) {
    json j = json::object();
    j["sigma0"] = to_string(p.sigma0);
    j["dim"] = p.dim;
    j["depth"] = p.depth;
    return j;
}

inline json spectrum_json(const SpectrumReport& r) {
    json j = json::object();
    j["degree"] = r.degree;
    j["center"] = to_string(r.center);
    j["det_poly"] = to_string(r.det_poly);
    json sp = json::array();
    for (const SpectrumPoint& p : r.spectrum) sp.push_back(spectrum_point_json(p));
    j["spectrum"] = std::move(sp);
    json cz = json::array();
    for (const SpectrumPoint& p : r.certified_zero) cz.push_back(spectrum_point_json(p));
    j["certified_zero"] = std::move(cz);
    json un = json::array();
    for (const auto& [f, mult] : r.unresolved) {
        json e = json::object();
        e["factor"] = to_string(f);
        e["multiplicity"] = mult;
        un.push_back(std::move(e));
    }
    j["unresolved"] = std::move(un);
    return j;
}

// ---------------------------------------------------------------------------
// Duality certificates
// ---------------------------------------------------------------------------

inline json certificate_json(const Certificate& c) {
    json j = json::object();
    j["degree"] = c.degree;
    j["pass"] = c.pass;
    j["dim_direct"] = c.dim_direct;
    j["dim_recursive"] = c.dim_recursive;
    j["pairing_direct"] = qmat_json(c.pairing_direct);
    json levels = json::array();
    for (const CertLevel& lev : c.levels) {
        json l = json::object();
        l["dim"] = lev.dim;
        l["dim_reduced"] = lev.dim_reduced;
        l["sigma_rank"] = lev.sigma_rank;
        l["corank"] = lev.corank;
        l["sigma_power_ranks"] = lev.sigma_power_ranks;
        json ws = json::array();
        for (const auto& [partner, value] : lev.witnesses) {
            json w = json::object();
            w["partner"] = partner;
            w["value"] = to_string(value);
            ws.push_back(std::move(w));
        }
        l["witnesses"] = std::move(ws);
        levels.push_back(std::move(l));
    }
    j["levels"] = std::move(levels);
    if (c.null_class) j["null_class"] = qmat_json(*c.null_class);
    if (!c.failure.empty()) j["failure"] = c.failure;
    json hashes = json::object();
    hashes["levels"] = hash_hex(fnv1a(j["levels"].dump()));
    hashes["pairing"] = hash_hex(fnv1a(j["pairing_direct"].dump()));
    j["hashes"] = std::move(hashes);
    return j;
}

// ---------------------------------------------------------------------------
// Log sections and strips
// ---------------------------------------------------------------------------

inline json log_section_json(const LogSection& u) {
    json j = json::object();
    j["sigma0"] = to_string(u.exponent);
    j["n"] = u.n;
    json cs = json::array();
    for (const QMat& c : u.coeffs) {
        json v = json::array();
        for (int i = 0; i < c.rows; ++i) v.push_back(to_string(c.at(i, 0)));
        cs.push_back(std::move(v));
    }
    j["coeffs"] = std::move(cs);
    return j;
}

inline LogSection log_section_from_json(const json& j, const std::string& where) {
    LogSection u;
    u.exponent = scalar_from_json(jdetail::field(j, "sigma0", where), where + ".sigma0");
    u.n = jdetail::as_int(jdetail::field(j, "n", where), where + ".n");
    if (u.n < 0) throw parse_error(where + ".n must be nonnegative");
    const json& jc =
        jdetail::as_array(jdetail::field(j, "coeffs", where), where + ".coeffs");
    for (std::size_t k = 0; k < jc.size(); ++k) {
        const json& v = jdetail::as_array(jc[k], where + ".coeffs[" + std::to_string(k) + "]");
        if (static_cast<int>(v.size()) != u.n)
            throw parse_error(where + ".coeffs[" + std::to_string(k) + "] must have n entries");
        std::vector<Scalar> col;
        for (std::size_t i = 0; i < v.size(); ++i)
            col.push_back(scalar_from_json(v[i], where + ".coeffs[" + std::to_string(k) + "][" +
                                                      std::to_string(i) + "]"));
        u.coeffs.push_back(QMat::column(col));
    }
    u.check();
    return u;
}

inline json strip_config_json(const StripConfig& cfg) {
    json j = json::object();
    j["gamma"] = to_string(cfg.gamma);
    json ps = json::array();
    for (const Scalar& p : cfg.points) ps.push_back(to_string(p));
    j["points"] = std::move(ps);
    return j;
}

inline StripConfig strip_config_from_json(const json& j, const std::string& where) {
    StripConfig cfg;
    cfg.gamma = rat_from_json(jdetail::field(j, "gamma", where), where + ".gamma");
    const json& jp =
        jdetail::as_array(jdetail::field(j, "points", where), where + ".points");
    for (std::size_t k = 0; k < jp.size(); ++k)
        cfg.points.push_back(
            scalar_from_json(jp[k], where + ".points[" + std::to_string(k) + "]"));
    return cfg;
}

// ---------------------------------------------------------------------------
// Indicial (pencil) data
// ---------------------------------------------------------------------------

inline json indicial_json(const IndicialInput& in) {
    json j = json::object();
    j["dims"] = in.dims;
    json bp = json::array();
    for (const QMat& m : in.bP) bp.push_back(qmat_json(m));
    j["bP"] = std::move(bp);
    json la = json::array();
    for (const QMat& m : in.Lambda) la.push_back(qmat_json(m));
    j["Lambda"] = std::move(la);
    j["gamma"] = to_string(in.gamma);
    j["anchor_degree"] = in.anchor_degree;
    if (!in.grams.empty()) {
        json gs = json::array();
        for (const QMat& g : in.grams) gs.push_back(qmat_json(g));
        j["gram"] = std::move(gs);
    }
    return j;
}

inline IndicialInput indicial_from_json(const json& j, const std::string& where) {
    IndicialInput in;
    in.dims = jdetail::int_vector(jdetail::field(j, "dims", where), where + ".dims");
    if (in.dims.empty()) throw parse_error(where + ".dims must be nonempty");
    auto read_maps = [&](const char* key) {
        const json& ja = jdetail::as_array(jdetail::field(j, key, where),
                                           where + "." + key);
        if (ja.size() + 1 != in.dims.size())
            throw parse_error(where + "." + key + " must have one entry fewer than dims");
        std::vector<QMat> out;
        for (std::size_t q = 0; q + 1 < in.dims.size(); ++q) {
            QMat m = qmat_from_json(ja[q], where + "." + key + "[" + std::to_string(q) + "]");
            if (m.rows != in.dims[q + 1] || m.cols != in.dims[q])
                throw parse_error(where + "." + key + "[" + std::to_string(q) +
                                  "] has wrong shape");
            out.push_back(std::move(m));
        }
        return out;
    };
    in.bP = read_maps("bP");
    in.Lambda = read_maps("Lambda");
    if (const json* jg = jdetail::field_opt(j, "gamma"))
        in.gamma = rat_from_json(*jg, where + ".gamma");
    if (const json* ja = jdetail::field_opt(j, "anchor_degree"))
        in.anchor_degree = jdetail::as_int(*ja, where + ".anchor_degree");
    if (const json* jg = jdetail::field_opt(j, "gram")) {
        jdetail::as_array(*jg, where + ".gram");
        if (jg->size() != in.dims.size())
            throw parse_error(where + ".gram must have one matrix per degree");
        for (std::size_t q = 0; q < in.dims.size(); ++q) {
            QMat g = qmat_from_json((*jg)[q], where + ".gram[" + std::to_string(q) + "]");
            if (g.rows != in.dims[q] || g.cols != in.dims[q])
                throw parse_error(where + ".gram[" + std::to_string(q) + "] has wrong shape");
            in.grams.push_back(std::move(g));
        }
    }
    return in;
}

// ---------------------------------------------------------------------------
// Ideal boundary conditions
// ---------------------------------------------------------------------------

inline json ibc_json(const IBCProblem& p) {
    json j = json::object();
    j["dims"] = p.dims;
    json ms = json::array();
    for (const QMat& m : p.maps) ms.push_back(qmat_json(m));
    j["maps"] = std::move(ms);
    if (!p.candidates.empty()) {
        json cs = json::array();
        for (const QMat& c : p.candidates) cs.push_back(qmat_json(c));
        j["candidates"] = std::move(cs);
    }
    return j;
}

inline IBCProblem ibc_from_json(const json& j, const std::string& where) {
    IBCProblem p;
    p.dims = jdetail::int_vector(jdetail::field(j, "dims", where), where + ".dims");
    const json& jm = jdetail::as_array(jdetail::field(j, "maps", where), where + ".maps");
    for (std::size_t q = 0; q < jm.size(); ++q)
        p.maps.push_back(qmat_from_json(jm[q], where + ".maps[" + std::to_string(q) + "]"));
    if (const json* jc = jdetail::field_opt(j, "candidates")) {
        jdetail::as_array(*jc, where + ".candidates");
        for (std::size_t q = 0; q < jc->size(); ++q)
            p.candidates.push_back(
                qmat_from_json((*jc)[q], where + ".candidates[" + std::to_string(q) + "]"));
    }
    return p;
}

/// Human-readable rendering of one chart equation with named variables.
inline std::string quadpoly_string(const QuadPoly& e, const std::vector<std::string>& names) {
    std::string out;
    auto append = [&](const Scalar& v, const std::string& mono) {
        if (!out.empty()) out += " + ";
        out += "(" + to_string(v) + ")";
        if (!mono.empty()) out += "*" + mono;
    };
    if (!e.c.is_zero()) append(e.c, "");
    for (const auto& [i, v] : e.lin) append(v, names.at(static_cast<std::size_t>(i)));
    for (const auto& [ij, v] : e.quad)
        append(v, names.at(static_cast<std::size_t>(ij.first)) + "*" +
                      names.at(static_cast<std::size_t>(ij.second)));
    if (out.empty()) out = "0";
    return out;
}

inline json chart_system_json(const ChartSystem& sys) {
    json j = json::object();
    j["n_vars"] = sys.n_vars;
    j["variables"] = sys.var_names;
    json eqs = json::array();
    for (std::size_t k = 0; k < sys.equations.size(); ++k) {
        const QuadPoly& e = sys.equations[k];
        json je = json::object();
        je["source_degree"] = sys.eq_source[k];
        je["text"] = quadpoly_string(e, sys.var_names);
        je["constant"] = to_string(e.c);
        json lin = json::array();
        for (const auto& [i, v] : e.lin) {
            json t = json::object();
            t["var"] = sys.var_names.at(static_cast<std::size_t>(i));
            t["coeff"] = to_string(v);
            lin.push_back(std::move(t));
        }
        je["linear"] = std::move(lin);
        json quad = json::array();
        for (const auto& [ij, v] : e.quad) {
            json t = json::object();
            t["vars"] = json::array({sys.var_names.at(static_cast<std::size_t>(ij.first)),
                                     sys.var_names.at(static_cast<std::size_t>(ij.second))});
            t["coeff"] = to_string(v);
            quad.push_back(std::move(t));
        }
        je["quadratic"] = std::move(quad);
        eqs.push_back(std::move(je));
    }
    j["equations"] = std::move(eqs);
    return j;
}

// ---------------------------------------------------------------------------
// Generator profiles
// ---------------------------------------------------------------------------

inline json profile_json(const GaugeProfile& prof) {
    json j = json::object();
    j["dims"] = prof.dims;
    json bs = json::array();
    for (const BlockSpec& b : prof.blocks) {
        json e = json::object();
        e["degree"] = b.degree;
        e["exponent"] = b.exponent;
        bs.push_back(std::move(e));
    }
    j["blocks"] = std::move(bs);
    j["gauge_degree"] = prof.gauge_degree;
    j["with_grams"] = prof.with_grams;
    j["center"] = to_string(prof.center);
    return j;
}

inline GaugeProfile profile_from_json(const json& j, const std::string& where) {
    GaugeProfile prof;
    prof.dims = jdetail::int_vector(jdetail::field(j, "dims", where), where + ".dims");
    const json& jb =
        jdetail::as_array(jdetail::field(j, "blocks", where), where + ".blocks");
    for (std::size_t k = 0; k < jb.size(); ++k) {
        const std::string bw = where + ".blocks[" + std::to_string(k) + "]";
        BlockSpec b;
        b.degree = jdetail::as_int(jdetail::field(jb[k], "degree", bw), bw + ".degree");
        b.exponent = jdetail::as_int(jdetail::field(jb[k], "exponent", bw), bw + ".exponent");
        prof.blocks.push_back(b);
    }
    if (const json* jg = jdetail::field_opt(j, "gauge_degree"))
        prof.gauge_degree = jdetail::as_int(*jg, where + ".gauge_degree");
    if (const json* jw = jdetail::field_opt(j, "with_grams"))
        prof.with_grams = jdetail::as_bool(*jw, where + ".with_grams");
    if (const json* jc = jdetail::field_opt(j, "center"))
        prof.center = scalar_from_json(*jc, where + ".center");
    return prof;
}

// ---------------------------------------------------------------------------
// Problem files:  {version, <payload>, options?}
// ---------------------------------------------------------------------------

struct ChartRequest {
    std::vector<QMat> bases;       // one square adapted basis per degree
    std::vector<int> target_dims;  // chart dimension per degree
};

struct StripProblem {
    IndicialInput indicial;
    StripConfig config;
    int degree = 0;
    std::vector<std::optional<LogSection>> u_sections;
    std::vector<std::optional<LogSection>> v_sections;
};

struct IBCPayload {
    IBCProblem problem;
    std::optional<ChartRequest> charts;
};

struct ProblemOptions {
    std::optional<int> depth;
    std::optional<bool> checked;
    std::optional<unsigned long long> seed;
    std::optional<std::vector<Scalar>> candidates;
    std::optional<int> degree;
};

enum class PayloadKind { complex_family, indicial, strip, ibc, generator };

struct ProblemFile {
    int version = 1;
    PayloadKind kind = PayloadKind::complex_family;
    std::optional<ComplexFamily> complex_payload;
    std::optional<IndicialInput> indicial_payload;
    std::optional<StripProblem> strip_payload;
    std::optional<IBCPayload> ibc_payload;
    std::optional<GaugeProfile> generator_payload;
    ProblemOptions options;
};

inline ProblemOptions options_from_json(const json& j, const std::string& where) {
    ProblemOptions opt;
    if (const json* jd = jdetail::field_opt(j, "depth"))
        opt.depth = jdetail::as_int(*jd, where + ".depth");
    if (const json* jc = jdetail::field_opt(j, "checked"))
        opt.checked = jdetail::as_bool(*jc, where + ".checked");
    if (const json* js = jdetail::field_opt(j, "seed")) {
        if (!js->is_number_unsigned() && !js->is_number_integer())
            throw parse_error(where + ".seed must be an integer");
        opt.seed = js->get<unsigned long long>();
    }
    if (const json* jq = jdetail::field_opt(j, "degree"))
        opt.degree = jdetail::as_int(*jq, where + ".degree");
    if (const json* jc = jdetail::field_opt(j, "candidates")) {
        jdetail::as_array(*jc, where + ".candidates");
        std::vector<Scalar> cs;
        for (std::size_t k = 0; k < jc->size(); ++k)
            cs.push_back(
                scalar_from_json((*jc)[k], where + ".candidates[" + std::to_string(k) + "]"));
        opt.candidates = std::move(cs);
    }
    return opt;
}

inline StripProblem strip_from_json(const json& j, const std::string& where) {
    StripProblem sp;
    sp.indicial =
        indicial_from_json(jdetail::field(j, "indicial", where), where + ".indicial");
    sp.config = strip_config_from_json(jdetail::field(j, "config", where), where + ".config");
    if (const json* jd = jdetail::field_opt(j, "degree"))
        sp.degree = jdetail::as_int(*jd, where + ".degree");
    auto read_sections = [&](const char* key) {
        std::vector<std::optional<LogSection>> out(sp.config.points.size());
        if (const json* js = jdetail::field_opt(j, key)) {
            jdetail::as_array(*js, where + "." + key);
            if (js->size() != sp.config.points.size())
                throw parse_error(where + "." + key + " must have one entry per strip point");
            for (std::size_t k = 0; k < js->size(); ++k)
                if (!(*js)[k].is_null())
                    out[k] = log_section_from_json(
                        (*js)[k], where + "." + key + "[" + std::to_string(k) + "]");
        }
        return out;
    };
    sp.u_sections = read_sections("u_sections");
    sp.v_sections = read_sections("v_sections");
    return sp;
}

inline IBCPayload ibc_payload_from_json(const json& j, const std::string& where) {
    IBCPayload pl;
    pl.problem = ibc_from_json(j, where);
    if (const json* jc = jdetail::field_opt(j, "charts")) {
        ChartRequest req;
        const std::string cw = where + ".charts";
        const json& jb = jdetail::as_array(jdetail::field(*jc, "bases", cw), cw + ".bases");
        for (std::size_t q = 0; q < jb.size(); ++q)
            req.bases.push_back(qmat_from_json(jb[q], cw + ".bases[" + std::to_string(q) + "]"));
        req.target_dims =
            jdetail::int_vector(jdetail::field(*jc, "target_dims", cw), cw + ".target_dims");
        pl.charts = std::move(req);
    }
    return pl;
}

inline ProblemFile problem_from_json(const json& j) {
    const std::string where = "problem";
    ProblemFile pf;
    pf.version = jdetail::as_int(jdetail::field(j, "version", where), where + ".version");
    if (pf.version != 1) throw parse_error("unsupported problem file version");

    int payloads = 0;
    if (const json* jp = jdetail::field_opt(j, "complex")) {
        ++payloads;
        pf.kind = PayloadKind::complex_family;
        pf.complex_payload = complex_from_json(*jp, "complex");
    }
    if (const json* jp = jdetail::field_opt(j, "indicial")) {
        ++payloads;
        pf.kind = PayloadKind::indicial;
        pf.indicial_payload = indicial_from_json(*jp, "indicial");
    }
    if (const json* jp = jdetail::field_opt(j, "strip")) {
        ++payloads;
        pf.kind = PayloadKind::strip;
        pf.strip_payload = strip_from_json(*jp, "strip");
    }
    if (const json* jp = jdetail::field_opt(j, "ibc")) {
        ++payloads;
        pf.kind = PayloadKind::ibc;
        pf.ibc_payload = ibc_payload_from_json(*jp, "ibc");
    }
    if (const json* jp = jdetail::field_opt(j, "generator")) {
        ++payloads;
        pf.kind = PayloadKind::generator;
        pf.generator_payload = profile_from_json(*jp, "generator");
    }
    if (payloads != 1)
        throw parse_error(
            "problem file must contain exactly one of: complex, indicial, strip, ibc, "
            "generator");
    if (const json* jo = jdetail::field_opt(j, "options"))
        pf.options = options_from_json(*jo, "options");
    return pf;
}

inline ProblemFile problem_from_string(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw parse_error("input is not valid JSON");
    return problem_from_json(j);
}

}  // namespace laurel
