#include "nikhp/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "nikhp/potential.hpp"
#include "nikhp/zeros.hpp"

namespace nikhp {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
}

std::string fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Real real_field(const json& j, const char* ctx) {
    if (!j.is_string())
        throw ConfigError(std::string(ctx) + ": numeric literals must be decimal strings");
    try {
        return Real(j.get<std::string>());
    } catch (const std::exception&) {
        throw ConfigError(std::string(ctx) + ": bad decimal literal '" +
                          j.get<std::string>() + "'");
    }
}

Interval interval_field(const json& j, const char* ctx) {
    if (!j.is_array() || j.size() != 2)
        throw ConfigError(std::string(ctx) + ": interval must be [\"a\",\"b\"]");
    Real a = real_field(j[0], ctx), b = real_field(j[1], ctx);
    if (!(a < b)) throw ConfigError(std::string(ctx) + ": interval requires a < b");
    return Interval{std::move(a), std::move(b)};
}

Measure parse_generator(const json& g, std::size_t pos) {
    const std::string ctx = "generator " + std::to_string(pos + 1);
    if (!g.is_object() || !g.contains("type"))
        throw ConfigError(ctx + ": missing field 'type'");
    const std::string type = g.at("type").get<std::string>();
    if (!g.contains("interval")) throw ConfigError(ctx + ": missing field 'interval'");
    Interval itv = interval_field(g.at("interval"), ctx.c_str());
    const std::size_t nq = g.value("nq", 64);

    if (type == "chebyshev") return Measure::chebyshev(itv, nq);
    if (type == "legendre" || type == "lebesgue") return Measure::legendre(itv, nq);
    if (type == "jacobi") {
        if (!g.contains("alpha") || !g.contains("beta"))
            throw ConfigError(ctx + ": jacobi needs fields 'alpha' and 'beta'");
        return Measure::jacobi(itv, real_field(g.at("alpha"), ctx.c_str()),
                               real_field(g.at("beta"), ctx.c_str()), nq);
    }
    if (type == "polynomial_modulated") {
        if (!g.contains("coeffs")) throw ConfigError(ctx + ": missing field 'coeffs'");
        std::vector<Real> c;
        for (const auto& e : g.at("coeffs")) c.push_back(real_field(e, ctx.c_str()));
        return Measure::polynomial_modulated(
            itv, g.contains("alpha") ? real_field(g.at("alpha"), ctx.c_str()) : Real(0),
            g.contains("beta") ? real_field(g.at("beta"), ctx.c_str()) : Real(0),
            Polynomial(std::move(c)), nq);
    }
    if (type == "tabulated") {
        if (!g.contains("samples")) throw ConfigError(ctx + ": missing field 'samples'");
        std::vector<std::pair<Real, Real>> samples;
        for (const auto& e : g.at("samples")) {
            if (!e.is_array() || e.size() != 2)
                throw ConfigError(ctx + ": samples must be [\"x\",\"w\"] pairs");
            samples.emplace_back(real_field(e[0], ctx.c_str()), real_field(e[1], ctx.c_str()));
        }
        return Measure::tabulated(itv, std::move(samples), nq);
    }
    throw ConfigError(ctx + ": unknown type '" + type + "'");
}

Complex point_field(const json& j, const char* ctx) {
    if (j.is_string()) return Complex{real_field(j, ctx), Real(0)};
    if (j.is_array() && j.size() == 2)
        return Complex{real_field(j[0], ctx), real_field(j[1], ctx)};
    throw ConfigError(std::string(ctx) + ": points must be \"x\" or [\"re\",\"im\"]");
}

std::string point_str(const Complex& z) {
    std::string s = to_decimal_string(z.re);
    if (!(z.im == 0)) s += " + " + to_decimal_string(z.im) + "i";
    return s;
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json family_to_json_ii(const TypeIIFamily& fam) {
    json j;
    j["schema"] = "nikhp-family/1";
    j["type"] = "ii";
    j["index"] = fam.index.components();
    j["precision"] = precision_bits();
    j["nq"] = fam.nq;
    j["margin"] = to_decimal_string(fam.margin);
    json q = json::array();
    for (const Real& c : fam.Q.coefficients()) q.push_back(to_decimal_string(c));
    j["Q"] = std::move(q);
    json ps = json::array();
    for (const Polynomial& p : fam.P) {
        json pc = json::array();
        for (const Real& c : p.coefficients()) pc.push_back(to_decimal_string(c));
        ps.push_back(std::move(pc));
    }
    j["P"] = std::move(ps);
    return j;
}

json family_to_json_i(const TypeIFamily& fam) {
    json j;
    j["schema"] = "nikhp-family/1";
    j["type"] = "i";
    j["index"] = fam.index.components();
    j["precision"] = precision_bits();
    j["nq"] = fam.nq;
    j["margin"] = to_decimal_string(fam.margin);
    json as = json::array();
    for (const Polynomial& p : fam.a) {
        json pc = json::array();
        for (const Real& c : p.coefficients()) pc.push_back(to_decimal_string(c));
        as.push_back(std::move(pc));
    }
    j["a"] = std::move(as);
    return j;
}

Polynomial poly_from_json(const json& arr) {
    std::vector<Real> c;
    for (const auto& e : arr) c.push_back(Real(e.get<std::string>()));
    return Polynomial(std::move(c));
}

}  // namespace

SystemSpec parse_system(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("system file: invalid JSON: ") + e.what());
    }
    if (j.value("schema", "") != "nikhp-system/1")
        throw ConfigError("system file: field 'schema' must be \"nikhp-system/1\"");
    SystemSpec spec;
    spec.kind = j.value("kind", "nikishin");
    if (spec.kind != "nikishin" && spec.kind != "angelesco")
        throw ConfigError("system file: field 'kind' must be nikishin or angelesco");
    if (!j.contains("generators") || !j.at("generators").is_array() ||
        j.at("generators").empty())
        throw ConfigError("system file: field 'generators' must be a non-empty array");
    std::size_t pos = 0;
    for (const auto& g : j.at("generators")) spec.generators.push_back(parse_generator(g, pos++));
    spec.hash = fnv1a(j.dump());
    return spec;
}

SystemSpec load_system(const std::string& path) { return parse_system(read_file(path)); }

ExperimentConfig load_config(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config file: invalid JSON: ") + e.what());
    }
    if (j.value("schema", "") != "nikhp-config/1")
        throw ConfigError("config file: field 'schema' must be \"nikhp-config/1\"");

    ExperimentConfig cfg;
    if (j.contains("system") && j.at("system").is_object())
        cfg.system = parse_system(j.at("system").dump());
    else if (j.contains("system")) {
        cfg.system_path = j.at("system").get<std::string>();
        fs::path base = fs::path(path).parent_path();
        fs::path sp = cfg.system_path;
        if (sp.is_relative() && !base.empty()) sp = base / sp;
        cfg.system = load_system(sp.string());
    } else {
        throw ConfigError("config file: missing field 'system'");
    }

    if (j.contains("schedule")) {
        const auto& s = j.at("schedule");
        cfg.schedule.kind = s.value("kind", "diagonal");
        if (cfg.schedule.kind != "diagonal" && cfg.schedule.kind != "staircase")
            throw ConfigError("config file: schedule.kind must be diagonal or staircase");
        cfg.schedule.from = s.value("from", 1);
        cfg.schedule.to = s.value("to", 8);
        if (cfg.schedule.from < 1 || cfg.schedule.to < cfg.schedule.from)
            throw ConfigError("config file: schedule range is empty");
    }
    cfg.precision = j.value("precision", 256u);
    if (cfg.precision < 64) throw ConfigError("config file: precision must be at least 64");
    cfg.nq = j.value("nq", 0u);
    cfg.grid = j.value("grid", 600u);
    cfg.eq_tau = j.value("eq_tau", 1e-6);
    cfg.budget = j.value("budget", 6u);
    cfg.component = j.value("component", 1u);
    cfg.trials = j.value("trials", 100u);
    cfg.seed = j.value("seed", 1ull);
    if (j.contains("residual_tol")) cfg.residual_tol = j.at("residual_tol").get<double>();
    if (j.contains("points"))
        for (const auto& p : j.at("points")) cfg.points.push_back(point_field(p, "points"));
    return cfg;
}

FamilyCache::FamilyCache(std::string dir, std::string system_hash)
    : dir_(std::move(dir)), hash_(std::move(system_hash)) {
    fs::create_directories(dir_);
}

TypeIIFamily FamilyCache::get_or_solve_ii(const NikishinSystem& sys, const MultiIndex& n,
                                          std::size_t nq) {
    std::string name = hash_ + "-p" + std::to_string(precision_bits()) + "-ii-" + n.str();
    for (char& c : name)
        if (c == ',' || c == '(' || c == ')' || c == ' ') c = '_';
    const fs::path file = fs::path(dir_) / (name + ".json");
    if (fs::exists(file)) {
        try {
            json j = json::parse(read_file(file.string()));
            if (j.value("schema", "") != "nikhp-family/1" || j.value("type", "") != "ii")
                throw std::runtime_error("schema mismatch");
            TypeIIFamily fam(MultiIndex(j.at("index").get<std::vector<int>>()));
            fam.nq = j.at("nq").get<std::size_t>();
            fam.margin = Real(j.at("margin").get<std::string>());
            fam.Q = poly_from_json(j.at("Q"));
            for (const auto& pc : j.at("P")) fam.P.push_back(poly_from_json(pc));
            if (fam.P.size() != sys.size()) throw std::runtime_error("bad P count");
            build_psi_layers(fam, sys);
            return fam;
        } catch (const std::exception& e) {
            std::cerr << "warning: corrupt cache entry " << file.string() << " (" << e.what()
                      << "), recomputing\n";
        }
    }
    TypeIIFamily fam = solve_type_ii(sys, n, nq);
    write_file(file, family_to_json_ii(fam).dump(2) + "\n");
    return fam;
}

TypeIFamily FamilyCache::get_or_solve_i(const NikishinSystem& sys, const MultiIndex& n,
                                        std::size_t nq) {
    std::string name = hash_ + "-p" + std::to_string(precision_bits()) + "-i-" + n.str();
    for (char& c : name)
        if (c == ',' || c == '(' || c == ')' || c == ' ') c = '_';
    const fs::path file = fs::path(dir_) / (name + ".json");
    if (fs::exists(file)) {
        try {
            json j = json::parse(read_file(file.string()));
            if (j.value("schema", "") != "nikhp-family/1" || j.value("type", "") != "i")
                throw std::runtime_error("schema mismatch");
            TypeIFamily fam(MultiIndex(j.at("index").get<std::vector<int>>()));
            fam.nq = j.at("nq").get<std::size_t>();
            fam.margin = Real(j.at("margin").get<std::string>());
            for (const auto& pc : j.at("a")) fam.a.push_back(poly_from_json(pc));
            if (fam.a.size() != sys.size() + 1) throw std::runtime_error("bad a count");
            return fam;
        } catch (const std::exception& e) {
            std::cerr << "warning: corrupt cache entry " << file.string() << " (" << e.what()
                      << "), recomputing\n";
        }
    }
    TypeIFamily fam = solve_type_i(sys, n, nq);
    write_file(file, family_to_json_i(fam).dump(2) + "\n");
    return fam;
}

namespace {

struct RunContext {
    const ExperimentConfig& cfg;
    NikishinSystem sys;
    FamilyCache cache;
    json summary;
};

std::string cache_dir_for(const ExperimentConfig& cfg) {
    if (const char* env = std::getenv("NIKHP_CACHE_DIR"); env && *env) return env;
    return (fs::path(cfg.out_dir) / ".nikhp-cache").string();
}

DegreeSchedule make_schedule(const ExperimentConfig& cfg, std::size_t m) {
    if (cfg.schedule.kind == "staircase")
        return staircase_schedule(m, cfg.schedule.to - cfg.schedule.from + 1,
                                  cfg.schedule.from);
    return diagonal_schedule(m, cfg.schedule.to, cfg.schedule.from);
}

std::vector<Complex> default_points(const NikishinSystem& sys) {
    // A real point to the right of every interval plus one complex probe.
    Real hi = sys.delta(1).b;
    for (std::size_t j = 2; j <= sys.size(); ++j) hi = std::max(hi, sys.delta(j).b);
    return {Complex{hi + 2, Real(0)}, Complex{hi + 1, Real(1)}};
}

double connection_tolerance(const ExperimentConfig& cfg) {
    if (cfg.residual_tol) return *cfg.residual_tol;
    // P/4 bits expressed in decimal digits.
    return std::pow(10.0, -static_cast<double>(cfg.precision) / 4.0 * 0.30103);
}

EquilibriumSolution solve_equilibrium_for(const RunContext& ctx) {
    const std::size_t m = ctx.sys.size();
    std::vector<Interval> supports;
    for (std::size_t j = 1; j <= m; ++j) supports.push_back(ctx.sys.delta(j));
    auto C = interaction_matrix(std::vector<double>(m, 1.0 / static_cast<double>(m)));
    return solve_vector_equilibrium(supports, C, ctx.cfg.grid, ctx.cfg.eq_tau);
}

int finish(RunContext& ctx, const std::string& command, bool pass,
           const std::vector<std::pair<std::string, std::string>>& artifacts) {
    ctx.summary["schema"] = "nikhp-summary/1";
    ctx.summary["command"] = command;
    ctx.summary["system_hash"] = ctx.cfg.system.hash;
    ctx.summary["precision"] = ctx.cfg.precision;
    ctx.summary["pass"] = pass;
    json arts = json::array();
    for (const auto& [name, path] : artifacts) {
        write_file(fs::path(ctx.cfg.out_dir) / path, name);
        arts.push_back(path);
    }
    ctx.summary["artifacts"] = std::move(arts);
    write_file(fs::path(ctx.cfg.out_dir) / (command + "_summary.json"),
               ctx.summary.dump(2) + "\n");
    return pass ? 0 : 1;
}

int run_certify(RunContext& ctx) {
    PerfectnessReport rep = certify_perfectness(ctx.sys, ctx.cfg.budget, ctx.cfg.nq);
    std::ostringstream csv;
    csv << "index,margin_type_i,margin_type_ii,pass,note\n";
    for (const auto& row : rep.rows)
        csv << row.index.str() << "," << fmt_double(static_cast<double>(row.margin_type_i))
            << "," << fmt_double(static_cast<double>(row.margin_type_ii)) << ","
            << (row.pass ? 1 : 0) << "," << row.note << "\n";

    // AT-system probe on a gap to the right of Delta_1 (seeded).
    const Interval probe{ctx.sys.delta(1).b + 1, ctx.sys.delta(1).b + 2};
    std::vector<int> probe_idx(ctx.sys.size() + 1, 1);
    AtSystemReport at =
        at_system_probe(ctx.sys, MultiIndex(probe_idx), ctx.cfg.trials, probe, ctx.cfg.seed);

    ctx.summary["indices"] = rep.rows.size();
    ctx.summary["all_normal"] = rep.all_pass;
    ctx.summary["min_margin"] = fmt_double(static_cast<double>(rep.min_margin));
    ctx.summary["at_probe_max_count"] = at.max_count;
    ctx.summary["at_probe_bound"] = at.bound;
    ctx.summary["at_probe_pass"] = at.pass;
    return finish(ctx, "certify", rep.all_pass && at.pass, {{csv.str(), "certify_rows.csv"}});
}

int run_zeros(RunContext& ctx) {
    DegreeSchedule sched = make_schedule(ctx.cfg, ctx.sys.size());
    std::vector<ReportRow> rows;
    bool pass = true;
    for (const MultiIndex& n : sched.indices) {
        TypeIIFamily fam = ctx.cache.get_or_solve_ii(ctx.sys, n, ctx.cfg.nq);
        finalize_zero_structure(fam, ctx.sys);
        TypeIFamily tf = ctx.cache.get_or_solve_i(ctx.sys, n, ctx.cfg.nq);
        finalize_zero_structure(tf, ctx.sys);
        for (std::size_t k = 1; k <= ctx.sys.size(); ++k) {
            ZeroList zq = poly_real_zeros(fam.zero_polys[k], ctx.sys.delta(k));
            const std::size_t expect_q = static_cast<std::size_t>(n.tail(k));
            const bool okq = zq.size() == expect_q && zq.all_simple;
            pass = pass && okq;
            rows.push_back({n.total(), n.str(), "Q_k zeros k=" + std::to_string(k), "",
                            static_cast<double>(zq.size()), static_cast<double>(expect_q),
                            0.0, okq});
            ZeroList za = poly_real_zeros(tf.zero_polys[k], ctx.sys.delta(k));
            const int raw_a = k < ctx.sys.size() ? n.tail(k) - 1 : n[ctx.sys.size() - 1] - 1;
            const std::size_t expect_a = raw_a > 0 ? static_cast<std::size_t>(raw_a) : 0;
            const bool oka = za.size() == expect_a && za.all_simple;
            pass = pass && oka;
            rows.push_back({n.total(), n.str(), "A_k zeros k=" + std::to_string(k), "",
                            static_cast<double>(za.size()), static_cast<double>(expect_a),
                            0.0, oka});
        }
    }
    ctx.summary["rows"] = rows.size();
    return finish(ctx, "zeros", pass, {{rows_to_csv(rows), "zeros_rows.csv"}});
}

int run_interlace(RunContext& ctx) {
    DegreeSchedule sched = make_schedule(ctx.cfg, ctx.sys.size());
    std::vector<ReportRow> rows;
    bool pass = true;
    for (const MultiIndex& n : sched.indices) {
        for (std::size_t ell = 1; ell <= ctx.sys.size(); ++ell) {
            TypeIIFamily f1 = ctx.cache.get_or_solve_ii(ctx.sys, n, ctx.cfg.nq);
            TypeIIFamily f2 = ctx.cache.get_or_solve_ii(ctx.sys, n.bump(ell), ctx.cfg.nq);
            finalize_zero_structure(f1, ctx.sys);
            finalize_zero_structure(f2, ctx.sys);
            TypeIFamily g1 = ctx.cache.get_or_solve_i(ctx.sys, n, ctx.cfg.nq);
            TypeIFamily g2 = ctx.cache.get_or_solve_i(ctx.sys, n.bump(ell), ctx.cfg.nq);
            finalize_zero_structure(g1, ctx.sys);
            finalize_zero_structure(g2, ctx.sys);
            for (std::size_t k = 1; k <= ctx.sys.size(); ++k) {
                InterlaceResult rq =
                    interlace_check(poly_real_zeros(f1.zero_polys[k], ctx.sys.delta(k)),
                                    poly_real_zeros(f2.zero_polys[k], ctx.sys.delta(k)));
                InterlaceResult ra =
                    interlace_check(poly_real_zeros(g1.zero_polys[k], ctx.sys.delta(k)),
                                    poly_real_zeros(g2.zero_polys[k], ctx.sys.delta(k)));
                pass = pass && rq.ok && ra.ok;
                rows.push_back({n.total(), n.str(),
                                "interlace Q k=" + std::to_string(k) + " ell=" +
                                    std::to_string(ell),
                                "", rq.ok ? 1.0 : 0.0, 1.0, 0.0, rq.ok});
                rows.push_back({n.total(), n.str(),
                                "interlace A k=" + std::to_string(k) + " ell=" +
                                    std::to_string(ell),
                                "", ra.ok ? 1.0 : 0.0, 1.0, 0.0, ra.ok});
            }
        }
    }
    ctx.summary["rows"] = rows.size();
    return finish(ctx, "interlace", pass, {{rows_to_csv(rows), "interlace_rows.csv"}});
}

int run_equilibrium(RunContext& ctx) {
    EquilibriumSolution sol = solve_equilibrium_for(ctx);
    std::ostringstream csv;
    csv << "component,cell,node,weight\n";
    csv.precision(17);
    for (std::size_t j = 0; j < sol.lambdas.size(); ++j)
        for (std::size_t i = 0; i < sol.lambdas[j].cells(); ++i)
            csv << (j + 1) << "," << i << "," << sol.lambdas[j].node(i) << ","
                << sol.lambdas[j].weights[i] << "\n";
    json omegas = json::array(), primes = json::array(), masses = json::array();
    for (std::size_t j = 0; j < sol.lambdas.size(); ++j) {
        omegas.push_back(fmt_double(sol.omegas[j]));
        primes.push_back(fmt_double(sol.omegas_prime[j]));
        masses.push_back(fmt_double(sol.lambdas[j].mass()));
    }
    ctx.summary["omegas"] = std::move(omegas);
    ctx.summary["omegas_prime"] = std::move(primes);
    ctx.summary["masses"] = std::move(masses);
    ctx.summary["kkt_residual"] = fmt_double(sol.kkt_residual);
    ctx.summary["iterations"] = sol.iterations;
    const bool pass = sol.kkt_residual < ctx.cfg.eq_tau;
    return finish(ctx, "equilibrium", pass, {{csv.str(), "equilibrium_measures.csv"}});
}

int run_weak(RunContext& ctx) {
    EquilibriumSolution eq = solve_equilibrium_for(ctx);
    DegreeSchedule sched = make_schedule(ctx.cfg, ctx.sys.size());
    std::vector<Complex> pts = ctx.cfg.points.empty() ? default_points(ctx.sys) : ctx.cfg.points;
    WeakReport rep = weak_report(ctx.sys, sched, eq, pts, nullptr, ctx.cfg.nq);
    ctx.summary["kolmogorov_trend"] = rep.kolmogorov_trend;
    ctx.summary["psi_trend"] = rep.psi_trend;
    ctx.summary["last_kolmogorov"] = fmt_double(rep.last_kolmogorov);
    ctx.summary["last_psi_log_error"] = fmt_double(rep.last_psi_error);
    const bool pass = rep.kolmogorov_trend && rep.psi_trend;
    return finish(ctx, "weak", pass, {{rows_to_csv(rep.rows), "weak_rows.csv"}});
}

int run_rate(RunContext& ctx) {
    EquilibriumSolution eq = solve_equilibrium_for(ctx);
    DegreeSchedule sched = make_schedule(ctx.cfg, ctx.sys.size());
    std::vector<Complex> pts = ctx.cfg.points.empty() ? default_points(ctx.sys) : ctx.cfg.points;
    RateReport rep = rate_report(ctx.sys, sched, ctx.cfg.component, pts, eq, nullptr, ctx.cfg.nq);
    ctx.summary["component"] = ctx.cfg.component;
    ctx.summary["all_negative_past_third"] = rep.all_negative_past_third;
    ctx.summary["max_final_rel_error"] = fmt_double(rep.max_final_rel_error);
    return finish(ctx, "rate", rep.all_negative_past_third,
                  {{rows_to_csv(rep.rows), "rate_rows.csv"}});
}

int run_ratio(RunContext& ctx) {
    DegreeSchedule sched = make_schedule(ctx.cfg, ctx.sys.size());
    std::vector<Complex> pts = ctx.cfg.points.empty() ? default_points(ctx.sys) : ctx.cfg.points;
    RatioReport rep = ratio_report(ctx.sys, sched, ctx.cfg.component, pts, nullptr, ctx.cfg.nq);
    TypeIRatioReport trep =
        type_i_ratio_report(ctx.sys, sched, ctx.cfg.component, pts, nullptr, ctx.cfg.nq);
    ctx.summary["ell"] = ctx.cfg.component;
    ctx.summary["deltas_decreasing_last3"] = rep.deltas_decreasing_last3;
    ctx.summary["sign_ok"] = rep.sign_ok;
    ctx.summary["max_boundary_rel_dev"] = fmt_double(rep.max_boundary_rel_dev);
    ctx.summary["type_i_deltas_decreasing"] = trep.deltas_decreasing;
    const bool pass = rep.deltas_decreasing_last3 && rep.sign_ok &&
                      rep.max_boundary_rel_dev < 0.05;
    return finish(ctx, "ratio", pass,
                  {{rows_to_csv(rep.rows), "ratio_rows.csv"},
                   {rows_to_csv(rep.boundary_rows), "ratio_boundary.csv"},
                   {rows_to_csv(trep.rows), "ratio_type_i_rows.csv"}});
}

int run_connection(RunContext& ctx) {
    if (ctx.sys.size() < 2)
        throw ConfigError("connection: needs a system with at least two generators");
    DegreeSchedule sched = make_schedule(ctx.cfg, ctx.sys.size());
    const MultiIndex& n = sched.indices.back();
    TypeIIFamily fam = ctx.cache.get_or_solve_ii(ctx.sys, n, ctx.cfg.nq);
    std::vector<Complex> pts = ctx.cfg.points.empty() ? default_points(ctx.sys) : ctx.cfg.points;
    const double tol = connection_tolerance(ctx.cfg);
    std::vector<ReportRow> rows;
    bool pass = true;
    for (std::size_t j = 2; j <= ctx.sys.size(); ++j) {
        for (const Complex& z : pts) {
            ConnectionResiduals r = connection_check(fam, ctx.sys, j, z);
            const double vals[4] = {static_cast<double>(r.miracle),
                                    static_cast<double>(r.con1),
                                    static_cast<double>(r.con2),
                                    static_cast<double>(r.inversion)};
            const char* names[4] = {"miracle", "con1", "con2", "inversion"};
            for (int i = 0; i < 4; ++i) {
                const bool ok = vals[i] < tol;
                pass = pass && ok;
                rows.push_back({n.total(), n.str(),
                                std::string(names[i]) + " j=" + std::to_string(j),
                                point_str(z), vals[i], tol, 0.0, ok});
            }
        }
    }
    ctx.summary["tolerance"] = fmt_double(tol);
    ctx.summary["rows"] = rows.size();
    return finish(ctx, "connection", pass, {{rows_to_csv(rows), "connection_rows.csv"}});
}

}  // namespace

int run(const ExperimentConfig& config) {
    set_precision_bits(config.precision);
    if (config.system.kind != "nikishin")
        throw ConfigError("only nikishin systems are wired to the harnesses");

    try {
        RunContext ctx{config, NikishinSystem(config.system.generators),
                       FamilyCache(cache_dir_for(config), config.system.hash), json()};
        if (config.command == "certify") return run_certify(ctx);
        if (config.command == "zeros") return run_zeros(ctx);
        if (config.command == "interlace") return run_interlace(ctx);
        if (config.command == "equilibrium") return run_equilibrium(ctx);
        if (config.command == "weak") return run_weak(ctx);
        if (config.command == "rate") return run_rate(ctx);
        if (config.command == "ratio") return run_ratio(ctx);
        if (config.command == "connection") return run_connection(ctx);
        throw ConfigError("unknown command: " + config.command);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace nikhp
