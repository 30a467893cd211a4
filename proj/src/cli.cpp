#include "vmp/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <json.hpp>
#include <limits>
#include <optional>
#include <sstream>

#include "vmp/bounds.hpp"
#include "vmp/certify.hpp"
#include "vmp/errors.hpp"
#include "vmp/eval.hpp"
#include "vmp/polys.hpp"
#include "vmp/recursion.hpp"

namespace vmp {

namespace {

using ojson = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    double start = 0;
    double stop = 10;
    int count = 11;
    std::string scale = "linear";

    std::vector<double> points() const {
        if (count < 2) throw UsageError("grid count must be >= 2");
        if (scale == "linear") return linear_grid(start, stop, count);
        if (!(start > 0) || !(stop > 0)) throw UsageError("geometric grid needs positive endpoints");
        return geometric_grid(start, stop, count);
    }
};

struct Config {
    std::string format = "csv";
    std::optional<double> tol;
    bool points = false;

    double tolerance(double fallback) const {
        if (tol) return *tol;
        if (const char* env = std::getenv("VMP_TOL")) {
            char* end = nullptr;
            const double v = std::strtod(env, &end);
            if (end == env || *end != '\0' || !(v > 0)) throw UsageError("VMP_TOL is not a positive number");
            return v;
        }
        return fallback;
    }
};

std::string fmt10(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

// Doubles are emitted shortest round-trip (at most 17 significant digits).
void dump(std::ostream& out, const ojson& j) { out << j.dump(2) << "\n"; }

void add_common(CLI::App* sub, Config& cfg) {
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--tol", cfg.tol, "tolerance (default from VMP_TOL, else 1e-10)")->check(CLI::PositiveNumber);
}

void add_grid(CLI::App* sub, GridSpec& g) {
    sub->add_option("--start", g.start, "grid start");
    sub->add_option("--stop", g.stop, "grid stop");
    sub->add_option("--count", g.count, "grid points (>= 2)");
    sub->add_option("--scale", g.scale, "linear or geometric")->check(CLI::IsMember({"linear", "geometric"}));
}

int cmd_eval(double m, double p, double x, const Config& cfg, std::ostream& out) {
    const EvalResult r = eval_vmp(m, p, x, cfg.tolerance(kDefaultTol));
    if (cfg.format == "json") {
        dump(out, ojson{{"m", m}, {"p", p}, {"x", x}, {"value", r.value}, {"abs_err", r.abs_err_estimate},
                        {"method", to_string(r.method)}});
    } else {
        out << "m,p,x,value,abs_err,method\n";
        out << fmt10(m) << "," << fmt10(p) << "," << fmt10(x) << "," << fmt10(r.value) << ","
            << fmt10(r.abs_err_estimate) << "," << to_string(r.method) << "\n";
    }
    return kExitOk;
}

struct TableOpts {
    bool bounds = false;
    bool ratio = false;
    int vav = 0;
};

int cmd_table(double m, double p, const GridSpec& g, const TableOpts& t, const Config& cfg, std::ostream& out) {
    const double tol = cfg.tolerance(kDefaultTol);
    const bool v0_bounds = m == 0 && p == 2;
    std::vector<std::string> cols{"x", "V", "abs_err"};
    if (t.bounds) {
        if (v0_bounds) cols.insert(cols.end(), {"g_pi", "g_4"});
        else cols.insert(cols.end(), {"jensen_lower", "jensen_upper"});
    }
    if (t.ratio) cols.push_back("ratio");
    if (t.vav > 0) cols.push_back("V_av");

    std::vector<std::vector<std::optional<double>>> rows;
    for (double x : g.points()) {
        const EvalResult r = eval_vmp(m, p, x, tol);
        std::vector<std::optional<double>> row{x, r.value, r.abs_err_estimate};
        if (t.bounds) {
            if (v0_bounds) {
                row.push_back(g_k(M_PI, x));
                row.push_back(g_k(4, x));
            } else {
                const JensenBounds jb = jensen_bounds(m, p, x);
                row.push_back(jb.lower);
                row.push_back(jb.upper);
            }
        }
        if (t.ratio) row.push_back(ratio(m, p, x, std::min(tol, 1e-13)));
        // the averaged potential is defined for x > 0 only
        if (t.vav > 0) row.push_back(x > 0 ? std::optional<double>(averaged_potential(t.vav, p, x).value) : std::nullopt);
        rows.push_back(std::move(row));
    }

    if (cfg.format == "json") {
        ojson arr = ojson::array();
        for (const auto& row : rows) {
            ojson o;
            for (std::size_t i = 0; i < cols.size(); ++i) o[cols[i]] = row[i] ? ojson(*row[i]) : ojson(nullptr);
            arr.push_back(std::move(o));
        }
        dump(out, arr);
    } else {
        for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
        out << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << (row[i] ? fmt10(*row[i]) : "");
            out << "\n";
        }
    }
    return kExitOk;
}

struct VerifyOpts {
    std::string suite = "all";
    int m_max = -1;
    double p = 2;
};

Report run_suite(const std::string& suite, const VerifyOpts& v, const Config& cfg) {
    const auto grid = standard_grid();
    if (suite == "v0") return verify_v0_bounds(standard_grid(true), cfg.tolerance(kDefaultTol));
    if (suite == "ratio") return verify_ratio_bounds(v.m_max < 0 ? 20 : v.m_max, grid, cfg.tolerance(1e-13));
    if (suite == "convexity" || suite == "monotone") {
        Report all;
        all.suite = suite;
        for (int m = 0; m <= (v.m_max < 0 ? 10 : v.m_max); ++m)
            all.merge(suite == "convexity" ? verify_convexity_reciprocal(m, v.p, grid, cfg.tolerance(1e-13))
                                           : verify_ratio_monotone(m, grid, v.p, cfg.tolerance(1e-13)));
        return all;
    }
    if (suite == "jensen") return verify_jensen({0, 0.5, 1, 2, 5, 10}, {1, 1.5, 2, 3, 4}, grid);
    if (suite == "boyd") {
        std::vector<double> ms;
        for (int m = 1; m <= (v.m_max < 0 ? 20 : v.m_max); ++m) ms.push_back(m);
        return verify_boyd(ms);
    }
    if (suite == "r123") return verify_r123(grid);
    throw UsageError("unknown suite '" + suite + "'");
}

int cmd_verify(const VerifyOpts& v, const Config& cfg, std::ostream& out, std::ostream& err) {
    const std::vector<std::string> names =
        v.suite == "all" ? std::vector<std::string>{"v0", "ratio", "convexity", "monotone", "jensen", "boyd", "r123"}
                         : std::vector<std::string>{v.suite};
    std::vector<Report> reports;
    for (const auto& n : names) reports.push_back(run_suite(n, v, cfg));
    bool ok = true;
    if (cfg.format == "json") {
        ojson arr = ojson::array();
        for (const auto& r : reports) arr.push_back(r.to_json(cfg.points));
        dump(out, names.size() == 1 ? arr[0] : arr);
    } else {
        out << "suite,points,violations,worst_margin,ok\n";
        for (const auto& r : reports)
            out << r.suite << "," << r.points.size() << "," << r.violations() << "," << fmt10(r.worst_margin()) << ","
                << (r.ok() ? "true" : "false") << "\n";
        for (const auto& r : reports)
            for (const auto& [k, val] : r.values) out << "# " << r.suite << " " << k << " = " << fmt10(val) << "\n";
    }
    for (const auto& r : reports) {
        if (r.ok()) continue;
        ok = false;
        if (const CheckPoint* c = r.first_violation())
            err << r.suite << ": violation '" << c->label << "' at x=" << fmt10(c->x) << " m=" << fmt10(c->m)
                << " margin=" << fmt10(c->margin) << "\n";
    }
    return ok ? kExitOk : kExitViolation;
}

int cmd_certify(const std::string& which, const Config& cfg, std::ostream& out, std::ostream& err) {
    const std::vector<std::string> names = which == "all"
                                               ? std::vector<std::string>{"k4p2", "k8p2", "generic_k", "p3k4"}
                                               : std::vector<std::string>{which};
    bool ok = true;
    ojson arr = ojson::array();
    if (cfg.format == "csv") out << "chain,kind,name,expected,actual,ok\n";
    for (const auto& n : names) {
        try {
            const ChainResult r = build_chain(n);
            ok = ok && r.ok();
            if (cfg.format == "json") {
                arr.push_back(r.to_json());
            } else {
                for (const auto& a : r.anchors)
                    out << n << ",anchor,\"" << a.name << "\",\"" << a.expected << "\",\"" << a.actual << "\","
                        << (a.ok ? "true" : "false") << "\n";
                for (const auto& [cn, c] : r.certificates)
                    out << n << ",certificate,\"" << cn << "\",all_coeffs_nonneg," << to_string(c.status) << ","
                        << (c.ok() ? "true" : "false") << "\n";
            }
            err << n << ": " << (r.ok() ? "certified" : "NOT certified") << "\n";
        } catch (const ChainMismatchError& e) {
            ok = false;
            err << n << ": mismatch in " << e.polynomial() << ": " << e.what() << "\n";
            if (cfg.format == "json") arr.push_back(ojson{{"chain", n}, {"ok", false}, {"mismatch", e.polynomial()}, {"detail", e.what()}});
            else out << n << ",mismatch,\"" << e.polynomial() << "\",,,false\n";
        }
    }
    if (cfg.format == "json") dump(out, names.size() == 1 ? arr[0] : arr);
    return ok ? kExitOk : kExitViolation;
}

int cmd_roots(int m_max, double p, const Config& cfg, std::ostream& out) {
    if (m_max < 1) throw UsageError("--m-max must be >= 1");
    struct Row {
        int m;
        std::optional<double> root;
        int p_roots;
    };
    std::vector<Row> rows;
    for (int m = 1; m <= m_max; ++m) rows.push_back({m, tildeP_roots(m, p), count_nonnegative_roots_P(m, p)});
    if (cfg.format == "json") {
        ojson arr = ojson::array();
        for (const auto& r : rows)
            arr.push_back(ojson{{"m", r.m},
                                {"p", p},
                                {"tildeP_root", r.root ? ojson(*r.root) : ojson(nullptr)},
                                {"P_nonnegative_roots", r.p_roots}});
        dump(out, arr);
    } else {
        out << "m,p,tildeP_root,P_nonnegative_roots\n";
        for (const auto& r : rows)
            out << r.m << "," << fmt10(p) << "," << (r.root ? fmt10(*r.root) : "") << "," << r.p_roots << "\n";
    }
    return kExitOk;
}

int cmd_sweep(double k, double p, const std::vector<double>& ms, const GridSpec& g, const Config& cfg,
              std::ostream& out) {
    const LemmaSweep s = numeric_lemma_sweep(k, p, ms, g.points());
    if (cfg.format == "json") {
        ojson j;
        j["k"] = k;
        j["p"] = p;
        j["claimed_sign"] = s.claimed_sign;
        ojson v = ojson::array();
        for (const auto& n : s.violations) v.push_back(ojson{{"m", n.m}, {"y_lo", n.y_lo}, {"y_hi", n.y_hi}, {"worst", n.worst}});
        j["violations"] = std::move(v);
        if (cfg.points) j["report"] = s.report.to_json(true);
        dump(out, j);
    } else {
        out << "k,p,m,y_lo,y_hi,worst\n";
        for (const auto& n : s.violations)
            out << fmt10(k) << "," << fmt10(p) << "," << fmt10(n.m) << "," << fmt10(n.y_lo) << "," << fmt10(n.y_hi)
                << "," << fmt10(n.worst) << "\n";
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"V_m^p evaluation, bound suites and positivity certificates", "vmp"};
    app.require_subcommand(1);
    Config cfg;

    double m = 0, p = 2, x = 0;
    auto* ev = app.add_subcommand("eval", "evaluate V_m^p(x)");
    ev->add_option("--m", m)->required();
    ev->add_option("--p", p);
    ev->add_option("--x", x)->required();
    add_common(ev, cfg);

    GridSpec grid;
    TableOpts topts;
    auto* tb = app.add_subcommand("table", "tabulate V_m^p on a grid");
    tb->add_option("--m", m);
    tb->add_option("--p", p);
    add_grid(tb, grid);
    tb->add_flag("--with-bounds", topts.bounds, "g_pi/g_4 for m=0, p=2; Jensen bounds otherwise");
    tb->add_flag("--with-ratio", topts.ratio, "V_m / V_{m-1}");
    tb->add_option("--with-vav", topts.vav, "averaged potential over N indices")->check(CLI::PositiveNumber);
    add_common(tb, cfg);

    VerifyOpts vopts;
    auto* vf = app.add_subcommand("verify", "run an inequality suite");
    vf->add_option("suite", vopts.suite, "v0|ratio|convexity|monotone|jensen|boyd|r123|all")
        ->check(CLI::IsMember({"v0", "ratio", "convexity", "monotone", "jensen", "boyd", "r123", "all"}));
    vf->add_option("--m-max", vopts.m_max)->check(CLI::NonNegativeNumber);
    vf->add_option("--p", vopts.p);
    vf->add_flag("--points", cfg.points, "include every grid point in JSON");
    add_common(vf, cfg);

    std::string chain = "all";
    auto* ce = app.add_subcommand("certify", "replay a positivity chain");
    ce->add_option("chain", chain, "k4p2|k8p2|generic_k|p3k4|all")
        ->check(CLI::IsMember({"k4p2", "k8p2", "generic_k", "p3k4", "all"}));
    add_common(ce, cfg);

    int m_max = 10;
    auto* rt = app.add_subcommand("roots", "real roots of the polynomial families");
    rt->add_option("--m-max", m_max);
    rt->add_option("--p", p);
    add_common(rt, cfg);

    double k = 4;
    std::vector<double> ms{1, 2, 3};
    GridSpec ygrid{1e-4, 1e4, 2001, "geometric"};
    auto* sw = app.add_subcommand("sweep", "sign of the lemma quantity on a y grid");
    sw->add_option("--k", k);
    sw->add_option("--p", p);
    sw->add_option("--m", ms, "m values")->delimiter(',');
    add_grid(sw, ygrid);
    sw->add_flag("--points", cfg.points, "include every grid point in JSON");
    add_common(sw, cfg);

    // CLI11 consumes a reversed argument vector.
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*ev) return cmd_eval(m, p, x, cfg, out);
        if (*tb) return cmd_table(m, p, grid, topts, cfg, out);
        if (*vf) return cmd_verify(vopts, cfg, out, err);
        if (*ce) return cmd_certify(chain, cfg, out, err);
        if (*rt) return cmd_roots(m_max, p, cfg, out);
        if (*sw) return cmd_sweep(k, p, ms, ygrid, cfg, out);
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}

}  // namespace vmp
