// nc — command-line front end for the Wehrl-entropy nonclassicality library.
// Talks to the core exclusively through the C API in ncw.h.
//
// Subcommands:
//   compute "EXPR"          N_w of one state, JSON to stdout
//   sweep "TEMPLATE" ...    one-parameter sweep ({} placeholder), CSV
//   figure ID               built-in figure datasets (parameter studies)
//   verify                  oracle-agreement and invariance suite
//
// Exit codes: 0 success, 1 verification failure, 2 usage/parse/compute error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncw.h"

namespace {

using nlohmann::json;

struct GlobalOpts {
    int dim = 0;  // 0 = auto (start at 64, grow until the tail fits)
    double tol = 1e-6;
    std::string out_dir = "./out";
    std::string format = "csv";
};

// Fixed 9-significant-digit formatting keeps CSV output byte-stable.
std::string fmt9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void print_error(const char* where, ncw_status st) {
    std::cerr << "error: " << where << ": " << ncw_status_name(st);
    const char* detail = ncw_last_error();
    if (detail && *detail) std::cerr << ": " << detail;
    if (st == NCW_ERR_SYNTAX)
        std::cerr << " (offset " << ncw_last_error_offset() << ")";
    std::cerr << "\n";
}

struct StateHandle {
    ncw_state* p = nullptr;
    ~StateHandle() { ncw_state_free(p); }
};

struct RuleHandle {
    ncw_rule* p = nullptr;
    ~RuleHandle() { ncw_rule_free(p); }
};

// Parse + rule + measure for one expression. Returns nonzero exit code on
// failure (after printing to stderr) unless quiet, in which case the status
// is handed back for the caller to record.
ncw_status compute_nc(const std::string& expr, const GlobalOpts& g,
                      ncw_nc_result* out, int* out_dim) {
    StateHandle st;
    ncw_status s = ncw_state_parse(expr.c_str(), g.dim, -1.0, &st.p);
    if (s != NCW_OK) return s;
    RuleHandle rule;
    s = ncw_rule_for_state(st.p, g.tol, &rule.p);
    if (s != NCW_OK) return s;
    s = ncw_nc(st.p, rule.p, out);
    if (s != NCW_OK) return s;
    if (out_dim) *out_dim = ncw_state_dim(st.p);
    return NCW_OK;
}

int cmd_compute(const std::string& expr, const GlobalOpts& g) {
    StateHandle st;
    ncw_status s = ncw_state_parse(expr.c_str(), g.dim, -1.0, &st.p);
    if (s != NCW_OK) {
        print_error("compute", s);
        return 2;
    }
    RuleHandle rule;
    s = ncw_rule_for_state(st.p, g.tol, &rule.p);
    if (s != NCW_OK) {
        print_error("compute", s);
        return 2;
    }
    ncw_nc_result r{};
    s = ncw_nc(st.p, rule.p, &r);
    if (s != NCW_OK) {
        print_error("compute", s);
        return 2;
    }

    json j;
    j["expr"] = expr;
    j["wehrl"] = r.wehrl;
    j["reference_entropy"] = r.reference_entropy;
    j["value"] = r.value;
    j["branch"] = r.branch_mixed ? "mixed" : "pure";
    if (r.branch_mixed)
        j["nbar_ref"] = r.nbar_ref;
    else
        j["nbar_ref"] = nullptr;
    j["diagnostics"] = {
        {"dim", ncw_state_dim(st.p)},
        {"tail_mass", r.tail_mass},
        {"convergence_delta", r.convergence_delta},
        {"neg_q_clamp", r.neg_q_clamp},
        {"value_clamp", r.value_clamp},
        {"nbar_clamp", r.nbar_clamp},
        {"radial_count", ncw_rule_radial_count(rule.p)},
        {"angular_count", ncw_rule_angular_count(rule.p)},
        {"r_max", ncw_rule_radius(rule.p)},
    };
    std::cout << j.dump(2) << "\n";
    return 0;
}

struct SweepRow {
    double param = 0.0;
    bool ok = false;
    ncw_nc_result r{};
    std::string error;
};

std::optional<std::string> substitute(const std::string& tmpl, const std::string& v) {
    const size_t pos = tmpl.find("{}");
    if (pos == std::string::npos) return std::nullopt;
    if (tmpl.find("{}", pos + 2) != std::string::npos) return std::nullopt;
    std::string s = tmpl;
    s.replace(pos, 2, v);
    return s;
}

int cmd_sweep(const std::string& tmpl, double start, double stop, int count,
              const GlobalOpts& g) {
    if (count < 2) {
        std::cerr << "error: sweep: count must be >= 2\n";
        return 2;
    }
    if (!(start < stop)) {
        std::cerr << "error: sweep: need start < stop\n";
        return 2;
    }
    if (!substitute(tmpl, "0")) {
        std::cerr << "error: sweep: template must contain the placeholder {} exactly once\n";
        return 2;
    }

    std::vector<SweepRow> rows(count);
    for (int i = 0; i < count; ++i) {
        const double param = start + (stop - start) * i / (count - 1);
        rows[i].param = param;
        const std::string expr = *substitute(tmpl, fmt9(param));
        const ncw_status s = compute_nc(expr, g, &rows[i].r, nullptr);
        if (s == NCW_OK) {
            rows[i].ok = true;
        } else {
            rows[i].error = ncw_status_name(s);
        }
    }

    if (g.format == "json") {
        json arr = json::array();
        for (const SweepRow& row : rows) {
            json j;
            j["param"] = row.param;
            if (row.ok) {
                j["value"] = row.r.value;
                j["wehrl"] = row.r.wehrl;
                j["reference_entropy"] = row.r.reference_entropy;
                j["branch"] = row.r.branch_mixed ? "mixed" : "pure";
            } else {
                j["error"] = row.error;
            }
            arr.push_back(j);
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        std::cout << "param,value,wehrl,reference_entropy,branch,error\n";
        for (const SweepRow& row : rows) {
            std::cout << fmt9(row.param) << ",";
            if (row.ok) {
                std::cout << fmt9(row.r.value) << "," << fmt9(row.r.wehrl) << ","
                          << fmt9(row.r.reference_entropy) << ","
                          << (row.r.branch_mixed ? "mixed" : "pure") << ",";
            } else {
                std::cout << ",,,," << row.error;
            }
            std::cout << "\n";
        }
    }
    return 0;
}

// ---- figure presets ----

struct Curve {
    std::string label;
    std::string tmpl;  // with {} placeholder
};

struct Figure {
    std::string file;
    std::string param_name;
    std::vector<double> params;
    std::vector<Curve> curves;
};

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

std::vector<double> int_range(int a, int b) {
    std::vector<double> v;
    for (int i = a; i <= b; ++i) v.push_back(i);
    return v;
}

std::optional<Figure> figure_spec(const std::string& id) {
    Figure f;
    if (id == "1a") {
        f = {"fig1a.csv", "m", int_range(0, 10), {{"value", "fock({})"}}};
    } else if (id == "1b") {
        f = {"fig1b.csv", "r", linspace(0.0, 1.2, 25), {{"value", "S({}) vac"}}};
    } else if (id == "2a") {
        f = {"fig2a.csv", "R", linspace(0.0, 3.0, 31), {}};
        for (int m = 1; m <= 5; ++m)
            f.curves.push_back({"m" + std::to_string(m),
                                "A^" + std::to_string(m) + " coh({},0)"});
    } else if (id == "2b") {
        f = {"fig2b.csv", "R", linspace(0.05, 2.0, 40),
             {{"even", "cat+({})"}, {"odd", "cat-({})"}}};
    } else if (id == "3a") {
        f = {"fig3a.csv", "r", linspace(0.0, 1.0, 21), {}};
        for (int m = 1; m <= 5; ++m)
            f.curves.push_back({"m" + std::to_string(m),
                                "A^" + std::to_string(m) + " S({}) vac"});
    } else if (id == "3b") {
        f = {"fig3b.csv", "r", linspace(0.0, 1.0, 21), {}};
        for (int m = 1; m <= 5; ++m)
            f.curves.push_back({"m" + std::to_string(m),
                                "S({}) fock(" + std::to_string(m) + ")"});
    } else if (id == "4a") {
        f = {"fig4a.csv", "m", int_range(1, 10), {}};
        for (int nb = 1; nb <= 5; ++nb)
            f.curves.push_back({"nbar" + std::to_string(nb),
                                "A^{} thermal(" + std::to_string(nb) + ")"});
    } else if (id == "4b") {
        f = {"fig4b.csv", "r", linspace(0.0, 1.0, 11), {}};
        for (int nb = 1; nb <= 5; ++nb)
            f.curves.push_back({"nbar" + std::to_string(nb),
                                "S({}) thermal(" + std::to_string(nb) + ")"});
    } else {
        return std::nullopt;
    }
    return f;
}

int cmd_figure(const std::string& id, const GlobalOpts& g) {
    const std::optional<Figure> fig = figure_spec(id);
    if (!fig) {
        std::cerr << "error: figure: unknown id \"" << id
                  << "\" (expected 1a,1b,2a,2b,3a,3b,4a,4b)\n";
        return 2;
    }

    std::error_code ec;
    std::filesystem::create_directories(g.out_dir, ec);
    if (ec) {
        std::cerr << "error: figure: cannot create output directory " << g.out_dir
                  << "\n";
        return 2;
    }

    // Param-major rows, one column per curve.
    std::vector<std::vector<std::string>> cells(
        fig->params.size(), std::vector<std::string>(fig->curves.size()));
    for (size_t ci = 0; ci < fig->curves.size(); ++ci) {
        for (size_t pi = 0; pi < fig->params.size(); ++pi) {
            const std::string param_txt = fmt9(fig->params[pi]);
            const auto expr = substitute(fig->curves[ci].tmpl, param_txt);
            ncw_nc_result r{};
            const ncw_status s = compute_nc(*expr, g, &r, nullptr);
            cells[pi][ci] = s == NCW_OK ? fmt9(r.value) : "";
            if (s != NCW_OK)
                std::cerr << "warning: figure " << id << ": " << *expr << ": "
                          << ncw_status_name(s) << "\n";
        }
    }

    const std::filesystem::path path = std::filesystem::path(g.out_dir) / fig->file;
    if (g.format == "json") {
        json j;
        j["figure"] = id;
        j["param"] = fig->param_name;
        json rows = json::array();
        for (size_t pi = 0; pi < fig->params.size(); ++pi) {
            json row;
            row[fig->param_name] = fig->params[pi];
            for (size_t ci = 0; ci < fig->curves.size(); ++ci)
                row[fig->curves[ci].label] =
                    cells[pi][ci].empty() ? json(nullptr) : json(std::stod(cells[pi][ci]));
            rows.push_back(row);
        }
        j["rows"] = rows;
        const std::filesystem::path jpath =
            std::filesystem::path(g.out_dir) / (std::string("fig") + id + ".json");
        std::ofstream os(jpath);
        os << j.dump(2) << "\n";
        std::cout << "wrote " << jpath.string() << "\n";
        return 0;
    }

    std::ofstream os(path, std::ios::binary);
    os << fig->param_name;
    for (const Curve& c : fig->curves) os << "," << c.label;
    os << "\n";
    for (size_t pi = 0; pi < fig->params.size(); ++pi) {
        os << fmt9(fig->params[pi]);
        for (size_t ci = 0; ci < fig->curves.size(); ++ci) os << "," << cells[pi][ci];
        os << "\n";
    }
    os.close();
    std::cout << "wrote " << path.string() << "\n";
    return 0;
}

void verify_print_cb(const char* name, int pass, const char* detail, void* user) {
    int* counts = static_cast<int*>(user);
    ++counts[0];
    if (!pass) ++counts[1];
    std::printf("%-4s %-42s %s\n", pass ? "PASS" : "FAIL", name, detail);
}

int cmd_verify(const GlobalOpts& g) {
    int counts[2] = {0, 0};
    int failures = 0;
    const ncw_status s =
        ncw_verify_run(g.dim, g.tol, verify_print_cb, counts, &failures);
    if (s != NCW_OK) {
        print_error("verify", s);
        return 2;
    }
    std::printf("%d/%d checks passed\n", counts[0] - counts[1], counts[0]);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wehrl-entropy nonclassicality of single-mode optical states"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--dim", g.dim,
                   "truncation dimension (0 = auto: start at 64, grow to fit)")
        ->capture_default_str();
    app.add_option("--tol", g.tol, "quadrature tolerance")->capture_default_str();
    app.add_option("--out", g.out_dir, "output directory for figure CSVs")
        ->capture_default_str();
    app.add_option("--format", g.format, "csv or json (sweep/figure)")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    std::string expr;
    CLI::App* compute = app.add_subcommand("compute", "N_w of one state expression");
    compute->add_option("expr", expr, "state expression, e.g. \"A^2 S(0.5) vac\"")
        ->required();

    std::string tmpl;
    std::string range;
    CLI::App* sweep =
        app.add_subcommand("sweep", "sweep the {} placeholder over a range");
    sweep->add_option("template", tmpl, "expression template with {}")->required();
    sweep->add_option("--range", range, "start:stop:count, e.g. 0:1:11")->required();

    std::string figure_id;
    CLI::App* figure = app.add_subcommand("figure", "emit a figure dataset");
    figure->add_option("id", figure_id, "one of 1a,1b,2a,2b,3a,3b,4a,4b")->required();

    CLI::App* verify =
        app.add_subcommand("verify", "run the oracle and invariance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (compute->parsed()) return cmd_compute(expr, g);
    if (sweep->parsed()) {
        double start = 0.0, stop = 0.0;
        int count = 0;
        if (std::sscanf(range.c_str(), "%lf:%lf:%d", &start, &stop, &count) != 3) {
            std::cerr << "error: sweep: --range must be start:stop:count\n";
            return 2;
        }
        return cmd_sweep(tmpl, start, stop, count, g);
    }
    if (figure->parsed()) return cmd_figure(figure_id, g);
    if (verify->parsed()) return cmd_verify(g);
    return 2;
}
