#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "ltswave/svg.hpp"

namespace ltswave::cli {

namespace {

struct HelpRequested {};

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

const std::set<std::string>& allowed_keys() {
    static const std::set<std::string> keys = {
        "scenario", "variant", "weighting", "c_s", "h_list", "p",
        "nu",       "courant", "T",         "output", "plot",  "assert"};
    return keys;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (!allowed_keys().count(key))
            throw ConfigError(
                "unknown config key '" + key +
                "'; allowed: scenario, variant, weighting, c_s, h_list, p, "
                "nu, courant, T, output, plot, assert");
        kv[key] = value;
    }
    return kv;
}

double parse_real(const std::string& key, const std::string& s) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a real number, got '" +
                          s + "'");
    }
}

int parse_int(const std::string& key, const std::string& s) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + s +
                          "'");
    }
}

bool parse_bool(const std::string& key, const std::string& s) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ConfigError("key '" + key + "': expected true/false, got '" + s +
                      "'");
}

std::vector<double> parse_real_list(const std::string& key,
                                    const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_real(key, trim(item)));
    if (out.empty())
        throw ConfigError("key '" + key + "': expected at least one value");
    return out;
}

Variant parse_variant(const std::string& s) {
    if (s == "lf-lts") return Variant::lf_lts;
    if (s == "split-lfc") return Variant::split_lfc;
    if (s == "plain-lf") return Variant::plain_lf;
    throw ConfigError(
        "key 'variant': must be lf-lts, split-lfc or plain-lf, got '" + s +
        "'");
}

void check_scenario_name(const std::string& name) {
    try {
        (void)scenario_by_name(name);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("key 'scenario': ") + e.what());
    }
}

std::string output_path(const RunConfig& cfg) {
    return cfg.output.empty() ? cfg.command + ".csv" : cfg.output;
}

std::string plot_path(const std::string& csv_path, const std::string& suffix) {
    std::string stem = csv_path;
    if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv")
        stem.resize(stem.size() - 4);
    return stem + suffix + ".svg";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << content;
    if (!out.good())
        throw std::runtime_error("failed writing output file: " + path);
}

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::lf_lts: return "lf-lts";
        case Variant::split_lfc: return "split-lfc";
        default: return "plain-lf";
    }
}

void append_meta(std::ostringstream& csv, const RunConfig& cfg,
                 const Scenario& scen, int s_layers, double dt) {
    csv << "# command = " << cfg.command << "\n"
        << "# scenario = " << scen.name << "\n"
        << "# variant = " << variant_name(cfg.variant) << "\n"
        << "# weighting = " << (cfg.weighting.weighted ? "weighted" : "abrupt")
        << "\n"
        << "# p = " << scen.ratio << "\n"
        << "# nu = " << fmt12(scen.nu) << "\n"
        << "# courant = " << fmt12(scen.courant) << "\n"
        << "# s_layers = " << s_layers << "\n";
    if (dt > 0.0) csv << "# dt = " << fmt12(dt) << "\n";
}

// Error-measuring commands record what the errors are taken against.
void append_baseline_meta(std::ostringstream& csv, const Scenario& scen) {
    if (scen.has_exact)
        csv << "# errors_against = exact-solution\n";
    else if (scen.baseline == BaselineKind::matched_mesh_fine_dt)
        csv << "# errors_against = matched-mesh-fine-dt\n";
    else
        csv << "# errors_against = uniform-fine-mesh\n";
}

int cmd_coeffs(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    int p = cfg.p > 0 ? cfg.p : 2;
    double nu = cfg.nu_list.empty() ? 0.01 : cfg.nu_list.front();
    StabilizedCoeffs c = coefficients(p, nu);

    std::ostringstream csv;
    csv << "table,k,l,value\n";
    csv << "delta,,," << fmt12(c.delta) << "\n";
    csv << "omega,,," << fmt12(c.omega) << "\n";
    for (int k = 0; k < p; ++k)
        for (int l = -1; l <= p - k; ++l)
            csv << "beta," << k << "," << l << "," << fmt12(c.beta(k, l))
                << "\n";
    for (int k = 0; k < p; ++k)
        csv << "gamma," << k << ",," << fmt12(c.gamma(k)) << "\n";

    std::string path = output_path(cfg);
    write_file(path, csv.str());
    out << "wrote " << path << "\n";

    if (cfg.do_assert && std::abs(c.beta(0, 0) * c.delta - 1.0) > 1e-14) {
        err << "assertion failed: beta(0,0)*delta != 1\n";
        return exit_assert_failed;
    }
    return exit_ok;
}

struct BuiltCase {
    FeSpace space;
    StabilizedCoeffs cheb;
    IntegratorConfig icfg;
    int s_layers = 1;
};

BuiltCase build_case(const RunConfig& cfg, const Scenario& scen, double h) {
    RegionSpec rs;
    rs.a = scen.a;
    rs.b = scen.b;
    rs.fine_interval = scen.fine_interval;
    rs.h_coarse = h;
    rs.refinement_ratio = scen.ratio;
    Mesh1D mesh = build_locally_refined(rs);

    BuiltCase built;
    built.s_layers = transition_layers_for(cfg.weighting, mesh.h_coarse);
    built.space =
        assemble(mesh, scen.degree, scen.boundary, 1.0, built.s_layers);
    built.cheb = coefficients(scen.ratio, scen.nu);
    built.icfg.p = scen.ratio;
    built.icfg.nu = scen.nu;
    built.icfg.dt =
        practical_dt(built.space.mesh.h_coarse, scen.nu, scen.courant);
    built.icfg.variant = cfg.variant;
    built.icfg.s_layers = built.s_layers;
    return built;
}

int cmd_run(const RunConfig& cfg, const Scenario& scen, double h,
            std::ostream& out, std::ostream& err) {
    BuiltCase built = build_case(cfg, scen, h);
    const double length = scen.b - scen.a;
    const double probes[3] = {scen.a + 0.25 * length, scen.a + 0.5 * length,
                              scen.a + 0.75 * length};

    std::ostringstream rows;
    std::vector<double> ts, energies, p1, p2, p3;
    RunOptions opts;
    opts.observer = [&](const LtsState& st, double e) {
        double v1 = eval_field(built.space, st.u_curr, probes[0]);
        double v2 = eval_field(built.space, st.u_curr, probes[1]);
        double v3 = eval_field(built.space, st.u_curr, probes[2]);
        rows << st.n << "," << fmt12(st.t) << "," << fmt12(e) << ","
             << fmt12(v1) << "," << fmt12(v2) << "," << fmt12(v3) << "\n";
        ts.push_back(st.t);
        energies.push_back(e);
        p1.push_back(v1);
        p2.push_back(v2);
        p3.push_back(v3);
    };
    RunResult res = run(built.space, built.cheb, built.icfg, scen.f, scen.u0,
                        scen.v0, scen.T, opts);

    std::ostringstream csv;
    append_meta(csv, cfg, scen, built.s_layers, built.icfg.dt);
    csv << "# mesh = " << mesh_summary_json(built.space.mesh) << "\n";
    csv << "step,t,energy,u_quarter,u_mid,u_three_quarter\n";
    csv << rows.str();
    csv << "# snapped_T = " << fmt12(res.snapped_T) << "\n";
    if (res.blowup)
        csv << "# blowup at step " << res.blowup_step << "\n";

    std::string path = output_path(cfg);
    write_file(path, csv.str());
    out << "wrote " << path << "\n";

    if (cfg.plot) {
        PlotSpec energy_plot;
        energy_plot.title = scen.name + ": modified energy";
        energy_plot.x_label = "t";
        energy_plot.y_label = "E";
        energy_plot.series.push_back({"energy", ts, energies});
        write_svg_plot(plot_path(path, "_energy"), energy_plot);

        PlotSpec probe_plot;
        probe_plot.title = scen.name + ": solution probes";
        probe_plot.x_label = "t";
        probe_plot.y_label = "u";
        probe_plot.series.push_back({"x=1/4 span", ts, p1});
        probe_plot.series.push_back({"x=1/2 span", ts, p2});
        probe_plot.series.push_back({"x=3/4 span", ts, p3});
        write_svg_plot(plot_path(path, "_probes"), probe_plot);
        out << "wrote " << plot_path(path, "_energy") << " and "
            << plot_path(path, "_probes") << "\n";
    }

    if (res.blowup) {
        err << "numerical blowup at step " << res.blowup_step << "\n";
        return exit_blowup;
    }
    if (cfg.do_assert) {
        for (double e : energies)
            if (!std::isfinite(e)) {
                err << "assertion failed: non-finite energy recorded\n";
                return exit_assert_failed;
            }
    }
    return exit_ok;
}

int cmd_converge(const RunConfig& cfg, const Scenario& scen,
                 const std::vector<double>& hs, std::ostream& out,
                 std::ostream& err) {
    ReferenceCache cache;
    ErrorReport rep =
        convergence_study(scen, hs, cfg.variant, cfg.weighting, &cache);

    std::ostringstream csv;
    append_meta(csv, cfg, scen, transition_layers_for(cfg.weighting, hs.front()),
                -1.0);
    append_baseline_meta(csv, scen);
    csv << "h,dofs,errL2rel,errH1rel,runtime_s\n";
    for (const ErrorRow& row : rep.rows) {
        csv << fmt12(row.h) << "," << row.dofs << ",";
        if (row.blowup)
            csv << "nan,nan";
        else
            csv << fmt12(row.err_l2_rel) << "," << fmt12(row.err_h1_rel);
        csv << "," << fmt12(row.runtime_s) << "\n";
    }
    csv << "# snapped_T =";
    for (const ErrorRow& row : rep.rows) csv << " " << fmt12(row.snapped_T);
    csv << "\n";
    for (const ErrorRow& row : rep.rows)
        if (row.blowup)
            csv << "# blowup: h = " << fmt12(row.h) << " at step "
                << row.blowup_step << "\n";
    if (rep.rows.size() >= 2 && std::isfinite(rep.slope_l2)) {
        csv << "# slope_l2 = " << fmt12(rep.slope_l2) << "\n";
        csv << "# slope_h1 = " << fmt12(rep.slope_h1) << "\n";
    }

    std::string path = output_path(cfg);
    write_file(path, csv.str());
    out << "wrote " << path << "\n";

    if (cfg.plot) {
        PlotSpec plot;
        plot.title = scen.name + ": convergence (" +
                     variant_name(cfg.variant) + ", " +
                     (cfg.weighting.weighted ? "weighted" : "abrupt") + ")";
        plot.x_label = "h";
        plot.y_label = "relative error";
        plot.log_x = plot.log_y = true;
        plot.markers = true;
        PlotSeries l2{"L2", {}, {}}, h1{"H1", {}, {}};
        for (const ErrorRow& row : rep.rows) {
            if (row.blowup) continue;
            l2.x.push_back(row.h);
            l2.y.push_back(row.err_l2_rel);
            h1.x.push_back(row.h);
            h1.y.push_back(row.err_h1_rel);
        }
        plot.series = {l2, h1};
        write_svg_plot(plot_path(path, ""), plot);
        out << "wrote " << plot_path(path, "") << "\n";
    }

    if (rep.any_blowup) {
        err << "numerical blowup in at least one row\n";
        return exit_blowup;
    }
    if (cfg.do_assert) {
        for (size_t i = 1; i < rep.rows.size(); ++i)
            if (!(rep.rows[i].err_l2_rel < rep.rows[i - 1].err_l2_rel)) {
                err << "assertion failed: errL2rel not strictly decreasing\n";
                return exit_assert_failed;
            }
        if (rep.rows.size() >= 2 && !(rep.slope_l2 >= 1.0)) {
            err << "assertion failed: L2 slope " << fmt12(rep.slope_l2)
                << " below 1\n";
            return exit_assert_failed;
        }
    }
    return exit_ok;
}

int cmd_compare(const RunConfig& cfg, const Scenario& scen,
                const std::vector<double>& hs, std::ostream& out,
                std::ostream& err) {
    ReferenceCache cache;
    CompareReport rep = compare_study(scen, hs, cfg.weighting, &cache);

    std::ostringstream csv;
    append_meta(csv, cfg, scen, transition_layers_for(cfg.weighting, hs.front()),
                -1.0);
    append_baseline_meta(csv, scen);
    csv << "h,dofs,errL2rel_lflts,errL2rel_splitlfc,ratio,runtime_s\n";
    for (const CompareRow& row : rep.rows)
        csv << fmt12(row.h) << "," << row.dofs << ","
            << fmt12(row.err_l2_lflts) << "," << fmt12(row.err_l2_splitlfc)
            << "," << fmt12(row.ratio) << "," << fmt12(row.runtime_s) << "\n";
    csv << "# snapped_T =";
    for (const CompareRow& row : rep.rows) csv << " " << fmt12(row.snapped_T);
    csv << "\n";

    std::string path = output_path(cfg);
    write_file(path, csv.str());
    out << "wrote " << path << "\n";

    if (cfg.plot) {
        PlotSpec plot;
        plot.title = scen.name + ": source treatment comparison";
        plot.x_label = "h";
        plot.y_label = "relative L2 error";
        plot.log_x = plot.log_y = true;
        plot.markers = true;
        PlotSeries lts{"lf-lts", {}, {}}, split{"split-lfc", {}, {}};
        for (const CompareRow& row : rep.rows) {
            lts.x.push_back(row.h);
            lts.y.push_back(row.err_l2_lflts);
            split.x.push_back(row.h);
            split.y.push_back(row.err_l2_splitlfc);
        }
        plot.series = {lts, split};
        write_svg_plot(plot_path(path, ""), plot);
        out << "wrote " << plot_path(path, "") << "\n";
    }

    if (rep.any_blowup) {
        err << "numerical blowup in at least one row\n";
        return exit_blowup;
    }
    if (cfg.do_assert) {
        for (const CompareRow& row : rep.rows)
            if (!(row.ratio >= 2.0 && row.ratio <= 5.0)) {
                err << "assertion failed: ratio " << fmt12(row.ratio)
                    << " at h = " << fmt12(row.h) << " outside [2, 5]\n";
                return exit_assert_failed;
            }
    }
    return exit_ok;
}

int cmd_scan(const RunConfig& cfg, const Scenario& scen, double h,
             std::ostream& out, std::ostream& err) {
    BuiltCase built = build_case(cfg, scen, h);
    std::vector<double> nus =
        cfg.nu_list.empty() ? std::vector<double>{0.0, 0.01} : cfg.nu_list;
    std::vector<double> grid;
    for (int j = 0; j <= 40; ++j)
        grid.push_back((0.05 + 0.025 * j) * built.space.mesh.h_coarse);
    double T = cfg.T > 0 ? scen.T : (scen.b - scen.a);

    IntegratorConfig tmpl = built.icfg;
    StabilityScan scan = stability_scan(built.space, nus, grid, tmpl, T);

    std::ostringstream csv;
    append_meta(csv, cfg, scen, built.s_layers, -1.0);
    csv << "# scan_T = " << fmt12(T) << "\n";
    csv << "dt";
    for (double nu : nus) csv << ",nu_" << fmt12(nu);
    csv << "\n";
    for (size_t j = 0; j < grid.size(); ++j) {
        csv << fmt12(grid[j]);
        for (size_t i = 0; i < nus.size(); ++i) {
            long b = scan.blowup_step[i][j];
            if (b < 0)
                csv << ",stable";
            else
                csv << ",blowup@" << b;
        }
        csv << "\n";
    }

    std::string path = output_path(cfg);
    write_file(path, csv.str());
    out << "wrote " << path << "\n";

    if (cfg.plot) {
        PlotSpec plot;
        plot.title = scen.name + ": stability scan (0 = stable)";
        plot.x_label = "dt";
        plot.y_label = "blowup step";
        plot.markers = true;
        for (size_t i = 0; i < nus.size(); ++i) {
            PlotSeries s{"nu=" + fmt12(nus[i]), {}, {}};
            for (size_t j = 0; j < grid.size(); ++j) {
                s.x.push_back(grid[j]);
                s.y.push_back(scan.blowup_step[i][j] < 0
                                  ? 0.0
                                  : double(scan.blowup_step[i][j]));
            }
            plot.series.push_back(s);
        }
        write_svg_plot(plot_path(path, ""), plot);
        out << "wrote " << plot_path(path, "") << "\n";
    }

    if (cfg.do_assert) {
        bool any_stable = false;
        for (const auto& per_nu : scan.blowup_step)
            for (long b : per_nu)
                if (b < 0) any_stable = true;
        if (!any_stable) {
            err << "assertion failed: no stable dt in scan\n";
            return exit_assert_failed;
        }
    }
    return exit_ok;
}

}  // namespace

RunConfig parse_config(int argc, const char* const* argv) {
    CLI::App app{"1D wave equation solver with stabilized local time stepping"};
    app.name("ltswave");
    // Long-only help; the default -h short flag would collide with --h.
    app.set_help_flag("--help", "print usage and exit");

    std::string command, config_path, scenario, variant, weighting, output;
    std::vector<double> h_vals, nu_vals;
    double c_s = 0.0, courant = 0.0, T = 0.0;
    int p = 0;
    bool plot = false, do_assert = false;

    app.add_option("command", command,
                   "one of: run, converge, scan, coeffs, compare")
        ->required();
    app.add_option("--config", config_path, "flat key = value config file");
    app.add_option("--scenario", scenario, "scenario name");
    app.add_option("--variant", variant, "lf-lts | split-lfc | plain-lf");
    app.add_option("--weighting", weighting, "abrupt | weighted");
    app.add_option("--c-s,--c_s", c_s,
                   "physical width of the weighted transition");
    app.add_option("--h,--h-list,--h_list", h_vals,
                   "coarse mesh sizes, descending")
        ->delimiter(',');
    app.add_option("--p", p, "substeps per global step");
    app.add_option("--nu", nu_vals, "damping parameter (scan accepts several)")
        ->delimiter(',');
    app.add_option("--courant", courant, "dt = e^{-nu} h courant");
    app.add_option("--T", T, "final time");
    app.add_option("--output,-o", output, "output CSV path");
    app.add_flag("--plot", plot, "also write SVG plots");
    app.add_flag("--assert", do_assert, "enable built-in result assertions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        throw HelpRequested{};
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    std::map<std::string, std::string> file_kv;
    if (!config_path.empty()) file_kv = read_config_file(config_path);
    auto in_file = [&](const char* key) { return file_kv.count(key) > 0; };

    RunConfig cfg;
    cfg.command = command;
    if (cfg.command != "run" && cfg.command != "converge" &&
        cfg.command != "scan" && cfg.command != "coeffs" &&
        cfg.command != "compare")
        throw ConfigError("unknown command '" + command +
                          "'; expected run, converge, scan, coeffs or compare");

    if (app.count("--scenario"))
        cfg.scenario = scenario;
    else if (in_file("scenario"))
        cfg.scenario = file_kv["scenario"];
    check_scenario_name(cfg.scenario);

    if (app.count("--variant"))
        cfg.variant = parse_variant(variant);
    else if (in_file("variant"))
        cfg.variant = parse_variant(file_kv["variant"]);

    std::string weighting_value;
    if (app.count("--weighting"))
        weighting_value = weighting;
    else if (in_file("weighting"))
        weighting_value = file_kv["weighting"];
    if (!weighting_value.empty()) {
        if (weighting_value == "weighted")
            cfg.weighting.weighted = true;
        else if (weighting_value == "abrupt")
            cfg.weighting.weighted = false;
        else
            throw ConfigError("key 'weighting': must be abrupt or weighted, got '" +
                              weighting_value + "'");
    }

    if (app.count("--c-s"))
        cfg.weighting.c_s = c_s;
    else if (in_file("c_s"))
        cfg.weighting.c_s = parse_real("c_s", file_kv["c_s"]);
    if (!(cfg.weighting.c_s > 0.0))
        throw ConfigError("key 'c_s': must be positive");

    if (app.count("--h"))
        cfg.h_list = h_vals;
    else if (in_file("h_list"))
        cfg.h_list = parse_real_list("h_list", file_kv["h_list"]);
    for (size_t i = 0; i < cfg.h_list.size(); ++i) {
        if (!(cfg.h_list[i] > 0.0))
            throw ConfigError("key 'h_list': values must be positive");
        if (i > 0 && !(cfg.h_list[i] < cfg.h_list[i - 1]))
            throw ConfigError("key 'h_list': values must descend strictly");
    }

    if (app.count("--p"))
        cfg.p = p;
    else if (in_file("p"))
        cfg.p = parse_int("p", file_kv["p"]);
    if (cfg.p != -1 && (cfg.p < 1 || cfg.p > 64))
        throw ConfigError("key 'p': must be in [1, 64]");

    if (app.count("--nu"))
        cfg.nu_list = nu_vals;
    else if (in_file("nu"))
        cfg.nu_list = parse_real_list("nu", file_kv["nu"]);
    for (double nu : cfg.nu_list)
        if (!(nu >= 0.0 && nu <= 0.5))
            throw ConfigError("key 'nu': values must lie in [0, 1/2]");
    if (cfg.command != "scan" && cfg.nu_list.size() > 1)
        throw ConfigError("key 'nu': command '" + cfg.command +
                          "' takes a single value");

    if (app.count("--courant"))
        cfg.courant = courant;
    else if (in_file("courant"))
        cfg.courant = parse_real("courant", file_kv["courant"]);
    if (cfg.courant != -1.0 && !(cfg.courant > 0.0))
        throw ConfigError("key 'courant': must be positive");

    if (app.count("--T"))
        cfg.T = T;
    else if (in_file("T"))
        cfg.T = parse_real("T", file_kv["T"]);
    if (cfg.T != -1.0 && !(cfg.T > 0.0))
        throw ConfigError("key 'T': must be positive");

    if (app.count("--output"))
        cfg.output = output;
    else if (in_file("output"))
        cfg.output = file_kv["output"];

    if (app.count("--plot"))
        cfg.plot = plot;
    else if (in_file("plot"))
        cfg.plot = parse_bool("plot", file_kv["plot"]);

    if (app.count("--assert"))
        cfg.do_assert = do_assert;
    else if (in_file("assert"))
        cfg.do_assert = parse_bool("assert", file_kv["assert"]);

    return cfg;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.command == "coeffs") return cmd_coeffs(cfg, out, err);

        Scenario scen = scenario_by_name(cfg.scenario);
        if (cfg.p > 0) scen.ratio = cfg.p;
        if (!cfg.nu_list.empty()) scen.nu = cfg.nu_list.front();
        if (cfg.courant > 0.0) scen.courant = cfg.courant;
        if (cfg.T > 0.0) scen.T = cfg.T;
        scen.weighting = cfg.weighting;
        std::vector<double> hs =
            cfg.h_list.empty() ? default_h_list(scen) : cfg.h_list;

        if (cfg.command == "run")
            return cmd_run(cfg, scen, hs.front(), out, err);
        if (cfg.command == "converge")
            return cmd_converge(cfg, scen, hs, out, err);
        if (cfg.command == "compare")
            return cmd_compare(cfg, scen, hs, out, err);
        return cmd_scan(cfg, scen, hs.front(), out, err);
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int main_entry(int argc, const char* const* argv) {
    try {
        RunConfig cfg = parse_config(argc, argv);
        return execute(cfg, std::cout, std::cerr);
    } catch (const HelpRequested&) {
        return exit_ok;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    }
}

}  // namespace ltswave::cli
