// Command-line front end: solves, decisions, sweeps and exports.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmc/analysis.hpp"
#include "cmc/csv.hpp"
#include "cmc/errors.hpp"
#include "cmc/isoperimetric.hpp"
#include "cmc/moduli.hpp"
#include "cmc/surface_export.hpp"

using json = nlohmann::json;

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitUsage = 64;
constexpr const char* kSchema = "cmc-tubes/1";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Options that may also come from the --config file. Keyed by long name.
struct ConfigBindings {
    std::map<std::string, std::pair<CLI::Option*, std::function<void(const json&)>>> slots;

    template <class T>
    CLI::Option* add(CLI::App* app, const std::string& name, T& target, const std::string& help) {
        CLI::Option* opt = app->add_option("--" + name, target, help);
        slots[app->get_name() + "/" + name] = {opt, [&target](const json& j) { target = j.get<T>(); }};
        return opt;
    }

    /// Required, but the value may come from the config file instead of a flag.
    template <class T>
    CLI::Option* req(CLI::App* app, const std::string& name, T& target, const std::string& help) {
        required.insert(app->get_name() + "/" + name);
        return add(app, name, target, help);
    }

    std::set<std::string> required;
    std::set<std::string> from_config;
};

/// "lo:hi:n" or "lo:hi:n:log".
std::vector<double> parse_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3 && !(parts.size() == 4 && parts[3] == "log"))
        throw UsageError("grid must look like lo:hi:n or lo:hi:n:log, got '" + spec + "'");
    try {
        const double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
        const int n = std::stoi(parts[2]);
        if (n < 1) throw UsageError("grid size must be >= 1");
        return parts.size() == 4 ? cmc::logspace(lo, hi, n) : cmc::linspace(lo, hi, n);
    } catch (const std::invalid_argument&) {
        throw UsageError("unparsable grid '" + spec + "'");
    }
}

json space_json(const cmc::AmbientSpace& s) {
    return {{"kappa", s.kappa()}, {"tau", s.tau()}, {"epsilon", s.epsilon()}};
}

std::string num(double x) { return std::isfinite(x) ? cmc::fmt17(x) : "nan"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Screw-motion CMC tubes in E(kappa,tau)"};
    app.require_subcommand(1);

    double kappa = 0.0, tau = 0.0, a = 0.0, H = 0.0, J = 0.0, theta_span = NAN;
    double tol = 1e-13, quad_tol = 1e-10;
    int scan = 64, m = 0, res_sigma = 129, res_theta = 129;
    bool as_json = false, reduce_z = false;
    std::string config_path, a_grid, H_grid, out_path, curve_path;
    std::vector<int> m_list{1, 2};

    app.add_option("--tol", tol, "root-finding tolerance");
    app.add_option("--quad-tol", quad_tol, "quadrature absolute and relative tolerance");
    app.add_option("--scan", scan, "scan points per energy bracket");
    app.add_flag("--json", as_json, "JSON output where a text form exists");
    app.add_option("--config", config_path, "JSON config (schema cmc-tubes/1); flags win");

    ConfigBindings cfg;
    auto space_opts = [&](CLI::App* sub) {
        cfg.req(sub, "kappa", kappa, "base curvature");
        cfg.add(sub, "tau", tau, "bundle curvature");
    };

    auto* classify = app.add_subcommand("classify", "classify a point of the moduli space");
    space_opts(classify);
    cfg.add(classify, "a", a, "pitch");
    cfg.req(classify, "H", H, "mean curvature");
    cfg.req(classify, "J", J, "energy");

    auto* tube = app.add_subcommand("tube", "solve for the tube energy (JSON)");
    space_opts(tube);
    cfg.req(tube, "a", a, "pitch");
    cfg.req(tube, "H", H, "mean curvature");
    cfg.add(tube, "curve-csv", curve_path, "also write the profile curve CSV");

    auto* h0 = app.add_subcommand("h0", "boundary mean curvature H0(a) over a pitch grid (CSV)");
    space_opts(h0);
    cfg.req(h0, "a-grid", a_grid, "lo:hi:n[:log]");

    auto* family = app.add_subcommand("family", "tube family over an H grid (CSV)");
    space_opts(family);
    cfg.req(family, "a", a, "pitch");
    cfg.req(family, "H-grid", H_grid, "lo:hi:n[:log]");

    auto* embed = app.add_subcommand("embed", "embeddedness verdict (JSON)");
    space_opts(embed);
    auto* embed_a = cfg.add(embed, "a", a, "pitch (non-compact condition)");
    auto* embed_m = cfg.add(embed, "m", m, "Berger closing pitch a_{1,m}");
    embed_a->excludes(embed_m);
    cfg.req(embed, "H", H, "mean curvature");

    auto* foliation = app.add_subcommand("foliation", "foliation verdict (JSON)");
    space_opts(foliation);
    cfg.req(foliation, "a", a, "pitch");

    auto* iso = app.add_subcommand("isoprofile", "Berger volume/area sweep (CSV)");
    space_opts(iso);
    cfg.add(iso, "m-list", m_list, "closing numbers m of a_{1,m}")->delimiter(',');
    cfg.req(iso, "H-grid", H_grid, "lo:hi:n[:log]");

    auto* mesh = app.add_subcommand("mesh", "export a tube as OBJ");
    space_opts(mesh);
    auto* mesh_a = cfg.add(mesh, "a", a, "pitch");
    auto* mesh_m = cfg.add(mesh, "m", m, "Berger closing pitch a_{1,m}");
    mesh_a->excludes(mesh_m);
    cfg.req(mesh, "H", H, "mean curvature");
    cfg.req(mesh, "out", out_path, "OBJ path");
    cfg.add(mesh, "res-sigma", res_sigma, "profile samples");
    cfg.add(mesh, "res-theta", res_theta, "angular samples");
    cfg.add(mesh, "theta-span", theta_span, "angular extent (default 2*pi*m or 2*pi)");
    mesh->add_flag("--reduce-z", reduce_z, "fold z by the Berger fiber length");

    auto* x0 = app.add_subcommand("x0", "print the constant x0 with x artanh(x) = 1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw UsageError("cannot read config " + config_path);
            json c;
            try {
                c = json::parse(in);
            } catch (const json::exception& e) {
                throw UsageError(std::string("bad config JSON: ") + e.what());
            }
            if (c.value("schema", std::string()) != kSchema)
                throw UsageError(std::string("config schema must be ") + kSchema);
            CLI::App* sub = app.get_subcommands().front();
            for (const auto& [key, value] : c.items()) {
                if (key == "schema") continue;
                if (key == "tol" && app.count("--tol") == 0) tol = value.get<double>();
                else if (key == "quad-tol" && app.count("--quad-tol") == 0) quad_tol = value.get<double>();
                else if (key == "scan" && app.count("--scan") == 0) scan = value.get<int>();
                else if (key == "tol" || key == "quad-tol" || key == "scan") continue;
                else {
                    const auto it = cfg.slots.find(sub->get_name() + "/" + key);
                    if (it == cfg.slots.end())
                        throw UsageError("config key '" + key + "' unknown for " + sub->get_name());
                    if (it->second.first->count() == 0) it->second.second(value);
                    cfg.from_config.insert(it->first);
                }
            }
        }

        const auto given = [&](const std::string& key) {
            return cfg.slots.at(key).first->count() > 0 || cfg.from_config.contains(key);
        };
        if (!x0->parsed()) {
            CLI::App* sub = app.get_subcommands().front();
            for (const auto& key : cfg.required) {
                if (!key.starts_with(sub->get_name() + "/")) continue;
                if (!given(key))
                    throw UsageError("--" + key.substr(key.find('/') + 1) + " is required");
            }
        }

        cmc::RootFindSettings roots;
        roots.tol = tol;
        roots.scan_points = scan;
        cmc::QuadratureSettings quad;
        quad.abs_tol = quad.rel_tol = quad_tol;
        const cmc::Pitch pitch{a};

        if (x0->parsed()) {
            std::printf("%.12f\n", cmc::solve_x0());
            return 0;
        }
        const cmc::AmbientSpace space(kappa, tau);

        if (classify->parsed()) {
            const auto cls = cmc::classify(space, pitch, {H, J}, 1e-9, quad);
            if (as_json) {
                json out{{"space", space_json(space)}, {"a", a}, {"H", H}, {"J", J},
                         {"class", cmc::to_string(cls)}};
                if (cls != cmc::SurfaceClass::SphereType && cls != cmc::SurfaceClass::Helicoid)
                    out["delta"] = cmc::closing_defect(space, pitch, {H, J}, quad);
                std::cout << out.dump(2) << '\n';
            } else {
                std::cout << cmc::to_string(cls) << '\n';
            }
        } else if (tube->parsed()) {
            const auto sol = cmc::tube_energy(space, pitch, H, roots, quad, !curve_path.empty());
            json rs = json::array();
            for (const auto& b : sol.multiplicity_report) rs.push_back({b.lo, b.hi, b.root});
            json out{{"schema", kSchema},
                     {"space", space_json(space)},
                     {"a", a},
                     {"H", H},
                     {"J_tube", sol.point.J},
                     {"residual", sol.residual},
                     {"bracket", {sol.bracket.lo, sol.bracket.hi}},
                     {"roots", rs},
                     {"degenerate", sol.degenerate},
                     {"r_minus", sol.curve.r_minus},
                     {"r_plus", sol.curve.r_plus},
                     {"h_max", sol.curve.h_max}};
            std::cout << out.dump(2) << '\n';
            if (!curve_path.empty()) cmc::write_curve_csv(sol.curve, curve_path);
        } else if (h0->parsed()) {
            const auto grid = parse_grid(a_grid);
            struct Row {
                std::vector<double> roots;
                std::string status;
            };
            std::vector<Row> rows(grid.size());
            cmc::parallel_for(grid.size(), [&](std::size_t i) {
                const cmc::Pitch p{grid[i]};
                try {
                    rows[i].roots = cmc::boundary_H0(space, p, roots, quad);
                    rows[i].status = rows[i].roots.empty() ? "none" : "ok";
                } catch (const cmc::NotApplicable&) {
                    rows[i].roots = {0.0};
                    rows[i].status = "horizontal";
                } catch (const cmc::NoGeodesicOrbit&) {
                    rows[i].status = "no_orbit";
                } catch (const cmc::NumericError&) {
                    rows[i].status = "error";
                }
            });
            std::cout << "a,H0,roots_found,status\n";
            for (std::size_t i = 0; i < grid.size(); ++i)
                std::cout << num(grid[i]) << ','
                          << (rows[i].roots.empty() ? "nan" : num(rows[i].roots.front())) << ','
                          << rows[i].roots.size() << ',' << rows[i].status << '\n';
        } else if (family->parsed()) {
            const auto rep = cmc::tube_family(space, pitch, parse_grid(H_grid), roots, quad);
            std::cout << "H,J_tube,residual,r_minus,r_plus,h_max,class,roots_found\n";
            for (const auto& e : rep.entries) {
                if (e.ok) {
                    const auto& t = e.tube;
                    std::cout << num(e.H) << ',' << num(t.point.J) << ',' << num(t.residual) << ','
                              << num(t.curve.r_minus) << ',' << num(t.curve.r_plus) << ','
                              << num(t.curve.h_max) << ",Tube," << t.multiplicity_report.size()
                              << '\n';
                } else {
                    const bool none = e.error.rfind("NoTube", 0) == 0;
                    std::cout << num(e.H) << ",nan,nan,nan,nan,nan," << (none ? "NoTube" : "error")
                              << ",0\n";
                }
            }
        } else if (embed->parsed()) {
            json out{{"space", space_json(space)}};
            if (given("embed/m")) {
                const auto bp = cmc::berger_pitch(space, 1, m);
                const auto sol = cmc::tube_energy(space, bp.pitch, H, roots, quad, false);
                const auto v = cmc::embedded_berger(space, m, sol);
                out["pitch"] = {{"a", bp.pitch.a}, {"n", 1}, {"m", m}};
                out["verdict"] = v.embedded;
                out["threshold"] = v.fiber_length;
                out["witnesses"] = {{"H", H},
                                    {"J_tube", sol.point.J},
                                    {"h_max", sol.curve.h_max},
                                    {"height_span", v.height_span},
                                    {"admissible", v.admissible},
                                    {"conjugate_admissible", v.conjugate_admissible}};
            } else {
                if (!given("embed/a")) throw UsageError("embed needs --a or --m");
                const auto sol = cmc::tube_energy(space, pitch, H, roots, quad, false);
                out["pitch"] = {{"a", a}};
                out["verdict"] = cmc::embedded_noncompact(space, pitch, sol);
                out["threshold"] = 2.0 * std::numbers::pi * std::abs(a);
                out["witnesses"] = {{"H", H},
                                    {"J_tube", sol.point.J},
                                    {"h_max", sol.curve.h_max},
                                    {"height_span", 2.0 * sol.curve.h_max}};
            }
            std::cout << out.dump(2) << '\n';
        } else if (foliation->parsed()) {
            const auto v = cmc::foliation_decision(space, pitch);
            json w{{"x0", v.x0}};
            if (v.kind == cmc::FoliationKind::PartialAbove) w["H_star"] = v.H_star;
            json out{{"space", space_json(space)},
                     {"pitch", {{"a", a}}},
                     {"verdict", cmc::to_string(v.kind)},
                     {"threshold", v.threshold},
                     {"witnesses", w}};
            std::cout << out.dump(2) << '\n';
        } else if (iso->parsed()) {
            const auto rows = cmc::profile_sweep(space, m_list, parse_grid(H_grid), roots, quad);
            std::cout << "pitch_n,pitch_m,a,H,J_tube,volume,vol_complement,area,status\n";
            for (const auto& r : rows) {
                const bool ok = r.status == cmc::SweepStatus::ok;
                std::cout << r.n << ',' << r.m << ',' << num(r.a) << ',' << num(r.H) << ','
                          << (ok ? num(r.J_tube) : "nan") << ',' << (ok ? num(r.volume) : "nan")
                          << ',' << (ok ? num(r.vol_complement) : "nan") << ','
                          << (ok ? num(r.area) : "nan") << ',' << cmc::to_string(r.status) << '\n';
            }
        } else if (mesh->parsed()) {
            cmc::Pitch p = pitch;
            double span = theta_span;
            if (!given("mesh/a") && !given("mesh/m")) throw UsageError("mesh needs --a or --m");
            if (given("mesh/m")) {
                p = cmc::berger_pitch(space, 1, m).pitch;
                if (std::isnan(span)) span = 2.0 * std::numbers::pi * m;
            }
            if (std::isnan(span)) span = 2.0 * std::numbers::pi;
            const auto sol = cmc::tube_energy(space, p, H, roots, quad, false);
            const auto grid =
                cmc::sample_surface(space, p, sol, res_sigma, res_theta, span, reduce_z, quad);
            const auto stats = cmc::write_obj(grid, cmc::Chart::cylindrical, out_path);
            json out{{"out", out_path}, {"vertices", stats.vertices}, {"triangles", stats.triangles},
                     {"J_tube", sol.point.J}};
            std::cout << out.dump(2) << '\n';
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "usage error: config value: " << e.what() << '\n';
        return kExitUsage;
    } catch (const cmc::PreconditionError& e) {
        std::cerr << e.what() << '\n';
        return kExitDomain;
    } catch (const cmc::NumericError& e) {
        std::cerr << e.what() << '\n';
        return kExitNumeric;
    }
}
