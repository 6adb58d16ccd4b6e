#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "semiquat/commands.hpp"
#include "semiquat/config.hpp"
#include "semiquat/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"semi-real quaternionic curve toolkit"};
    app.require_subcommand(1);

    std::string config_path, curve, metric, grid, out_path, format;
    double cval = 0.0;
    int drop_axis = 0;

    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--curve", curve,
                   "builtin name (example31, slice3-<seed>, block2-<seed>) or CSV path");
    app.add_option("--c", cval, "involute constant");
    app.add_option("--grid", grid, "sample grid a:b:n");
    app.add_option("--metric", metric, "metric name: default or paper24");
    app.add_option("--out", out_path, "output path (used as a prefix by `project`)");
    app.add_option("--format", format, "output format: csv or json");
    app.add_option("--drop-axis", drop_axis, "component dropped by `project` (1-4)");

    CLI::App* sub_frenet = app.add_subcommand("frenet", "frame and curvatures along the grid");
    CLI::App* sub_involute = app.add_subcommand("involute", "involute positions and residuals");
    CLI::App* sub_verify = app.add_subcommand("verify", "run the verification checks, emit JSON");
    CLI::App* sub_project = app.add_subcommand("project", "3D projection data for all four curves");
    CLI::App* sub_example = app.add_subcommand("example", "walk through the builtin example");
    for (CLI::App* sub : {sub_frenet, sub_involute, sub_verify, sub_project, sub_example})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        semiquat::RunConfig cfg = config_path.empty() ? semiquat::default_config()
                                                      : semiquat::load_config(config_path);
        if (app.count("--curve")) cfg.curve = curve;
        if (app.count("--c")) cfg.c = cval;
        if (app.count("--grid")) semiquat::apply_grid_string(cfg, grid);
        if (app.count("--metric")) cfg.metric = semiquat::metric_by_name(metric);
        if (app.count("--out")) cfg.output.path = out_path;
        if (app.count("--format")) cfg.output.format = format;
        if (app.count("--drop-axis")) cfg.drop_axis = drop_axis;
        cfg.validate();

        if (sub_frenet->parsed()) {
            semiquat::write_output(cfg, "frenet", semiquat::cmd_frenet(cfg));
            return 0;
        }
        if (sub_involute->parsed()) {
            semiquat::write_output(cfg, "involute", semiquat::cmd_involute(cfg));
            return 0;
        }
        if (sub_verify->parsed()) {
            const semiquat::VerifyReport rep = semiquat::cmd_verify(cfg);
            semiquat::write_report(cfg, rep);
            return rep.pass ? 0 : 1;
        }
        if (sub_project->parsed()) {
            semiquat::write_project_outputs(cfg, semiquat::cmd_project(cfg, cfg.drop_axis));
            return 0;
        }
        if (sub_example->parsed()) return semiquat::cmd_example(cfg, std::cout);
    } catch (const semiquat::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
