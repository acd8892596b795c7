// axialcurv CLI: analyze | locus | verify.
//
// Exit codes: 0 success, 1 schema/input error, 2 corank violation,
// 3 unsupported dimensions, 4 verification failure.
#include "axialcurv/analysis.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace axialcurv;

void write_output(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream os(out);
    if (!os) throw SchemaError("cannot open output file: " + out);
    os << text;
    if (!text.empty() && text.back() != '\n') os << '\n';
}

GridSpec make_grid(const std::vector<int>& grid, const std::vector<double>& range) {
    GridSpec g;
    if (!grid.empty()) {
        if (grid.size() < 2 || grid[0] < 2 || grid[1] < 2)
            throw SchemaError("--grid expects T,G[,N] with T, G >= 2");
        g.theta_count = grid[0];
        g.gamma_count = grid[1];
    }
    if (!range.empty()) {
        if (range.size() != 2 || !(range[0] < range[1]))
            throw SchemaError("--gamma-range expects LO,HI with LO < HI");
        g.gamma_min = range[0];
        g.gamma_max = range[1];
    }
    return g;
}

AnalyzeOptions make_options(double tol, const std::vector<int>& grid,
                            const std::vector<double>& range, bool run_checks) {
    AnalyzeOptions opts;
    if (tol > 0) opts.tol = tol;
    opts.grid = make_grid(grid, range);
    if (grid.size() >= 3) {
        if (grid[2] < 16) throw SchemaError("--grid oracle resolution N must be >= 16");
        opts.oracle.theta_grid = grid[2];
    }
    opts.run_checks = run_checks;
    return opts;
}

int cmd_analyze(const std::string& path, const AnalyzeOptions& opts, bool pretty,
                const std::string& out) {
    const PolyMapGerm f = parse_germ_file(path);
    const Analysis a = analyze(f, opts);
    if (pretty) write_output(out, analysis_pretty(a));
    else write_output(out, analysis_to_json(a).dump(2));
    return 0;
}

int cmd_locus(const std::string& path, const AnalyzeOptions& opts, const std::string& out) {
    const PolyMapGerm f = parse_germ_file(path);
    const MongeJet m = monge_normalize(jet2(f), opts.tol).jet;
    const CurvatureLocusSample sample = sample_locus(m, opts.grid);
    write_output(out, locus_to_csv(m, sample));
    return 0;
}

nlohmann::ordered_json checks_json(const std::vector<CheckResult>& checks) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CheckResult& c : checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["status"] = c.status;
        cj["lhs"] = c.lhs;
        cj["rhs"] = c.rhs;
        cj["tol"] = c.tol;
        cj["detail"] = c.detail;
        arr.push_back(cj);
    }
    return arr;
}

int cmd_verify(const std::string& path, const std::string& corpus, double tol,
               const std::string& out) {
    const double use_tol = tol > 0 ? tol : default_tolerance();
    std::vector<std::string> files;
    if (!corpus.empty()) {
        if (!std::filesystem::is_directory(corpus))
            throw SchemaError("--corpus expects a directory: " + corpus);
        for (const auto& entry : std::filesystem::directory_iterator(corpus)) {
            const std::string p = entry.path().string();
            if (entry.path().extension() != ".json") continue;
            if (p.size() > 14 && p.substr(p.size() - 14) == ".expected.json") continue;
            files.push_back(p);
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) throw SchemaError("no germ files in corpus: " + corpus);
    } else {
        if (path.empty()) throw SchemaError("verify needs a germ file or --corpus");
        files.push_back(path);
    }

    nlohmann::ordered_json report = nlohmann::ordered_json::array();
    int fails = 0;
    std::ostringstream table;
    for (const std::string& file : files) {
        const PolyMapGerm f = parse_germ_file(file);
        const std::vector<CheckResult> checks = run_all_checks(f, use_tol);
        nlohmann::ordered_json entry;
        entry["file"] = file;
        entry["checks"] = checks_json(checks);
        report.push_back(entry);
        for (const CheckResult& c : checks) {
            if (c.status == "fail") ++fails;
            table << (c.status == "fail" ? "FAIL " : (c.passed() ? "pass " : "  -  "))
                  << c.name;
            for (size_t w = c.name.size(); w < 22; ++w) table << ' ';
            table << file << '\n';
        }
    }
    write_output(out, report.dump(2));
    std::cerr << table.str() << (fails ? "verification FAILED (" + std::to_string(fails) +
                                             " check(s))\n"
                                       : "all applicable checks passed\n");
    return fails ? 4 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"axialcurv: second-order geometry of corank-1 singular manifolds"};
    app.require_subcommand(1);

    std::string path, out, corpus;
    std::vector<int> grid;
    std::vector<double> range;
    double tol = -1.0;
    bool pretty = false;
    bool no_checks = false;

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "full report for one germ file");
    analyze_cmd->add_option("path", path, "germ JSON file")->required();
    analyze_cmd->add_option("--tol", tol, "tolerance override");
    analyze_cmd->add_option("--grid", grid, "locus/oracle resolution T,G[,N]")->delimiter(',');
    analyze_cmd->add_option("--gamma-range", range, "gamma window LO,HI")->delimiter(',');
    analyze_cmd->add_flag("--pretty", pretty, "human-readable summary instead of JSON");
    analyze_cmd->add_flag("--no-checks", no_checks, "skip the identity checks");
    analyze_cmd->add_option("--out", out, "write to file instead of stdout");

    CLI::App* locus_cmd = app.add_subcommand("locus", "curvature-locus point cloud CSV");
    locus_cmd->add_option("path", path, "germ JSON file")->required();
    locus_cmd->add_option("--tol", tol, "tolerance override");
    locus_cmd->add_option("--grid", grid, "sampling resolution T,G")->delimiter(',');
    locus_cmd->add_option("--gamma-range", range, "gamma window LO,HI")->delimiter(',');
    locus_cmd->add_option("--out", out, "write to file instead of stdout");

    CLI::App* verify_cmd = app.add_subcommand("verify", "run the identity checks");
    verify_cmd->add_option("path", path, "germ JSON file");
    verify_cmd->add_option("--corpus", corpus, "run every germ file in a directory");
    verify_cmd->add_option("--tol", tol, "tolerance override");
    verify_cmd->add_option("--out", out, "write the JSON report to a file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze_cmd->parsed())
            return cmd_analyze(path, make_options(tol, grid, range, !no_checks), pretty, out);
        if (locus_cmd->parsed())
            return cmd_locus(path, make_options(tol, grid, range, false), out);
        return cmd_verify(path, corpus, tol, out);
    } catch (const CorankError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
