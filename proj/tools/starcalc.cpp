#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "starcalc/errors.hpp"
#include "starcalc/recipe.hpp"

namespace {

constexpr int kUsageError = 2;

struct Options {
    bool machine = false;
    bool strict = false;
    unsigned jobs = 0;
    std::string file;
    std::string dir;
    std::string csv_out;
    std::string svg_out;
};

unsigned job_count(unsigned requested) {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_run(const Options& opt) {
    std::ifstream in(opt.file, std::ios::binary);
    if (!in) {
        std::cerr << "starcalc: cannot read " << opt.file << "\n";
        return kUsageError;
    }
    std::ostringstream buf;
    buf << in.rdbuf();

    starcalc::Recipe recipe;
    try {
        recipe = starcalc::parse_recipe(buf.str());
    } catch (const starcalc::Error& e) {
        std::cerr << opt.file << ": " << e.what() << "\n";
        return kUsageError;
    }
    try {
        const starcalc::Report report = starcalc::run(recipe);
        std::cout << (opt.machine ? starcalc::render_machine(report, opt.strict)
                                  : starcalc::render_text(report, opt.strict));
        return report.passed(opt.strict) ? 0 : 1;
    } catch (const starcalc::Error& e) {
        std::cerr << opt.file << ": " << e.what() << "\n";
        return 1;
    }
}

int print_batch(const starcalc::BatchSummary& summary, const Options& opt) {
    std::cout << (opt.machine ? starcalc::render_batch_machine(summary, opt.strict)
                              : starcalc::render_batch_text(summary, opt.strict));
    return summary.exit_code();
}

int cmd_batch(const Options& opt) {
    try {
        const auto paths = starcalc::collect_recipe_files(opt.dir);
        return print_batch(starcalc::batch(paths, job_count(opt.jobs), opt.strict), opt);
    } catch (const starcalc::BadParameter& e) {
        std::cerr << "starcalc: " << e.what() << "\n";
        return kUsageError;
    }
}

int cmd_corpus(const Options& opt) {
    return print_batch(starcalc::batch(starcalc::embedded_corpus(), job_count(opt.jobs), opt.strict), opt);
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

int cmd_chart(const Options& opt) {
    starcalc::BatchSummary summary;
    try {
        summary = starcalc::batch(starcalc::collect_recipe_files(opt.dir), job_count(opt.jobs), opt.strict);
    } catch (const starcalc::BadParameter& e) {
        std::cerr << "starcalc: " << e.what() << "\n";
        return kUsageError;
    }
    std::vector<starcalc::ChartPoint> points;
    for (const auto& e : summary.entries) {
        if (!e.report) {
            std::cerr << "skipped " << e.source << ": " << e.error << "\n";
            continue;
        }
        points.push_back({e.report->recipe, e.report->geography});
    }
    if (!write_file(opt.csv_out, starcalc::chart_csv(points))) {
        std::cerr << "starcalc: cannot write " << opt.csv_out << "\n";
        return kUsageError;
    }
    if (!opt.svg_out.empty() && !write_file(opt.svg_out, starcalc::chart_svg(points))) {
        std::cerr << "starcalc: cannot write " << opt.svg_out << "\n";
        return kUsageError;
    }
    std::cout << "wrote " << points.size() << " points to " << opt.csv_out << "\n";
    return summary.errors > 0 ? kUsageError : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"starcalc: exact surgery calculus for closed 4-manifolds"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--machine", opt.machine, "JSON report instead of text");
    app.add_flag("--strict", opt.strict, "count flagged discrepancies as failures");

    auto* run = app.add_subcommand("run", "check one recipe");
    run->add_option("file", opt.file, "recipe file")->required();

    auto* batch = app.add_subcommand("batch", "check every *.json recipe in a directory");
    batch->add_option("dir", opt.dir, "recipe directory")->required();
    batch->add_option("-j,--jobs", opt.jobs, "worker threads (default: hardware concurrency)");

    auto* corpus = app.add_subcommand("corpus", "check the built-in recipe corpus");
    corpus->add_option("-j,--jobs", opt.jobs, "worker threads");

    auto* chart = app.add_subcommand("chart", "write (chi_h, c1^2) points of a recipe directory");
    chart->add_option("dir", opt.dir, "recipe directory")->required();
    chart->add_option("--out", opt.csv_out, "CSV output file")->required();
    chart->add_option("--svg", opt.svg_out, "optional SVG plot");

    for (auto* sub : {run, batch, corpus, chart}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    if (*run) return cmd_run(opt);
    if (*batch) return cmd_batch(opt);
    if (*corpus) return cmd_corpus(opt);
    return cmd_chart(opt);
}
