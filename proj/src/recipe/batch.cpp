#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "starcalc/errors.hpp"
#include "starcalc/recipe.hpp"

namespace starcalc {

int BatchSummary::exit_code() const {
    if (errors > 0) return 2;
    return failed > 0 ? 1 : 0;
}

std::vector<std::filesystem::path> collect_recipe_files(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw BadParameter("not a directory: " + dir.string());
    }
    std::vector<std::filesystem::path> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct Loaded {
    std::string name;
    std::optional<std::string> text;
    std::string io_error;
};

BatchEntry evaluate(const Loaded& in) {
    BatchEntry entry;
    entry.source = in.name;
    if (!in.text) {
        entry.error = in.io_error;
        entry.unreadable = true;
        return entry;
    }
    Recipe recipe;
    try {
        recipe = parse_recipe(*in.text);
    } catch (const Error& e) {
        entry.error = e.what();
        entry.unreadable = true;
        return entry;
    }
    try {
        entry.report = run(recipe);
    } catch (const Error& e) {
        entry.error = e.what();
    }
    return entry;
}

BatchSummary run_all(const std::vector<Loaded>& inputs, unsigned parallelism, bool strict) {
    BatchSummary summary;
    summary.entries.resize(inputs.size());

    const unsigned workers = std::max(1u, std::min<unsigned>(parallelism, static_cast<unsigned>(inputs.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < inputs.size(); i = next++) summary.entries[i] = evaluate(inputs[i]);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    for (const auto& e : summary.entries) {
        if (e.unreadable) {
            ++summary.errors;
        } else if (e.report && e.report->passed(strict)) {
            ++summary.passed;
        } else {
            ++summary.failed;
        }
    }
    return summary;
}

}  // namespace

BatchSummary batch(const std::vector<RecipeSource>& sources, unsigned parallelism, bool strict) {
    std::vector<Loaded> inputs;
    inputs.reserve(sources.size());
    for (const auto& s : sources) inputs.push_back({s.name, s.text, {}});
    return run_all(inputs, parallelism, strict);
}

BatchSummary batch(const std::vector<std::filesystem::path>& paths, unsigned parallelism, bool strict) {
    if (paths.empty()) throw BadParameter("batch needs at least one recipe path");
    std::vector<Loaded> inputs;
    inputs.reserve(paths.size());
    for (const auto& p : paths) {
        Loaded in{p.string(), std::nullopt, {}};
        std::ifstream file(p, std::ios::binary);
        if (!file) {
            in.io_error = "cannot read " + p.string();
        } else {
            std::ostringstream buf;
            buf << file.rdbuf();
            in.text = buf.str();
        }
        inputs.push_back(std::move(in));
    }
    return run_all(inputs, parallelism, strict);
}

}  // namespace starcalc
