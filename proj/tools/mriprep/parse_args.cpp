#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"
#include "mriprep/error.hpp"

namespace mriprep::cli {

namespace {

[[noreturn]] void usage(const std::string& message) { fail(ErrorCode::UsageError, message); }

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(trim(item));
    return out;
}

double to_double(const std::string& text, const std::string& flag) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) usage(flag + ": not a number '" + text + "'");
    return v;
}

int to_int(const std::string& text, const std::string& flag) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) usage(flag + ": not an integer '" + text + "'");
    return v;
}

std::pair<int, int> int_pair(const std::string& text, const std::string& flag) {
    auto parts = split_list(text);
    if (parts.size() != 2) usage(flag + " expects X,Y");
    return {to_int(parts[0], flag), to_int(parts[1], flag)};
}

// key = value lines; '#' and ';' start comments; keys are long flag names.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) usage("cannot read config file " + path.string());
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) usage(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (key.starts_with("--")) key.erase(0, 2);
        std::replace(key.begin(), key.end(), '_', '-');
        entries.emplace_back(std::move(key), std::move(value));
    }
    return entries;
}

struct RawArgs {
    std::string root, out, manifest, materialize, pairs, predictions, summaries, epoch_logs, config;
    std::string ratios = "0.7,0.1,0.2";
    std::string labels, model, clahe_tiles, resize, stop_after = "clahe";
    std::uint64_t seed = 42;
    int median = 3, se = 3, threads = 0;
    double clip = 2.0;
    bool no_clahe = false, no_stratify = false, materialize_flag = false;
};

struct Builder {
    RawArgs& raw;
    CLI::App* sub;

    void common() {
        sub->add_option("--config", raw.config, "key = value file; command-line flags win");
        sub->add_option("--threads", raw.threads, "OpenMP worker threads (0 = default)");
    }
    void split_flags() {
        sub->add_option("--ratios", raw.ratios, "train,val,test fractions or percentages, also 70:10:20 or 80:20 (default 0.7,0.1,0.2)");
        sub->add_option("--seed", raw.seed, "64-bit shuffle seed (default 42)");
        sub->add_flag("--no-stratify", raw.no_stratify, "shuffle the whole corpus as one group");
    }
    void pipeline_flags() {
        sub->add_option("--median", raw.median, "odd median kernel side (default 3)");
        sub->add_option("--se", raw.se, "odd opening structuring element side (default 3)");
        sub->add_option("--clahe-tiles", raw.clahe_tiles, "CLAHE tile grid X,Y (default 8,8)");
        sub->add_option("--clahe-clip", raw.clip, "relative CLAHE clip factor (default 2.0)");
        sub->add_flag("--no-clahe", raw.no_clahe, "skip the CLAHE stage");
        sub->add_option("--stop-after", raw.stop_after, "last stage to run: median | opening | clahe");
        sub->add_option("--resize", raw.resize, "resize inputs to W,H before filtering");
    }
    void eval_flags() {
        sub->add_option("--labels", raw.labels, "comma-separated class list in index order");
    }
};

}  // namespace

CliConfig parse_args(const std::vector<std::string>& args) {
    RawArgs raw;
    CLI::App app{"Preprocessing, verification, splitting and evaluation toolkit for grayscale MRI classification", "mriprep"};
    app.require_subcommand(1, 1);

    std::map<CLI::App*, Command> commands;
    auto add = [&](const char* name, const char* help, Command c) {
        CLI::App* s = app.add_subcommand(name, help);
        commands[s] = c;
        Builder b{raw, s};
        b.common();
        return b;
    };

    {
        auto b = add("scan", "build a manifest from <root>/<class>/<images>", Command::Scan);
        b.sub->add_option("--root", raw.root, "corpus directory");
        b.sub->add_option("--out", raw.out, "manifest JSON to write");
    }
    {
        auto b = add("split", "assign manifest samples to train/val/test", Command::Split);
        b.sub->add_option("--manifest", raw.manifest, "manifest JSON");
        b.sub->add_option("--out", raw.out, "split JSON to write");
        b.sub->add_option("--materialize", raw.materialize, "also copy files into DIR/{train,val,test}/<class>/");
        b.split_flags();
    }
    {
        auto b = add("preprocess", "run median -> opening -> CLAHE over every manifest image", Command::Preprocess);
        b.sub->add_option("--manifest", raw.manifest, "manifest JSON");
        b.sub->add_option("--root", raw.root, "corpus directory (defaults to the manifest's root)");
        b.sub->add_option("--out", raw.out, "output directory");
        b.pipeline_flags();
    }
    {
        auto b = add("verify", "MSE/RMSE/PSNR/SSIM for reference vs processed pairs", Command::Verify);
        b.sub->add_option("--pairs", raw.pairs, "CSV with image_id,reference,processed");
        b.sub->add_option("--out", raw.out, "quality CSV to write");
    }
    {
        auto b = add("evaluate", "confusion matrix and classification statistics", Command::Evaluate);
        b.sub->add_option("--predictions", raw.predictions, "predictions JSONL");
        b.sub->add_option("--manifest", raw.manifest, "take the class list from a manifest");
        b.sub->add_option("--out", raw.out, "metrics CSV to write (text table goes next to it)");
        b.eval_flags();
    }
    {
        auto b = add("report", "comparison table, statistics and training curves", Command::Report);
        b.sub->add_option("--summaries", raw.summaries, "run summary JSONL");
        b.sub->add_option("--epoch-logs", raw.epoch_logs, "epoch log JSONL");
        b.sub->add_option("--predictions", raw.predictions, "predictions JSONL for the statistics tables");
        b.sub->add_option("--manifest", raw.manifest, "take the class list from a manifest");
        b.sub->add_option("--model", raw.model, "row label for the statistics table");
        b.sub->add_option("--out", raw.out, "output directory");
        b.eval_flags();
    }
    {
        auto b = add("all", "scan, split, preprocess, verify, evaluate and report in one go", Command::All);
        b.sub->add_option("--root", raw.root, "corpus directory");
        b.sub->add_option("--out", raw.out, "output directory");
        b.sub->add_flag("--materialize", raw.materialize_flag, "copy the split into OUT/dataset/");
        b.sub->add_option("--predictions", raw.predictions, "predictions JSONL (enables evaluate)");
        b.sub->add_option("--summaries", raw.summaries, "run summary JSONL");
        b.sub->add_option("--epoch-logs", raw.epoch_logs, "epoch log JSONL");
        b.sub->add_option("--model", raw.model, "row label for the statistics table");
        b.split_flags();
        b.pipeline_flags();
        b.eval_flags();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
        usage(e.what());
    }

    CLI::App* sub = app.get_subcommands().front();
    if (!raw.config.empty()) {
        for (const auto& [key, value] : read_config_file(raw.config)) {
            CLI::Option* opt = sub->get_option_no_throw("--" + key);
            if (opt == nullptr || key == "config") usage("unknown config key '" + key + "' for " + sub->get_name());
            if (opt->count() > 0) continue;
            try {
                opt->add_result(value);
                opt->run_callback();
            } catch (const CLI::ParseError& e) {
                usage("config key '" + key + "': " + e.what());
            }
        }
    }

    CliConfig cfg;
    cfg.command = commands.at(sub);
    cfg.root = raw.root;
    cfg.out = raw.out;
    cfg.manifest = raw.manifest;
    cfg.materialize = raw.materialize;
    cfg.materialize_all = raw.materialize_flag;
    cfg.pairs = raw.pairs;
    cfg.predictions = raw.predictions;
    cfg.summaries = raw.summaries;
    cfg.epoch_logs = raw.epoch_logs;
    cfg.config_file = raw.config;
    cfg.seed = raw.seed;
    cfg.stratified = !raw.no_stratify;
    cfg.model_name = raw.model;
    cfg.threads = raw.threads;
    if (raw.threads < 0) usage("--threads must be >= 0");

    std::string ratio_text = raw.ratios;
    std::replace(ratio_text.begin(), ratio_text.end(), ':', ',');
    const auto ratios = split_list(ratio_text);
    if (ratios.size() == 2) {
        // "80,20" style (train, test) pairs carry no validation share
        cfg.ratios = {to_double(ratios[0], "--ratios"), 0.0, to_double(ratios[1], "--ratios")};
    } else if (ratios.size() == 3) {
        cfg.ratios = {to_double(ratios[0], "--ratios"), to_double(ratios[1], "--ratios"), to_double(ratios[2], "--ratios")};
    } else {
        usage("--ratios expects train,val,test");
    }
    // Whole-number ratios such as 70,10,20 are read as percentages.
    if (const double sum = cfg.ratios.train + cfg.ratios.val + cfg.ratios.test; sum > 1.5) {
        cfg.ratios = {cfg.ratios.train / sum, cfg.ratios.val / sum, cfg.ratios.test / sum};
    }

    cfg.pipeline.median_kernel = raw.median;
    cfg.pipeline.opening_se_side = raw.se;
    cfg.pipeline.clahe_enabled = !raw.no_clahe;
    cfg.pipeline.clahe_clip = raw.clip;
    if (!raw.clahe_tiles.empty()) {
        std::tie(cfg.pipeline.clahe_tiles_x, cfg.pipeline.clahe_tiles_y) = int_pair(raw.clahe_tiles, "--clahe-tiles");
    }
    if (!raw.resize.empty()) {
        cfg.resize = int_pair(raw.resize, "--resize");
        if (cfg.resize->first <= 0 || cfg.resize->second <= 0) usage("--resize dimensions must be positive");
    }
    try {
        cfg.stop_after = parse_stage(raw.stop_after);
    } catch (const Error& e) {
        usage("--stop-after: " + e.detail());
    }
    if (!raw.labels.empty()) cfg.labels = split_list(raw.labels);

    auto require = [&](const std::filesystem::path& p, const char* flag) {
        if (p.empty()) usage(sub->get_name() + ": missing required " + flag);
    };
    switch (cfg.command) {
        case Command::Scan:
            require(cfg.root, "--root");
            require(cfg.out, "--out");
            break;
        case Command::Split:
        case Command::Preprocess:
            require(cfg.manifest, "--manifest");
            require(cfg.out, "--out");
            break;
        case Command::Verify:
            require(cfg.pairs, "--pairs");
            require(cfg.out, "--out");
            break;
        case Command::Evaluate:
            require(cfg.predictions, "--predictions");
            require(cfg.out, "--out");
            break;
        case Command::Report:
            require(cfg.out, "--out");
            if (cfg.summaries.empty() && cfg.epoch_logs.empty() && cfg.predictions.empty()) {
                usage("report: give at least one of --summaries, --epoch-logs, --predictions");
            }
            break;
        case Command::All:
            require(cfg.root, "--root");
            require(cfg.out, "--out");
            break;
    }
    return cfg;
}

}  // namespace mriprep::cli
