#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mriprep/dataset.hpp"
#include "mriprep/preprocess.hpp"

namespace mriprep::cli {

enum class Command { Scan, Split, Preprocess, Verify, Evaluate, Report, All };

struct CliConfig {
    Command command = Command::All;

    std::filesystem::path root;
    std::filesystem::path out;
    std::filesystem::path manifest;
    std::filesystem::path materialize;
    std::filesystem::path pairs;
    std::filesystem::path predictions;
    std::filesystem::path summaries;
    std::filesystem::path epoch_logs;
    std::filesystem::path config_file;

    PipelineConfig pipeline;
    Stage stop_after = Stage::Clahe;
    std::optional<std::pair<int, int>> resize;

    SplitRatios ratios;
    std::uint64_t seed = 42;
    bool stratified = true;
    bool materialize_all = false;  ///< `all --materialize` without a directory

    std::vector<std::string> labels;  ///< class-list override
    std::string model_name;
    int threads = 0;  ///< 0 keeps the OpenMP default
};

/// `--help` output; parse_args throws this instead of returning.
struct HelpRequested {
    std::string text;
};

/// argv without the program name. Throws Error(UsageError) on bad input and
/// HelpRequested for --help. A `--config FILE` of `key = value` lines supplies
/// any flag not given on the command line.
CliConfig parse_args(const std::vector<std::string>& args);

/// Runs the selected stage(s). 0 on success, 1 on a stage failure with a
/// single `mriprep: error: <Code>: ...` line on `err`.
int execute(const CliConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_args + execute with the 0/1/2 exit-code contract.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mriprep::cli
