#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cli.hpp"
#include "mriprep/error.hpp"
#include "mriprep/format.hpp"
#include "mriprep/image.hpp"
#include "mriprep/metrics.hpp"
#include "mriprep/quality.hpp"
#include "mriprep/report.hpp"

namespace fs = std::filesystem;

namespace mriprep::cli {

namespace {

std::string read_text(const fs::path& path) {
    const auto bytes = read_file_bytes(path);
    return std::string(bytes.begin(), bytes.end());
}

fs::path with_extension(fs::path p, const char* ext) {
    p.replace_extension(ext);
    return p;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

DatasetManifest load_manifest(const fs::path& path) { return manifest_from_json(read_text(path)); }

DatasetManifest run_scan(const fs::path& root, const fs::path& out, std::ostream& log) {
    ScanResult scan = scan_dataset(root);
    for (const auto& s : scan.skipped) log << "mriprep: warning: skipped " << s.path << ": " << s.reason << '\n';
    for (const auto& c : scan.empty_classes) log << "mriprep: warning: EmptyClass: " << c << '\n';
    write_text_file(out, manifest_to_json(scan.manifest));
    log << "scan: " << scan.manifest.samples.size() << " samples in " << scan.manifest.classes.size() << " classes -> "
        << out.generic_string() << '\n';
    return std::move(scan.manifest);
}

SplitAssignment run_split(const DatasetManifest& manifest, const CliConfig& cfg, const fs::path& out,
                          const fs::path& materialize, std::ostream& log) {
    SplitAssignment split = stratified_split(manifest, cfg.ratios, cfg.seed, cfg.stratified);
    write_text_file(out, split_to_json(split));
    const SplitCounts counts = split_counts(split, manifest);
    for (const auto& [part, per_class] : counts) {
        std::size_t total = 0;
        for (const auto& [c, n] : per_class) total += n;
        log << "split: " << part << " " << total << '\n';
    }
    if (!materialize.empty()) {
        materialize_split(split, manifest, materialize);
        log << "split: materialized into " << materialize.generic_string() << '\n';
    }
    return split;
}

// Writes processed/<id>.png and reference/<id>.png under `out`, plus pairs.csv
// (paths relative to `out`) and trace.csv. Returns the pairs file.
fs::path run_preprocess(const DatasetManifest& manifest, const CliConfig& cfg, const fs::path& out, std::ostream& log) {
    cfg.pipeline.validate();
    const fs::path root = cfg.root.empty() ? fs::path(manifest.root) : cfg.root;
    const auto n = static_cast<std::ptrdiff_t>(manifest.samples.size());
    std::vector<std::string> trace_rows(manifest.samples.size());
    std::vector<std::string> pair_rows(manifest.samples.size());
    std::vector<std::optional<Error>> errors(manifest.samples.size());
    std::vector<std::string> warnings(manifest.samples.size());

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto& s = manifest.samples[static_cast<std::size_t>(i)];
        try {
            GrayImage img = read_image(root / fs::path(s.id));
            if (cfg.resize && (img.width() != cfg.resize->first || img.height() != cfg.resize->second)) {
                warnings[static_cast<std::size_t>(i)] = s.id + " resized from " + std::to_string(img.width()) + "x" +
                                                        std::to_string(img.height());
                img = resize_bilinear(img, cfg.resize->first, cfg.resize->second);
            }
            auto [processed, trace] = run_pipeline(img, cfg.pipeline, cfg.stop_after);
            const fs::path rel = with_extension(fs::path(s.id), ".png");
            write_image(img, out / "reference" / rel);
            write_image(processed, out / "processed" / rel);

            std::string rows;
            for (const auto& st : trace) {
                rows += csv_escape(s.id) + "," + st.name + "," + hex64(st.input_checksum) + "," + hex64(st.output_checksum) + "\n";
            }
            trace_rows[static_cast<std::size_t>(i)] = std::move(rows);
            pair_rows[static_cast<std::size_t>(i)] = csv_escape(s.id) + "," + csv_escape(("reference" / rel).generic_string()) +
                                                     "," + csv_escape(("processed" / rel).generic_string()) + "\n";
        } catch (const Error& e) {
            errors[static_cast<std::size_t>(i)].emplace(e.code(), s.id + ": " + e.detail());
        }
    }
    for (const auto& e : errors) {
        if (e) throw *e;
    }
    for (const auto& w : warnings) {
        if (!w.empty()) log << "mriprep: warning: " << w << '\n';
    }

    std::string trace_csv = "image_id,stage,input_checksum,output_checksum\n";
    std::string pairs_csv = "image_id,reference,processed\n";
    for (std::size_t i = 0; i < manifest.samples.size(); ++i) {
        trace_csv += trace_rows[i];
        pairs_csv += pair_rows[i];
    }
    write_text_file(out / "trace.csv", trace_csv);
    write_text_file(out / "pairs.csv", pairs_csv);
    log << "preprocess: " << manifest.samples.size() << " images -> " << out.generic_string() << '\n';
    return out / "pairs.csv";
}

void run_verify(const fs::path& pairs_file, const fs::path& out, std::ostream& log) {
    std::istringstream in(read_text(pairs_file));
    const fs::path base = pairs_file.parent_path();
    std::string line;
    std::getline(in, line);
    const auto header = csv_split(line);
    if (header.size() != 3 || header[0] != "image_id") {
        fail(ErrorCode::SchemaViolation, pairs_file.string() + ": expected header image_id,reference,processed");
    }
    struct Row {
        std::string id;
        fs::path ref;
        fs::path test;
    };
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \r") == std::string::npos) continue;
        const auto f = csv_split(line);
        if (f.size() != 3) fail(ErrorCode::SchemaViolation, pairs_file.string() + ": row needs 3 fields: " + line);
        auto resolve = [&base](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };
        rows.push_back({f[0], resolve(f[1]), resolve(f[2])});
    }

    std::vector<QualityPair> pairs(rows.size());
    std::vector<std::optional<Error>> errors(rows.size());
    const auto n = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto& r = rows[static_cast<std::size_t>(i)];
        try {
            pairs[static_cast<std::size_t>(i)] = {r.id, read_image(r.ref), read_image(r.test)};
        } catch (const Error& e) {
            errors[static_cast<std::size_t>(i)].emplace(e.code(), r.id + ": " + e.detail());
        }
    }
    for (const auto& e : errors) {
        if (e) throw *e;
    }
    const auto reports = verify_batch(pairs);
    write_text_file(out, quality_csv(reports));
    log << "verify: " << reports.size() << " pairs -> " << out.generic_string() << '\n';
}

std::vector<std::string> resolve_labels(const CliConfig& cfg, const std::vector<PredictionRecord>& records,
                                        const std::optional<DatasetManifest>& manifest) {
    if (!cfg.labels.empty()) return cfg.labels;
    if (manifest) return manifest->classes;
    if (!cfg.manifest.empty()) return load_manifest(cfg.manifest).classes;
    return labels_from_records(records);
}

Evaluation run_evaluate(const CliConfig& cfg, const std::optional<DatasetManifest>& manifest, const fs::path& out,
                        std::ostream& log) {
    const auto records = parse_predictions(read_text(cfg.predictions));
    if (records.empty()) fail(ErrorCode::EmptyInput, cfg.predictions.string() + " holds no prediction records");
    const auto labels = resolve_labels(cfg, records, manifest);
    Evaluation ev = evaluate(records, labels);
    const StatsReport report = stats_report(ev.confusion, ev.aggregate.prob_error);
    write_text_file(out, report.to_csv());
    write_text_file(with_extension(out, ".txt"), report.to_text());
    log << "evaluate: " << records.size() << " records, accuracy " << format_percent(ev.aggregate.accuracy) << "% -> "
        << out.generic_string() << '\n';
    return ev;
}

void run_report(const CliConfig& cfg, const std::optional<Evaluation>& evaluation,
                const std::optional<DatasetManifest>& manifest, const fs::path& out, std::ostream& log) {
    ReportInputs inputs;
    inputs.model_name = cfg.model_name;
    if (!cfg.summaries.empty()) {
        inputs.summaries = load_summaries(cfg.summaries);
        if (inputs.summaries.empty()) fail(ErrorCode::EmptyInput, cfg.summaries.string() + " holds no summaries");
    }
    if (!cfg.epoch_logs.empty()) {
        inputs.epoch_logs = load_epoch_logs(cfg.epoch_logs);
        if (inputs.epoch_logs.empty()) fail(ErrorCode::EmptyInput, cfg.epoch_logs.string() + " holds no entries");
    }
    if (evaluation) {
        inputs.confusion = evaluation->confusion;
        inputs.prob_error = evaluation->aggregate.prob_error;
    } else if (!cfg.predictions.empty()) {
        const auto records = parse_predictions(read_text(cfg.predictions));
        if (records.empty()) fail(ErrorCode::EmptyInput, cfg.predictions.string() + " holds no prediction records");
        const Evaluation ev = evaluate(records, resolve_labels(cfg, records, manifest));
        inputs.confusion = ev.confusion;
        inputs.prob_error = ev.aggregate.prob_error;
    }
    const ReportBundle bundle = evaluation_report(inputs);
    write_bundle(bundle, out);
    log << "report: " << bundle.size() << " files -> " << out.generic_string() << '\n';
}

void dispatch(const CliConfig& cfg, std::ostream& log) {
    switch (cfg.command) {
        case Command::Scan:
            run_scan(cfg.root, cfg.out, log);
            return;
        case Command::Split:
            run_split(load_manifest(cfg.manifest), cfg, cfg.out, cfg.materialize, log);
            return;
        case Command::Preprocess:
            run_preprocess(load_manifest(cfg.manifest), cfg, cfg.out, log);
            return;
        case Command::Verify:
            run_verify(cfg.pairs, cfg.out, log);
            return;
        case Command::Evaluate:
            run_evaluate(cfg, std::nullopt, cfg.out, log);
            return;
        case Command::Report:
            run_report(cfg, std::nullopt, std::nullopt, cfg.out, log);
            return;
        case Command::All: {
            const fs::path& out = cfg.out;
            const DatasetManifest manifest = run_scan(cfg.root, out / "manifest.json", log);
            const fs::path materialize = !cfg.materialize.empty() ? cfg.materialize
                                         : cfg.materialize_all   ? out / "dataset"
                                                                 : fs::path();
            run_split(manifest, cfg, out / "split.json", materialize, log);
            const fs::path pairs = run_preprocess(manifest, cfg, out / "preprocess", log);
            run_verify(pairs, out / "quality.csv", log);
            std::optional<Evaluation> ev;
            if (!cfg.predictions.empty()) {
                ev = run_evaluate(cfg, manifest, out / "metrics.csv", log);
            } else {
                log << "evaluate: skipped (no --predictions)\n";
            }
            if (ev || !cfg.summaries.empty() || !cfg.epoch_logs.empty()) {
                run_report(cfg, ev, manifest, out / "report", log);
            } else {
                log << "report: skipped (no predictions, summaries or epoch logs)\n";
            }
            return;
        }
    }
}

std::string one_line(std::string s) {
    for (char& c : s) {
        if (c == '\n' || c == '\r') c = ' ';
    }
    return s;
}

}  // namespace

int execute(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
#ifdef _OPENMP
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif
    try {
        dispatch(cfg, out);
        return 0;
    } catch (const Error& e) {
        err << "mriprep: error: " << code_name(e.code()) << ": " << one_line(e.detail()) << '\n';
        return e.code() == ErrorCode::UsageError ? 2 : 1;
    } catch (const fs::filesystem_error& e) {
        err << "mriprep: error: IoFailure: " << one_line(e.what()) << '\n';
    } catch (const std::exception& e) {
        err << "mriprep: error: Internal: " << one_line(e.what()) << '\n';
    }
    return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    try {
        cfg = parse_args(args);
    } catch (const HelpRequested& h) {
        out << h.text;
        return 0;
    } catch (const Error& e) {
        err << "mriprep: error: " << code_name(e.code()) << ": " << one_line(e.detail()) << '\n';
        return 2;
    }
    return execute(cfg, out, err);
}

}  // namespace mriprep::cli
