// linfeat command line: synthesize/ingest functional datasets and run the
// feature-coefficient case-study pipeline.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "linfeat/linfeat.hpp"

namespace {

void print_shape(const char* label, const linfeat::FunctionalDataset& ds) {
    std::cout << label << ": n=" << ds.n() << " p=" << ds.p();
    if (ds.p() > 0) {
        std::cout << " grid=[" << ds.grid(0) << " .. " << ds.grid(ds.p() - 1) << "]";
    }
    std::cout << "\n";
}

int run_synthesize(const linfeat::SynthesisSpec& spec, const std::string& output) {
    const linfeat::FunctionalDataset ds = linfeat::synthesize(spec);
    linfeat::write_csv(ds, output);
    std::cout << "wrote " << output << " (n=" << ds.n() << " p=" << ds.p() << ")\n";
    return 0;
}

int run_ingest(const std::string& input, const std::string& layout,
               const std::string& split_path, const std::string& output,
               bool summary) {
    const auto csv_layout = layout == "columns"
                                ? linfeat::CsvLayout::columns_are_samples
                                : linfeat::CsvLayout::rows_are_samples;
    const linfeat::FunctionalDataset ds = linfeat::load_csv(input, csv_layout);
    print_shape("dataset", ds);

    if (summary) {
        const linfeat::DatasetSummary s = linfeat::summarize(ds);
        std::cout << "column_mean range=[" << s.column_mean.minCoeff() << ", "
                  << s.column_mean.maxCoeff() << "]\n";
        std::cout << "column_std range=[" << s.column_std.minCoeff() << ", "
                  << s.column_std.maxCoeff() << "]\n";
    }

    if (!split_path.empty()) {
        const linfeat::SplitSpec spec = linfeat::load_split_spec(split_path);
        const linfeat::SplitResult split = linfeat::apply_split(ds, spec);
        print_shape("train", split.train);
        print_shape("test1", split.test1);
        print_shape("test2", split.test2);
    }

    if (!output.empty()) {
        linfeat::write_csv(ds, output);
        std::cout << "wrote " << output << "\n";
    }
    return 0;
}

int run_case(const std::string& config_path) {
    const linfeat::RunConfig config = linfeat::load_run_config(config_path);
    const linfeat::CaseStudyReport report = linfeat::run_casestudy(config);

    std::cout << "dataset: n=" << report.n << " p=" << report.p
              << " (loaded " << report.n_loaded << ")\n";
    std::cout << "feature: " << report.feature_name << "  objective: " << report.objective
              << "\n";
    std::cout << "anchor g(x_mean)=" << report.anchor_value << "  slope m=" << report.slope
              << "\n";
    for (const auto& sel : report.ridge) {
        std::cout << "ridge " << sel.selector << ": lambda=" << sel.lambda_or_k
                  << " distance=" << sel.distance << "\n";
    }
    for (const auto& sel : report.pls) {
        std::cout << "pls " << sel.selector << ": k=" << static_cast<int>(sel.lambda_or_k)
                  << " distance=" << sel.distance << "\n";
    }
    for (const auto& [key, path] : report.output_files) {
        std::cout << "output " << key << ": " << path.string() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"feature coefficients and regression solution paths for "
                 "high-dimensional functional data"};
    app.require_subcommand(1);

    // casestudy
    std::string config_path;
    CLI::App* cmd_case = app.add_subcommand(
        "casestudy", "run the full pipeline from a JSON config");
    cmd_case->add_option("--config", config_path, "path to the run config (JSON)")
        ->required();

    // synthesize
    linfeat::SynthesisSpec synth;
    std::string synth_output = "synthetic.csv";
    CLI::App* cmd_synth = app.add_subcommand(
        "synthesize", "generate a smooth low-rank dataset and write it as CSV");
    cmd_synth->add_option("--n", synth.n, "number of samples")->capture_default_str();
    cmd_synth->add_option("--p", synth.p, "number of grid points")->capture_default_str();
    cmd_synth->add_option("--smoothness", synth.smoothness,
                          "bump width as a fraction of the grid span")
        ->capture_default_str();
    cmd_synth->add_option("--rank", synth.rank, "number of basis curves")
        ->capture_default_str();
    cmd_synth->add_option("--noise-std", synth.noise_std, "white noise std")
        ->capture_default_str();
    cmd_synth->add_option("--seed", synth.seed, "RNG seed")->capture_default_str();
    cmd_synth->add_option("--output", synth_output, "output CSV path")
        ->capture_default_str();

    // ingest
    std::string ingest_input;
    std::string ingest_layout = "rows";
    std::string ingest_split;
    std::string ingest_output;
    bool ingest_summary = false;
    CLI::App* cmd_ingest = app.add_subcommand(
        "ingest", "load and validate a dataset CSV, optionally apply a split spec");
    cmd_ingest->add_option("--input", ingest_input, "dataset CSV path")->required();
    cmd_ingest->add_option("--layout", ingest_layout, "rows | columns (samples run along)")
        ->check(CLI::IsMember({"rows", "columns"}))
        ->capture_default_str();
    cmd_ingest->add_option("--split", ingest_split, "split spec JSON path");
    cmd_ingest->add_option("--output", ingest_output, "re-emit the dataset as canonical CSV");
    cmd_ingest->add_flag("--summary", ingest_summary, "print column statistics");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_case->parsed()) return run_case(config_path);
        if (cmd_synth->parsed()) return run_synthesize(synth, synth_output);
        if (cmd_ingest->parsed()) {
            return run_ingest(ingest_input, ingest_layout, ingest_split, ingest_output,
                              ingest_summary);
        }
    } catch (const linfeat::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return linfeat::cli_exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
