#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linfeat/dataset.hpp"
#include "linfeat/model_selection.hpp"
#include "linfeat/path_analysis.hpp"

namespace linfeat {

/// One reproducible case-study run. Exactly one data source (csv_path or
/// synth) and exactly one response mode (from_feature or response_csv).
struct RunConfig {
    std::optional<std::filesystem::path> csv_path;
    std::optional<SynthesisSpec> synth;
    std::optional<std::filesystem::path> split_path;

    std::string feature_name = "sum_of_squares";
    std::map<std::string, double> feature_params;

    bool response_from_feature = true;
    std::optional<std::filesystem::path> response_csv;
    Index response_column = 0;

    DistanceObjective objective = DistanceObjective::coefficient_distance;

    std::optional<LambdaRange> lambda_range;  ///< path search; model default when unset
    int path_grid_points = 200;
    int cv_lambda_points = 60;
    int k_max = 10;
    int folds = 10;
    std::uint64_t seed = 0;

    std::filesystem::path output_dir = "out";
};

/// Parses the JSON config document. Throws ConfigError on unknown keys,
/// missing fields, or violated invariants.
RunConfig load_run_config(const std::filesystem::path& path);
void validate(const RunConfig& config);

/// One selected point on a solution path and how it relates to the feature
/// coefficients.
struct SelectedModel {
    std::string selector;     ///< "closest" | "cv_min" | "cv_1se"
    double lambda_or_k = 0;
    double distance = 0;      ///< squared distance to beta_t1 under the run objective
    double rowspace_norm = 0;
    double nullspace_norm = 0;
};

struct CaseStudyReport {
    Index n = 0;          ///< rows analyzed (train rows when a split is given)
    Index p = 0;
    Index n_loaded = 0;   ///< rows before splitting
    std::string feature_name;
    std::string objective;
    double anchor_value = 0;
    double slope = 0;
    double beta_t1_norm = 0;
    double beta_t1_rowspace_norm = 0;
    double beta_t1_nullspace_norm = 0;
    double cosine_beta_t1_x_mean = 0;
    std::vector<SelectedModel> ridge;  ///< closest, cv_min, cv_1se
    std::vector<SelectedModel> pls;    ///< closest, cv_min, cv_1se
    std::map<std::string, std::filesystem::path> output_files;
};

/// Full pipeline: data -> response -> feature coefficients -> closest-point
/// searches -> cross-validation -> emitted CSVs + report.json. Output files
/// are written atomically; LINFEAT_OUTPUT_DIR overrides config.output_dir.
CaseStudyReport run_casestudy(const RunConfig& config);

}  // namespace linfeat
