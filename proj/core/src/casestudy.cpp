#include "linfeat/casestudy.hpp"

#include <cstdlib>
#include <ctime>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "io_util.hpp"
#include "linfeat/errors.hpp"
#include "linfeat/linearization.hpp"

namespace linfeat {

namespace {

using detail::format_double;
using nlohmann::ordered_json;

/// Rethrows known error types with the pipeline stage prepended, so CLI
/// failures name where they happened.
template <class Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
    const auto tag = [&](const char* what) { return std::string(name) + ": " + what; };
    try {
        return fn();
    } catch (const ConfigError& e) {
        throw ConfigError(tag(e.what()));
    } catch (const ArgumentError& e) {
        throw ArgumentError(tag(e.what()));
    } catch (const ValidationError& e) {
        throw ValidationError(tag(e.what()));
    } catch (const ParseError& e) {
        throw ParseError(tag(e.what()));
    } catch (const EvaluationError& e) {
        throw EvaluationError(tag(e.what()));
    } catch (const NumericError& e) {
        throw NumericError(tag(e.what()));
    } catch (const IoError& e) {
        throw IoError(tag(e.what()));
    }
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

void check_known_keys(const nlohmann::json& obj, const char* where,
                      std::initializer_list<const char*> known) {
    for (const auto& [key, value] : obj.items()) {
        bool found = false;
        for (const char* k : known) found = found || key == k;
        require(found, std::string("unknown key '") + key + "' in " + where);
    }
}

SynthesisSpec parse_synth(const nlohmann::json& obj) {
    check_known_keys(obj, "data.synthesize",
                     {"n", "p", "smoothness", "rank", "noise_std", "seed"});
    SynthesisSpec spec;
    if (obj.contains("n")) spec.n = obj.at("n").get<Index>();
    if (obj.contains("p")) spec.p = obj.at("p").get<Index>();
    if (obj.contains("smoothness")) spec.smoothness = obj.at("smoothness").get<double>();
    if (obj.contains("rank")) spec.rank = obj.at("rank").get<Index>();
    if (obj.contains("noise_std")) spec.noise_std = obj.at("noise_std").get<double>();
    if (obj.contains("seed")) spec.seed = obj.at("seed").get<std::uint64_t>();
    return spec;
}

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(detail::read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config '" + path.string() + "': " + e.what());
    } catch (const IoError& e) {
        throw ConfigError(e.what());
    }
    require(doc.is_object(), "config must be a JSON object");
    check_known_keys(doc, "config",
                     {"data", "split", "feature", "response", "objective", "path_search",
                      "cv", "pls", "seed", "output_dir"});

    RunConfig config;
    try {
        require(doc.contains("data") && doc.at("data").is_object(),
                "config requires a 'data' object");
        const auto& data = doc.at("data");
        check_known_keys(data, "data", {"csv", "synthesize"});
        if (data.contains("csv")) {
            config.csv_path = data.at("csv").get<std::string>();
        }
        if (data.contains("synthesize")) {
            config.synth = parse_synth(data.at("synthesize"));
        }

        if (doc.contains("split")) {
            config.split_path = doc.at("split").get<std::string>();
        }

        require(doc.contains("feature") && doc.at("feature").is_object(),
                "config requires a 'feature' object");
        const auto& feature = doc.at("feature");
        require(feature.contains("name"), "feature requires a 'name'");
        config.feature_name = feature.at("name").get<std::string>();
        for (const auto& [key, value] : feature.items()) {
            if (key == "name") continue;
            require(value.is_number(), "feature parameter '" + key + "' must be numeric");
            config.feature_params[key] = value.get<double>();
        }

        if (doc.contains("response")) {
            const auto& response = doc.at("response");
            check_known_keys(response, "response", {"mode", "path", "column"});
            const std::string mode = response.value("mode", "from_feature");
            if (mode == "from_feature") {
                config.response_from_feature = true;
                require(!response.contains("path") && !response.contains("column"),
                        "response mode 'from_feature' takes no path/column");
            } else if (mode == "csv_column") {
                config.response_from_feature = false;
                require(response.contains("path"), "response mode 'csv_column' requires 'path'");
                config.response_csv = response.at("path").get<std::string>();
                config.response_column = response.value("column", Index{0});
            } else {
                throw ConfigError("unknown response mode '" + mode + "'");
            }
        }

        if (doc.contains("objective")) {
            const std::string obj = doc.at("objective").get<std::string>();
            if (obj == "coefficient_distance") {
                config.objective = DistanceObjective::coefficient_distance;
            } else if (obj == "prediction_distance") {
                config.objective = DistanceObjective::prediction_distance;
            } else {
                throw ConfigError("unknown objective '" + obj + "'");
            }
        }

        if (doc.contains("path_search")) {
            const auto& ps = doc.at("path_search");
            check_known_keys(ps, "path_search", {"lambda_lo", "lambda_hi", "grid_points"});
            if (ps.contains("lambda_lo") || ps.contains("lambda_hi")) {
                require(ps.contains("lambda_lo") && ps.contains("lambda_hi"),
                        "path_search requires both lambda_lo and lambda_hi");
                config.lambda_range = LambdaRange{ps.at("lambda_lo").get<double>(),
                                                  ps.at("lambda_hi").get<double>()};
            }
            config.path_grid_points = ps.value("grid_points", 200);
        }

        if (doc.contains("cv")) {
            const auto& cv = doc.at("cv");
            check_known_keys(cv, "cv", {"folds", "lambda_points"});
            config.folds = cv.value("folds", 10);
            config.cv_lambda_points = cv.value("lambda_points", 60);
        }

        if (doc.contains("pls")) {
            const auto& pls = doc.at("pls");
            check_known_keys(pls, "pls", {"k_max"});
            config.k_max = pls.value("k_max", 10);
        }

        if (doc.contains("seed")) config.seed = doc.at("seed").get<std::uint64_t>();
        if (doc.contains("output_dir")) {
            config.output_dir = doc.at("output_dir").get<std::string>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config '" + path.string() + "': " + e.what());
    }

    validate(config);
    return config;
}

void validate(const RunConfig& config) {
    const int sources = (config.csv_path.has_value() ? 1 : 0) +
                        (config.synth.has_value() ? 1 : 0);
    require(sources == 1, "config requires exactly one data source (data.csv or data.synthesize)");
    const int responses = (config.response_from_feature ? 1 : 0) +
                          (config.response_csv.has_value() ? 1 : 0);
    require(responses == 1, "config requires exactly one response mode");
    require(config.path_grid_points >= 16, "path_search.grid_points must be >= 16");
    require(config.cv_lambda_points >= 2, "cv.lambda_points must be >= 2");
    require(config.k_max >= 1, "pls.k_max must be >= 1");
    require(config.folds >= 2, "cv.folds must be >= 2");
    if (config.lambda_range) {
        require(config.lambda_range->lo >= 0 && config.lambda_range->lo < config.lambda_range->hi,
                "path_search lambda range must satisfy 0 <= lambda_lo < lambda_hi");
    }
}

namespace {

Vector load_response_csv(const std::filesystem::path& path, Index column) {
    const std::string content = detail::read_file(path);
    std::vector<double> values;
    size_t start = 0;
    size_t row = 0;
    while (start < content.size()) {
        size_t end = content.find('\n', start);
        if (end == std::string::npos) end = content.size();
        std::string_view line(content.data() + start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        start = end + 1;
        ++row;
        if (line.empty()) continue;

        std::vector<std::string_view> cells;
        size_t cell_start = 0;
        while (true) {
            size_t comma = line.find(',', cell_start);
            if (comma == std::string_view::npos) {
                cells.push_back(line.substr(cell_start));
                break;
            }
            cells.push_back(line.substr(cell_start, comma - cell_start));
            cell_start = comma + 1;
        }
        if (column >= static_cast<Index>(cells.size())) {
            throw ValidationError("response csv row " + std::to_string(row) +
                                  " has no column " + std::to_string(column));
        }
        double v = 0;
        if (!detail::parse_double(cells[static_cast<size_t>(column)], v)) {
            if (row == 1 && values.empty()) continue;  // header row
            throw ParseError("response csv: malformed number at row " +
                             std::to_string(row) + ", column " + std::to_string(column + 1));
        }
        if (!std::isfinite(v)) {
            throw ValidationError("response csv: non-finite value at row " +
                                  std::to_string(row));
        }
        values.push_back(v);
    }
    Vector y(static_cast<Index>(values.size()));
    for (size_t i = 0; i < values.size(); ++i) y(static_cast<Index>(i)) = values[i];
    return y;
}

std::string coefficients_csv(const Vector& grid, const Vector& beta_t1,
                             const Vector& ridge_closest, const Vector& ridge_cv_min,
                             const Vector& ridge_cv_1se, const Vector& pls_closest,
                             const Vector& pls_cv_1se) {
    std::string out =
        "grid,beta_t1,beta_ridge_closest,beta_ridge_cv_min,beta_ridge_cv_1se,"
        "beta_pls_closest,beta_pls_cv_1se\n";
    for (Index j = 0; j < grid.size(); ++j) {
        out += format_double(grid(j));
        for (const Vector* col :
             {&beta_t1, &ridge_closest, &ridge_cv_min, &ridge_cv_1se, &pls_closest,
              &pls_cv_1se}) {
            out += ',';
            out += format_double((*col)(j));
        }
        out += '\n';
    }
    return out;
}

std::string distance_csv(const std::vector<std::pair<double, double>>& curve) {
    std::string out = "lambda_or_k,distance\n";
    for (const auto& [param, dist] : curve) {
        out += format_double(param);
        out += ',';
        out += format_double(dist);
        out += '\n';
    }
    return out;
}

std::string cv_csv(const CvCurve& curve) {
    std::string out = "lambda_or_k,mean_rmse,se\n";
    for (size_t g = 0; g < curve.grid.size(); ++g) {
        out += format_double(curve.grid[g]);
        out += ',';
        out += format_double(curve.mean_error[g]);
        out += ',';
        out += format_double(curve.se[g]);
        out += '\n';
    }
    return out;
}

ordered_json selected_json(const SelectedModel& sel, const char* param_name) {
    ordered_json j;
    if (std::string_view(param_name) == "k") {
        j[param_name] = static_cast<long long>(sel.lambda_or_k);
    } else {
        j[param_name] = sel.lambda_or_k;
    }
    j["distance"] = sel.distance;
    j["rowspace_norm"] = sel.rowspace_norm;
    j["nullspace_norm"] = sel.nullspace_norm;
    return j;
}

}  // namespace

CaseStudyReport run_casestudy(const RunConfig& config) {
    validate(config);

    std::filesystem::path out_dir = config.output_dir;
    if (const char* env = std::getenv("LINFEAT_OUTPUT_DIR")) {
        if (*env != '\0') out_dir = env;
    }

    // Data.
    FunctionalDataset full = stage("data", [&] {
        return config.csv_path ? load_csv(*config.csv_path) : synthesize(*config.synth);
    });
    const Index n_loaded = full.n();

    FunctionalDataset ds;
    std::optional<SplitSpec> split;
    if (config.split_path) {
        split = stage("split", [&] { return load_split_spec(*config.split_path); });
        ds = stage("split", [&] { return apply_split(full, *split).train; });
    } else {
        ds = std::move(full);
    }

    const CompressingFeature feature = stage("feature", [&] {
        return make_feature(config.feature_name, config.feature_params);
    });

    // Response.
    Vector y;
    if (config.response_from_feature) {
        y.resize(ds.n());
        for (Index i = 0; i < ds.n(); ++i) {
            try {
                y(i) = feature.value(Vector(ds.values.row(i)));
            } catch (const EvaluationError& e) {
                throw EvaluationError("response: sample " + std::to_string(i) + ": " +
                                      e.what());
            }
        }
    } else {
        Vector y_full = stage("response", [&] {
            return load_response_csv(*config.response_csv, config.response_column);
        });
        if (split) {
            if (y_full.size() != n_loaded) {
                throw ValidationError("response: length " + std::to_string(y_full.size()) +
                                      " does not match loaded sample count " +
                                      std::to_string(n_loaded));
            }
            // Align the response with the split's effective train rows.
            std::vector<double> picked;
            std::vector<bool> outlier(static_cast<size_t>(n_loaded), false);
            for (Index idx : split->outliers) outlier[static_cast<size_t>(idx)] = true;
            for (Index idx : split->train) {
                if (!outlier[static_cast<size_t>(idx)]) picked.push_back(y_full(idx));
            }
            y.resize(static_cast<Index>(picked.size()));
            for (size_t i = 0; i < picked.size(); ++i) y(static_cast<Index>(i)) = picked[i];
        } else {
            y = std::move(y_full);
        }
        if (y.size() != ds.n()) {
            throw ValidationError("response: length " + std::to_string(y.size()) +
                                  " does not match analyzed sample count " +
                                  std::to_string(ds.n()));
        }
    }

    // Feature coefficients and the centered regression problem.
    const FeatureCoefficients fc = stage("feature_coefficients", [&] {
        return feature_coefficients(ds, feature, y);
    });
    const CenteredProblem prob = stage("center", [&] {
        return center_problem(ds.values, y);
    });
    const RidgePathModel model = stage("ridge_fit", [&] { return ridge_fit(prob); });

    CoefficientVector target;
    target.beta = fc.beta_t1;
    target.intercept = fc.y_mean - fc.x_mean.dot(fc.beta_t1);
    target.label = "feature_t1";

    // Closest points on both paths.
    const LambdaRange range =
        config.lambda_range ? *config.lambda_range : default_lambda_range(model);
    const PathSearchResult ridge_search = stage("ridge_closest", [&] {
        return ridge_closest(model, target, config.objective, range,
                             config.path_grid_points);
    });
    const PathSearchResult pls_search = stage("pls_closest", [&] {
        return pls_closest(prob, target, config.objective, config.k_max);
    });

    // Cross-validation.
    const std::vector<double> lambda_grid =
        default_lambda_grid(model.s(0), config.cv_lambda_points);
    const CvCurve ridge_cv = stage("cv_ridge", [&] {
        return cv_ridge(ds, y, lambda_grid, config.folds, config.seed);
    });
    const CvCurve pls_cv = stage("cv_pls", [&] {
        return cv_pls(ds, y, config.k_max, config.folds, config.seed);
    });
    const double lambda_cv_min = select(ridge_cv, SelectionRule::min);
    const double lambda_cv_1se = select(ridge_cv, SelectionRule::one_se);
    const int k_cv_min = static_cast<int>(select(pls_cv, SelectionRule::min));
    const int k_cv_1se = static_cast<int>(select(pls_cv, SelectionRule::one_se));

    // Coefficient vectors for every selected model.
    const CoefficientVector beta_ridge_cv_min = ridge_beta(model, lambda_cv_min);
    const CoefficientVector beta_ridge_cv_1se = ridge_beta(model, lambda_cv_1se);
    const CoefficientVector beta_pls_cv_min =
        pls_coefficients(stage("pls_fit", [&] { return pls_fit(prob, k_cv_min); }));
    const CoefficientVector beta_pls_cv_1se =
        pls_coefficients(stage("pls_fit", [&] { return pls_fit(prob, k_cv_1se); }));

    const auto distance_to_target = [&](const Vector& beta) {
        const Vector diff = beta - target.beta;
        return config.objective == DistanceObjective::prediction_distance
                   ? (prob.Xc * diff).squaredNorm()
                   : diff.squaredNorm();
    };
    const auto selected = [&](const char* selector, double param,
                              const CoefficientVector& coef) {
        const NullspaceReport ns = nullspace_report(model, coef);
        SelectedModel sel;
        sel.selector = selector;
        sel.lambda_or_k = param;
        sel.distance = distance_to_target(coef.beta);
        sel.rowspace_norm = ns.rowspace_norm;
        sel.nullspace_norm = ns.nullspace_norm;
        return sel;
    };

    CaseStudyReport report;
    report.n = ds.n();
    report.p = ds.p();
    report.n_loaded = n_loaded;
    report.feature_name = feature.name();
    report.objective = config.objective == DistanceObjective::prediction_distance
                           ? "prediction_distance"
                           : "coefficient_distance";
    report.anchor_value = fc.anchor_value;
    report.slope = fc.slope;

    const NullspaceReport t1_ns = nullspace_report(model, target);
    report.beta_t1_norm = fc.beta_t1.norm();
    report.beta_t1_rowspace_norm = t1_ns.rowspace_norm;
    report.beta_t1_nullspace_norm = t1_ns.nullspace_norm;
    const double denom = fc.beta_t1.norm() * fc.x_mean.norm();
    report.cosine_beta_t1_x_mean =
        denom > 0 ? fc.beta_t1.dot(fc.x_mean) / denom : 0.0;

    report.ridge.push_back(
        selected("closest", *ridge_search.lambda_star, ridge_search.beta_star));
    report.ridge.push_back(selected("cv_min", lambda_cv_min, beta_ridge_cv_min));
    report.ridge.push_back(selected("cv_1se", lambda_cv_1se, beta_ridge_cv_1se));
    report.pls.push_back(
        selected("closest", static_cast<double>(*pls_search.k_star), pls_search.beta_star));
    report.pls.push_back(selected("cv_min", k_cv_min, beta_pls_cv_min));
    report.pls.push_back(selected("cv_1se", k_cv_1se, beta_pls_cv_1se));

    // Emit output files.
    stage("emit", [&] {
        std::filesystem::create_directories(out_dir);
        const auto emit = [&](const char* key, const std::string& filename,
                              const std::string& content) {
            const std::filesystem::path path = out_dir / filename;
            detail::atomic_write(path, content);
            report.output_files[key] = path;
        };

        emit("coefficients", "coefficients.csv",
             coefficients_csv(ds.grid, fc.beta_t1, ridge_search.beta_star.beta,
                              beta_ridge_cv_min.beta, beta_ridge_cv_1se.beta,
                              pls_search.beta_star.beta, beta_pls_cv_1se.beta));
        emit("distance_curve", "distance_curve.csv",
             distance_csv(ridge_search.distance_curve));
        emit("distance_curve_pls", "distance_curve_pls.csv",
             distance_csv(pls_search.distance_curve));
        emit("cv_curve", "cv_curve.csv", cv_csv(ridge_cv));
        emit("cv_curve_pls", "cv_curve_pls.csv", cv_csv(pls_cv));

        ordered_json j;
        j["dataset"] = {{"n", report.n}, {"p", report.p}, {"n_loaded", report.n_loaded}};
        j["feature"] = {{"name", report.feature_name},
                        {"params", ordered_json(feature.params())}};
        j["objective"] = report.objective;
        j["anchor_value"] = report.anchor_value;
        j["slope"] = report.slope;
        j["beta_t1"] = {{"norm", report.beta_t1_norm},
                        {"rowspace_norm", report.beta_t1_rowspace_norm},
                        {"nullspace_norm", report.beta_t1_nullspace_norm}};
        j["diagnostics"] = {{"cosine_beta_t1_x_mean", report.cosine_beta_t1_x_mean}};
        j["ridge"] = {{"closest", selected_json(report.ridge[0], "lambda")},
                      {"cv_min", selected_json(report.ridge[1], "lambda")},
                      {"cv_1se", selected_json(report.ridge[2], "lambda")}};
        j["pls"] = {{"closest", selected_json(report.pls[0], "k")},
                    {"cv_min", selected_json(report.pls[1], "k")},
                    {"cv_1se", selected_json(report.pls[2], "k")}};
        ordered_json outputs;
        for (const auto& [key, path] : report.output_files) outputs[key] = path.string();
        outputs["report"] = (out_dir / "report.json").string();
        j["outputs"] = outputs;
        j["timestamp"] = iso_timestamp();

        detail::atomic_write(out_dir / "report.json", j.dump(2) + "\n");
        report.output_files["report"] = out_dir / "report.json";
        return 0;
    });

    return report;
}

}  // namespace linfeat
