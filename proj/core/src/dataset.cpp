#include "linfeat/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include "linfeat/errors.hpp"

namespace linfeat {

void FunctionalDataset::validate() const {
    if (grid.size() != values.cols()) {
        throw ValidationError("grid length " + std::to_string(grid.size()) +
                              " does not match column count " +
                              std::to_string(values.cols()));
    }
    if (static_cast<Index>(sample_ids.size()) != values.rows()) {
        throw ValidationError("sample_ids length " + std::to_string(sample_ids.size()) +
                              " does not match row count " + std::to_string(values.rows()));
    }
    if (!values.allFinite() || !grid.allFinite()) {
        throw ValidationError("dataset contains non-finite entries");
    }
    if (grid.size() >= 2) {
        const bool increasing = grid(1) > grid(0);
        for (Index j = 1; j < grid.size(); ++j) {
            if (grid(j) == grid(j - 1) || (grid(j) > grid(j - 1)) != increasing) {
                throw ValidationError("grid is not strictly monotone at position " +
                                      std::to_string(j + 1));
            }
        }
    }
}

FunctionalDataset synthesize(const SynthesisSpec& spec) {
    if (spec.n < 1 || spec.p < 1) {
        throw ArgumentError("synthesize requires n >= 1 and p >= 1");
    }
    if (spec.rank < 1 || spec.rank > std::min(spec.n, spec.p)) {
        throw ArgumentError("synthesize requires 1 <= rank <= min(n, p)");
    }
    if (!(spec.smoothness > 0)) {
        throw ArgumentError("synthesize requires smoothness > 0");
    }
    if (spec.noise_std < 0 || !std::isfinite(spec.noise_std)) {
        throw ArgumentError("synthesize requires noise_std >= 0");
    }

    constexpr double grid_hi = 3.5;
    constexpr double grid_lo = 2.0;
    constexpr double span = grid_hi - grid_lo;

    FunctionalDataset ds;
    ds.grid.resize(spec.p);
    if (spec.p == 1) {
        ds.grid(0) = grid_hi;
    } else {
        const double step = span / static_cast<double>(spec.p - 1);
        for (Index j = 0; j < spec.p; ++j) {
            ds.grid(j) = grid_hi - step * static_cast<double>(j);
        }
    }

    // Gaussian bumps at equally spaced interior centers; width scales with
    // the smoothness parameter. Distinct centers keep the basis independent,
    // so the noiseless matrix has numerical rank exactly spec.rank.
    const double sigma = spec.smoothness * span;
    Matrix basis(spec.rank, spec.p);
    for (Index k = 0; k < spec.rank; ++k) {
        const double c = grid_lo + span * static_cast<double>(k + 1) /
                                       static_cast<double>(spec.rank + 1);
        for (Index j = 0; j < spec.p; ++j) {
            const double d = ds.grid(j) - c;
            basis(k, j) = std::exp(-d * d / (2.0 * sigma * sigma));
        }
    }

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    Matrix mix(spec.n, spec.rank);
    for (Index i = 0; i < spec.n; ++i) {
        for (Index k = 0; k < spec.rank; ++k) mix(i, k) = gauss(rng);
    }

    ds.values = mix * basis;
    if (spec.noise_std > 0) {
        for (Index i = 0; i < spec.n; ++i) {
            for (Index j = 0; j < spec.p; ++j) {
                ds.values(i, j) += spec.noise_std * gauss(rng);
            }
        }
    }

    ds.sample_ids.reserve(static_cast<size_t>(spec.n));
    for (Index i = 0; i < spec.n; ++i) ds.sample_ids.push_back("s" + std::to_string(i));

    ds.validate();
    return ds;
}

DatasetSummary summarize(const FunctionalDataset& ds, const std::optional<Vector>& y) {
    DatasetSummary out;
    const Index n = ds.n();
    out.column_mean = n > 0 ? Vector(ds.values.colwise().mean())
                            : Vector(Vector::Zero(ds.p()));
    out.column_std = Vector::Zero(ds.p());
    if (n >= 2) {
        for (Index j = 0; j < ds.p(); ++j) {
            const double ss = (ds.values.col(j).array() - out.column_mean(j)).square().sum();
            out.column_std(j) = std::sqrt(ss / static_cast<double>(n - 1));
        }
    }
    if (y.has_value()) {
        if (y->size() != n) {
            throw ArgumentError("response length " + std::to_string(y->size()) +
                                " does not match sample count " + std::to_string(n));
        }
        out.response_mean = y->mean();
    }
    return out;
}

std::pair<Matrix, DatasetSummary> center(const FunctionalDataset& ds) {
    if (ds.n() < 2) {
        throw ArgumentError("centering requires at least 2 samples");
    }
    DatasetSummary summary = summarize(ds);
    Matrix centered = ds.values.rowwise() - summary.column_mean.transpose();
    return {std::move(centered), std::move(summary)};
}

namespace {

FunctionalDataset take_rows(const FunctionalDataset& ds, const std::vector<Index>& rows) {
    FunctionalDataset out;
    out.grid = ds.grid;
    out.values.resize(static_cast<Index>(rows.size()), ds.p());
    out.sample_ids.reserve(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        out.values.row(static_cast<Index>(i)) = ds.values.row(rows[i]);
        out.sample_ids.push_back(ds.sample_ids[static_cast<size_t>(rows[i])]);
    }
    return out;
}

void check_bounds(const std::vector<Index>& list, const char* name, Index n) {
    for (Index idx : list) {
        if (idx < 0 || idx >= n) {
            throw ValidationError("split index " + std::to_string(idx) + " in '" + name +
                                  "' is out of range for n=" + std::to_string(n));
        }
    }
}

}  // namespace

SplitResult apply_split(const FunctionalDataset& ds, const SplitSpec& spec) {
    const Index n = ds.n();
    check_bounds(spec.train, "train", n);
    check_bounds(spec.test1, "test1", n);
    check_bounds(spec.test2, "test2", n);
    check_bounds(spec.outliers, "outliers", n);

    // train/test1/test2 must be pairwise disjoint and duplicate-free;
    // outliers name train rows to drop and may not touch the test sets.
    std::vector<int> owner(static_cast<size_t>(n), -1);
    const char* names[] = {"train", "test1", "test2"};
    const std::vector<Index>* lists[] = {&spec.train, &spec.test1, &spec.test2};
    for (int which = 0; which < 3; ++which) {
        for (Index idx : *lists[which]) {
            auto& slot = owner[static_cast<size_t>(idx)];
            if (slot != -1) {
                throw ValidationError("overlapping split index " + std::to_string(idx) +
                                      " (" + names[slot] + " and " + names[which] + ")");
            }
            slot = which;
        }
    }
    std::unordered_set<Index> outlier_set(spec.outliers.begin(), spec.outliers.end());
    for (Index idx : spec.outliers) {
        const int slot = owner[static_cast<size_t>(idx)];
        if (slot == 1 || slot == 2) {
            throw ValidationError("outlier index " + std::to_string(idx) +
                                  " appears in '" + names[slot] + "'");
        }
    }

    std::vector<Index> effective_train;
    effective_train.reserve(spec.train.size());
    for (Index idx : spec.train) {
        if (!outlier_set.count(idx)) effective_train.push_back(idx);
    }

    SplitResult out;
    out.train = take_rows(ds, effective_train);
    out.test1 = take_rows(ds, spec.test1);
    out.test2 = take_rows(ds, spec.test2);
    return out;
}

}  // namespace linfeat
