#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linfeat/types.hpp"

namespace linfeat {

/// n sampled curves over a shared p-point grid of domain coordinates
/// (e.g. volts). The grid is strictly monotone in either direction and all
/// entries are finite.
struct FunctionalDataset {
    Matrix values;                        ///< n x p
    Vector grid;                          ///< length p
    std::vector<std::string> sample_ids;  ///< length n

    Index n() const { return values.rows(); }
    Index p() const { return values.cols(); }

    /// Throws ValidationError if any invariant is broken.
    void validate() const;
};

struct DatasetSummary {
    Vector column_mean;
    Vector column_std;  ///< sample std (n-1 denominator); 0 for n < 2
    std::optional<double> response_mean;
};

/// Train/test partition. train/test1/test2 are pairwise disjoint; outliers
/// are removed from the train rows and must not appear in either test list.
struct SplitSpec {
    std::vector<Index> train;
    std::vector<Index> test1;
    std::vector<Index> test2;
    std::vector<Index> outliers;
};

struct SplitResult {
    FunctionalDataset train;
    FunctionalDataset test1;
    FunctionalDataset test2;
};

enum class CsvLayout { rows_are_samples, columns_are_samples };

/// CSV dialect: UTF-8, comma separated, LF, dot decimal separator. First row
/// carries the grid; an optional leading id column is auto-detected when the
/// first header cell is non-numeric. columns_are_samples transposes that
/// interpretation.
FunctionalDataset load_csv(const std::filesystem::path& path,
                           CsvLayout layout = CsvLayout::rows_are_samples);

/// Writes the exact dialect load_csv reads (shortest round-trip floats),
/// atomically via temp file + rename.
void write_csv(const FunctionalDataset& ds, const std::filesystem::path& path);

struct SynthesisSpec {
    Index n = 40;
    Index p = 200;
    double smoothness = 0.15;  ///< bump width as a fraction of the grid span
    Index rank = 5;
    double noise_std = 0.0;
    std::uint64_t seed = 0;
};

/// Seeded desk-scale stand-in for measured discharge curves: each row is a
/// random mixture of `rank` Gaussian-bump basis curves over a uniform grid on
/// [2.0, 3.5] (stored high to low), plus white noise of std noise_std.
/// Deterministic for a fixed seed.
FunctionalDataset synthesize(const SynthesisSpec& spec);

DatasetSummary summarize(const FunctionalDataset& ds,
                         const std::optional<Vector>& y = std::nullopt);

/// Column-centered copy of ds.values plus the summary used to center.
/// Requires n >= 2.
std::pair<Matrix, DatasetSummary> center(const FunctionalDataset& ds);

SplitResult apply_split(const FunctionalDataset& ds, const SplitSpec& spec);

/// JSON sidecar: {"train":[...],"test1":[...],"test2":[...],"outliers":[...]}.
SplitSpec load_split_spec(const std::filesystem::path& path);

}  // namespace linfeat
