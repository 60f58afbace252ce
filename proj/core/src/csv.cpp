// CSV and split-spec IO for FunctionalDataset.

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "io_util.hpp"
#include "linfeat/dataset.hpp"
#include "linfeat/errors.hpp"

namespace linfeat {

namespace {

using detail::format_double;
using detail::parse_double;

std::vector<std::string_view> split_lines(std::string_view content) {
    std::vector<std::string_view> lines;
    size_t start = 0;
    while (start <= content.size()) {
        size_t end = content.find('\n', start);
        if (end == std::string_view::npos) end = content.size();
        std::string_view line = content.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (end == content.size()) break;
        start = end + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::vector<std::string_view> split_cells(std::string_view line) {
    std::vector<std::string_view> cells;
    size_t start = 0;
    while (true) {
        size_t end = line.find(',', start);
        if (end == std::string_view::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, end - start));
        start = end + 1;
    }
    return cells;
}

/// 1-based coordinates in the file's own orientation, so messages point at
/// the cell the user can see.
std::string cell_name(size_t row, size_t col, bool transposed) {
    if (transposed) std::swap(row, col);
    return "row " + std::to_string(row + 1) + ", column " + std::to_string(col + 1);
}

double parse_cell(std::string_view cell, size_t row, size_t col, bool transposed) {
    double out = 0;
    if (!parse_double(cell, out)) {
        throw ParseError("malformed number at " + cell_name(row, col, transposed) +
                         ": '" + std::string(cell) + "'");
    }
    if (!std::isfinite(out)) {
        throw ValidationError("non-finite value at " + cell_name(row, col, transposed) +
                              ": '" + std::string(cell) + "'");
    }
    return out;
}

bool is_numeric(std::string_view cell) {
    double out = 0;
    return parse_double(cell, out);
}

void check_monotone_grid(const Vector& grid) {
    if (grid.size() < 2) return;
    const bool increasing = grid(1) > grid(0);
    for (Index j = 1; j < grid.size(); ++j) {
        const bool step_up = grid(j) > grid(j - 1);
        if (step_up != increasing || grid(j) == grid(j - 1)) {
            throw ValidationError("grid is not strictly monotone at position " +
                                  std::to_string(j + 1));
        }
    }
}

}  // namespace

FunctionalDataset load_csv(const std::filesystem::path& path, CsvLayout layout) {
    const std::string content = detail::read_file(path);
    const auto lines = split_lines(content);
    if (lines.empty()) {
        throw ParseError("'" + path.string() + "' is empty");
    }

    std::vector<std::vector<std::string_view>> cells;
    cells.reserve(lines.size());
    for (const auto& line : lines) cells.push_back(split_cells(line));

    const size_t width = cells.front().size();
    for (size_t r = 1; r < cells.size(); ++r) {
        if (cells[r].size() != width) {
            throw ValidationError("ragged row " + std::to_string(r + 1) + ": " +
                                  std::to_string(cells[r].size()) + " cells, expected " +
                                  std::to_string(width));
        }
    }

    const bool transposed = layout == CsvLayout::columns_are_samples;
    if (transposed) {
        std::vector<std::vector<std::string_view>> t(width);
        for (size_t c = 0; c < width; ++c) {
            t[c].reserve(cells.size());
            for (const auto& row : cells) t[c].push_back(row[c]);
        }
        cells = std::move(t);
    }

    const auto& header = cells.front();
    const bool has_ids = !is_numeric(header[0]);
    const size_t first_col = has_ids ? 1 : 0;
    const size_t p = header.size() - first_col;
    if (p == 0) {
        throw ParseError("'" + path.string() + "' has no grid columns");
    }

    FunctionalDataset ds;
    ds.grid.resize(static_cast<Index>(p));
    for (size_t c = first_col; c < header.size(); ++c) {
        ds.grid(static_cast<Index>(c - first_col)) = parse_cell(header[c], 0, c, transposed);
    }
    check_monotone_grid(ds.grid);

    const size_t n = cells.size() - 1;
    ds.values.resize(static_cast<Index>(n), static_cast<Index>(p));
    ds.sample_ids.reserve(n);
    for (size_t r = 1; r < cells.size(); ++r) {
        const auto& row = cells[r];
        ds.sample_ids.push_back(has_ids ? std::string(row[0]) : std::to_string(r - 1));
        for (size_t c = first_col; c < row.size(); ++c) {
            ds.values(static_cast<Index>(r - 1), static_cast<Index>(c - first_col)) =
                parse_cell(row[c], r, c, transposed);
        }
    }

    ds.validate();
    return ds;
}

void write_csv(const FunctionalDataset& ds, const std::filesystem::path& path) {
    ds.validate();
    std::string out;
    out.reserve(static_cast<size_t>(ds.n() * ds.p()) * 12 + 256);

    out += "id";
    for (Index j = 0; j < ds.p(); ++j) {
        out += ',';
        out += format_double(ds.grid(j));
    }
    out += '\n';

    for (Index i = 0; i < ds.n(); ++i) {
        out += ds.sample_ids[static_cast<size_t>(i)];
        for (Index j = 0; j < ds.p(); ++j) {
            out += ',';
            out += format_double(ds.values(i, j));
        }
        out += '\n';
    }

    detail::atomic_write(path, out);
}

SplitSpec load_split_spec(const std::filesystem::path& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(detail::read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("split spec '" + path.string() + "': " + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("split spec '" + path.string() + "' must be a JSON object");
    }

    auto read_list = [&](const char* key) {
        std::vector<Index> out;
        if (!doc.contains(key)) return out;
        const auto& arr = doc.at(key);
        if (!arr.is_array()) {
            throw ParseError("split spec field '" + std::string(key) + "' must be an array");
        }
        out.reserve(arr.size());
        for (const auto& v : arr) {
            if (!v.is_number_integer() || v.get<long long>() < 0) {
                throw ValidationError("split spec field '" + std::string(key) +
                                      "' must hold non-negative integers");
            }
            out.push_back(v.get<Index>());
        }
        return out;
    };

    SplitSpec spec;
    spec.train = read_list("train");
    spec.test1 = read_list("test1");
    spec.test2 = read_list("test2");
    spec.outliers = read_list("outliers");
    return spec;
}

}  // namespace linfeat
