#include "nprank/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "nprank/rng.hpp"

namespace nprank {

Dataset::Dataset(std::vector<std::vector<double>> columns, std::vector<int> labels,
                 std::vector<std::string> feature_names)
    : columns_(std::move(columns)),
      labels_(std::move(labels)),
      feature_names_(std::move(feature_names)) {
    if (columns_.size() != feature_names_.size())
        throw std::invalid_argument("feature_names length must match column count");
    std::unordered_set<std::string> seen;
    for (const auto& name : feature_names_)
        if (!seen.insert(name).second)
            throw std::invalid_argument("duplicate feature name: " + name);
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        if (columns_[j].size() != labels_.size())
            throw std::invalid_argument("column length must match label count");
        for (double v : columns_[j])
            if (!std::isfinite(v))
                throw NonNumericCell("non-finite value in feature " + feature_names_[j]);
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == 0) {
            class0_rows_.push_back(i);
        } else if (labels_[i] == 1) {
            class1_rows_.push_back(i);
        } else {
            throw NonBinaryLabel("label must be 0 or 1");
        }
    }
    m_ = class0_rows_.size();
    n_ = class1_rows_.size();
    if (m_ == 0 || n_ == 0) throw EmptyClass("each class needs at least one observation");
}

Dataset Dataset::with_swapped_labels() const {
    std::vector<int> flipped(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) flipped[i] = 1 - labels_[i];
    return Dataset(columns_, std::move(flipped), feature_names_);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string strip(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_cell(const std::string& raw, std::size_t line_no) {
    const std::string cell = strip(raw);
    std::size_t pos = 0;
    double value = 0;
    try {
        value = std::stod(cell, &pos);
    } catch (const std::exception&) {
        throw NonNumericCell("non-numeric cell '" + cell + "' at line " + std::to_string(line_no));
    }
    if (pos != cell.size() || !std::isfinite(value))
        throw NonNumericCell("non-numeric cell '" + cell + "' at line " + std::to_string(line_no));
    return value;
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty file: " + path);
    auto header = split_fields(line);
    for (auto& h : header) h = strip(h);

    std::size_t label_idx = header.size();
    std::vector<std::string> feature_names;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == label_column)
            label_idx = j;
        else
            feature_names.push_back(header[j]);
    }
    if (label_idx == header.size())
        throw MissingLabelColumn("label column '" + label_column + "' not found");

    std::vector<std::vector<double>> columns(feature_names.size());
    std::vector<int> labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (strip(line).empty()) continue;
        auto fields = split_fields(line);
        if (fields.size() != header.size())
            throw std::runtime_error("line " + std::to_string(line_no) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(header.size()));
        std::size_t col = 0;
        for (std::size_t j = 0; j < fields.size(); ++j) {
            if (j == label_idx) {
                const std::string cell = strip(fields[j]);
                if (cell == "0") {
                    labels.push_back(0);
                } else if (cell == "1") {
                    labels.push_back(1);
                } else {
                    throw NonBinaryLabel("label '" + cell + "' at line " +
                                         std::to_string(line_no) + " is not 0 or 1");
                }
            } else {
                columns[col++].push_back(parse_cell(fields[j], line_no));
            }
        }
    }
    return Dataset(std::move(columns), std::move(labels), std::move(feature_names));
}

namespace {

// Shuffles 0..count-1 and splits off the first floor(count/2) indices.
void half_split(std::size_t count, std::mt19937_64& rng, std::vector<std::size_t>& ts,
                std::vector<std::size_t>& lo) {
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i) idx[i] = i;
    shuffle_fisher_yates(idx, rng);
    const std::size_t half = count / 2;
    ts.assign(idx.begin(), idx.begin() + half);
    lo.assign(idx.begin() + half, idx.end());
    std::sort(ts.begin(), ts.end());
    std::sort(lo.begin(), lo.end());
}

}  // namespace

SplitPlan make_splits(std::size_t m, std::size_t n, std::size_t B, std::uint64_t seed) {
    if (m < 2 || n < 2) throw ClassTooSmall("need at least 2 observations per class");
    SplitPlan plan;
    plan.seed = seed;
    plan.B = B;
    plan.splits.resize(B);
    for (std::size_t b = 0; b < B; ++b) {
        auto rng0 = make_stream(seed, b, 0);
        auto rng1 = make_stream(seed, b, 1);
        half_split(m, rng0, plan.splits[b].class0_ts, plan.splits[b].class0_lo);
        half_split(n, rng1, plan.splits[b].class1_ts, plan.splits[b].class1_lo);
    }
    return plan;
}

}  // namespace nprank
