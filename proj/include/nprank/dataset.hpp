#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nprank {

struct MissingLabelColumn : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonBinaryLabel : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonNumericCell : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyClass : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ClassTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Labeled sample with column-major feature storage. Class 0 is the
// error-controlled class. Immutable after construction.
class Dataset {
public:
    Dataset(std::vector<std::vector<double>> columns, std::vector<int> labels,
            std::vector<std::string> feature_names);

    std::size_t n_samples() const { return labels_.size(); }
    std::size_t n_features() const { return columns_.size(); }
    std::size_t class_count(int label) const { return label == 0 ? m_ : n_; }

    std::span<const double> column(std::size_t j) const { return columns_[j]; }
    const std::vector<int>& labels() const { return labels_; }
    const std::vector<std::string>& feature_names() const { return feature_names_; }

    // Row indices belonging to the given class, ascending.
    const std::vector<std::size_t>& class_rows(int label) const {
        return label == 0 ? class0_rows_ : class1_rows_;
    }

    // Same data with labels 0 and 1 exchanged.
    Dataset with_swapped_labels() const;

private:
    std::vector<std::vector<double>> columns_;
    std::vector<int> labels_;
    std::vector<std::string> feature_names_;
    std::vector<std::size_t> class0_rows_, class1_rows_;
    std::size_t m_ = 0, n_ = 0;
};

Dataset load_csv(const std::string& path, const std::string& label_column);

// One stratified half-split. Index lists refer to within-class positions
// (0..m-1 for class 0, 0..n-1 for class 1), each sorted ascending.
struct Split {
    std::vector<std::size_t> class0_ts, class0_lo;
    std::vector<std::size_t> class1_ts, class1_lo;

    bool operator==(const Split&) const = default;
};

struct SplitPlan {
    std::vector<Split> splits;
    std::uint64_t seed = 0;
    std::size_t B = 0;

    bool operator==(const SplitPlan&) const = default;
};

// B reproducible half-splits. Split b depends only on (seed, b), so plans
// may be generated in any order or in parallel.
SplitPlan make_splits(std::size_t m, std::size_t n, std::size_t B, std::uint64_t seed);

}  // namespace nprank
