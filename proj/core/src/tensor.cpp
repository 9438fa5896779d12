#include "tsgkit/tensor.hpp"

#include "tsgkit/errors.hpp"

#include <cmath>
#include <string>

namespace tsgkit {

TimeSeriesTensor::TimeSeriesTensor(std::vector<double> data, std::size_t r_count,
                                   std::size_t seq_len, std::size_t dim_count)
    : data_(std::move(data)), r_count_(r_count), seq_len_(seq_len), dim_count_(dim_count) {
    if (r_count_ == 0 || seq_len_ == 0 || dim_count_ == 0) {
        throw ShapeError("tensor shape must have R, l, N >= 1, got (" +
                         std::to_string(r_count_) + ", " + std::to_string(seq_len_) +
                         ", " + std::to_string(dim_count_) + ")");
    }
    if (data_.size() != r_count_ * seq_len_ * dim_count_) {
        throw ShapeError("tensor payload has " + std::to_string(data_.size()) +
                         " values, shape (" + std::to_string(r_count_) + ", " +
                         std::to_string(seq_len_) + ", " + std::to_string(dim_count_) +
                         ") requires " + std::to_string(r_count_ * seq_len_ * dim_count_));
    }
    for (std::size_t idx = 0; idx < data_.size(); ++idx) {
        if (!std::isfinite(data_[idx])) {
            throw NumericError("tensor contains a non-finite value at flat index " +
                               std::to_string(idx));
        }
    }
}

TimeSeriesTensor TimeSeriesTensor::gather(std::span<const std::size_t> indices) const {
    const std::size_t wsize = seq_len_ * dim_count_;
    std::vector<double> out;
    out.reserve(indices.size() * wsize);
    for (const std::size_t r : indices) {
        if (r >= r_count_) {
            throw ShapeError("gather index " + std::to_string(r) + " out of range for R=" +
                             std::to_string(r_count_));
        }
        const double* w = data_.data() + r * wsize;
        out.insert(out.end(), w, w + wsize);
    }
    return {std::move(out), indices.size(), seq_len_, dim_count_};
}

TimeSeriesTensor TimeSeriesTensor::concat(const TimeSeriesTensor& other) const {
    if (!same_window_shape(other)) {
        throw ShapeError("cannot concatenate tensors with window shapes (" +
                         std::to_string(seq_len_) + ", " + std::to_string(dim_count_) +
                         ") and (" + std::to_string(other.seq_len_) + ", " +
                         std::to_string(other.dim_count_) + ")");
    }
    std::vector<double> out;
    out.reserve(data_.size() + other.data_.size());
    out.insert(out.end(), data_.begin(), data_.end());
    out.insert(out.end(), other.data_.begin(), other.data_.end());
    return {std::move(out), r_count_ + other.r_count_, seq_len_, dim_count_};
}

RawSeries::RawSeries(std::vector<double> values, std::size_t length, std::size_t dim_count,
                     std::vector<std::string> column_names)
    : values_(std::move(values)), length_(length), dim_count_(dim_count),
      column_names_(std::move(column_names)) {
    if (length_ == 0 || dim_count_ == 0) {
        throw ShapeError("raw series must have L >= 1 and N >= 1");
    }
    if (values_.size() != length_ * dim_count_) {
        throw ShapeError("raw series payload has " + std::to_string(values_.size()) +
                         " values, shape (" + std::to_string(length_) + ", " +
                         std::to_string(dim_count_) + ") requires " +
                         std::to_string(length_ * dim_count_));
    }
    if (!column_names_.empty() && column_names_.size() != dim_count_) {
        throw ShapeError("column name count does not match dimension count");
    }
    for (std::size_t idx = 0; idx < values_.size(); ++idx) {
        if (!std::isfinite(values_[idx])) {
            throw NumericError("raw series contains a non-finite value at flat index " +
                               std::to_string(idx));
        }
    }
}

} // namespace tsgkit
