#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tsgkit {

/// A window of a tensor: l time steps by N dimensions, row-major over
/// (time step, dimension). Non-owning view.
struct WindowView {
    const double* data = nullptr;
    std::size_t seq_len = 0;
    std::size_t dim_count = 0;

    [[nodiscard]] double at(std::size_t j, std::size_t i) const {
        return data[j * dim_count + i];
    }
    [[nodiscard]] std::size_t size() const { return seq_len * dim_count; }
    [[nodiscard]] std::span<const double> flat() const { return {data, size()}; }
};

/// Rank-3 array of real values with shape (R windows, l time steps,
/// N dimensions), row-major over (r, j, i). Immutable after construction;
/// construction validates the shape product and that every value is finite.
class TimeSeriesTensor {
public:
    TimeSeriesTensor(std::vector<double> data, std::size_t r_count,
                     std::size_t seq_len, std::size_t dim_count);

    [[nodiscard]] std::size_t r_count() const { return r_count_; }
    [[nodiscard]] std::size_t seq_len() const { return seq_len_; }
    [[nodiscard]] std::size_t dim_count() const { return dim_count_; }
    [[nodiscard]] std::size_t size() const { return data_.size(); }

    [[nodiscard]] double at(std::size_t r, std::size_t j, std::size_t i) const {
        return data_[(r * seq_len_ + j) * dim_count_ + i];
    }

    [[nodiscard]] WindowView window(std::size_t r) const {
        return {data_.data() + r * seq_len_ * dim_count_, seq_len_, dim_count_};
    }

    [[nodiscard]] const std::vector<double>& values() const { return data_; }

    [[nodiscard]] bool same_window_shape(const TimeSeriesTensor& other) const {
        return seq_len_ == other.seq_len_ && dim_count_ == other.dim_count_;
    }

    /// New tensor holding the windows selected by `indices`, in order.
    [[nodiscard]] TimeSeriesTensor gather(std::span<const std::size_t> indices) const;

    /// Concatenation of this tensor's windows followed by `other`'s.
    [[nodiscard]] TimeSeriesTensor concat(const TimeSeriesTensor& other) const;

private:
    std::vector<double> data_;
    std::size_t r_count_;
    std::size_t seq_len_;
    std::size_t dim_count_;
};

/// A long multivariate series: L time points by N dimensions, row-major.
/// Column names are kept when the source file had a header.
class RawSeries {
public:
    RawSeries(std::vector<double> values, std::size_t length, std::size_t dim_count,
              std::vector<std::string> column_names = {});

    [[nodiscard]] std::size_t length() const { return length_; }
    [[nodiscard]] std::size_t dim_count() const { return dim_count_; }
    [[nodiscard]] double at(std::size_t t, std::size_t i) const {
        return values_[t * dim_count_ + i];
    }
    [[nodiscard]] const std::vector<double>& values() const { return values_; }
    [[nodiscard]] const std::vector<std::string>& column_names() const {
        return column_names_;
    }

private:
    std::vector<double> values_;
    std::size_t length_;
    std::size_t dim_count_;
    std::vector<std::string> column_names_;
};

} // namespace tsgkit
