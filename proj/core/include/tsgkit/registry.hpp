#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace tsgkit {

/// Published statistics of one benchmark dataset after standard preprocessing.
struct DatasetMeta {
    std::string name;
    std::size_t r_count;
    std::size_t seq_len;
    std::size_t dim_count;
    std::string domain;
};

/// The ten benchmark datasets with their published (R, l, N) statistics.
std::span<const DatasetMeta> registry();

/// Case-sensitive lookup by dataset name.
std::optional<DatasetMeta> find_dataset(std::string_view name);

} // namespace tsgkit
