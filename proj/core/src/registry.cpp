#include "tsgkit/registry.hpp"

#include <array>

namespace tsgkit {

namespace {

const std::array<DatasetMeta, 10> kRegistry = {{
    {"DLG", 246, 14, 20, "Traffic"},
    {"Stock", 3294, 24, 6, "Financial"},
    {"Stock Long", 3204, 125, 6, "Financial"},
    {"Exchange", 6715, 125, 8, "Financial"},
    {"Energy", 17739, 24, 28, "Appliances"},
    {"Energy Long", 17649, 125, 28, "Appliances"},
    {"EEG", 13366, 128, 14, "Medical"},
    {"HAPT", 1514, 128, 6, "Medical"},
    {"Air", 7731, 168, 6, "Sensor"},
    {"Boiler", 80935, 192, 11, "Industrial"},
}};

} // namespace

std::span<const DatasetMeta> registry() { return kRegistry; }

std::optional<DatasetMeta> find_dataset(std::string_view name) {
    for (const auto& meta : kRegistry) {
        if (meta.name == name) return meta;
    }
    return std::nullopt;
}

} // namespace tsgkit
