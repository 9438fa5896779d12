#pragma once

#include "tsgkit/tensor.hpp"

#include <vector>

namespace tsgkit {

/// Plot-ready density curves for the pooled values of each source.
/// In histogram mode densities are relative frequencies over aligned bins
/// (they sum to 1 per label); in KDE mode they are Gaussian kernel densities
/// with Silverman bandwidth, evaluated on the shared grid.
struct DistributionData {
    std::vector<double> position;   // shared grid (bin centers)
    std::vector<double> real;       // density per position, original data
    std::vector<double> synthetic;  // density per position, generated data
    bool kde = false;
};

DistributionData distribution_data(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen,
                                   int bins, bool kde = false);

} // namespace tsgkit
