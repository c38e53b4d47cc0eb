#ifndef MTSAD_AUTOCORR_HPP
#define MTSAD_AUTOCORR_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "mtsad/series.hpp"

namespace mtsad {

/// Sample autocorrelation of one window row at lags 1 .. len-1:
///   a_e = sum_{t=e}^{len-1} (x[t] - mean)(x[t-e] - mean) / sum_t (x[t] - mean)^2
/// Every coefficient lies in [-1, 1] and the result is invariant to shifting
/// or (nonzero) scaling of the row. A row with variance below 1e-24 has no
/// shape, so it is rejected rather than mapped to an arbitrary vector.
std::vector<double> autocorrelation(std::span<const double> row);

/// Maps each window to its per-variable autocorrelation coefficients. Item
/// widths shrink from q to q - 1 while starts and the source window spec are
/// kept, so scores can still be placed on the original series. Requires
/// q >= 3 (one lag is a single number and carries no shape). Throws
/// degenerate_window_error, tagged with the variable and window start, when
/// a row is constant.
subsequence_set autocorrelation_features(const subsequence_set& windows);

} // namespace mtsad

#endif
