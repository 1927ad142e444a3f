#pragma once

// Mono Convolution instances and the Convolution Witness interface.

#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

namespace detsum {

/// X, Y, Z of equal length, 1-based in the problem statement and 0-based
/// here. Group indices are non-negative; negative values are sentinels.
struct MonoConvInstance {
    std::vector<std::int64_t> x;
    std::vector<std::int64_t> y;
    std::vector<std::int64_t> z;

    static constexpr std::int64_t kSentinelX = -1;
    static constexpr std::int64_t kSentinelY = -2;
    static constexpr std::int64_t kSentinelZ = -3;

    std::size_t size() const noexcept { return x.size(); }
};

using Witness = std::pair<std::size_t, std::size_t>;  ///< 1-based (i, j)

/// Preprocessed pair of binary vectors answering witness queries.
class WitnessStructure {
public:
    virtual ~WitnessStructure() = default;
    /// All (i, j) with i + j = k and X[i] = Y[j] = 1, ascending in i;
    /// k must lie in [2, 2n].
    virtual std::vector<Witness> query(std::size_t k) const = 0;
};

using WitnessFactory = std::function<std::unique_ptr<WitnessStructure>(
    const std::vector<std::uint8_t>& x, const std::vector<std::uint8_t>& y)>;

}  // namespace detsum
