#include "repfam/subsets.hpp"

#include <algorithm>
#include <limits>

namespace repfam {

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) noexcept {
    if (r > n) {
        return 0;
    }
    r = std::min(r, n - r);
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        // result * (n - r + i) / i stays integral at every step
        const std::uint64_t factor = n - r + i;
        const unsigned __int128 wide = static_cast<unsigned __int128>(result) * factor / i;
        if (wide > kMax) {
            return kMax;
        }
        result = static_cast<std::uint64_t>(wide);
    }
    return result;
}

std::vector<ElementSet> enumerate_subsets(Universe universe, std::size_t size, const ElementSet& excluding) {
    std::vector<ElementSet> out;
    for_each_subset(universe, size, excluding, [&](const ElementSet& s) { out.push_back(s); });
    return out;
}

}  // namespace repfam
