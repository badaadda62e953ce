#include "hpf/multi_index.hpp"

namespace hpf {

int sign_of_concatenation(std::span<const MultiIndex> parts) {
    if (parts.empty()) return 1;
    const int dim = parts[0].dim();
    std::uint64_t seen = 0;
    int parity = 0;
    for (const MultiIndex& p : parts) {
        if (p.dim() != dim) throw std::invalid_argument("sign_of_concatenation: dimension mismatch");
        if (seen & p.mask()) return 0;
        // inversions of this part against everything already placed
        parity ^= cross_inversions_parity(seen, p.mask());
        seen |= p.mask();
    }
    return parity ? -1 : 1;
}

std::vector<std::uint64_t> multi_index_masks(int dim, int k) {
    std::vector<std::uint64_t> out;
    for_each_multi_index(dim, k, [&](std::uint64_t m) { out.push_back(m); });
    return out;
}

}  // namespace hpf
