#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hpf {

/// Increasing multi-index into {1, ..., dim}, encoded as a machine-word
/// bit set (bit i-1 stands for element i).  dim is capped at 64.
class MultiIndex {
public:
    static constexpr int kMaxDim = 64;

    MultiIndex() = default;

    explicit MultiIndex(int dim, std::uint64_t mask = 0) : dim_(dim), mask_(mask) {
        validate();
    }

    MultiIndex(int dim, std::initializer_list<int> elements) : dim_(dim) {
        for (int e : elements) {
            if (e < 1 || e > dim) throw std::invalid_argument("MultiIndex: element out of range");
            mask_ |= std::uint64_t{1} << (e - 1);
        }
        validate();
        if (static_cast<std::size_t>(degree()) != elements.size())
            throw std::invalid_argument("MultiIndex: repeated element");
    }

    static MultiIndex full(int dim) {
        return MultiIndex(dim, dim == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << dim) - 1);
    }

    int dim() const noexcept { return dim_; }
    std::uint64_t mask() const noexcept { return mask_; }
    int degree() const noexcept { return std::popcount(mask_); }
    bool empty() const noexcept { return mask_ == 0; }

    bool contains(int e) const noexcept { return (mask_ >> (e - 1)) & 1u; }
    bool overlaps(const MultiIndex& o) const noexcept { return (mask_ & o.mask_) != 0; }

    /// Elements in increasing order, 1-based.
    std::vector<int> elements() const {
        std::vector<int> out;
        out.reserve(degree());
        for (std::uint64_t m = mask_; m; m &= m - 1)
            out.push_back(std::countr_zero(m) + 1);
        return out;
    }

    MultiIndex unioned(const MultiIndex& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("MultiIndex: dimension mismatch");
        return MultiIndex(dim_, mask_ | o.mask_);
    }

    std::string to_string() const {
        std::string s = "(";
        bool first = true;
        for (int e : elements()) {
            if (!first) s += ",";
            s += std::to_string(e);
            first = false;
        }
        return s + ")";
    }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

private:
    void validate() const {
        if (dim_ < 0 || dim_ > kMaxDim) throw std::invalid_argument("MultiIndex: dim must be in 0..64");
        if (dim_ < 64 && (mask_ >> dim_) != 0)
            throw std::invalid_argument("MultiIndex: element out of range");
    }

    int dim_ = 0;
    std::uint64_t mask_ = 0;
};

/// Sign relating e_{t1} ^ e_{t2} ^ ... to the basis wedge on the sorted
/// union: 0 if any two parts overlap, otherwise the parity of the
/// permutation sorting the concatenated index sequence.  The parity is
/// obtained by counting cross-part inversions with popcounts; no
/// permutation is materialized.
int sign_of_concatenation(std::span<const MultiIndex> parts);

inline int sign_of_concatenation(std::initializer_list<MultiIndex> parts) {
    return sign_of_concatenation(std::span<const MultiIndex>(parts.begin(), parts.size()));
}

/// Cross-part inversion parity for two bit sets: number of pairs (s, t),
/// s in `left`, t in `right`, with s > t, reduced mod 2.  Assumes the
/// masks are disjoint.
inline int cross_inversions_parity(std::uint64_t left, std::uint64_t right) noexcept {
    int inv = 0;
    for (std::uint64_t m = right; m; m &= m - 1) {
        const int t = std::countr_zero(m);
        // bits of `left` strictly above position t
        const std::uint64_t above = (t == 63) ? 0 : (left >> (t + 1));
        inv ^= std::popcount(above) & 1;
    }
    return inv;
}

/// Sign for a pair of disjoint masks (the binary case of
/// sign_of_concatenation); returns 0 on overlap.
inline int concat_sign_pair(std::uint64_t left, std::uint64_t right) noexcept {
    if (left & right) return 0;
    return cross_inversions_parity(left, right) ? -1 : 1;
}

/// Visit every degree-k bit set over {1..dim} in increasing mask order.
template <typename Fn>
void for_each_multi_index(int dim, int k, Fn&& fn) {
    if (k < 0 || k > dim) return;
    if (k == 0) {
        fn(std::uint64_t{0});
        return;
    }
    const std::uint64_t limit = (dim == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << dim) - 1;
    std::uint64_t v = (k == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
    while (true) {
        fn(v);
        // Gosper's hack: next mask with the same popcount
        const std::uint64_t c = v & (~v + 1);
        const std::uint64_t r = v + c;
        if (r == 0 || r > limit) break;  // carried past bit dim-1
        const std::uint64_t next = r | (((v ^ r) >> 2) / c);
        if (next > limit) break;
        v = next;
    }
}

/// All degree-k masks over {1..dim}, increasing.
std::vector<std::uint64_t> multi_index_masks(int dim, int k);

}  // namespace hpf
