#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wiener {

inline constexpr int kMaxTableDim = 16;  // 2^d lattice must stay enumerable

/// A 0/1 multi-index over d coordinates selecting which variables are
/// differentiated. Entry 0 is the most significant bit of the packed index,
/// so ascending `bits()` enumerates vectors in lexicographic order.
class EtaVector {
public:
    EtaVector(int dim, std::uint32_t bits) : d_(dim), bits_(bits) {
        if (dim < 1 || dim > kMaxTableDim)
            throw std::invalid_argument("eta dimension out of range [1,16]: " + std::to_string(dim));
        if (bits >> dim)
            throw std::invalid_argument("eta bits exceed dimension");
    }

    static EtaVector zero(int dim) { return EtaVector(dim, 0); }
    static EtaVector ones(int dim) { return EtaVector(dim, (1u << dim) - 1); }
    /// e_j: exactly one entry set (0-based axis).
    static EtaVector basis(int dim, int axis) {
        EtaVector e = zero(dim);
        if (axis < 0 || axis >= dim) throw std::invalid_argument("eta basis axis out of range");
        e.bits_ = 1u << (dim - 1 - axis);
        return e;
    }
    static EtaVector from_entries(const std::vector<int>& entries) {
        EtaVector e(static_cast<int>(entries.size()), 0);
        for (std::size_t j = 0; j < entries.size(); ++j) {
            if (entries[j] != 0 && entries[j] != 1)
                throw std::invalid_argument("eta entries must be 0 or 1");
            if (entries[j]) e.bits_ |= 1u << (entries.size() - 1 - j);
        }
        return e;
    }

    int dim() const { return d_; }
    std::uint32_t bits() const { return bits_; }
    int entry(int axis) const { return (bits_ >> (d_ - 1 - axis)) & 1u; }
    int weight() const { return std::popcount(bits_); }
    bool is_zero() const { return bits_ == 0; }
    bool is_ones() const { return bits_ == (1u << d_) - 1; }

    std::string str() const {
        std::string s(static_cast<std::size_t>(d_), '0');
        for (int j = 0; j < d_; ++j)
            if (entry(j)) s[static_cast<std::size_t>(j)] = '1';
        return s;
    }

    friend bool operator==(const EtaVector& a, const EtaVector& b) {
        return a.d_ == b.d_ && a.bits_ == b.bits_;
    }
    friend bool operator!=(const EtaVector& a, const EtaVector& b) { return !(a == b); }
    friend bool operator<(const EtaVector& a, const EtaVector& b) {
        if (a.d_ != b.d_) return a.d_ < b.d_;
        return a.bits_ < b.bits_;
    }

private:
    int d_;
    std::uint32_t bits_;
};

/// All 2^d vectors in lexicographic order; first is the zero vector, last is
/// all-ones.
inline std::vector<EtaVector> enumerate_etas(int dim) {
    if (dim < 1 || dim > kMaxTableDim)
        throw std::invalid_argument("dimension out of range [1,16]: " + std::to_string(dim));
    std::vector<EtaVector> all;
    all.reserve(std::size_t(1) << dim);
    for (std::uint32_t b = 0; b < (1u << dim); ++b) all.emplace_back(dim, b);
    return all;
}

}  // namespace wiener
