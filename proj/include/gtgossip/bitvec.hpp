#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace gtgossip {

// Dense bit vector over GF(2), word-packed. Length is fixed at construction;
// every binary operation requires equal lengths.
class BitVector {
public:
    BitVector() : n_(0) {}
    explicit BitVector(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVector from_string(const std::string& bits);

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1ULL; }
    void set(std::size_t i, bool v = true) {
        if (v)
            w_[i >> 6] |= 1ULL << (i & 63);
        else
            w_[i >> 6] &= ~(1ULL << (i & 63));
    }

    std::size_t popcount() const;
    bool any() const;
    bool none() const { return !any(); }

    BitVector& operator^=(const BitVector& o);
    BitVector& operator&=(const BitVector& o);
    BitVector& operator|=(const BitVector& o);

    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
    friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }

    // a & ~b
    BitVector and_not(const BitVector& o) const;

    bool operator==(const BitVector& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVector& o) const { return !(*this == o); }

    // "0101..." with index 0 leftmost
    std::string to_string() const;
    // hex digits, nibble i covering bits [4i, 4i+4), bit 0 as the low bit
    std::string to_hex() const;

    const std::vector<uint64_t>& words() const { return w_; }

private:
    void clear_tail();

    std::size_t n_;
    std::vector<uint64_t> w_;
};

std::size_t hamming_distance(const BitVector& a, const BitVector& b);
// |supp(a) \ supp(b)|
std::size_t support_difference(const BitVector& a, const BitVector& b);

// Dense binary matrix, stored as rows.
class BitMatrix {
public:
    BitMatrix() : cols_(0) {}
    BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

    static BitMatrix from_strings(const std::vector<std::string>& rows);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    const BitVector& row(std::size_t i) const { return rows_[i]; }
    BitVector& row(std::size_t i) { return rows_[i]; }

    bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].set(c, v); }

    void append_row(BitVector r);

    BitVector column(std::size_t c) const;

    // 0/1 text grid, one row per line
    std::string to_grid() const;

private:
    std::size_t cols_;
    std::vector<BitVector> rows_;
};

// g = W (*) f with OR/AND semantics: g_i = OR_j (W_ij AND f_j)
BitVector boolean_mat_vec(const BitMatrix& w, const BitVector& f);

// Rank over GF(2) by Gaussian elimination; the input is not modified.
std::size_t gf2_rank(const BitMatrix& m);

// Incremental GF(2) row basis. insert() returns true when the row was
// linearly independent of everything inserted so far.
class Gf2Basis {
public:
    Gf2Basis() = default;
    explicit Gf2Basis(std::size_t width) : width_(width) {}

    bool insert(BitVector row);
    std::size_t rank() const { return basis_.size(); }

private:
    std::size_t width_ = 0;
    std::vector<BitVector> basis_;  // kept with distinct leading bits
    std::vector<std::size_t> lead_; // leading set-bit index per basis row
};

} // namespace gtgossip
