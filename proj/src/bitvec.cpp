#include "gtgossip/bitvec.hpp"

#include <bit>
#include <stdexcept>

namespace gtgossip {

namespace {
void check_same_length(std::size_t a, std::size_t b) {
    if (a != b) throw std::invalid_argument("bit vector length mismatch");
}
} // namespace

BitVector BitVector::from_string(const std::string& bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            v.set(i);
        else if (bits[i] != '0')
            throw std::invalid_argument("bit string must contain only 0/1");
    }
    return v;
}

std::size_t BitVector::popcount() const {
    std::size_t c = 0;
    for (uint64_t w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool BitVector::any() const {
    for (uint64_t w : w_)
        if (w) return true;
    return false;
}

BitVector& BitVector::operator^=(const BitVector& o) {
    check_same_length(n_, o.n_);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
}

BitVector& BitVector::operator&=(const BitVector& o) {
    check_same_length(n_, o.n_);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
}

BitVector& BitVector::operator|=(const BitVector& o) {
    check_same_length(n_, o.n_);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
}

BitVector BitVector::and_not(const BitVector& o) const {
    check_same_length(n_, o.n_);
    BitVector r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & ~o.w_[i];
    return r;
}

std::string BitVector::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

std::string BitVector::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::size_t nibbles = (n_ + 3) / 4;
    std::string s(nibbles, '0');
    for (std::size_t i = 0; i < nibbles; ++i) {
        unsigned v = 0;
        for (unsigned b = 0; b < 4; ++b) {
            std::size_t bit = 4 * i + b;
            if (bit < n_ && get(bit)) v |= 1u << b;
        }
        s[i] = digits[v];
    }
    return s;
}

void BitVector::clear_tail() {
    unsigned tail = n_ & 63;
    if (tail && !w_.empty()) w_.back() &= (1ULL << tail) - 1;
}

std::size_t hamming_distance(const BitVector& a, const BitVector& b) {
    check_same_length(a.size(), b.size());
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.words().size(); ++i)
        c += static_cast<std::size_t>(std::popcount(a.words()[i] ^ b.words()[i]));
    return c;
}

std::size_t support_difference(const BitVector& a, const BitVector& b) {
    check_same_length(a.size(), b.size());
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.words().size(); ++i)
        c += static_cast<std::size_t>(std::popcount(a.words()[i] & ~b.words()[i]));
    return c;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
    BitMatrix m;
    for (const auto& r : rows) m.append_row(BitVector::from_string(r));
    return m;
}

void BitMatrix::append_row(BitVector r) {
    if (rows_.empty())
        cols_ = r.size();
    else if (r.size() != cols_)
        throw std::invalid_argument("row length does not match matrix width");
    rows_.push_back(std::move(r));
}

BitVector BitMatrix::column(std::size_t c) const {
    BitVector v(rows());
    for (std::size_t r = 0; r < rows(); ++r)
        if (rows_[r].get(c)) v.set(r);
    return v;
}

std::string BitMatrix::to_grid() const {
    std::string s;
    for (const auto& r : rows_) {
        s += r.to_string();
        s += '\n';
    }
    return s;
}

BitVector boolean_mat_vec(const BitMatrix& w, const BitVector& f) {
    if (w.cols() != f.size()) throw std::invalid_argument("matrix/vector dimension mismatch");
    BitVector g(w.rows());
    for (std::size_t i = 0; i < w.rows(); ++i) {
        const auto& rw = w.row(i).words();
        const auto& fw = f.words();
        for (std::size_t k = 0; k < rw.size(); ++k) {
            if (rw[k] & fw[k]) {
                g.set(i);
                break;
            }
        }
    }
    return g;
}

std::size_t gf2_rank(const BitMatrix& m) {
    Gf2Basis basis(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) basis.insert(m.row(i));
    return basis.rank();
}

bool Gf2Basis::insert(BitVector row) {
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (row.get(lead_[i])) row ^= basis_[i];
    if (row.none()) return false;
    std::size_t lead = 0;
    while (!row.get(lead)) ++lead;
    basis_.push_back(std::move(row));
    lead_.push_back(lead);
    return true;
}

} // namespace gtgossip
