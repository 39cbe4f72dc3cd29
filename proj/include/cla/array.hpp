#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cla/model.hpp"

namespace cla {

// An ordered list of tests; row identity is the index.
struct TestArray {
    std::vector<Test> rows;

    int row_count() const { return static_cast<int>(rows.size()); }
};

// A set of row indices of a fixed-size array, stored as a bitset.
class RowSet {
public:
    RowSet() = default;
    explicit RowSet(int universe) : size_(universe), words_((universe + 63) / 64, 0) {}

    int universe_size() const { return size_; }

    void insert(int i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void erase(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool contains(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    int count() const {
        int n = 0;
        for (auto w : words_) n += __builtin_popcountll(w);
        return n;
    }

    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    RowSet& operator|=(const RowSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    RowSet& operator^=(const RowSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
        return *this;
    }

    friend RowSet operator|(RowSet a, const RowSet& b) { return a |= b; }
    friend RowSet operator^(RowSet a, const RowSet& b) { return a ^= b; }

    bool subset_of(const RowSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    bool intersects(const RowSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    std::vector<int> indices() const {
        std::vector<int> out;
        for (int i = 0; i < size_; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }

    std::size_t hash() const {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (auto w : words_) h = (h ^ w) * 0x100000001b3ULL;
        return h;
    }

    bool operator==(const RowSet&) const = default;

private:
    int size_ = 0;
    std::vector<std::uint64_t> words_;
};

struct RowSetHash {
    std::size_t operator()(const RowSet& rs) const { return rs.hash(); }
};

}  // namespace cla
