#pragma once

#include <cstdint>
#include <vector>

namespace nscm {

// Index of a value within a variable's declared range.
using ValueId = int;

// A nonempty-or-empty subset of one variable's range, as a bitmask over value
// indices. Ranges are capped at 64 values; the model loader enforces this.
class ValueSet {
public:
    static constexpr int max_range = 64;

    ValueSet() = default;

    static ValueSet single(ValueId v) { return ValueSet(uint64_t{1} << v); }
    static ValueSet full(int n) {
        return ValueSet(n >= max_range ? ~uint64_t{0} : (uint64_t{1} << n) - 1);
    }
    static ValueSet from_bits(uint64_t bits) { return ValueSet(bits); }

    void insert(ValueId v) { bits_ |= uint64_t{1} << v; }
    bool contains(ValueId v) const { return (bits_ >> v) & 1; }
    bool empty() const { return bits_ == 0; }
    int size() const { return __builtin_popcountll(bits_); }
    uint64_t bits() const { return bits_; }

    ValueSet operator|(ValueSet o) const { return ValueSet(bits_ | o.bits_); }
    ValueSet& operator|=(ValueSet o) { bits_ |= o.bits_; return *this; }
    ValueSet operator&(ValueSet o) const { return ValueSet(bits_ & o.bits_); }
    bool operator==(const ValueSet&) const = default;

    bool is_subset_of(ValueSet o) const { return (bits_ & ~o.bits_) == 0; }

    // Iterates set members in ascending value order.
    class iterator {
    public:
        explicit iterator(uint64_t bits) : bits_(bits) {}
        ValueId operator*() const { return __builtin_ctzll(bits_); }
        iterator& operator++() { bits_ &= bits_ - 1; return *this; }
        bool operator!=(const iterator& o) const { return bits_ != o.bits_; }

    private:
        uint64_t bits_;
    };

    iterator begin() const { return iterator(bits_); }
    iterator end() const { return iterator(0); }

    std::vector<ValueId> values() const {
        std::vector<ValueId> out;
        out.reserve(size());
        for (ValueId v : *this) out.push_back(v);
        return out;
    }

private:
    explicit ValueSet(uint64_t bits) : bits_(bits) {}

    uint64_t bits_ = 0;
};

}  // namespace nscm
