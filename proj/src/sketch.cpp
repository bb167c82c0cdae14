#include "tgindex/sketch.hpp"

#include <algorithm>
#include <cassert>
#include <random>

namespace tgi {

namespace {

// Uniform in [0, bound) without modulo bias.
std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = gen();
        if (r >= threshold) return r % bound;
    }
}

}  // namespace

PermutationHash::PermutationHash(std::uint64_t seed, std::size_t m) : seed_(seed) {
    if (m == 0) throw ValidationError("permutation domain must be non-empty");
    if (m > std::numeric_limits<std::uint32_t>::max()) {
        throw ValidationError("permutation domain too large");
    }
    table_.resize(m);
    for (std::size_t i = 0; i < m; ++i) table_[i] = static_cast<std::uint32_t>(i);
    std::mt19937_64 gen(seed);
    for (std::size_t i = m - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(bounded(gen, i + 1));
        std::swap(table_[i], table_[j]);
    }
}

bool BottomHSketch::insert(std::uint32_t value) {
    assert(value < domain_);
    if (capacity_ == 0) return false;
    if (values_.size() == capacity_ && value >= values_.back()) return false;
    auto it = std::lower_bound(values_.begin(), values_.end(), value);
    if (it != values_.end() && *it == value) return false;
    values_.insert(it, value);
    if (values_.size() > capacity_) values_.pop_back();
    return true;
}

BottomHSketch sketch_union(const BottomHSketch& a, const BottomHSketch& b) {
    if (a.capacity() != b.capacity()) throw ValidationError("sketch capacities differ");
    if (a.domain() != b.domain()) throw ValidationError("sketch domains differ");
    BottomHSketch out(a.capacity(), a.domain());
    const auto x = a.values();
    const auto y = b.values();
    std::size_t i = 0, j = 0;
    while (out.size() < out.capacity() && (i < x.size() || j < y.size())) {
        std::uint32_t v;
        if (j == y.size() || (i < x.size() && x[i] < y[j])) {
            v = x[i++];
        } else if (i == x.size() || y[j] < x[i]) {
            v = y[j++];
        } else {
            v = x[i++];
            ++j;
        }
        out.insert(v);
    }
    return out;
}

double jaccard_estimate(const BottomHSketch& a, const BottomHSketch& b) {
    if (a.capacity() != b.capacity()) throw ValidationError("sketch capacities differ");
    if (a.domain() != b.domain()) throw ValidationError("sketch domains differ");
    // Walk the merged order up to the union sketch's h elements; an element of
    // s(A∪B) lies in s(A) ∩ s(B) exactly when both lists yield it together.
    const auto x = a.values();
    const auto y = b.values();
    std::size_t i = 0, j = 0, taken = 0, shared = 0;
    while (taken < a.capacity() && (i < x.size() || j < y.size())) {
        if (j == y.size() || (i < x.size() && x[i] < y[j])) {
            ++i;
        } else if (i == x.size() || y[j] < x[i]) {
            ++j;
        } else {
            ++i;
            ++j;
            ++shared;
        }
        ++taken;
    }
    if (taken == 0) return 1.0;
    return 1.0 - static_cast<double>(shared) / static_cast<double>(taken);
}

BottomHSketch make_sketch(std::span<const std::uint32_t> elements, const PermutationHash& perm,
                          std::size_t h) {
    BottomHSketch s(h, perm.size());
    for (std::uint32_t x : elements) s.insert(perm(x));
    return s;
}

}  // namespace tgi
