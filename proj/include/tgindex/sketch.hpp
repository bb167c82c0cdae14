#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tgindex/types.hpp"

namespace tgi {

/// A seeded bijection on [0, m), stored as an explicit lookup table.
///
/// The table is a Fisher-Yates shuffle of the identity driven by
/// std::mt19937_64(seed). Bounded draws use rejection sampling rather than
/// std::uniform_int_distribution so the permutation is identical across
/// standard library implementations.
class PermutationHash {
public:
    static constexpr std::string_view kGenerator = "mt19937_64+fisher-yates/rejection";

    PermutationHash(std::uint64_t seed, std::size_t m);

    [[nodiscard]] std::uint32_t operator()(std::uint32_t x) const { return table_[x]; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::size_t size() const noexcept { return table_.size(); }
    [[nodiscard]] std::span<const std::uint32_t> table() const noexcept { return table_; }

private:
    std::uint64_t seed_;
    std::vector<std::uint32_t> table_;
};

/// The h smallest distinct values of a set, ascending.
class BottomHSketch {
public:
    BottomHSketch() = default;
    BottomHSketch(std::size_t capacity, std::size_t domain) : capacity_(capacity), domain_(domain) {
        values_.reserve(capacity);
    }

    /// Returns true if the sketch changed.
    bool insert(std::uint32_t value);

    [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }
    [[nodiscard]] std::size_t domain() const noexcept { return domain_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
    [[nodiscard]] std::span<const std::uint32_t> values() const noexcept { return values_; }

    friend bool operator==(const BottomHSketch&, const BottomHSketch&) = default;

private:
    std::size_t capacity_ = 0;
    std::size_t domain_ = 0;
    std::vector<std::uint32_t> values_;
};

/// Sketch of the union from the two operand sketches. Throws ValidationError
/// if capacity or domain differ.
[[nodiscard]] BottomHSketch sketch_union(const BottomHSketch& a, const BottomHSketch& b);

/// Estimated Jaccard distance 1 - |s(A∪B) ∩ s(A) ∩ s(B)| / |s(A∪B)|.
/// Two empty sketches are at distance 1.
[[nodiscard]] double jaccard_estimate(const BottomHSketch& a, const BottomHSketch& b);

/// Sketches a whole set of domain elements under perm.
[[nodiscard]] BottomHSketch make_sketch(std::span<const std::uint32_t> elements,
                                        const PermutationHash& perm, std::size_t h);

/// Feeds permuted edge ids into a sketch while a stream pass runs.
class SketchAccumulator {
public:
    SketchAccumulator(const PermutationHash& perm, std::size_t h) : perm_(&perm), sketch_(h, perm.size()) {}

    void offer(EdgeId id) { sketch_.insert((*perm_)(id)); }

    [[nodiscard]] const BottomHSketch& sketch() const noexcept { return sketch_; }
    [[nodiscard]] BottomHSketch take() && { return std::move(sketch_); }

private:
    const PermutationHash* perm_;
    BottomHSketch sketch_;
};

}  // namespace tgi
