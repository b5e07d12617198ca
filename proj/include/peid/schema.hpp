#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace peid {

// Ordered set of named variables with per-variable alphabet sizes.
//
// Joint states are addressed in mixed-radix order with variable 0 most
// significant: for cardinalities (c0, ..., c_{n-1}) the state with digits
// (d0, ..., d_{n-1}) has index d0*c1*...*c_{n-1} + ... + d_{n-1}. This
// convention is shared by every file format and matrix in the library.
class VariableSchema {
public:
    VariableSchema() = default;
    VariableSchema(std::vector<std::string> names, std::vector<int> cardinalities);

    // All-binary schema.
    static VariableSchema binary(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    std::uint64_t joint_count() const { return joint_count_; }

    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& cardinalities() const { return cardinalities_; }
    const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }
    int cardinality(int i) const { return cardinalities_[static_cast<std::size_t>(i)]; }

    // -1 when the name is not declared.
    int find(const std::string& name) const;

    std::uint64_t index_of(std::span<const int> digits) const;
    void digits_of(std::uint64_t index, std::span<int> out) const;

    // Schema restricted to a subset of positions (relative order preserved).
    VariableSchema restrict(std::span<const int> subset) const;

    bool operator==(const VariableSchema& other) const {
        return names_ == other.names_ && cardinalities_ == other.cardinalities_;
    }

private:
    std::vector<std::string> names_;
    std::vector<int> cardinalities_;
    std::vector<std::uint64_t> place_;     // mixed-radix place values
    std::uint64_t joint_count_ = 1;
};

// Sorted, duplicate-free variable positions within a schema.
using IndexSubset = std::vector<int>;

// Disjoint blocks whose union is a declared source subset.
using SourcePartition = std::vector<IndexSubset>;

// Throws ValidationError unless `subset` is sorted, unique and inside the
// schema; empty subsets are rejected unless allow_empty.
void check_subset(const IndexSubset& subset, const VariableSchema& schema,
                  bool allow_empty = false);

// Throws ValidationError unless the blocks are pairwise disjoint and cover
// `universe` exactly. Partial covers are never silently completed.
void check_partition(const SourcePartition& partition, const IndexSubset& universe,
                     const VariableSchema& schema);

IndexSubset complement_subset(const IndexSubset& subset, int n);

SourcePartition singleton_partition(const IndexSubset& subset);

// Per-state projection table: entry s is the joint index of state s
// restricted to `subset` (in the restricted schema's own radix).
std::vector<std::uint32_t> state_projection(const VariableSchema& schema,
                                            const IndexSubset& subset);

// All set partitions of {0,...,n-1} as restricted-growth strings, in
// lexicographic RGS order. Throws ValidationError when the Bell number
// exceeds `budget`.
std::vector<std::vector<int>> enumerate_set_partitions(int n, std::uint64_t budget);

} // namespace peid
