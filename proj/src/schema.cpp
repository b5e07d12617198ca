#include "peid/schema.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "peid/errors.hpp"

namespace peid {

VariableSchema::VariableSchema(std::vector<std::string> names, std::vector<int> cardinalities)
    : names_(std::move(names)), cardinalities_(std::move(cardinalities)) {
    if (names_.size() != cardinalities_.size()) {
        throw ValidationError("schema: names and cardinalities differ in length");
    }
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw ValidationError("schema: empty variable name");
        if (!seen.insert(n).second) {
            throw ValidationError("schema: duplicate variable name '" + n + "'");
        }
    }
    joint_count_ = 1;
    for (int c : cardinalities_) {
        if (c < 1) throw ValidationError("schema: cardinality must be positive");
        const auto limit = std::numeric_limits<std::uint64_t>::max();
        if (joint_count_ > limit / static_cast<std::uint64_t>(c)) {
            throw ValidationError("schema: joint state count overflows addressable index");
        }
        joint_count_ *= static_cast<std::uint64_t>(c);
    }
    // place value of variable i = product of cardinalities after it
    place_.assign(names_.size(), 1);
    for (int i = static_cast<int>(names_.size()) - 2; i >= 0; --i) {
        place_[static_cast<std::size_t>(i)] =
            place_[static_cast<std::size_t>(i) + 1] *
            static_cast<std::uint64_t>(cardinalities_[static_cast<std::size_t>(i) + 1]);
    }
}

VariableSchema VariableSchema::binary(std::vector<std::string> names) {
    std::vector<int> cards(names.size(), 2);
    return VariableSchema(std::move(names), std::move(cards));
}

int VariableSchema::find(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return static_cast<int>(i);
    }
    return -1;
}

std::uint64_t VariableSchema::index_of(std::span<const int> digits) const {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < names_.size(); ++i) {
        idx += static_cast<std::uint64_t>(digits[i]) * place_[i];
    }
    return idx;
}

void VariableSchema::digits_of(std::uint64_t index, std::span<int> out) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        out[i] = static_cast<int>((index / place_[i]) %
                                  static_cast<std::uint64_t>(cardinalities_[i]));
    }
}

VariableSchema VariableSchema::restrict(std::span<const int> subset) const {
    std::vector<std::string> names;
    std::vector<int> cards;
    names.reserve(subset.size());
    cards.reserve(subset.size());
    for (int i : subset) {
        names.push_back(names_[static_cast<std::size_t>(i)]);
        cards.push_back(cardinalities_[static_cast<std::size_t>(i)]);
    }
    return VariableSchema(std::move(names), std::move(cards));
}

void check_subset(const IndexSubset& subset, const VariableSchema& schema, bool allow_empty) {
    if (subset.empty()) {
        if (allow_empty) return;
        throw ValidationError("index subset must be nonempty");
    }
    int prev = -1;
    for (int i : subset) {
        if (i < 0 || i >= schema.size()) {
            throw ValidationError("index subset out of bounds: " + std::to_string(i));
        }
        if (i <= prev) throw ValidationError("index subset must be strictly increasing");
        prev = i;
    }
}

void check_partition(const SourcePartition& partition, const IndexSubset& universe,
                     const VariableSchema& schema) {
    check_subset(universe, schema);
    if (partition.empty()) throw ValidationError("partition has no blocks");
    std::vector<int> merged;
    for (const auto& block : partition) {
        check_subset(block, schema);
        merged.insert(merged.end(), block.begin(), block.end());
    }
    std::sort(merged.begin(), merged.end());
    for (std::size_t i = 1; i < merged.size(); ++i) {
        if (merged[i] == merged[i - 1]) {
            throw ValidationError("partition blocks overlap at variable index " +
                                  std::to_string(merged[i]));
        }
    }
    if (merged != universe) {
        throw ValidationError("partition does not cover the declared source subset exactly");
    }
}

IndexSubset complement_subset(const IndexSubset& subset, int n) {
    IndexSubset out;
    std::size_t k = 0;
    for (int i = 0; i < n; ++i) {
        if (k < subset.size() && subset[k] == i) {
            ++k;
        } else {
            out.push_back(i);
        }
    }
    return out;
}

SourcePartition singleton_partition(const IndexSubset& subset) {
    SourcePartition p;
    p.reserve(subset.size());
    for (int i : subset) p.push_back({i});
    return p;
}

std::vector<std::uint32_t> state_projection(const VariableSchema& schema,
                                            const IndexSubset& subset) {
    check_subset(subset, schema);
    const VariableSchema sub = schema.restrict(subset);
    std::vector<std::uint32_t> proj(schema.joint_count());
    std::vector<int> digits(static_cast<std::size_t>(schema.size()));
    std::vector<int> sub_digits(subset.size());
    for (std::uint64_t s = 0; s < schema.joint_count(); ++s) {
        schema.digits_of(s, digits);
        for (std::size_t k = 0; k < subset.size(); ++k) {
            sub_digits[k] = digits[static_cast<std::size_t>(subset[k])];
        }
        proj[s] = static_cast<std::uint32_t>(sub.index_of(sub_digits));
    }
    return proj;
}

std::vector<std::vector<int>> enumerate_set_partitions(int n, std::uint64_t budget) {
    // Restricted growth strings in lexicographic order: a[0] = 0 and
    // a[i] <= b[i] where b[i] = 1 + max(a[0..i-1]).
    std::vector<std::vector<int>> out;
    if (n <= 0) return out;
    if (n == 1) {
        out.push_back({0});
        return out;
    }
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    std::vector<int> b(static_cast<std::size_t>(n), 1);
    while (true) {
        if (out.size() >= budget) {
            throw NumericalError("set partition enumeration exceeds budget of " +
                                 std::to_string(budget));
        }
        out.push_back(a);
        const std::size_t last = static_cast<std::size_t>(n) - 1;
        if (a[last] < b[last]) {
            ++a[last];
            continue;
        }
        int j = n - 2;
        while (j > 0 && a[static_cast<std::size_t>(j)] == b[static_cast<std::size_t>(j)]) {
            --j;
        }
        if (j == 0) break;
        ++a[static_cast<std::size_t>(j)];
        const int m = b[static_cast<std::size_t>(j)] +
                      (a[static_cast<std::size_t>(j)] == b[static_cast<std::size_t>(j)] ? 1 : 0);
        for (int i = j + 1; i < n; ++i) {
            a[static_cast<std::size_t>(i)] = 0;
            b[static_cast<std::size_t>(i)] = m;
        }
    }
    return out;
}

} // namespace peid
