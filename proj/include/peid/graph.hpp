#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "peid/tpm.hpp"

namespace peid {

// Threshold below which an edge is treated as floating-point noise.
inline constexpr double kDefaultEdgeEpsilon = 1e-9;

struct EiEdge {
    int source = 0; // variable index, time t
    int target = 0; // variable index, time t+1
    double weight = 0.0;

    bool operator==(const EiEdge&) const = default;
};

struct SynHyperedge {
    IndexSubset sources; // |sources| >= 2
    IndexSubset targets; // nonempty
    double weight = 0.0; // synergy under the singleton partition of sources

    bool operator==(const SynHyperedge&) const = default;
};

// Pairwise EI edges plus synergistic hyperedges over one time step.
// Edges are kept sorted lexicographically by key, so builds are
// reproducible regardless of evaluation order.
struct CausalHypergraph {
    VariableSchema schema;
    double epsilon = kDefaultEdgeEpsilon;
    std::vector<EiEdge> edges;
    std::vector<SynHyperedge> hyperedges;

    bool operator==(const CausalHypergraph&) const = default;
};

enum class TargetMode { Singletons, AllSubsets };

struct HypergraphOptions {
    double epsilon = kDefaultEdgeEpsilon;
    int max_source_order = 3;
    TargetMode target_mode = TargetMode::Singletons;
    // Cap on evaluated (source set, target set) pairs; enumeration is
    // exponential, so blowing past this is an error rather than a stall.
    std::uint64_t max_pairs = 1'000'000;
};

// Edges only: evaluates all n^2 single-source single-target pairs.
CausalHypergraph build_pairwise_graph(const TransitionMatrix& tpm,
                                      double epsilon = kDefaultEdgeEpsilon);

// Full hypergraph: pairwise edges plus hyperedges for every source subset
// of order 2..max_source_order against targets per target_mode.
CausalHypergraph build_hypergraph(const TransitionMatrix& tpm,
                                  const HypergraphOptions& options = {});

nlohmann::json graph_to_json(const CausalHypergraph& graph);
CausalHypergraph graph_from_json(const nlohmann::json& doc);

// Graphviz rendering: solid arrows for pairwise edges (pen width scales
// with weight), one auxiliary dashed node per hyperedge labeled with its
// weight.
std::string graph_to_dot(const CausalHypergraph& graph,
                         const std::vector<std::string>& comment_lines = {});

} // namespace peid
