#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "peid/graph.hpp"
#include "peid/tpm.hpp"

namespace peid {

// Surjective lumping of micro joint states onto macro joint states, stored
// as an explicit table so preimage cells are directly enumerable and
// surjectivity is checkable in O(|state space|).
struct CoarseGrainingMap {
    VariableSchema micro;
    VariableSchema macro;
    std::vector<std::uint32_t> table; // micro joint index -> macro joint index

    // Present when the map was built by grouping micro variables; names the
    // blocks and the per-block encoders so reports can show the grouping.
    struct Grouping {
        std::vector<IndexSubset> blocks;
        std::vector<std::string> encoders;
    };
    std::optional<Grouping> grouping;

    bool operator==(const CoarseGrainingMap& other) const {
        return micro == other.micro && macro == other.macro && table == other.table;
    }
};

// Throws ValidationError when sizes disagree, entries overflow the macro
// space, or some macro state has an empty preimage cell.
void check_map(const CoarseGrainingMap& map);

CoarseGrainingMap identity_map(const VariableSchema& schema);
CoarseGrainingMap all_to_one_map(const VariableSchema& schema);

// Block encoders for grouped maps. "allzero" distinguishes the all-zero
// block state from everything else, "parity" is the block sum mod 2,
// "identity" keeps the block's full state.
enum class BlockEncoder { AllZeroVsNot, Parity, Identity };

const char* encoder_name(BlockEncoder e);

// Grouped map over a partition of micro variables; macro variable order
// follows block order, and each macro alphabet is sized to the encoder
// range.
CoarseGrainingMap grouped_map(const VariableSchema& micro,
                              const std::vector<IndexSubset>& blocks,
                              const std::vector<BlockEncoder>& encoders);

nlohmann::json map_to_json(const CoarseGrainingMap& map);
CoarseGrainingMap map_from_json(const nlohmann::json& doc);
CoarseGrainingMap load_map_file(const std::string& path);

// Macro mechanism induced by realizing each macro intervention as the
// uniform distribution over its preimage cell:
//   P(z' | do(z)) = (1/|C_z|) sum_{x in C_z} sum_{x': map_target(x') = z'} P(x' | x)
TransitionMatrix macro_tpm(const TransitionMatrix& tpm, const CoarseGrainingMap& map_source,
                           const CoarseGrainingMap& map_target);

// Source side coarse-grained, target side left micro.
TransitionMatrix one_sided_macro_mechanism(const TransitionMatrix& tpm,
                                           const CoarseGrainingMap& map_source);

double macro_ei(const TransitionMatrix& tpm, const CoarseGrainingMap& map_source,
                const CoarseGrainingMap& map_target);

struct MultiscaleReport {
    CausalHypergraph micro_graph;
    CausalHypergraph macro_graph;
    double macro_ei = 0.0;
    double macro_phi = 0.0;
    // preimage cell members per macro state, both time sides
    std::vector<std::vector<std::uint32_t>> source_cells;
    std::vector<std::vector<std::uint32_t>> target_cells;
    std::optional<CoarseGrainingMap::Grouping> grouping;
};

// Same map applied to both time sides.
MultiscaleReport multiscale_report(const TransitionMatrix& tpm, const CoarseGrainingMap& map,
                                   const HypergraphOptions& graph_options = {});

nlohmann::json multiscale_report_to_json(const MultiscaleReport& report,
                                         const CoarseGrainingMap& map);

// --- coarse-graining search ---------------------------------------------------

struct SearchSpec {
    enum class Family {
        // Every lumping of the micro state space (set partitions of the
        // joint states). Requires |state space| <= 16 and fits the budget.
        StateLumpings,
        // Partitions of the micro variables, each block run through each
        // available encoder. Requires |state space| <= 4096.
        VariableGroupings,
    };
    Family family = Family::VariableGroupings;
    std::uint64_t budget = 1'000'000; // candidate maps before erroring out
    int top_k = 16;                   // ranked results returned
};

struct SearchResult {
    CoarseGrainingMap map;
    double macro_ei = 0.0;
};

// Deterministic ranking: macro EI descending, then fewer macro states,
// then lexicographic map table.
std::vector<SearchResult> search_coarse_graining(const TransitionMatrix& tpm,
                                                 const SearchSpec& spec);

} // namespace peid
