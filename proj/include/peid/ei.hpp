#pragma once

#include <json.hpp>

#include "peid/tpm.hpp"

namespace peid {

// Effective information of a mechanism under the maximum-entropy
// intervention on its source side, in bits:
//
//   EI(P) = (1/M) sum_ij p_ij log2( M p_ij / sum_k p_kj )
//
// Zero-probability terms are skipped (0 log 0 = 0). The value lies in
// [0, min(log2 M, log2 L)].
double effective_information(const TransitionMatrix& tpm);

// Mechanism restricted to source subset A and target subset B. The source
// complement is marginalized uniformly, which is the unique choice
// consistent with the global maximum-entropy intervention: every A -> B
// quantity in this library carries that semantic.
//
//   P(x'_B = y | x_A = x)
//     = (1/|complement states|) sum_{x_Ac} sum_{x': x'_B = y} p(x' | x_A, x_Ac)
TransitionMatrix sub_mechanism(const TransitionMatrix& tpm, const IndexSubset& source_subset,
                               const IndexSubset& target_subset);

// EI attributable to one partition block on its own.
double unique_ei(const TransitionMatrix& tpm, const IndexSubset& block,
                 const IndexSubset& target_subset);

// Joint EI of A minus the sum of per-block EIs. Nonnegative up to floating
// point cancellation; tiny negatives are reported raw, never clamped.
double synergy(const TransitionMatrix& tpm, const IndexSubset& source_subset,
               const SourcePartition& partition, const IndexSubset& target_subset);

// System-level synergy: singleton partition of the full source side against
// the full next-time state.
double phi_eid(const TransitionMatrix& tpm);

// Conditional total correlation of the partition blocks given the target,
//   sum_i H(M_i | X'_B) - H(X_A | X'_B),
// evaluated under the interventional joint. Equal to synergy() by an
// algebraic identity, but computed through entropies so the two routes
// check each other.
double conditional_total_correlation(const TransitionMatrix& tpm,
                                     const SourcePartition& partition,
                                     const IndexSubset& target_subset);

struct DecompositionReport {
    double total_ei = 0.0;
    std::vector<std::pair<IndexSubset, double>> unique; // per block, bits
    double synergy = 0.0;
};

DecompositionReport decompose(const TransitionMatrix& tpm, const IndexSubset& source_subset,
                              const SourcePartition& partition,
                              const IndexSubset& target_subset);

// Serialized with 12 significant digits.
nlohmann::json decomposition_to_json(const DecompositionReport& report,
                                     const VariableSchema& source_schema);

// Two-source check: the unique/synergy split must satisfy the decomposition
// identity, and the synergy must match the mutual-information difference
// evaluated directly on the interventional joint distribution.
struct PidCompatReport {
    double unique_1 = 0.0;
    double unique_2 = 0.0;
    double synergy = 0.0;
    double joint_ei = 0.0;
    double synergy_mi_route = 0.0; // I(X1,X2;Y) - I(X1;Y) - I(X2;Y) from the joint
    double identity_gap = 0.0;     // joint_ei - (un1 + un2 + syn)
    double route_gap = 0.0;        // synergy - synergy_mi_route
};

PidCompatReport pid_compatibility_check(const TransitionMatrix& tpm,
                                        const IndexSubset& target_subset);

} // namespace peid
