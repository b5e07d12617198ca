#pragma once

#include <vector>

#include <json.hpp>

#include "peid/tpm.hpp"

namespace peid {

// Downward causation onto one component, split into the component's
// flexibility and the synergy of its environment:
//
//   dc          = EI(X -> x'_j) - sum_i EI(x_i -> x'_j)
//   flexibility = EI(X -> x'_j) - EI(x_j -> x'_j) - EI(E_-j -> x'_j)
//   env_synergy = EI(E_-j -> x'_j) - sum_{i != j} EI(x_i -> x'_j)
//
// dc = flexibility + env_synergy by cancellation. Flexibility may be
// negative for some mechanisms; it is reported signed.
struct DownwardReport {
    int target_index = 0;
    double dc = 0.0;
    double flexibility = 0.0;
    double env_synergy = 0.0;
    double ei_full = 0.0;               // EI(X -> x'_j)
    double ei_env = 0.0;                // EI(E_-j -> x'_j)
    std::vector<double> per_source_ei;  // EI(x_i -> x'_j) for every i
};

double downward_causation(const TransitionMatrix& tpm, int target_index);

DownwardReport dc_decomposition(const TransitionMatrix& tpm, int target_index);

nlohmann::json downward_report_to_json(const DownwardReport& report,
                                       const VariableSchema& schema);

} // namespace peid
