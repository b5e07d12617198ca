#include "peid/downward.hpp"

#include "peid/ei.hpp"
#include "peid/errors.hpp"
#include "peid/numeric.hpp"

namespace peid {

namespace {

void check_target(const TransitionMatrix& tpm, int j) {
    if (!tpm.is_square_system()) {
        throw ValidationError("downward causation: requires a square full-system mechanism");
    }
    if (j < 0 || j >= tpm.target().size()) {
        throw ValidationError("downward causation: target index " + std::to_string(j) +
                              " out of bounds");
    }
}

} // namespace

double downward_causation(const TransitionMatrix& tpm, int target_index) {
    check_target(tpm, target_index);
    const IndexSubset target = {target_index};
    IndexSubset all(static_cast<std::size_t>(tpm.source().size()));
    for (int i = 0; i < tpm.source().size(); ++i) all[static_cast<std::size_t>(i)] = i;
    double dc = unique_ei(tpm, all, target);
    for (int i = 0; i < tpm.source().size(); ++i) {
        dc -= unique_ei(tpm, {i}, target);
    }
    return dc;
}

DownwardReport dc_decomposition(const TransitionMatrix& tpm, int target_index) {
    check_target(tpm, target_index);
    const int n = tpm.source().size();
    const IndexSubset target = {target_index};
    IndexSubset all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    const IndexSubset env = complement_subset({target_index}, n);

    DownwardReport report;
    report.target_index = target_index;
    report.ei_full = unique_ei(tpm, all, target);
    report.ei_env = env.empty() ? 0.0 : unique_ei(tpm, env, target);
    report.per_source_ei.resize(static_cast<std::size_t>(n));
    double sum_single = 0.0;
    double sum_env_single = 0.0;
    for (int i = 0; i < n; ++i) {
        const double ei = unique_ei(tpm, {i}, target);
        report.per_source_ei[static_cast<std::size_t>(i)] = ei;
        sum_single += ei;
        if (i != target_index) sum_env_single += ei;
    }
    report.dc = report.ei_full - sum_single;
    report.flexibility = report.ei_full -
                         report.per_source_ei[static_cast<std::size_t>(target_index)] -
                         report.ei_env;
    report.env_synergy = report.ei_env - sum_env_single;
    return report;
}

nlohmann::json downward_report_to_json(const DownwardReport& report,
                                       const VariableSchema& schema) {
    nlohmann::json doc;
    doc["target"] = schema.name(report.target_index);
    doc["target_index"] = report.target_index;
    doc["dc"] = round_sig(report.dc, 12);
    doc["flexibility"] = round_sig(report.flexibility, 12);
    doc["env_synergy"] = round_sig(report.env_synergy, 12);
    doc["ei_full"] = round_sig(report.ei_full, 12);
    doc["ei_env"] = round_sig(report.ei_env, 12);
    nlohmann::json per = nlohmann::json::array();
    for (std::size_t i = 0; i < report.per_source_ei.size(); ++i) {
        per.push_back({{"source", schema.name(static_cast<int>(i))},
                       {"bits", round_sig(report.per_source_ei[i], 12)}});
    }
    doc["per_source_ei"] = std::move(per);
    return doc;
}

} // namespace peid
