#include "peid/ei.hpp"

#include <algorithm>
#include <cmath>

#include "peid/errors.hpp"
#include "peid/numeric.hpp"

namespace peid {

double effective_information(const TransitionMatrix& tpm) {
    require_valid(tpm);
    const std::size_t m = tpm.rows();
    const std::size_t l = tpm.cols();
    std::vector<double> col_sum(l, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < l; ++j) col_sum[j] += tpm.at(i, j);
    }
    const double dm = static_cast<double>(m);
    double ei = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
            const double p = tpm.at(i, j);
            if (p <= 0.0) continue;
            ei += p * std::log2(dm * p / col_sum[j]);
        }
    }
    return ei / dm;
}

TransitionMatrix sub_mechanism(const TransitionMatrix& tpm, const IndexSubset& source_subset,
                               const IndexSubset& target_subset) {
    check_subset(source_subset, tpm.source());
    check_subset(target_subset, tpm.target());

    const VariableSchema sub_source = tpm.source().restrict(source_subset);
    const VariableSchema sub_target = tpm.target().restrict(target_subset);
    const auto src_proj = state_projection(tpm.source(), source_subset);
    const auto dst_proj = state_projection(tpm.target(), target_subset);

    TransitionMatrix out = TransitionMatrix::zeros(sub_source, sub_target);
    for (std::size_t i = 0; i < tpm.rows(); ++i) {
        double* out_row = &out.at(src_proj[i], 0);
        for (std::size_t j = 0; j < tpm.cols(); ++j) {
            out_row[dst_proj[j]] += tpm.at(i, j);
        }
    }
    const double complement_states =
        static_cast<double>(tpm.rows()) / static_cast<double>(out.rows());
    for (std::size_t i = 0; i < out.rows(); ++i) {
        for (std::size_t j = 0; j < out.cols(); ++j) {
            out.at(i, j) = snap_unit_interval(out.at(i, j) / complement_states);
        }
    }
    return out;
}

double unique_ei(const TransitionMatrix& tpm, const IndexSubset& block,
                 const IndexSubset& target_subset) {
    return effective_information(sub_mechanism(tpm, block, target_subset));
}

double synergy(const TransitionMatrix& tpm, const IndexSubset& source_subset,
               const SourcePartition& partition, const IndexSubset& target_subset) {
    check_partition(partition, source_subset, tpm.source());
    double total = effective_information(sub_mechanism(tpm, source_subset, target_subset));
    for (const auto& block : partition) {
        total -= unique_ei(tpm, block, target_subset);
    }
    return total;
}

namespace {

IndexSubset full_subset(const VariableSchema& schema) {
    IndexSubset all(static_cast<std::size_t>(schema.size()));
    for (int i = 0; i < schema.size(); ++i) all[static_cast<std::size_t>(i)] = i;
    return all;
}

} // namespace

double phi_eid(const TransitionMatrix& tpm) {
    if (!tpm.is_square_system()) {
        throw ValidationError("phi_eid: requires a square full-system mechanism");
    }
    const IndexSubset all = full_subset(tpm.source());
    return synergy(tpm, all, singleton_partition(all), full_subset(tpm.target()));
}

double conditional_total_correlation(const TransitionMatrix& tpm,
                                     const SourcePartition& partition,
                                     const IndexSubset& target_subset) {
    IndexSubset source_subset;
    for (const auto& block : partition) {
        source_subset.insert(source_subset.end(), block.begin(), block.end());
    }
    std::sort(source_subset.begin(), source_subset.end());
    check_partition(partition, source_subset, tpm.source());

    // Interventional joint over (X_A, X'_B): uniform on rows of the
    // restricted mechanism.
    const TransitionMatrix sub = sub_mechanism(tpm, source_subset, target_subset);
    const std::size_t ma = sub.rows();
    const std::size_t lb = sub.cols();
    const double pa = 1.0 / static_cast<double>(ma);

    std::vector<double> p_y(lb, 0.0);
    for (std::size_t a = 0; a < ma; ++a) {
        for (std::size_t y = 0; y < lb; ++y) p_y[y] += pa * sub.at(a, y);
    }

    // H(X_A | Y) from the joint
    double h_a_given_y = 0.0;
    for (std::size_t a = 0; a < ma; ++a) {
        for (std::size_t y = 0; y < lb; ++y) {
            const double q = pa * sub.at(a, y);
            if (q <= 0.0) continue;
            h_a_given_y -= q * std::log2(q / p_y[y]);
        }
    }

    // Relative positions of each block's variables inside A
    double sum_h_blocks = 0.0;
    for (const auto& block : partition) {
        IndexSubset rel;
        rel.reserve(block.size());
        for (int v : block) {
            const auto it = std::lower_bound(source_subset.begin(), source_subset.end(), v);
            rel.push_back(static_cast<int>(it - source_subset.begin()));
        }
        const auto proj = state_projection(sub.source(), rel);
        const std::size_t mb = sub.source().restrict(rel).joint_count();
        std::vector<double> joint(mb * lb, 0.0);
        for (std::size_t a = 0; a < ma; ++a) {
            const std::size_t b = proj[a];
            for (std::size_t y = 0; y < lb; ++y) {
                joint[b * lb + y] += pa * sub.at(a, y);
            }
        }
        double h = 0.0;
        for (std::size_t b = 0; b < mb; ++b) {
            for (std::size_t y = 0; y < lb; ++y) {
                const double q = joint[b * lb + y];
                if (q <= 0.0) continue;
                h -= q * std::log2(q / p_y[y]);
            }
        }
        sum_h_blocks += h;
    }
    return sum_h_blocks - h_a_given_y;
}

DecompositionReport decompose(const TransitionMatrix& tpm, const IndexSubset& source_subset,
                              const SourcePartition& partition,
                              const IndexSubset& target_subset) {
    check_partition(partition, source_subset, tpm.source());
    DecompositionReport report;
    report.total_ei = effective_information(sub_mechanism(tpm, source_subset, target_subset));
    double sum_unique = 0.0;
    for (const auto& block : partition) {
        const double u = unique_ei(tpm, block, target_subset);
        report.unique.emplace_back(block, u);
        sum_unique += u;
    }
    report.synergy = report.total_ei - sum_unique;
    return report;
}

nlohmann::json decomposition_to_json(const DecompositionReport& report,
                                     const VariableSchema& source_schema) {
    nlohmann::json doc;
    doc["total_ei"] = round_sig(report.total_ei, 12);
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& [block, bits] : report.unique) {
        nlohmann::json names = nlohmann::json::array();
        for (int v : block) names.push_back(source_schema.name(v));
        blocks.push_back({{"block", std::move(names)}, {"bits", round_sig(bits, 12)}});
    }
    doc["unique"] = std::move(blocks);
    doc["synergy"] = round_sig(report.synergy, 12);
    return doc;
}

PidCompatReport pid_compatibility_check(const TransitionMatrix& tpm,
                                        const IndexSubset& target_subset) {
    if (tpm.source().size() != 2) {
        throw ValidationError("pid_compatibility_check: requires exactly two source variables");
    }
    check_subset(target_subset, tpm.target());

    PidCompatReport report;
    const TransitionMatrix joint_mech = sub_mechanism(tpm, {0, 1}, target_subset);
    report.joint_ei = effective_information(joint_mech);
    report.unique_1 = unique_ei(tpm, {0}, target_subset);
    report.unique_2 = unique_ei(tpm, {1}, target_subset);
    report.synergy = report.joint_ei - report.unique_1 - report.unique_2;
    report.identity_gap =
        report.joint_ei - (report.unique_1 + report.unique_2 + report.synergy);

    // Independent route: plain mutual informations on the interventional
    // joint q(x1, x2, y) = (1/M) P(y | x1, x2).
    const std::size_t m = joint_mech.rows();
    const std::size_t l = joint_mech.cols();
    const std::size_t c1 = static_cast<std::size_t>(tpm.source().cardinality(0));
    const std::size_t c2 = static_cast<std::size_t>(tpm.source().cardinality(1));
    const double pm = 1.0 / static_cast<double>(m);

    std::vector<double> p_y(l, 0.0), p_x1y(c1 * l, 0.0), p_x2y(c2 * l, 0.0);
    for (std::size_t s = 0; s < m; ++s) {
        const std::size_t x1 = s / c2;
        const std::size_t x2 = s % c2;
        for (std::size_t y = 0; y < l; ++y) {
            const double q = pm * joint_mech.at(s, y);
            p_y[y] += q;
            p_x1y[x1 * l + y] += q;
            p_x2y[x2 * l + y] += q;
        }
    }
    auto mi_pair = [&](const std::vector<double>& joint, std::size_t nx, double px) {
        double mi = 0.0;
        for (std::size_t x = 0; x < nx; ++x) {
            for (std::size_t y = 0; y < l; ++y) {
                const double q = joint[x * l + y];
                if (q <= 0.0) continue;
                mi += q * std::log2(q / (px * p_y[y]));
            }
        }
        return mi;
    };
    double mi_joint = 0.0;
    for (std::size_t s = 0; s < m; ++s) {
        for (std::size_t y = 0; y < l; ++y) {
            const double q = pm * joint_mech.at(s, y);
            if (q <= 0.0) continue;
            mi_joint += q * std::log2(q / (pm * p_y[y]));
        }
    }
    const double mi_1 = mi_pair(p_x1y, c1, 1.0 / static_cast<double>(c1));
    const double mi_2 = mi_pair(p_x2y, c2, 1.0 / static_cast<double>(c2));
    report.synergy_mi_route = mi_joint - mi_1 - mi_2;
    report.route_gap = report.synergy - report.synergy_mi_route;
    return report;
}

} // namespace peid
