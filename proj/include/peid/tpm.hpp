#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "peid/schema.hpp"

namespace peid {

// Row tolerance shared by every row-stochasticity check.
inline constexpr double kRowSumTolerance = 1e-12;

// Collapse sub-tolerance floating point drift at the probability
// boundaries; anything larger is a real violation and is left for
// validate() to report.
inline double snap_unit_interval(double p) {
    if (p > 1.0 && p <= 1.0 + kRowSumTolerance) return 1.0;
    if (p < 0.0 && p >= -kRowSumTolerance) return 0.0;
    return p;
}

// Row-stochastic conditional distribution P(target state | source state).
// Rows are indexed by the source schema's joint states, columns by the
// target schema's, both in the mixed-radix order defined in schema.hpp.
class TransitionMatrix {
public:
    TransitionMatrix(VariableSchema source, VariableSchema target, std::vector<double> probs);

    static TransitionMatrix zeros(VariableSchema source, VariableSchema target);

    const VariableSchema& source() const { return source_; }
    const VariableSchema& target() const { return target_; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double at(std::size_t i, std::size_t j) const { return probs_[i * cols_ + j]; }
    double& at(std::size_t i, std::size_t j) { return probs_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return {probs_.data() + i * cols_, cols_};
    }

    const std::vector<double>& data() const { return probs_; }

    // True when the source and target schemas describe the same variables,
    // i.e. the matrix is a full-system one-step mechanism.
    bool is_square_system() const;

    bool operator==(const TransitionMatrix& other) const {
        return source_ == other.source_ && target_ == other.target_ && probs_ == other.probs_;
    }

private:
    VariableSchema source_;
    VariableSchema target_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> probs_;
};

// Human-readable violations of the matrix invariants (entries in [0,1],
// rows summing to 1 within kRowSumTolerance). Empty means valid.
std::vector<std::string> validate(const TransitionMatrix& tpm);

// Throws ValidationError listing the violations when the matrix is invalid.
void require_valid(const TransitionMatrix& tpm);

// --- file formats -----------------------------------------------------------
//
// Text format:
//   # peid-tpm v1
//   (optional further '#' comment lines, e.g. an embedded manifest)
//   source: name:card name:card ...
//   target: name:card name:card ...
//   M lines of L decimal probabilities
//
// The same content is also accepted/produced as a JSON object; see
// tpm_to_json. Readers sniff the format from the first non-space byte.

std::string tpm_to_text(const TransitionMatrix& tpm,
                        const std::vector<std::string>& comment_lines = {});
TransitionMatrix tpm_from_text(const std::string& text);

nlohmann::json tpm_to_json(const TransitionMatrix& tpm);
TransitionMatrix tpm_from_json(const nlohmann::json& doc);

TransitionMatrix parse_tpm_document(const std::string& text);
TransitionMatrix load_tpm_file(const std::string& path);

} // namespace peid
