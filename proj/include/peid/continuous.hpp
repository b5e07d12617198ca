#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "peid/numeric.hpp"

namespace peid {

// --- samples -----------------------------------------------------------------

// Row-major numeric table; one row per draw.
struct SampleMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;
    std::vector<std::string> labels;

    static SampleMatrix zeros(std::size_t rows, std::size_t cols);

    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }

    SampleMatrix column(std::size_t c) const;
    static SampleMatrix hcat(const SampleMatrix& a, const SampleMatrix& b);
};

// --- polynomial feature lifting -------------------------------------------------

// Fixed monomial lists applied to source variables before density fitting:
// arity 1 lifts x to (x, x^2, x^3); arity 2 lifts (x, y) to
// (x, y, xy, x^2, y^2). The cross term is what lets the Gaussian model see
// jointly nonlinear source effects.
struct LiftSpec {
    int arity = 1; // 1 or 2

    std::size_t lifted_dim() const { return arity == 1 ? 3 : 5; }
};

std::vector<double> lift_features(std::span<const double> values, const LiftSpec& spec);
SampleMatrix lift_samples(const SampleMatrix& samples, const LiftSpec& spec);

// --- affine transport model -----------------------------------------------------

// Gaussian density model: whitening map T(z) = L^-1 (z - mean) with L the
// Cholesky factor of the (jittered) sample covariance, evaluated as
//   log p(z) = -(1/2)[d log(2 pi) + |T(z)|^2] - log det L      (nats)
struct AffineTransportModel {
    std::size_t dim = 0;
    std::vector<double> mean;
    std::vector<double> chol; // row-major lower triangular, positive diagonal

    double log_density(std::span<const double> z) const; // nats
    double log_det_chol() const;
};

// Fits mean and covariance Cholesky factor. The covariance gets a jitter
// ladder of {1e-10, 1e-8, 1e-6} x (trace/d) added to the diagonal; a factor
// whose squared pivots stay below 1e-5 x (trace/d) is treated as degenerate
// and raises NumericalError, because density estimates from a near-singular
// covariance diverge rather than degrade.
AffineTransportModel fit_affine_transport(const SampleMatrix& samples);

// --- mutual information and synergy ----------------------------------------------

enum class BiasCorrection { None, Wishart };

// Transport-map MI estimate in bits:
//   (1/M) sum_m [log p(x,y) - log p(x) - log p(y)] / ln 2 - correction.
// When lift_x is set, x rows are lifted before fitting. The Wishart mode
// subtracts the expected log-determinant bias of each fitted covariance
// (digamma sum), the None mode subtracts nothing.
double mi_estimate(const SampleMatrix& x, const SampleMatrix& y,
                   std::optional<LiftSpec> lift_x = std::nullopt,
                   BiasCorrection correction = BiasCorrection::None);

// Two-source synergy from samples:
//   I(lift12(x1,x2); y) - I(lift1(x1); y) - I(lift1(x2); y)
// x1 and x2 must be univariate. The joint lift is order-canonical (the two
// columns are ordered by their data before lifting), so swapping x1 and x2
// returns the bit-identical value. Small negative outputs are finite-sample
// artifacts and are reported raw.
double synergy_estimate(const SampleMatrix& x1, const SampleMatrix& x2, const SampleMatrix& y,
                        BiasCorrection correction = BiasCorrection::None);

// --- conditional samplers ---------------------------------------------------------

// A mechanism over continuous states: pure function of (source values,
// generator state) producing one target draw.
class ConditionalSampler {
public:
    virtual ~ConditionalSampler() = default;
    virtual std::size_t source_dim() const = 0;
    virtual std::size_t target_dim() const = 0;
    virtual void sample_target(std::span<const double> source, Rng& rng,
                               std::span<double> target_out) const = 0;
};

// Coupled sine family over sources (x2, x3) drawn uniformly from
// [-interval_length/2, interval_length/2]:
//   y1 = alpha sin(x2 x3) + (1 - alpha) x2 + sigma_eps e1
//   y2 = sigma_eps e2,  y3 = sigma_eps e3
class SinCoupledDynamics final : public ConditionalSampler {
public:
    SinCoupledDynamics(double alpha, double sigma_eps, double interval_length = 2.0);

    std::size_t source_dim() const override { return 2; }
    std::size_t target_dim() const override { return 3; }
    void sample_target(std::span<const double> source, Rng& rng,
                       std::span<double> target_out) const override;

    double alpha() const { return alpha_; }
    double sigma_eps() const { return sigma_eps_; }
    double interval_length() const { return interval_length_; }

private:
    double alpha_;
    double sigma_eps_;
    double interval_length_;
};

// Generic conditional-Gaussian predictor: each target is a polynomial mean
// over the sources plus independent Gaussian noise. Stands in for an
// externally trained model; loadable from JSON (see predictor_from_json).
class ConditionalGaussianPredictor final : public ConditionalSampler {
public:
    struct PolyTerm {
        double coef = 0.0;
        std::vector<int> powers; // one exponent per source variable
    };
    struct Target {
        std::string name;
        std::vector<PolyTerm> mean_terms;
        double stddev = 1.0;
    };

    ConditionalGaussianPredictor(std::vector<std::string> source_names,
                                 std::vector<Target> targets);

    std::size_t source_dim() const override { return source_names_.size(); }
    std::size_t target_dim() const override { return targets_.size(); }
    void sample_target(std::span<const double> source, Rng& rng,
                       std::span<double> target_out) const override;

    double mean_of(std::size_t target, std::span<const double> source) const;
    const std::vector<std::string>& source_names() const { return source_names_; }
    const std::vector<Target>& targets() const { return targets_; }

private:
    std::vector<std::string> source_names_;
    std::vector<Target> targets_;
};

nlohmann::json predictor_to_json(const ConditionalGaussianPredictor& predictor);
ConditionalGaussianPredictor predictor_from_json(const nlohmann::json& doc);
ConditionalGaussianPredictor load_predictor_file(const std::string& path);

// Paired draws from a sampler with sources uniform on
// [-interval_length/2, interval_length/2] per dimension.
struct PairedSamples {
    SampleMatrix sources;
    SampleMatrix targets;
};
PairedSamples sample_mechanism(const ConditionalSampler& sampler, std::size_t draws,
                               double interval_length, std::uint64_t seed);

// --- alpha sweep --------------------------------------------------------------------

struct SweepConfig {
    std::vector<double> alphas;
    double sigma_eps = 0.05;
    double interval_length = 2.0;
    std::size_t draws = 100'000;
    std::uint64_t seed = 0;
    BiasCorrection correction = BiasCorrection::None;
};

struct SweepRow {
    double alpha = 0.0;
    double ei_joint = 0.0; // EI(X2,X3 -> X1'), bits
    double ei_x2 = 0.0;
    double ei_x3 = 0.0;
    double syn = 0.0;
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepRow> rows;
};

// One row per alpha; each row uses a generator seeded from (seed, alpha
// index), so results do not depend on evaluation order.
SweepResult run_alpha_sweep(const SweepConfig& config);

nlohmann::json sweep_to_json(const SweepResult& result);
std::string sweep_to_csv(const SweepResult& result);

} // namespace peid
