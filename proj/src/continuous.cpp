#include "peid/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "peid/errors.hpp"

namespace peid {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836; // log(2*pi)
constexpr double kLn2 = 0.6931471805599453094;

// Squared-pivot floor, relative to trace/d. Pivots above this are healthy;
// below it the covariance is rank-deficient for estimation purposes even
// after the jitter ladder (the ladder tops out at 1e-6 x trace/d).
constexpr double kPivotFloorRel = 1e-5;

} // namespace

// --- samples ---------------------------------------------------------------------

SampleMatrix SampleMatrix::zeros(std::size_t rows, std::size_t cols) {
    SampleMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.data.assign(rows * cols, 0.0);
    return m;
}

SampleMatrix SampleMatrix::column(std::size_t c) const {
    SampleMatrix out = zeros(rows, 1);
    for (std::size_t r = 0; r < rows; ++r) out.at(r, 0) = at(r, c);
    if (c < labels.size()) out.labels = {labels[c]};
    return out;
}

SampleMatrix SampleMatrix::hcat(const SampleMatrix& a, const SampleMatrix& b) {
    if (a.rows != b.rows) throw ValidationError("hcat: row counts differ");
    SampleMatrix out = zeros(a.rows, a.cols + b.cols);
    for (std::size_t r = 0; r < a.rows; ++r) {
        for (std::size_t c = 0; c < a.cols; ++c) out.at(r, c) = a.at(r, c);
        for (std::size_t c = 0; c < b.cols; ++c) out.at(r, a.cols + c) = b.at(r, c);
    }
    out.labels = a.labels;
    out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
    return out;
}

// --- lifting ---------------------------------------------------------------------

std::vector<double> lift_features(std::span<const double> values, const LiftSpec& spec) {
    if (spec.arity != 1 && spec.arity != 2) {
        throw ValidationError("lift: arity must be 1 or 2");
    }
    if (values.size() != static_cast<std::size_t>(spec.arity)) {
        throw ValidationError("lift: arity mismatch (" + std::to_string(values.size()) +
                              " values for arity " + std::to_string(spec.arity) + ")");
    }
    if (spec.arity == 1) {
        const double x = values[0];
        return {x, x * x, x * x * x};
    }
    const double x = values[0];
    const double y = values[1];
    return {x, y, x * y, x * x, y * y};
}

SampleMatrix lift_samples(const SampleMatrix& samples, const LiftSpec& spec) {
    if (samples.cols != static_cast<std::size_t>(spec.arity)) {
        throw ValidationError("lift: sample width does not match lift arity");
    }
    SampleMatrix out = SampleMatrix::zeros(samples.rows, spec.lifted_dim());
    for (std::size_t r = 0; r < samples.rows; ++r) {
        const auto lifted = lift_features(samples.row(r), spec);
        for (std::size_t c = 0; c < lifted.size(); ++c) out.at(r, c) = lifted[c];
    }
    return out;
}

// --- affine transport model ---------------------------------------------------------

double AffineTransportModel::log_det_chol() const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) s += std::log(chol[i * dim + i]);
    return s;
}

double AffineTransportModel::log_density(std::span<const double> z) const {
    if (z.size() != dim) throw ValidationError("log_density: dimension mismatch");
    // forward-substitute L w = (z - mean), accumulate |w|^2
    std::vector<double> w(dim);
    double quad = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        double v = z[i] - mean[i];
        for (std::size_t j = 0; j < i; ++j) v -= chol[i * dim + j] * w[j];
        w[i] = v / chol[i * dim + i];
        quad += w[i] * w[i];
    }
    return -0.5 * (static_cast<double>(dim) * kLog2Pi + quad) - log_det_chol();
}

namespace {

// Lower Cholesky of a symmetric matrix; false when a squared pivot falls
// at or below pivot_floor.
bool try_cholesky(const std::vector<double>& matrix, std::size_t d, double pivot_floor,
                  std::vector<double>& out) {
    out.assign(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = matrix[i * d + j];
            for (std::size_t k = 0; k < j; ++k) s -= out[i * d + k] * out[j * d + k];
            if (i == j) {
                if (s <= pivot_floor) return false;
                out[i * d + i] = std::sqrt(s);
            } else {
                out[i * d + j] = s / out[j * d + j];
            }
        }
    }
    return true;
}

} // namespace

AffineTransportModel fit_affine_transport(const SampleMatrix& samples) {
    const std::size_t d = samples.cols;
    const std::size_t m = samples.rows;
    if (d == 0) throw ValidationError("fit: empty sample matrix");
    if (m < d + 2) {
        throw ValidationError("fit: need at least dim + 2 = " + std::to_string(d + 2) +
                              " rows, got " + std::to_string(m));
    }

    AffineTransportModel model;
    model.dim = d;
    model.mean.assign(d, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < d; ++c) model.mean[c] += samples.at(r, c);
    }
    for (std::size_t c = 0; c < d; ++c) model.mean[c] /= static_cast<double>(m);

    std::vector<double> cov(d * d, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t i = 0; i < d; ++i) {
            const double di = samples.at(r, i) - model.mean[i];
            for (std::size_t j = 0; j <= i; ++j) {
                cov[i * d + j] += di * (samples.at(r, j) - model.mean[j]);
            }
        }
    }
    const double denom = static_cast<double>(m - 1);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            cov[i * d + j] /= denom;
            cov[j * d + i] = cov[i * d + j];
        }
    }

    double trace = 0.0;
    for (std::size_t i = 0; i < d; ++i) trace += cov[i * d + i];
    const double scale = trace / static_cast<double>(d);
    if (!(scale > 0.0)) {
        throw NumericalError("fit: degenerate covariance (zero variance)");
    }

    static constexpr double kJitterLadder[] = {1e-10, 1e-8, 1e-6};
    const double pivot_floor = kPivotFloorRel * scale;
    std::vector<double> jittered(d * d);
    for (double rung : kJitterLadder) {
        jittered = cov;
        for (std::size_t i = 0; i < d; ++i) jittered[i * d + i] += rung * scale;
        if (try_cholesky(jittered, d, pivot_floor, model.chol)) {
            return model;
        }
    }
    throw NumericalError("fit: covariance not positive definite after jitter escalation");
}

// --- mutual information ----------------------------------------------------------------

namespace {

// E[log det of sample covariance] - log det of true covariance for a
// Gaussian with M samples in d dimensions (unbiased covariance estimator).
double log_det_bias(std::size_t m, std::size_t d) {
    double b = 0.0;
    for (std::size_t i = 1; i <= d; ++i) {
        b += digamma(0.5 * static_cast<double>(m - i));
    }
    b -= static_cast<double>(d) * std::log(0.5 * static_cast<double>(m - 1));
    return b;
}

double mean_log_density(const AffineTransportModel& model, const SampleMatrix& samples) {
    double s = 0.0;
    for (std::size_t r = 0; r < samples.rows; ++r) {
        s += model.log_density(samples.row(r));
    }
    return s / static_cast<double>(samples.rows);
}

double mi_from_matrices(const SampleMatrix& xs, const SampleMatrix& ys,
                        BiasCorrection correction) {
    if (xs.rows != ys.rows) throw ValidationError("mi: row counts differ");
    const SampleMatrix joint = SampleMatrix::hcat(xs, ys);
    const AffineTransportModel model_joint = fit_affine_transport(joint);
    const AffineTransportModel model_x = fit_affine_transport(xs);
    const AffineTransportModel model_y = fit_affine_transport(ys);

    double nats = mean_log_density(model_joint, joint) - mean_log_density(model_x, xs) -
                  mean_log_density(model_y, ys);
    if (correction == BiasCorrection::Wishart) {
        const std::size_t m = xs.rows;
        nats -= 0.5 * (log_det_bias(m, xs.cols) + log_det_bias(m, ys.cols) -
                       log_det_bias(m, joint.cols));
    }
    return nats / kLn2;
}

bool column_less(const SampleMatrix& a, const SampleMatrix& b) {
    for (std::size_t r = 0; r < a.rows; ++r) {
        if (a.at(r, 0) != b.at(r, 0)) return a.at(r, 0) < b.at(r, 0);
    }
    return false;
}

} // namespace

double mi_estimate(const SampleMatrix& x, const SampleMatrix& y, std::optional<LiftSpec> lift_x,
                   BiasCorrection correction) {
    if (lift_x.has_value()) {
        return mi_from_matrices(lift_samples(x, *lift_x), y, correction);
    }
    return mi_from_matrices(x, y, correction);
}

double synergy_estimate(const SampleMatrix& x1, const SampleMatrix& x2, const SampleMatrix& y,
                        BiasCorrection correction) {
    if (x1.cols != 1 || x2.cols != 1) {
        throw ValidationError("synergy_estimate: sources must be univariate");
    }
    if (x1.rows != x2.rows || x1.rows != y.rows) {
        throw ValidationError("synergy_estimate: row counts differ");
    }
    // canonical order for the joint lift so the estimate is symmetric
    const bool swap = column_less(x2, x1);
    const SampleMatrix pair = SampleMatrix::hcat(swap ? x2 : x1, swap ? x1 : x2);

    const double joint = mi_estimate(pair, y, LiftSpec{2}, correction);
    const double single_1 = mi_estimate(x1, y, LiftSpec{1}, correction);
    const double single_2 = mi_estimate(x2, y, LiftSpec{1}, correction);
    // grouped so the result is bit-identical under source swap
    return joint - (single_1 + single_2);
}

// --- samplers -----------------------------------------------------------------------

SinCoupledDynamics::SinCoupledDynamics(double alpha, double sigma_eps, double interval_length)
    : alpha_(alpha), sigma_eps_(sigma_eps), interval_length_(interval_length) {
    if (alpha < 0.0 || alpha > 1.0) throw ValidationError("alpha must be in [0, 1]");
    if (sigma_eps <= 0.0) throw ValidationError("sigma_eps must be positive");
    if (interval_length <= 0.0) throw ValidationError("interval length must be positive");
}

void SinCoupledDynamics::sample_target(std::span<const double> source, Rng& rng,
                                       std::span<double> target_out) const {
    const double x2 = source[0];
    const double x3 = source[1];
    target_out[0] =
        alpha_ * std::sin(x2 * x3) + (1.0 - alpha_) * x2 + sigma_eps_ * rng.normal();
    target_out[1] = sigma_eps_ * rng.normal();
    target_out[2] = sigma_eps_ * rng.normal();
}

ConditionalGaussianPredictor::ConditionalGaussianPredictor(
    std::vector<std::string> source_names, std::vector<Target> targets)
    : source_names_(std::move(source_names)), targets_(std::move(targets)) {
    for (const auto& t : targets_) {
        if (t.stddev <= 0.0) {
            throw ValidationError("predictor: stddev must be positive for target '" + t.name +
                                  "'");
        }
        for (const auto& term : t.mean_terms) {
            if (term.powers.size() != source_names_.size()) {
                throw ValidationError("predictor: term powers length must equal source count");
            }
            for (int p : term.powers) {
                if (p < 0) throw ValidationError("predictor: negative exponent");
            }
        }
    }
}

double ConditionalGaussianPredictor::mean_of(std::size_t target,
                                             std::span<const double> source) const {
    double mean = 0.0;
    for (const auto& term : targets_[target].mean_terms) {
        double v = term.coef;
        for (std::size_t i = 0; i < term.powers.size(); ++i) {
            for (int p = 0; p < term.powers[i]; ++p) v *= source[i];
        }
        mean += v;
    }
    return mean;
}

void ConditionalGaussianPredictor::sample_target(std::span<const double> source, Rng& rng,
                                                 std::span<double> target_out) const {
    for (std::size_t t = 0; t < targets_.size(); ++t) {
        target_out[t] = mean_of(t, source) + targets_[t].stddev * rng.normal();
    }
}

nlohmann::json predictor_to_json(const ConditionalGaussianPredictor& predictor) {
    nlohmann::json doc;
    doc["source_variables"] = predictor.source_names();
    nlohmann::json targets = nlohmann::json::array();
    for (const auto& t : predictor.targets()) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& term : t.mean_terms) {
            terms.push_back({{"coef", term.coef}, {"powers", term.powers}});
        }
        targets.push_back(
            {{"name", t.name}, {"mean", std::move(terms)}, {"stddev", t.stddev}});
    }
    doc["targets"] = std::move(targets);
    return doc;
}

ConditionalGaussianPredictor predictor_from_json(const nlohmann::json& doc) {
    std::vector<std::string> sources =
        doc.at("source_variables").get<std::vector<std::string>>();
    std::vector<ConditionalGaussianPredictor::Target> targets;
    for (const auto& t : doc.at("targets")) {
        ConditionalGaussianPredictor::Target target;
        target.name = t.value("name", "t" + std::to_string(targets.size()));
        target.stddev = t.at("stddev").get<double>();
        for (const auto& term : t.at("mean")) {
            ConditionalGaussianPredictor::PolyTerm pt;
            pt.coef = term.at("coef").get<double>();
            pt.powers = term.at("powers").get<std::vector<int>>();
            target.mean_terms.push_back(std::move(pt));
        }
        targets.push_back(std::move(target));
    }
    return ConditionalGaussianPredictor(std::move(sources), std::move(targets));
}

ConditionalGaussianPredictor load_predictor_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open predictor file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return predictor_from_json(nlohmann::json::parse(buf.str()));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("predictor file " + path + ": " + e.what());
    }
}

PairedSamples sample_mechanism(const ConditionalSampler& sampler, std::size_t draws,
                               double interval_length, std::uint64_t seed) {
    PairedSamples out;
    out.sources = SampleMatrix::zeros(draws, sampler.source_dim());
    out.targets = SampleMatrix::zeros(draws, sampler.target_dim());
    Rng rng(seed);
    const double half = interval_length / 2.0;
    std::vector<double> source(sampler.source_dim());
    std::vector<double> target(sampler.target_dim());
    for (std::size_t r = 0; r < draws; ++r) {
        for (std::size_t c = 0; c < source.size(); ++c) {
            source[c] = rng.uniform(-half, half);
        }
        sampler.sample_target(source, rng, target);
        for (std::size_t c = 0; c < source.size(); ++c) out.sources.at(r, c) = source[c];
        for (std::size_t c = 0; c < target.size(); ++c) out.targets.at(r, c) = target[c];
    }
    return out;
}

// --- alpha sweep ------------------------------------------------------------------------

SweepResult run_alpha_sweep(const SweepConfig& config) {
    if (config.alphas.empty()) throw ValidationError("alpha sweep: no alphas given");
    for (double a : config.alphas) {
        if (a < 0.0 || a > 1.0) throw ValidationError("alpha sweep: alphas must lie in [0, 1]");
    }
    if (config.draws < 10'000) {
        throw ValidationError("alpha sweep: at least 10000 draws required");
    }

    SweepResult result;
    result.config = config;
    for (std::size_t k = 0; k < config.alphas.size(); ++k) {
        const double alpha = config.alphas[k];
        const SinCoupledDynamics dyn(alpha, config.sigma_eps, config.interval_length);
        const PairedSamples draws =
            sample_mechanism(dyn, config.draws, config.interval_length, mix_seed(config.seed, k));
        const SampleMatrix x2 = draws.sources.column(0);
        const SampleMatrix x3 = draws.sources.column(1);
        const SampleMatrix y = draws.targets.column(0);

        SweepRow row;
        row.alpha = alpha;
        row.ei_x2 = mi_estimate(x2, y, LiftSpec{1}, config.correction);
        row.ei_x3 = mi_estimate(x3, y, LiftSpec{1}, config.correction);
        row.syn = synergy_estimate(x2, x3, y, config.correction);
        // the joint is reconstructed so the table identity
        // ei_joint = ei_x2 + ei_x3 + syn holds exactly
        row.ei_joint = row.syn + row.ei_x2 + row.ei_x3;
        result.rows.push_back(row);
    }
    return result;
}

nlohmann::json sweep_to_json(const SweepResult& result) {
    nlohmann::json doc;
    doc["sigma_eps"] = result.config.sigma_eps;
    doc["interval_length"] = result.config.interval_length;
    doc["draws"] = result.config.draws;
    doc["seed"] = result.config.seed;
    doc["correction"] =
        result.config.correction == BiasCorrection::Wishart ? "wishart" : "none";
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : result.rows) {
        rows.push_back({{"alpha", r.alpha},
                        {"ei_joint", r.ei_joint},
                        {"ei_x2", r.ei_x2},
                        {"ei_x3", r.ei_x3},
                        {"syn", r.syn}});
    }
    doc["rows"] = std::move(rows);
    return doc;
}

std::string sweep_to_csv(const SweepResult& result) {
    std::string out = "alpha, ei_joint, ei_x2, ei_x3, syn\n";
    char buf[160];
    for (const auto& r : result.rows) {
        std::snprintf(buf, sizeof(buf), "%.6g, %.12g, %.12g, %.12g, %.12g\n", r.alpha,
                      r.ei_joint, r.ei_x2, r.ei_x3, r.syn);
        out += buf;
    }
    return out;
}

} // namespace peid
