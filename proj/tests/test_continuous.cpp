#include <doctest.h>

#include <cmath>
#include <fstream>

#include "peid/continuous.hpp"
#include "peid/errors.hpp"
#include "peid/numeric.hpp"

#include "oracles.hpp"

using namespace peid;

namespace {

SampleMatrix gaussian_pair(std::size_t rows, double rho, std::uint64_t seed) {
    Rng rng(seed);
    SampleMatrix out = SampleMatrix::zeros(rows, 2);
    for (std::size_t r = 0; r < rows; ++r) {
        const double a = rng.normal();
        const double b = rng.normal();
        out.at(r, 0) = a;
        out.at(r, 1) = rho * a + std::sqrt(1.0 - rho * rho) * b;
    }
    return out;
}

} // namespace

TEST_SUITE_BEGIN("continuous");

TEST_CASE("lift_features evaluates the fixed monomial lists in order") {
    const std::vector<double> one = {2.0};
    CHECK(lift_features(one, LiftSpec{1}) == std::vector<double>{2.0, 4.0, 8.0});
    const std::vector<double> pair = {1.0, -1.0};
    CHECK(lift_features(pair, LiftSpec{2}) ==
          std::vector<double>{1.0, -1.0, -1.0, 1.0, 1.0});
    const std::vector<double> zero = {0.0};
    CHECK(lift_features(zero, LiftSpec{1}) == std::vector<double>{0.0, 0.0, 0.0});
    CHECK_THROWS_AS(lift_features(pair, LiftSpec{1}), ValidationError);
}

TEST_CASE("fit rejects degenerate samples") {
    SampleMatrix constant = SampleMatrix::zeros(64, 2);
    for (std::size_t r = 0; r < 64; ++r) {
        constant.at(r, 0) = 1.5;
        constant.at(r, 1) = -2.0;
    }
    CHECK_THROWS_AS(fit_affine_transport(constant), NumericalError);

    const SampleMatrix tiny = SampleMatrix::zeros(3, 2); // below dim + 2 rows
    CHECK_THROWS_AS(fit_affine_transport(tiny), ValidationError);
}

TEST_CASE("fit recovers the standard normal at large sample size") {
    Rng rng(1001);
    const std::size_t m = 100000;
    SampleMatrix samples = SampleMatrix::zeros(m, 2);
    for (std::size_t r = 0; r < m; ++r) {
        samples.at(r, 0) = rng.normal();
        samples.at(r, 1) = rng.normal();
    }
    const AffineTransportModel model = fit_affine_transport(samples);
    const double slack = 5.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(std::fabs(model.mean[i]) < slack);
        for (std::size_t j = 0; j <= i; ++j) {
            const double expected = i == j ? 1.0 : 0.0;
            CHECK(std::fabs(model.chol[i * 2 + j] - expected) < slack);
        }
    }
}

TEST_CASE("fit recovers a known covariance within three standard errors") {
    const std::size_t m = 20000;
    const SampleMatrix samples = gaussian_pair(m, 0.5, 4242);
    const AffineTransportModel model = fit_affine_transport(samples);
    // reconstruct covariance = chol * chol^T
    double cov[2][2] = {{0, 0}, {0, 0}};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                cov[i][j] += model.chol[static_cast<std::size_t>(i * 2 + k)] *
                             model.chol[static_cast<std::size_t>(j * 2 + k)];
            }
        }
    }
    const double truth[2][2] = {{1.0, 0.5}, {0.5, 1.0}};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double se = std::sqrt((truth[i][i] * truth[j][j] + truth[i][j] * truth[i][j]) /
                                        static_cast<double>(m - 1));
            CHECK(std::fabs(cov[i][j] - truth[i][j]) < 3.0 * se);
        }
    }
}

TEST_CASE("log_density of the standard model matches closed forms") {
    AffineTransportModel model;
    model.dim = 1;
    model.mean = {0.0};
    model.chol = {1.0};
    const double peak = -0.5 * std::log(2.0 * 3.14159265358979323846);
    const std::vector<double> z0 = {0.0}, z1 = {1.0};
    CHECK(model.log_density(z0) == doctest::Approx(peak).epsilon(1e-12));
    CHECK(model.log_density(z1) == doctest::Approx(peak - 0.5).epsilon(1e-12));

    AffineTransportModel wide = model;
    wide.chol = {2.0};
    CHECK(wide.log_density(z0) == doctest::Approx(peak - std::log(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(model.log_density(std::vector<double>{1.0, 2.0}), ValidationError);
}

TEST_CASE("log_density integrates to one (importance check, d <= 3)") {
    // fit a model on correlated 3-d data, then integrate exp(log_density)
    // with a wider Gaussian proposal
    Rng rng(71);
    const std::size_t m = 5000;
    SampleMatrix samples = SampleMatrix::zeros(m, 3);
    for (std::size_t r = 0; r < m; ++r) {
        const double a = rng.normal(), b = rng.normal(), c = rng.normal();
        samples.at(r, 0) = a;
        samples.at(r, 1) = 0.6 * a + 0.8 * b;
        samples.at(r, 2) = 0.3 * a - 0.2 * b + c;
    }
    const AffineTransportModel model = fit_affine_transport(samples);

    Rng prng(72);
    const double scale = 1.6;
    const std::size_t draws = 200000;
    double total = 0.0;
    std::vector<double> z(3), w(3);
    for (std::size_t k = 0; k < draws; ++k) {
        for (int i = 0; i < 3; ++i) w[static_cast<std::size_t>(i)] = prng.normal();
        // z = mean + scale * chol * w
        for (int i = 0; i < 3; ++i) {
            double v = 0.0;
            for (int j = 0; j <= i; ++j) {
                v += model.chol[static_cast<std::size_t>(i * 3 + j)] *
                     w[static_cast<std::size_t>(j)];
            }
            z[static_cast<std::size_t>(i)] = model.mean[static_cast<std::size_t>(i)] + scale * v;
        }
        // proposal density of z: scaled model
        double quad = 0.0;
        for (int i = 0; i < 3; ++i) {
            quad += w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
        }
        const double log_q = -0.5 * (3.0 * std::log(2.0 * 3.14159265358979323846) + quad) -
                             model.log_det_chol() - 3.0 * std::log(scale);
        total += std::exp(model.log_density(z) - log_q);
    }
    CHECK(total / static_cast<double>(draws) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("mi_estimate matches the closed-form Gaussian value") {
    const SampleMatrix pair = gaussian_pair(100000, 0.8, 42);
    const double truth = -0.5 * std::log2(1.0 - 0.8 * 0.8);
    CHECK(std::fabs(mi_estimate(pair.column(0), pair.column(1)) - truth) < 0.02);
}

TEST_CASE("mi_estimate of independent samples is near zero") {
    Rng rng(43);
    const std::size_t m = 100000;
    SampleMatrix x = SampleMatrix::zeros(m, 1), y = SampleMatrix::zeros(m, 1);
    for (std::size_t r = 0; r < m; ++r) {
        x.at(r, 0) = rng.normal();
        y.at(r, 0) = rng.normal();
    }
    CHECK(std::fabs(mi_estimate(x, y)) < 0.01);
}

TEST_CASE("mi_estimate fails on an exactly duplicated variable") {
    const SampleMatrix pair = gaussian_pair(5000, 0.3, 44);
    const SampleMatrix x = pair.column(0);
    CHECK_THROWS_AS(mi_estimate(x, x), NumericalError);
}

TEST_CASE("gaussian mi stays within three standard errors across 20 seeded trials") {
    const double rho = 0.8;
    const double truth = -0.5 * std::log2(1.0 - rho * rho);
    const std::size_t m = 10000;
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        const SampleMatrix pair = gaussian_pair(m, rho, seed);
        const SampleMatrix x = pair.column(0);
        const SampleMatrix y = pair.column(1);
        const double mi = mi_estimate(x, y);
        // standard error of the pointwise log-ratio mean, plus a small
        // allowance for the fitted-parameter bias
        const AffineTransportModel joint =
            fit_affine_transport(SampleMatrix::hcat(x, y));
        const AffineTransportModel mx = fit_affine_transport(x);
        const AffineTransportModel my = fit_affine_transport(y);
        double sum = 0.0, sum2 = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
            const std::vector<double> zj = {x.at(r, 0), y.at(r, 0)};
            const double t = (joint.log_density(zj) - mx.log_density(x.row(r)) -
                              my.log_density(y.row(r))) /
                             0.6931471805599453;
            sum += t;
            sum2 += t * t;
        }
        const double mean = sum / static_cast<double>(m);
        const double se =
            std::sqrt((sum2 / static_cast<double>(m) - mean * mean) / static_cast<double>(m));
        CHECK(std::fabs(mi - truth) < 3.0 * se + 1e-3);
    }
}

TEST_CASE("wishart correction shrinks the small-sample bias on independent data") {
    Rng rng(7);
    const std::size_t m = 64;
    double plain_total = 0.0, corrected_total = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        SampleMatrix x = SampleMatrix::zeros(m, 1), y = SampleMatrix::zeros(m, 1);
        for (std::size_t r = 0; r < m; ++r) {
            x.at(r, 0) = rng.normal();
            y.at(r, 0) = rng.normal();
        }
        plain_total += mi_estimate(x, y, std::nullopt, BiasCorrection::None);
        corrected_total += mi_estimate(x, y, std::nullopt, BiasCorrection::Wishart);
    }
    // true MI is 0; the plug-in estimate is biased upward, the corrected
    // mean should sit much closer to zero
    CHECK(plain_total > 0.0);
    CHECK(std::fabs(corrected_total) < std::fabs(plain_total) / 2.0);
}

TEST_CASE("synergy_estimate is exactly symmetric in its sources") {
    const SinCoupledDynamics dyn(0.7, 0.05, 2.0);
    const PairedSamples s = sample_mechanism(dyn, 20000, 2.0, 5);
    const SampleMatrix x1 = s.sources.column(0);
    const SampleMatrix x2 = s.sources.column(1);
    const SampleMatrix y = s.targets.column(0);
    const double a = synergy_estimate(x1, x2, y);
    const double b = synergy_estimate(x2, x1, y);
    CHECK(a == b); // bit identical
}

TEST_CASE("synergy of a product mechanism is positive and histogram-confirmed") {
    // y = x1 * x2 + small noise, sources uniform
    Rng rng(606);
    const std::size_t m = 100000;
    SampleMatrix x1 = SampleMatrix::zeros(m, 1), x2 = SampleMatrix::zeros(m, 1),
                 y = SampleMatrix::zeros(m, 1);
    std::vector<double> v1(m), v2(m), vy(m);
    for (std::size_t r = 0; r < m; ++r) {
        v1[r] = rng.uniform(-1.0, 1.0);
        v2[r] = rng.uniform(-1.0, 1.0);
        vy[r] = v1[r] * v2[r] + 0.05 * rng.normal();
        x1.at(r, 0) = v1[r];
        x2.at(r, 0) = v2[r];
        y.at(r, 0) = vy[r];
    }
    const double syn = synergy_estimate(x1, x2, y);
    CHECK(syn > 0.2);
    const auto hist = oracle::histogram_synergy(v1, v2, vy, 60);
    CHECK(hist.synergy() > 0.2);
}

TEST_CASE("synergy of an unrelated target is near zero") {
    Rng rng(607);
    const std::size_t m = 50000;
    SampleMatrix x1 = SampleMatrix::zeros(m, 1), x2 = SampleMatrix::zeros(m, 1),
                 y = SampleMatrix::zeros(m, 1);
    for (std::size_t r = 0; r < m; ++r) {
        x1.at(r, 0) = rng.uniform(-1.0, 1.0);
        x2.at(r, 0) = rng.uniform(-1.0, 1.0);
        y.at(r, 0) = rng.normal();
    }
    CHECK(std::fabs(synergy_estimate(x1, x2, y)) < 0.01);
}

TEST_CASE("alpha sweep is bit-deterministic for a fixed config") {
    SweepConfig config;
    config.alphas = {0.0, 0.5, 1.0};
    config.draws = 20000;
    config.seed = 9;
    const SweepResult a = run_alpha_sweep(config);
    const SweepResult b = run_alpha_sweep(config);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].ei_joint == b.rows[i].ei_joint);
        CHECK(a.rows[i].ei_x2 == b.rows[i].ei_x2);
        CHECK(a.rows[i].ei_x3 == b.rows[i].ei_x3);
        CHECK(a.rows[i].syn == b.rows[i].syn);
    }
    // table identity holds exactly by construction
    for (const auto& row : a.rows) {
        CHECK(row.ei_joint == row.syn + row.ei_x2 + row.ei_x3);
    }
}

TEST_CASE("alpha sweep validates its configuration") {
    SweepConfig config;
    config.alphas = {0.0, 1.5};
    CHECK_THROWS_AS(run_alpha_sweep(config), ValidationError);
    config.alphas = {0.5};
    config.draws = 100;
    CHECK_THROWS_AS(run_alpha_sweep(config), ValidationError);
    config.alphas = {};
    config.draws = 20000;
    CHECK_THROWS_AS(run_alpha_sweep(config), ValidationError);
}

TEST_CASE("sweep serialization records the correction mode") {
    SweepConfig config;
    config.alphas = {0.0, 1.0};
    config.draws = 15000;
    const SweepResult result = run_alpha_sweep(config);
    const nlohmann::json doc = sweep_to_json(result);
    CHECK(doc.at("correction") == "none");
    CHECK(doc.at("rows").size() == 2);
    const std::string csv = sweep_to_csv(result);
    CHECK(csv.rfind("alpha, ei_joint, ei_x2, ei_x3, syn\n", 0) == 0);
}

TEST_CASE("conditional-gaussian predictor round-trips through json and samples") {
    std::vector<ConditionalGaussianPredictor::Target> targets;
    ConditionalGaussianPredictor::Target t;
    t.name = "out";
    t.mean_terms = {{1.2, {1, 1}}, {-0.3, {2, 0}}};
    t.stddev = 0.25;
    targets.push_back(t);
    const ConditionalGaussianPredictor pred({"u", "v"}, targets);

    const nlohmann::json doc = predictor_to_json(pred);
    const ConditionalGaussianPredictor back = predictor_from_json(doc);
    CHECK(back.source_dim() == 2);
    CHECK(back.target_dim() == 1);
    const std::vector<double> source = {0.5, -2.0};
    CHECK(back.mean_of(0, source) ==
          doctest::Approx(1.2 * 0.5 * -2.0 - 0.3 * 0.25).epsilon(1e-12));

    // sampling is deterministic given the seed
    const PairedSamples s1 = sample_mechanism(back, 100, 2.0, 31);
    const PairedSamples s2 = sample_mechanism(back, 100, 2.0, 31);
    CHECK(s1.targets.data == s2.targets.data);

    // file loading goes through the same schema
    {
        std::ofstream out("/tmp/peid_predictor.json");
        out << doc.dump();
    }
    const ConditionalGaussianPredictor loaded =
        load_predictor_file("/tmp/peid_predictor.json");
    CHECK(loaded.mean_of(0, source) == back.mean_of(0, source));
    CHECK_THROWS_AS(load_predictor_file("/tmp/missing_predictor.json"), ValidationError);

    CHECK_THROWS_AS(ConditionalGaussianPredictor(
                        {"u"}, {ConditionalGaussianPredictor::Target{"bad", {}, -1.0}}),
                    ValidationError);
}

TEST_SUITE_END();
