#include "linkexpr/error.hpp"
#include "linkexpr/fdist.hpp"
#include "linkexpr/rng.hpp"
#include "linkexpr/rpc.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace linkexpr;

namespace {

Eigen::MatrixXd column(std::initializer_list<double> xs) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(xs.size()), 1);
    Eigen::Index i = 0;
    for (double x : xs) m(i++, 0) = x;
    return m;
}

Eigen::MatrixXd gaussian(SplitMix64& rng, Eigen::Index q, Eigen::Index d, double shift = 0.0) {
    Eigen::MatrixXd m(q, d);
    for (Eigen::Index i = 0; i < q; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.normal() + shift;
    return m;
}

}  // namespace

TEST_CASE("incomplete beta against boost") {
    for (double a : {0.5, 1.0, 2.5, 9.0})
        for (double b : {0.5, 1.0, 3.0, 25.0})
            for (double x : {0.01, 0.2, 0.5, 0.93}) {
                const auto ib = incomplete_beta(a, b, x);
                CHECK(ib.lower == doctest::Approx(boost::math::ibeta(a, b, x)).epsilon(1e-10));
                CHECK(ib.upper == doctest::Approx(boost::math::ibetac(a, b, x)).epsilon(1e-10));
            }
}

TEST_CASE("f quantiles against the bisection oracle") {
    CHECK(oracle::f_upper_quantile(1, 2, 0.05) == doctest::Approx(18.513).epsilon(1e-4));
    CHECK(oracle::f_upper_quantile(2, 10, 0.05) == doctest::Approx(4.103).epsilon(1e-4));
    for (unsigned d1 : {1u, 2u, 3u, 4u, 7u})
        for (unsigned d2 : {1u, 2u, 5u, 10u, 18u, 46u, 200u})
            for (double alpha : {0.001, 0.05, 0.5, 0.9}) {
                CHECK(f_upper_quantile(d1, d2, alpha) ==
                      doctest::Approx(oracle::f_upper_quantile(d1, d2, alpha)).epsilon(1e-9));
            }
}

TEST_CASE("f quantile by monte carlo") {
    std::mt19937_64 gen(12345);
    std::fisher_f_distribution<double> f(2.0, 10.0);
    const double x = f_upper_quantile(2, 10, 0.05);
    int above = 0;
    const int trials = 200000;
    for (int i = 0; i < trials; ++i) above += f(gen) > x;
    CHECK(static_cast<double>(above) / trials == doctest::Approx(0.05).epsilon(0.08));
}

TEST_CASE("f quantile limits and errors") {
    double prev = f_upper_quantile(3, 9, 0.01);
    for (double alpha : {0.05, 0.2, 0.5, 0.9, 0.999}) {
        const double cur = f_upper_quantile(3, 9, alpha);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(f_upper_quantile(3, 9, 1.0 - 1e-9) < 1e-3);
    CHECK_THROWS(f_upper_quantile(0, 9, 0.05));
    CHECK_THROWS(f_upper_quantile(3, 9, 0.0));
    CHECK_THROWS(f_upper_quantile(3, 9, 1.0));
}

TEST_CASE("hotelling statistic by hand") {
    CHECK(hotelling_t2(column({1, 2, 3})) == doctest::Approx(12.0));
    CHECK_THROWS_AS(hotelling_t2(column({0, 0, 0})), SingularCovariance);
    CHECK_THROWS_AS(hotelling_t2(column({2, 2, 2})), SingularCovariance);
    CHECK_THROWS_AS(hotelling_t2(Eigen::MatrixXd::Ones(2, 3)), DegreesOfFreedomError);
    CHECK(std::isfinite(hotelling_t2(column({2, 2, 2}), RidgeOption{true, 1e-6})));
}

TEST_CASE("hotelling is affine invariant") {
    SplitMix64 rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::MatrixXd x = gaussian(rng, 30, 3, 0.3);
        Eigen::MatrixXd a = gaussian(rng, 3, 3);
        a += 3 * Eigen::MatrixXd::Identity(3, 3);
        const double t = hotelling_t2(x);
        CHECK(hotelling_t2(x * 7.5) == doctest::Approx(t).epsilon(1e-9));
        CHECK(hotelling_t2(x * a.transpose()) == doctest::Approx(t).epsilon(1e-7));
    }
}

TEST_CASE("hotelling matches the closed form in one dimension") {
    SplitMix64 rng(10);
    const Eigen::MatrixXd x = gaussian(rng, 12, 1, 0.5);
    const double mean = x.mean();
    const double var = (x.array() - mean).square().sum() / 11.0;
    CHECK(hotelling_t2(x) == doctest::Approx(12.0 * mean * mean / var).epsilon(1e-12));
}

TEST_CASE("rpc threshold") {
    CHECK(rpc_threshold(3, 1, 0.05) == doctest::Approx(18.5128205).epsilon(1e-8));
    CHECK(rpc_threshold(20, 2, 0.05) == doctest::Approx(19.0 * 2.0 / 18.0 * 3.554557145661787).epsilon(1e-10));
    CHECK_THROWS_AS(rpc_threshold(4, 4, 0.05), DegreesOfFreedomError);
}

TEST_CASE("rpc verdicts") {
    EmbeddingBatch hand;
    hand.instance_id = "hand";
    hand.rows_a = column({1, 2, 3});
    hand.rows_b = column({0, 0, 0});
    hand.rows_pi = column({1.1, 1.9, 3.2});
    const auto v = rpc_verdict(hand);
    CHECK(v.t2_test == doctest::Approx(12.0));
    CHECK(v.threshold == doctest::Approx(18.513).epsilon(1e-4));
    CHECK(v.reliable);
    CHECK_FALSE(v.distinguishable);

    SplitMix64 rng(1);
    EmbeddingBatch same;
    same.rows_a = gaussian(rng, 10, 2);
    same.rows_b = same.rows_a;
    same.rows_pi = gaussian(rng, 10, 2);
    const auto s = rpc_verdict(same);
    CHECK(s.status == RpcStatus::degenerate_identical);
    CHECK(std::string(rpc_status_text(s.status)) == "degenerate: identical embeddings");
    CHECK_FALSE(s.distinguishable);

    EmbeddingBatch shifted;
    shifted.rows_a = gaussian(rng, 50, 4, 10.0);
    shifted.rows_b = gaussian(rng, 50, 4);
    shifted.rows_pi = gaussian(rng, 50, 4, 10.0);
    CHECK(rpc_verdict(shifted).distinguishable);
}

TEST_CASE("rpc precision") {
    SplitMix64 rng(2);
    std::vector<EmbeddingBatch> identical(3);
    for (auto& b : identical) {
        b.rows_a = gaussian(rng, 10, 2);
        b.rows_b = b.rows_a;
        b.rows_pi = gaussian(rng, 10, 2);
    }
    const auto zero = rpc_precision(identical);
    CHECK(zero.precision == 0.0);
    CHECK(zero.degenerate == 3);

    std::vector<EmbeddingBatch> mixed(2);
    mixed[0].rows_a = gaussian(rng, 50, 4, 10.0);
    mixed[0].rows_b = gaussian(rng, 50, 4);
    mixed[0].rows_pi = gaussian(rng, 50, 4, 10.0);
    mixed[1] = identical[0];
    CHECK(rpc_precision(mixed).precision == 0.5);

    std::vector<EmbeddingBatch> noise(2000);
    for (auto& b : noise) {
        b.rows_a = gaussian(rng, 20, 2);
        b.rows_b = gaussian(rng, 20, 2);
        b.rows_pi = gaussian(rng, 20, 2);
    }
    const double p = rpc_precision(noise).precision;
    CHECK(p >= 0.01);
    CHECK(p <= 0.08);
    CHECK_THROWS_AS(rpc_precision(std::vector<EmbeddingBatch>{}), ValidationError);
}

TEST_CASE("contrastive loss") {
    const std::vector<double> x{1, 0}, y{0, 2}, z{-1, 0};
    CHECK(contrastive_loss(x, y) == 0.0);
    CHECK(contrastive_loss(x, x) == doctest::Approx(1.0));
    CHECK(contrastive_loss(x, z) == 0.0);
    CHECK_THROWS_AS(contrastive_loss(x, std::vector<double>{0, 0}), ValidationError);
}

TEST_CASE("embedding interchange") {
    SplitMix64 rng(3);
    EmbeddingBatch b;
    b.instance_id = "17";
    b.rows_a = gaussian(rng, 6, 2);
    b.rows_b = gaussian(rng, 6, 2);
    b.rows_pi = gaussian(rng, 6, 2);
    const auto back = parse_embeddings(embedding_batch_to_json(b) + "\n\n" + embedding_batch_to_json(b) + "\n");
    REQUIRE(back.size() == 2);
    CHECK(back[1].instance_id == "17");
    CHECK(back[1].rows_a == b.rows_a);
    try {
        parse_embeddings(embedding_batch_to_json(b) + "\n{\"instance_id\": 1}\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(read_embeddings("/nonexistent/embeddings.jsonl"), IoError);

    const auto csv = rpc_verdicts_csv(rpc_precision(back).verdicts);
    CHECK(csv.rfind("instance_id,t2_test,t2_reliability,threshold,reliable,distinguishable,alpha,status\n", 0) == 0);
}

TEST_CASE("rpc permutations are seeded") {
    const auto a = draw_rpc_permutations(5, 3, 12, 20);
    const auto b = draw_rpc_permutations(5, 3, 12, 20);
    CHECK(a.copies == b.copies);
    CHECK(a.extra == b.extra);
    CHECK(a.copies.size() == 20);
    CHECK_FALSE(draw_rpc_permutations(5, 4, 12, 20).copies == a.copies);
}
