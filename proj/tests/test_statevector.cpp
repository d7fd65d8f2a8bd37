#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "vqaa/ansatz.hpp"
#include "vqaa/statevector.hpp"

using namespace vqaa;

namespace {

constexpr double tol = 1e-10;

// Dense-matrix oracle: builds each gate as a full 2^n x 2^n operator via
// Kronecker products (qubit 0 is the most significant factor).
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Eigen::MatrixXcd single(int n, int q, const Eigen::Matrix2cd& g) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (int k = 0; k < n; ++k) out = kron(out, k == q ? Eigen::MatrixXcd(g) : Eigen::MatrixXcd::Identity(2, 2));
    return out;
}

Eigen::MatrixXcd controlled(int n, int c, int t, const Eigen::Matrix2cd& g) {
    Eigen::Matrix2cd p0, p1;
    p0 << 1, 0, 0, 0;
    p1 << 0, 0, 0, 1;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(1, 1), b = Eigen::MatrixXcd::Identity(1, 1);
    for (int k = 0; k < n; ++k) {
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
        a = kron(a, k == c ? Eigen::MatrixXcd(p0) : id);
        b = kron(b, k == c ? Eigen::MatrixXcd(p1) : (k == t ? Eigen::MatrixXcd(g) : id));
    }
    return a + b;
}

Eigen::Matrix2cd pauli(PauliAxis axis) {
    Eigen::Matrix2cd m;
    const complex_t i{0, 1};
    switch (axis) {
    case PauliAxis::x: m << 0, 1, 1, 0; break;
    case PauliAxis::y: m << 0, -i, i, 0; break;
    case PauliAxis::z: m << 1, 0, 0, -1; break;
    }
    return m;
}

Eigen::Matrix2cd ry(double t) {
    Eigen::Matrix2cd m;
    m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
    return m;
}

Eigen::VectorXcd oracle_ansatz(const AnsatzSpec& spec, const std::vector<double>& params) {
    const int n = spec.qubits;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(1 << n);
    v(0) = 1.0;
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    for (int q = 0; q < n; ++q) v = single(n, q, h) * v;
    const Eigen::Matrix2cd p = pauli(entangler_axis(spec.family));
    for (int l = 0; l < spec.layers; ++l) {
        for (int q = 0; q < n; ++q) v = single(n, q, ry(params[static_cast<std::size_t>(l * n + q)])) * v;
        for (int q = 0; q + 1 < n; ++q) v = controlled(n, q, q + 1, p) * v;
        if (spec.variant == AnsatzVariant::a) v = controlled(n, n - 1, 0, p) * v;
    }
    return v;
}

void expect_state(const Statevector& s, const Eigen::VectorXcd& v, double eps = tol) {
    ASSERT_EQ(static_cast<Eigen::Index>(s.dimension()), v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        EXPECT_NEAR(std::abs(s[static_cast<std::size_t>(i)] - v(i)), 0.0, eps) << "index " << i;
    }
}

} // namespace

TEST(InitUniform, Amplitudes) {
    const auto one = init_uniform(1);
    EXPECT_NEAR(one[0].real(), 1 / std::sqrt(2.0), tol);
    EXPECT_NEAR(one[1].real(), 1 / std::sqrt(2.0), tol);
    const auto ten = init_uniform(10);
    for (double p : probabilities(ten)) EXPECT_NEAR(p, 1.0 / 1024, 1e-15);
    EXPECT_NEAR(ten.norm_squared(), 1.0, tol);
    EXPECT_THROW(init_uniform(0), std::invalid_argument);
    EXPECT_THROW(init_uniform(17), std::invalid_argument);
}

TEST(Ry, HalfTurnIdentityAndInverse) {
    Statevector s(1);
    apply_ry(s, 0, std::numbers::pi);
    EXPECT_NEAR(std::abs(s[0]), 0.0, tol);
    EXPECT_NEAR(s[1].real(), 1.0, tol);

    Statevector z(1);
    apply_ry(z, 0, 0.0);
    EXPECT_NEAR(z[0].real(), 1.0, tol);

    Statevector r = init_uniform(3);
    apply_ry(r, 1, 0.7);
    apply_ry(r, 1, -0.7);
    expect_state(r, Eigen::VectorXcd::Constant(8, 1 / std::sqrt(8.0)));

    EXPECT_THROW(apply_ry(r, 3, 0.1), std::out_of_range);
}

TEST(Controlled, BasisActions) {
    auto cx = Statevector::basis(2, 0b10);
    apply_controlled(cx, 0, 1, PauliAxis::x);
    EXPECT_NEAR(cx[0b11].real(), 1.0, tol);

    auto cz = Statevector::basis(2, 0b11);
    apply_controlled(cz, 0, 1, PauliAxis::z);
    EXPECT_NEAR(cz[0b11].real(), -1.0, tol);

    auto cy = Statevector::basis(2, 0b00);
    apply_controlled(cy, 0, 1, PauliAxis::y);
    EXPECT_NEAR(cy[0b00].real(), 1.0, tol);

    EXPECT_THROW(apply_controlled(cy, 1, 1, PauliAxis::x), std::invalid_argument);
    EXPECT_THROW(apply_controlled(cy, 0, 2, PauliAxis::x), std::out_of_range);
}

TEST(Gates, MatchDenseOracleAndAreLinear) {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    const int n = 4;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<complex_t> amps(16);
        for (auto& a : amps) a = {g(rng), g(rng)};
        Eigen::VectorXcd v(16);
        for (int i = 0; i < 16; ++i) v(i) = amps[static_cast<std::size_t>(i)];
        const double nrm = v.norm();
        v /= nrm;
        for (auto& a : amps) a /= nrm;

        for (PauliAxis axis : {PauliAxis::x, PauliAxis::y, PauliAxis::z}) {
            const int c = static_cast<int>(rng() % n);
            const int t = (c + 1 + static_cast<int>(rng() % (n - 1))) % n;
            Statevector s(n, amps);
            apply_controlled(s, c, t, axis);
            expect_state(s, controlled(n, c, t, pauli(axis)) * v);
            EXPECT_NEAR(s.norm_squared(), 1.0, tol);
        }
        const int q = static_cast<int>(rng() % n);
        const double theta = g(rng);
        Statevector s(n, amps);
        apply_ry(s, q, theta);
        expect_state(s, single(n, q, ry(theta)) * v);
    }
}

TEST(Ansatz, MatchesDenseOracle) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0, 2 * std::numbers::pi);
    for (auto family : {AnsatzFamily::y_cx, AnsatzFamily::y_cy, AnsatzFamily::y_cz}) {
        for (auto variant : {AnsatzVariant::a, AnsatzVariant::b}) {
            for (int layers : {1, 2}) {
                const AnsatzSpec spec{family, variant, layers, 5};
                std::vector<double> params(static_cast<std::size_t>(spec.parameter_count()));
                for (auto& p : params) p = u(rng);
                expect_state(build_ansatz_state(spec, params), oracle_ansatz(spec, params));
            }
        }
    }
}

TEST(Ansatz, ZeroParameterCzChainPhases) {
    for (auto variant : {AnsatzVariant::a, AnsatzVariant::b}) {
        const AnsatzSpec spec{AnsatzFamily::y_cz, variant, 1, 10};
        const auto s = build_ansatz_state(spec, std::vector<double>(10, 0.0));
        for (std::uint32_t k = 0; k < 1024; ++k) {
            int parity = 0;
            auto b = [k](int q) { return static_cast<int>((k >> (9 - q)) & 1U); };
            for (int q = 0; q < 9; ++q) parity ^= b(q) & b(q + 1);
            if (variant == AnsatzVariant::a) parity ^= b(9) & b(0);
            ASSERT_NEAR(s[k].real(), (parity ? -1.0 : 1.0) / 32.0, tol);
            ASSERT_NEAR(s[k].imag(), 0.0, tol);
        }
    }
}

TEST(Ansatz, ZeroParameterXAndYChainsStayUniform) {
    for (auto family : {AnsatzFamily::y_cx, AnsatzFamily::y_cy}) {
        for (auto variant : {AnsatzVariant::a, AnsatzVariant::b}) {
            const auto s = build_ansatz_state({family, variant, 1, 10}, std::vector<double>(10, 0.0));
            for (double p : probabilities(s)) ASSERT_NEAR(p, 1.0 / 1024, 1e-12);
        }
    }
}

TEST(Ansatz, GateCountsAndDepth) {
    for (auto family : {AnsatzFamily::y_cx, AnsatzFamily::y_cy, AnsatzFamily::y_cz}) {
        const AnsatzSpec a{family, AnsatzVariant::a, 1, 10};
        const AnsatzSpec b{family, AnsatzVariant::b, 1, 10};
        EXPECT_EQ(a.parameter_count(), 10);
        EXPECT_EQ(a.depth(), 12);
        EXPECT_EQ(b.depth(), 11);
        auto count = [](const AnsatzSpec& s, GateOp::Kind k) {
            const auto ops = ansatz_gates(s);
            return std::count_if(ops.begin(), ops.end(), [k](const GateOp& o) { return o.kind == k; });
        };
        EXPECT_EQ(count(a, GateOp::Kind::ry), 10);
        EXPECT_EQ(count(a, GateOp::Kind::controlled), 10);
        EXPECT_EQ(count(b, GateOp::Kind::controlled), 9);
        EXPECT_EQ(count(a, GateOp::Kind::hadamard), 10);
    }
    EXPECT_EQ((AnsatzSpec{AnsatzFamily::y_cz, AnsatzVariant::a, 3, 10}.parameter_count()), 30);
}

TEST(Ansatz, NormPreservedUpToEightLayers) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-7, 7);
    for (int layers = 1; layers <= 8; ++layers) {
        for (auto family : {AnsatzFamily::y_cx, AnsatzFamily::y_cy, AnsatzFamily::y_cz}) {
            const AnsatzSpec spec{family, AnsatzVariant::a, layers, 10};
            std::vector<double> p(static_cast<std::size_t>(spec.parameter_count()));
            for (auto& x : p) x = u(rng);
            EXPECT_NEAR(build_ansatz_state(spec, p).norm_squared(), 1.0, tol);
        }
    }
}

TEST(Ansatz, ParameterLengthMismatch) {
    const AnsatzSpec spec{AnsatzFamily::y_cz, AnsatzVariant::a, 1, 10};
    EXPECT_THROW(build_ansatz_state(spec, std::vector<double>(9, 0.0)), std::invalid_argument);
    EXPECT_THROW(parse_family("ycw"), std::invalid_argument);
    EXPECT_THROW(parse_variant("C"), std::invalid_argument);
}

TEST(Probabilities, BasisIndicatorAndSum) {
    const auto b = Statevector::basis(10, 777);
    const auto p = probabilities(b);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(p[i], i == 777 ? 1.0 : 0.0);

    std::vector<double> params(10);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0, 6);
    for (auto& x : params) x = u(rng);
    const auto q = probabilities(build_ansatz_state({AnsatzFamily::y_cy, AnsatzVariant::b, 1, 10}, params));
    double total = 0.0;
    for (double x : q) total += x;
    EXPECT_NEAR(total, 1.0, tol);
}

TEST(Sampling, BasisStateAlwaysSamplesItself) {
    const auto b = Statevector::basis(10, 513);
    for (auto k : sample_keys(b, 200, std::uint64_t{9})) EXPECT_EQ(k, 513U);
    EXPECT_THROW(sample_keys(b, 0, std::uint64_t{9}), std::invalid_argument);
}

TEST(Sampling, DeterministicForSeed) {
    const auto s = init_uniform(10);
    EXPECT_EQ(sample_keys(s, 500, std::uint64_t{42}), sample_keys(s, 500, std::uint64_t{42}));
    EXPECT_NE(sample_keys(s, 500, std::uint64_t{42}), sample_keys(s, 500, std::uint64_t{43}));
}

TEST(Sampling, UniformFrequenciesWithinFiveSigma) {
    const int n = 100000;
    const auto draws = sample_keys(init_uniform(10), n, std::uint64_t{1234});
    std::vector<int> counts(1024, 0);
    for (auto k : draws) ++counts[k];
    const double p = 1.0 / 1024;
    const double mean = n * p;
    const double sigma = std::sqrt(n * p * (1 - p));
    for (int c : counts) EXPECT_LE(std::abs(c - mean), 5 * sigma);
}
