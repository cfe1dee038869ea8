// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria restate the project-level claims end to end rather than
// individual unit behaviors.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "relay/fastdec.hpp"
#include "relay/finitefield.hpp"
#include "relay/nafsim.hpp"
#include "relay/numfield.hpp"
#include "relay/sphdec.hpp"

using namespace relay;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using Eigen::VectorXi;

namespace {

int g_failures = 0;

void report(int id, const char* title, bool pass, double seconds, const std::string& detail) {
    std::printf("criterion %d [%s]: %s (%.1f s)%s%s\n", id, title, pass ? "PASS" : "FAIL", seconds,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void criterion(int id, const char* title, const std::function<bool(std::string&)>& body) {
    std::string detail;
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(id, title, pass, dt, detail);
}

// Block (I, J) of the conjugated-quaternion orthogonality matrix vanishes
// exactly when I != J and (same half or I = J mod 4); the displayed zeros of
// the reference pattern are the same-half off-diagonal blocks, a subset.
bool expected_block_zero(int I, int J) {
    if (I == J) return false;
    return ((I < 4) == (J < 4)) || (I % 4 == J % 4);
}

MatrixXcd random_complex(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    MatrixXcd h(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) h(r, c) = std::complex<double>(g(rng), g(rng));
    return h;
}

MatrixXcd random_real_channel(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    MatrixXcd h(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) h(r, c) = std::complex<double>(g(rng), 0.0);
    return h;
}

struct Instance {
    fd::RealizedLattice lat;
    VectorXi g;
    VectorXd y;
};

Instance random_instance(const st::CodeDefinition& code, const sd::Alphabet& S,
                         std::mt19937_64& rng, bool real_channel) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Instance inst;
    inst.lat = fd::realize(code, real_channel ? random_real_channel(code.n_t, rng)
                                              : random_complex(code.n_t, code.n_t, rng));
    std::uniform_int_distribution<int> pick(0, S.size() - 1);
    inst.g.resize(code.k);
    for (int j = 0; j < code.k; ++j) inst.g[j] = S.S[pick(rng)];
    inst.y = inst.lat.B * inst.g.cast<double>();
    for (int j = 0; j < inst.y.size(); ++j) inst.y[j] += gauss(rng);
    return inst;
}

std::pair<double, double> wilson95(long long errors, long long trials) {
    const double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double denom = 1.0 + z * z / n;
    const double center = (p + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    return {center - half, center + half};
}

nf::FieldElement random_element(nf::FieldId field, std::mt19937_64& rng) {
    const auto& F = nf::NumberField::of(field);
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 2);
    std::vector<nf::Rational> coords(F.degree());
    for (auto& c : coords) c = nf::Rational(num(rng), den(rng));
    return nf::FieldElement(field, std::move(coords));
}

}  // namespace

int main() {
    criterion(1, "orthogonality pattern", [](std::string& detail) {
        bool ok = true;
        for (auto [name, bs] : {std::pair{st::CodeName::C1_6x6, 3}, {st::CodeName::C2_4x4, 2}}) {
            auto code = st::build_code(name);
            auto m = fd::orthogonality_matrix(code, MatrixXcd::Identity(code.n_t, code.n_t));
            ok = ok && (m.M - m.M.transpose()).norm() < 1e-12;
            for (int j = 0; j < code.k; ++j) ok = ok && m.M(j, j) > 0;
            auto mask = fd::zero_pattern(m.M, 1e-9);
            for (int I = 0; I < 8; ++I)
                for (int J = 0; J < 8; ++J)
                    for (int r = 0; r < bs; ++r)
                        for (int c = 0; c < bs; ++c) {
                            const bool z = mask(I * bs + r, J * bs + c);
                            if (I == J) continue;
                            ok = ok && (z == expected_block_zero(I, J));
                        }
            ok = ok && fd::verify_partition(m.M, *code.declared_partition, 1e-9);
        }
        detail = "C1 (3x3 blocks) and C2 (2x2 blocks) match the full zero pattern";
        return ok;
    });

    criterion(2, "complexity exponents", [](std::string& detail) {
        auto c1 = st::build_c1();
        auto c2 = st::build_c2();
        bool ok = fd::complexity_exponent(*c1.declared_partition) == 15 &&
                  fd::complexity_exponent(*c2.declared_partition) == 10;
        // ordered-QR codes: two sliced levels leave k-1 enumerated dimensions
        std::mt19937_64 rng(2);
        ok = ok && fd::qr_structure(fd::realize(st::build_c3(), random_real_channel(4, rng)))
                           .delta_prefix >= 2 &&
             st::build_c3().k - 1 == 3;
        ok = ok && fd::qr_structure(fd::realize(st::build_c4(), random_complex(4, 4, rng)))
                           .delta_prefix >= 2 &&
             st::build_c4().k - 1 == 7;
        ok = ok && fd::reduction_percent(3, 8) == 62.5 && fd::reduction_percent(7, 16) == 56.25;
        detail = "15 / 10 / 3 / 7; reductions 62.5% and 56.25%";
        return ok;
    });

    criterion(3, "nonvanishing determinants", [](std::string& detail) {
        auto c3 = st::build_c3();
        st::MinDetMode ex;
        auto rep = st::min_det_search(c3, 1, ex);
        bool ok = std::abs(rep.min_value - 4.0) < 1e-6 && rep.count == 80;
        // every scanned bound-1 determinant lies in 4Z
        VectorXi g(4);
        for (g[0] = -1; g[0] <= 1 && ok; ++g[0])
            for (g[1] = -1; g[1] <= 1 && ok; ++g[1])
                for (g[2] = -1; g[2] <= 1 && ok; ++g[2])
                    for (g[3] = -1; g[3] <= 1 && ok; ++g[3]) {
                        if (g.isZero()) continue;
                        const double d = st::det_gram(c3, g);
                        ok = ok && std::abs(d - 4.0 * std::round(d / 4.0)) < 1e-6;
                    }
        ok = ok && st::nvd_residue_certificate(st::build_c1());
        ok = ok && st::nvd_residue_certificate(st::build_c2());
        st::MinDetMode sampled{st::MinDetMode::Sampled, 10000, 31, 0};
        auto rs = st::min_det_search(st::build_c1(), 2, sampled);
        st::MinDetMode sparse{st::MinDetMode::Sparse, 0, 0, 2};
        auto rw = st::min_det_search(st::build_c1(), 1, sparse);
        ok = ok && rs.count + rw.count >= 10000 && rs.min_value > 1e-6 && rw.min_value > 1e-6;
        detail = "C3 min 4 over 4Z; C1/C2 residue certificates; C1 min " +
                 std::to_string(std::min(rs.min_value, rw.min_value)) + " over " +
                 std::to_string(rs.count + rw.count) + " vectors";
        return ok;
    });

    // criteria 4 and 5 share one instance sweep
    {
        const auto t0 = std::chrono::steady_clock::now();
        bool oracle_ok = true, dominance_ok = true;
        long long oracle_instances = 0, worst_c2_leaves = 0;
        std::mt19937_64 rng(4);
        auto s2 = sd::Alphabet::pam(2);
        auto s4 = sd::Alphabet::pam(4);

        auto c2 = st::build_c2();
        for (int t = 0; t < 100; ++t) {
            auto inst = random_instance(c2, s2, rng, false);
            auto ex = sd::exhaustive_ml(inst.y, inst.lat.B, s2);
            auto fa = sd::fast_decode(inst.y, inst.lat.B, s2, *c2.declared_partition);
            auto sp = sd::sphere_decode(inst.y, inst.lat.B, s2);
            oracle_ok = oracle_ok && fa.g_hat == ex.g_hat && fa.metric == ex.metric &&
                        sp.g_hat == ex.g_hat && sp.metric == ex.metric;
            dominance_ok = dominance_ok && fa.leaves_evaluated <= ex.leaves_evaluated;
            worst_c2_leaves = std::max(worst_c2_leaves, fa.leaves_evaluated);
            ++oracle_instances;
        }
        auto c3 = st::build_c3();
        for (int t = 0; t < 100; ++t) {
            auto inst = random_instance(c3, s4, rng, true);
            auto ex = sd::exhaustive_ml(inst.y, inst.lat.B, s4);
            auto sp = sd::sphere_decode(inst.y, inst.lat.B, s4);
            auto od = sd::ordered_sphere_decode(inst.y, inst.lat.B, s4, {0, 1, 2, 3});
            oracle_ok = oracle_ok && sp.g_hat == ex.g_hat && sp.metric == ex.metric &&
                        od.g_hat == ex.g_hat && od.metric == ex.metric;
            ++oracle_instances;
        }
        auto c4 = st::build_c4();
        for (int t = 0; t < 100; ++t) {
            auto inst = random_instance(c4, s2, rng, false);
            auto ex = sd::exhaustive_ml(inst.y, inst.lat.B, s2);
            auto sp = sd::sphere_decode(inst.y, inst.lat.B, s2);
            auto od = sd::ordered_sphere_decode(inst.y, inst.lat.B, s2,
                                                {0, 1, 2, 3, 4, 5, 6, 7});
            oracle_ok = oracle_ok && sp.g_hat == ex.g_hat && sp.metric == ex.metric &&
                        od.g_hat == ex.g_hat && od.metric == ex.metric;
            ++oracle_instances;
        }
        // C1 exhaustive ML is beyond the evaluation guard (2^24 leaves); the
        // sphere decoder is exact ML with the shared tie-break, so cross-check
        // the fast decoder against it and apply the closed-form leaf budget
        auto c1 = st::build_c1();
        long long c1_budget = (1LL << 12) * 4 * 8;  // conditioned points x group sums
        for (int t = 0; t < 25; ++t) {
            auto inst = random_instance(c1, s2, rng, false);
            auto sp = sd::sphere_decode(inst.y, inst.lat.B, s2);
            auto fa = sd::fast_decode(inst.y, inst.lat.B, s2, *c1.declared_partition);
            oracle_ok = oracle_ok && fa.g_hat == sp.g_hat && fa.metric == sp.metric;
            dominance_ok = dominance_ok && fa.leaves_evaluated <= c1_budget;
        }
        dominance_ok = dominance_ok && worst_c2_leaves <= (1LL << 10) * 4;
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report(4, "decoder oracle equivalence", oracle_ok, dt,
               std::to_string(oracle_instances) +
                   " exhaustive-checked instances (C2/C3/C4) + 25 C1 sphere cross-checks");
        report(5, "counter dominance", dominance_ok, dt,
               "fast leaves <= exhaustive on all instances; worst C2 leaves " +
                   std::to_string(worst_c2_leaves) + " <= 4096");
    }

    criterion(6, "pattern stability", [](std::string& detail) {
        detail = "100 random full-rank channels each for C1 and C2";
        return fd::pattern_stability_check(st::build_c1(), 100, 61) &&
               fd::pattern_stability_check(st::build_c2(), 100, 62);
    });

    criterion(7, "R-factor leading block", [](std::string& detail) {
        std::mt19937_64 rng(7);
        auto c3 = st::build_c3();
        auto c4 = st::build_c4();
        bool ok = true;
        for (int t = 0; t < 50; ++t) {
            auto q3 = fd::qr_structure(fd::realize(c3, random_real_channel(4, rng)));
            ok = ok && q3.delta_prefix >= 2 &&
                 std::abs(q3.R(0, 1)) <= 1e-9 * q3.R.cwiseAbs().maxCoeff();
            auto q4 = fd::qr_structure(fd::realize(c4, random_complex(4, 4, rng)));
            ok = ok && q4.delta_prefix >= 2 &&
                 std::abs(q4.R(0, 1)) <= 1e-9 * q4.R.cwiseAbs().maxCoeff();
        }
        detail = "50 channels each: C3 (real fading), C4 (complex fading)";
        return ok;
    });

    criterion(8, "simulation sanity", [](std::string& detail) {
        ns::SweepConfig cfg;
        cfg.code = st::CodeName::C3_4x2;
        cfg.decoder = "exhaustive";
        for (int s = 0; s <= 20; s += 2) cfg.snr_db.push_back(s);
        cfg.trials = 10000;
        cfg.seed = 8;
        auto ex = ns::run_sweep(cfg);
        bool ok = ex.size() == cfg.snr_db.size();
        // non-increasing up to 95% Wilson interval overlap
        for (size_t i = 0; ok && i + 1 < ex.size(); ++i) {
            auto lo_hi = wilson95(ex[i].block_errors, ex[i].trials);
            auto next = wilson95(ex[i + 1].block_errors, ex[i + 1].trials);
            ok = next.first <= lo_hi.second;
        }
        // the exact decoders agree realization by realization, so BLER matches
        cfg.decoder = "sphere";
        auto sp = ns::run_sweep(cfg);
        for (size_t i = 0; ok && i < ex.size(); ++i)
            ok = sp[i].block_errors == ex[i].block_errors;
        // same check through the partitioned fast decoder on C2
        ns::SweepConfig c2cfg;
        c2cfg.code = st::CodeName::C2_4x4;
        c2cfg.decoder = "exhaustive";
        c2cfg.snr_db = {5.0, 15.0};
        c2cfg.trials = 50;
        c2cfg.seed = 8;
        auto e2 = ns::run_sweep(c2cfg);
        c2cfg.decoder = "fast";
        auto f2 = ns::run_sweep(c2cfg);
        for (size_t i = 0; ok && i < e2.size(); ++i)
            ok = f2[i].block_errors == e2[i].block_errors;

        // decoder-input noise covariance: identity within 5 percent
        ns::NafParams params;
        params.snr_db = 12.0;
        std::mt19937_64 rng(88);
        auto real = ns::sample_channels(params, rng);
        auto eq = ns::equivalent_channel(real, params, 4);
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(eq.Sigma);
        MatrixXcd L = es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal();
        std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
        MatrixXd cov = MatrixXd::Zero(16, 16);
        const int samples = 20000;
        for (int s = 0; s < samples; ++s) {
            Eigen::VectorXcd v(8);
            for (int j = 0; j < 8; ++j) v[j] = std::complex<double>(gauss(rng), gauss(rng));
            Eigen::VectorXcd w = std::sqrt(2.0) * (eq.W * (L * v));
            VectorXd x(16);
            x.head(8) = w.real();
            x.tail(8) = w.imag();
            cov += x * x.transpose();
        }
        cov /= samples;
        ok = ok && (cov - MatrixXd::Identity(16, 16)).cwiseAbs().maxCoeff() < 0.05;

        char buf[128];
        std::snprintf(buf, sizeof(buf), "C3 BLER %.3f -> %.3f over 0..20 dB, 1e4 trials/point",
                      ex.front().bler, ex.back().bler);
        detail = buf;
        return ok;
    });

    criterion(9, "field and residue arithmetic", [](std::string& detail) {
        std::mt19937_64 rng(9);
        long long checks = 0;
        bool ok = true;
        const std::vector<std::pair<nf::FieldId, int>> plan = {
            {nf::FieldId::Qi, 20000},          {nf::FieldId::QZeta8, 15000},
            {nf::FieldId::QZeta8Sqrt5, 5000},  {nf::FieldId::QiSqrt31Sqrt5, 5000},
            {nf::FieldId::QZeta7, 4000},       {nf::FieldId::QiZeta7, 1000}};
        for (auto [field, iters] : plan) {
            auto names = nf::NumberField::of(field).automorphism_names();
            std::uniform_int_distribution<size_t> pick(0, names.size() - 1);
            for (int t = 0; t < iters && ok; ++t) {
                auto a = random_element(field, rng);
                auto b = random_element(field, rng);
                const auto& sigma = names[pick(rng)];
                ok = ok && (a * b).apply_auto(sigma) == a.apply_auto(sigma) * b.apply_auto(sigma);
                ok = ok && (a * b).norm() == a.norm() * b.norm();
                checks += 2;
            }
        }
        // Euler-criterion witness vs brute-force square tables, q <= 121
        for (long long p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
                            67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113}) {
            for (long long q = p; q <= 121 && ok; q *= p) {
                int f = 0;
                for (long long t = q; t > 1; t /= p) ++f;
                ff::PrimePowerField F(p, f);
                std::vector<bool> is_square(p, false);
                for (const auto& e : F.elements()) {
                    auto sq = F.mul(e, e);
                    bool scalar = true;
                    for (int j = 1; j < f; ++j) scalar = scalar && sq[j] == 0;
                    if (scalar) is_square[sq[0]] = true;
                }
                for (long long gamma = 1; gamma < p && ok; ++gamma)
                    ok = ff::residue_nonsquare_witness(q, gamma) == !is_square[gamma % p];
            }
        }
        detail = std::to_string(checks) + " randomized field checks; witnesses up to q=121";
        return ok && checks >= 100000;
    });

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
