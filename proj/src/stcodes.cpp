#include "relay/stcodes.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "relay/finitefield.hpp"

namespace relay::st {

using nf::FieldElement;
using nf::FieldId;

std::string to_string(CodeName name) {
    switch (name) {
        case CodeName::C1_6x6: return "C1";
        case CodeName::C2_4x4: return "C2";
        case CodeName::C3_4x2: return "C3";
        case CodeName::C4_4x2: return "C4";
    }
    return "?";
}

std::optional<CodeName> code_from_string(const std::string& s) {
    if (s == "C1") return CodeName::C1_6x6;
    if (s == "C2") return CodeName::C2_4x4;
    if (s == "C3") return CodeName::C3_4x2;
    if (s == "C4") return CodeName::C4_4x2;
    return std::nullopt;
}

std::complex<double> ExactEntry::embed() const {
    return base.embed() + std::sqrt(static_cast<double>(radicand)) * radical_part.embed();
}

ExactEntry ExactEntry::apply_auto(const std::string& name) const {
    return {base.apply_auto(name), radical_part.apply_auto(name), radicand};
}

namespace {

MatrixXcd embed_exact(const ExactMatrix& m) {
    MatrixXcd out(m.size(), m[0].size());
    for (size_t r = 0; r < m.size(); ++r)
        for (size_t c = 0; c < m[r].size(); ++c) out(r, c) = m[r][c].embed();
    return out;
}

// Inner 2x2 block [[c, -sqrt(rad)*sigma(d)], [sqrt(rad)*d, sigma(c)]].
std::vector<std::vector<ExactEntry>> quaternion_block(const FieldElement& c, const FieldElement& d,
                                                      const std::string& sigma, long long rad) {
    const FieldId f = c.field();
    const auto z = FieldElement::zero(f);
    return {{{c, z, rad}, {z, -d.apply_auto(sigma), rad}},
            {{z, d, rad}, {c.apply_auto(sigma), z, rad}}};
}

// diag(X, tau(X), ..., tau^{N-1}(X)) as an exact n x n matrix, n = 2N.
ExactMatrix galois_blockdiag(const std::vector<std::vector<ExactEntry>>& block,
                             const std::string& tau, int N) {
    const FieldId f = block[0][0].base.field();
    const int n = 2 * N;
    ExactEntry zero{FieldElement::zero(f), FieldElement::zero(f), block[0][0].radicand};
    ExactMatrix m(n, std::vector<ExactEntry>(n, zero));
    auto cur = block;
    for (int b = 0; b < N; ++b) {
        if (b > 0)
            for (auto& row : cur)
                for (auto& e : row) e = e.apply_auto(tau);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) m[2 * b + r][2 * b + c] = cur[r][c];
    }
    return m;
}

}  // namespace

CodeDefinition build_c1() {
    const FieldId f = FieldId::QiZeta7;
    const auto one = FieldElement::one(f);
    const auto zero = FieldElement::zero(f);
    const auto i = nf::make_i(f);
    const auto z = nf::make_zeta7_l();
    auto zpow = [&](int e) {
        auto v = one;
        for (int j = 0; j < e; ++j) v = v * z;
        return v;
    };
    const auto w2 = z + zpow(6);                // zeta + zeta^-1
    const auto w3 = zpow(2) + zpow(5);          // zeta^2 + zeta^-2
    const auto s7 = nf::make_sqrt_minus7();     // sqrt(-7)

    // Conjugated quaternion basis q1..q4 as (c, d) pairs.
    const std::vector<std::pair<FieldElement, FieldElement>> qs = {
        {one, zero}, {i, zero}, {zero, i}, {zero, one}};
    const std::vector<FieldElement> ws = {one, w2, w3};

    CodeDefinition code;
    code.name = CodeName::C1_6x6;
    code.label = "C1";
    code.n_t = 6;
    code.T = 6;
    for (const auto& mult : {one, s7}) {
        for (const auto& [c, d] : qs) {
            for (const auto& w : ws) {
                auto block = quaternion_block(c * w * mult, d * w * mult, "sigma", 11);
                code.exact_generators.push_back(galois_blockdiag(block, "tau", 3));
            }
        }
    }
    for (const auto& m : code.exact_generators) code.generators.push_back(embed_exact(m));
    code.k = static_cast<int>(code.generators.size());

    GroupPartition part;
    for (int g = 0; g < 4; ++g) part.groups.push_back({3 * g, 3 * g + 1, 3 * g + 2});
    for (int j = 12; j < 24; ++j) part.conditioned.push_back(j);
    code.declared_partition = part;
    return code;
}

CodeDefinition build_c2() {
    const FieldId f = FieldId::QiSqrt31Sqrt5;
    const auto one = FieldElement::one(f);
    const auto zero = FieldElement::zero(f);
    const auto i = nf::make_i(f);
    const auto s5 = nf::make_sqrt5();
    const auto s31 = nf::make_sqrt31();
    const auto is5 = i * s5;

    const std::vector<std::pair<FieldElement, FieldElement>> qs = {
        {one, zero}, {is5, zero}, {zero, is5}, {zero, one}};

    CodeDefinition code;
    code.name = CodeName::C2_4x4;
    code.label = "C2";
    code.n_t = 4;
    code.T = 4;
    for (const auto& mult : {one, i}) {
        for (const auto& [c, d] : qs) {
            for (const auto& w : {one, s31}) {
                auto block = quaternion_block(c * w * mult, d * w * mult, "sigma", 2);
                code.exact_generators.push_back(galois_blockdiag(block, "tau", 2));
            }
        }
    }
    for (const auto& m : code.exact_generators) code.generators.push_back(embed_exact(m));
    code.k = static_cast<int>(code.generators.size());

    GroupPartition part;
    for (int g = 0; g < 4; ++g) part.groups.push_back({2 * g, 2 * g + 1});
    for (int j = 8; j < 16; ++j) part.conditioned.push_back(j);
    code.declared_partition = part;
    return code;
}

namespace {

// 4x2 LMD column pattern: rows (r0, r1) in column 0, rows (r2, r3) in column 1.
ExactMatrix lmd_matrix(const std::array<FieldElement, 4>& rows) {
    const FieldId f = rows[0].field();
    ExactEntry zero{FieldElement::zero(f), FieldElement::zero(f), 1};
    ExactMatrix m(4, std::vector<ExactEntry>(2, zero));
    m[0][0] = {rows[0], FieldElement::zero(f), 1};
    m[1][0] = {rows[1], FieldElement::zero(f), 1};
    m[2][1] = {rows[2], FieldElement::zero(f), 1};
    m[3][1] = {rows[3], FieldElement::zero(f), 1};
    return m;
}

}  // namespace

CodeDefinition build_c3() {
    const FieldId f = FieldId::QZeta8;
    const auto one = FieldElement::one(f);
    const auto i = nf::make_i(f);
    const auto z8 = nf::make_zeta8(f);

    // Smart ordering {X(1,0), X(i,0), X(0,1), X(0,i)}; x = a1 + a2*zeta8.
    const std::vector<FieldElement> xs = {one, i, z8, i * z8};

    CodeDefinition code;
    code.name = CodeName::C3_4x2;
    code.label = "C3";
    code.n_t = 4;
    code.T = 2;
    for (const auto& x : xs) {
        const auto tx = x.apply_auto("tau");
        code.exact_generators.push_back(
            lmd_matrix({x, x.apply_auto("conj"), tx, tx.apply_auto("conj")}));
    }
    for (const auto& m : code.exact_generators) code.generators.push_back(embed_exact(m));
    code.k = static_cast<int>(code.generators.size());
    return code;
}

CodeDefinition build_c4() {
    const FieldId f = FieldId::QZeta8Sqrt5;
    const auto one = FieldElement::one(f);
    const auto i = nf::make_i(f);
    const auto z8 = nf::make_zeta8(f);
    const auto th = nf::make_theta();
    const auto nu = one + i - i * th;  // generates the ideal making the lattice orthogonal

    // Ordered basis {X(1,0,0,0), X(i,0,0,0), X(0,1,0,0), ...};
    // x = a1 + a2*zeta8 + a3*theta + a4*zeta8*theta, a_i in Z[i].
    std::vector<FieldElement> xs;
    for (const auto& mono : {one, z8, th, z8 * th}) {
        xs.push_back(mono);
        xs.push_back(i * mono);
    }

    CodeDefinition code;
    code.name = CodeName::C4_4x2;
    code.label = "C4";
    code.n_t = 4;
    code.T = 2;
    for (const auto& x : xs) {
        const auto nx = nu * x;
        code.exact_generators.push_back(lmd_matrix(
            {nx, nx.apply_auto("r"), nx.apply_auto("tau"), nx.apply_auto("tau_r")}));
    }
    for (const auto& m : code.exact_generators) code.generators.push_back(embed_exact(m));
    code.k = static_cast<int>(code.generators.size());
    return code;
}

CodeDefinition build_code(CodeName name) {
    switch (name) {
        case CodeName::C1_6x6: return build_c1();
        case CodeName::C2_4x4: return build_c2();
        case CodeName::C3_4x2: return build_c3();
        case CodeName::C4_4x2: return build_c4();
    }
    throw std::invalid_argument("unknown code");
}

MatrixXcd encode(const CodeDefinition& code, const Eigen::VectorXi& g) {
    if (g.size() != code.k) throw std::invalid_argument("symbol vector length != code rank");
    MatrixXcd x = MatrixXcd::Zero(code.n_t, code.T);
    for (int j = 0; j < code.k; ++j)
        if (g[j] != 0) x += static_cast<double>(g[j]) * code.generators[j];
    return x;
}

double det_gram(const CodeDefinition& code, const Eigen::VectorXi& g) {
    const MatrixXcd x = encode(code, g);
    return (x.adjoint() * x).determinant().real();
}

MinDetReport min_det_search(const CodeDefinition& code, int coeff_bound, const MinDetMode& mode) {
    if (coeff_bound < 1) throw std::invalid_argument("coeff_bound must be >= 1");
    MinDetReport rep;
    rep.min_value = std::numeric_limits<double>::infinity();
    auto consider = [&](const Eigen::VectorXi& g) {
        const double v = det_gram(code, g);
        ++rep.count;
        if (v < rep.min_value ||
            (v == rep.min_value &&
             (rep.argmin.size() == 0 ||
              std::lexicographical_compare(g.data(), g.data() + g.size(), rep.argmin.data(),
                                           rep.argmin.data() + rep.argmin.size())))) {
            rep.min_value = v;
            rep.argmin = g;
        }
    };

    const int k = code.k;
    if (mode.kind == MinDetMode::Exhaustive) {
        const double total = std::pow(2.0 * coeff_bound + 1.0, k);
        if (total > 1e7) throw std::invalid_argument("exhaustive search space exceeds 1e7 guard");
        Eigen::VectorXi g = Eigen::VectorXi::Constant(k, -coeff_bound);
        while (true) {
            if (!g.isZero()) consider(g);
            int lvl = k - 1;
            while (lvl >= 0 && g[lvl] == coeff_bound) g[lvl--] = -coeff_bound;
            if (lvl < 0) break;
            ++g[lvl];
        }
    } else if (mode.kind == MinDetMode::Sampled) {
        std::mt19937_64 rng(mode.seed);
        std::uniform_int_distribution<int> dist(-coeff_bound, coeff_bound);
        std::set<std::vector<int>> seen;
        while (static_cast<int>(seen.size()) < mode.samples) {
            Eigen::VectorXi g(k);
            for (int j = 0; j < k; ++j) g[j] = dist(rng);
            if (g.isZero()) continue;
            std::vector<int> key(g.data(), g.data() + k);
            if (!seen.insert(std::move(key)).second) continue;
            consider(g);
        }
    } else {
        const int w = mode.weight;
        if (w < 1 || w > k) throw std::invalid_argument("sparse weight out of range");
        std::vector<int> pos(w);
        for (int j = 0; j < w; ++j) pos[j] = j;
        while (true) {
            // values odometer over {±1..±coeff_bound} per position
            std::vector<int> val(w, 0);
            while (true) {
                Eigen::VectorXi g = Eigen::VectorXi::Zero(k);
                for (int j = 0; j < w; ++j) {
                    const int v = val[j] - coeff_bound;  // skips 0 by offset below
                    g[pos[j]] = v >= 0 ? v + 1 : v;
                }
                consider(g);
                int lvl = w - 1;
                while (lvl >= 0 && val[lvl] == 2 * coeff_bound - 1) val[lvl--] = 0;
                if (lvl < 0) break;
                ++val[lvl];
            }
            int lvl = w - 1;
            while (lvl >= 0 && pos[lvl] == k - w + lvl) --lvl;
            if (lvl < 0) break;
            ++pos[lvl];
            for (int j = lvl + 1; j < w; ++j) pos[j] = pos[j - 1] + 1;
        }
    }
    return rep;
}

bool nvd_residue_certificate(const CodeDefinition& code) {
    switch (code.name) {
        case CodeName::C1_6x6: return ff::residue_nonsquare_witness(11 * 11 * 11, -1);
        case CodeName::C2_4x4: return ff::residue_nonsquare_witness(5, -2);
        default:
            throw std::invalid_argument("no residue-based NVD certificate for " + code.label);
    }
}

}  // namespace relay::st
