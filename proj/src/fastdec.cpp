#include "relay/fastdec.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace relay::fd {

VectorXd vec_real(const MatrixXcd& m) {
    const Eigen::Index n = m.size();
    VectorXd v(2 * n);
    Eigen::Map<const Eigen::VectorXcd> flat(m.data(), n);  // column-major
    v.head(n) = flat.real();
    v.tail(n) = flat.imag();
    return v;
}

RealizedLattice realize(const st::CodeDefinition& code, const MatrixXcd& H) {
    if (H.cols() != code.n_t) throw std::invalid_argument("channel column count != n_t");
    RealizedLattice lat;
    lat.H = H;
    lat.T = code.T;
    lat.k = code.k;
    lat.B.resize(2 * code.T * H.rows(), code.k);
    for (int i = 0; i < code.k; ++i) lat.B.col(i) = vec_real(H * code.generators[i]);
    return lat;
}

OrthogonalityMatrix orthogonality_matrix(const st::CodeDefinition& code, const MatrixXcd& H,
                                         double tol) {
    if (H.cols() != code.n_t) throw std::invalid_argument("channel column count != n_t");
    const int k = code.k;
    std::vector<MatrixXcd> hb(k);
    for (int i = 0; i < k; ++i) hb[i] = H * code.generators[i];
    OrthogonalityMatrix out;
    out.tol = tol;
    out.M.resize(k, k);
    for (int l = 0; l < k; ++l)
        for (int m = l; m < k; ++m) {
            const double v = (hb[l] * hb[m].adjoint() + hb[m] * hb[l].adjoint()).norm();
            out.M(l, m) = v;
            out.M(m, l) = v;
        }
    return out;
}

BoolMask zero_pattern(const MatrixXd& M, double tol) {
    const double thresh = tol * M.maxCoeff();
    return (M.array() <= thresh).matrix();
}

namespace {

void check_partition_shape(const GroupPartition& p, int k) {
    std::vector<char> seen(k, 0);
    auto mark = [&](int idx) {
        if (idx < 0 || idx >= k) throw std::invalid_argument("partition index out of range");
        if (seen[idx]) throw std::invalid_argument("partition indices overlap");
        seen[idx] = 1;
    };
    for (const auto& g : p.groups) {
        if (g.empty()) throw std::invalid_argument("empty group");
        for (int idx : g) mark(idx);
    }
    for (int idx : p.conditioned) mark(idx);
    for (int j = 0; j < k; ++j)
        if (!seen[j]) throw std::invalid_argument("partition does not cover all indices");
}

}  // namespace

bool verify_partition(const MatrixXd& M, const GroupPartition& partition, double tol) {
    const int k = static_cast<int>(M.rows());
    check_partition_shape(partition, k);
    const double thresh = tol * M.maxCoeff();
    for (size_t a = 0; a < partition.groups.size(); ++a)
        for (size_t b = a + 1; b < partition.groups.size(); ++b)
            for (int l : partition.groups[a])
                for (int m : partition.groups[b])
                    if (M(l, m) > thresh) return false;
    return true;
}

int complexity_exponent(const GroupPartition& partition) {
    int k = static_cast<int>(partition.conditioned.size());
    int max_group = 0;
    for (const auto& g : partition.groups) {
        k += static_cast<int>(g.size());
        max_group = std::max(max_group, static_cast<int>(g.size()));
    }
    if (partition.groups.empty()) return k;
    return static_cast<int>(partition.conditioned.size()) + max_group;
}

GroupPartition auto_partition(const BoolMask& mask) {
    const int k = static_cast<int>(mask.rows());
    std::vector<char> active(k, 1);
    std::vector<int> conditioned;

    auto components = [&]() {
        std::vector<std::vector<int>> comps;
        std::vector<char> visited(k, 0);
        for (int s = 0; s < k; ++s) {
            if (!active[s] || visited[s]) continue;
            std::vector<int> comp, stack{s};
            visited[s] = 1;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                comp.push_back(v);
                for (int u = 0; u < k; ++u)
                    if (active[u] && !visited[u] && u != v && !mask(v, u)) {
                        visited[u] = 1;
                        stack.push_back(u);
                    }
            }
            std::sort(comp.begin(), comp.end());
            comps.push_back(std::move(comp));
        }
        return comps;
    };
    auto has_edge = [&]() {
        for (int v = 0; v < k; ++v)
            for (int u = v + 1; u < k; ++u)
                if (active[v] && active[u] && !mask(v, u)) return true;
        return false;
    };

    // greedily condition out the highest-degree vertex of the nonzero graph
    // until it is edgeless, keeping the snapshot with the best exponent
    // (ties: the more-conditioned snapshot)
    GroupPartition best;
    int best_exp = -1;
    while (true) {
        GroupPartition p;
        p.groups = components();
        p.conditioned = conditioned;
        std::sort(p.conditioned.begin(), p.conditioned.end());
        const int exp = p.groups.empty() ? k : complexity_exponent(p);
        if (best_exp < 0 || exp <= best_exp) {
            best_exp = exp;
            best = std::move(p);
        }
        if (!has_edge()) break;
        int pick = -1, pick_deg = -1;
        for (int v = 0; v < k; ++v) {
            if (!active[v]) continue;
            int deg = 0;
            for (int u = 0; u < k; ++u)
                if (active[u] && u != v && !mask(v, u)) ++deg;
            if (deg > pick_deg) {
                pick_deg = deg;
                pick = v;
            }
        }
        active[pick] = 0;
        conditioned.push_back(pick);
    }
    return best;
}

QrStructure qr_structure(const RealizedLattice& lat, double tol) {
    const int k = lat.k;
    MatrixXd Q = lat.B;
    MatrixXd R = MatrixXd::Zero(k, k);
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < j; ++i) {
            R(i, j) = Q.col(i).dot(Q.col(j));
            Q.col(j) -= R(i, j) * Q.col(i);
        }
        // re-orthogonalization pass for numerical robustness
        for (int i = 0; i < j; ++i) {
            const double c = Q.col(i).dot(Q.col(j));
            R(i, j) += c;
            Q.col(j) -= c * Q.col(i);
        }
        R(j, j) = Q.col(j).norm();
        if (R(j, j) <= 1e-12 * lat.B.norm())
            throw std::invalid_argument("realized lattice is rank deficient");
        Q.col(j) /= R(j, j);
    }

    QrStructure out;
    out.R = R;
    out.mask = zero_pattern(R.cwiseAbs(), tol);
    const double thresh = tol * R.cwiseAbs().maxCoeff();
    int d = 1;
    while (d < k) {
        bool diag = true;
        for (int i = 0; i < d && diag; ++i)
            if (std::abs(R(i, d)) > thresh) diag = false;
        if (!diag) break;
        ++d;
    }
    out.delta_prefix = d;
    return out;
}

bool pattern_stability_check(const st::CodeDefinition& code, int trials, std::uint64_t seed,
                             bool real_channels, double tol) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const auto base = orthogonality_matrix(code, MatrixXcd::Identity(code.n_t, code.n_t), tol);
    const BoolMask zeros = zero_pattern(base.M, tol);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        MatrixXcd H(code.n_t, code.n_t);
        do {
            for (int r = 0; r < code.n_t; ++r)
                for (int c = 0; c < code.n_t; ++c)
                    H(r, c) = real_channels
                                  ? std::complex<double>(gauss(rng), 0.0)
                                  : std::complex<double>(gauss(rng), gauss(rng));
        } while (H.fullPivLu().rank() < code.n_t);
        const auto m = orthogonality_matrix(code, H, tol);
        const double thresh = tol * m.M.maxCoeff();
        for (int l = 0; l < code.k; ++l)
            for (int c = 0; c < code.k; ++c)
                if (zeros(l, c) && m.M(l, c) > thresh) return false;
    }
    return true;
}

bool complex_basis_group_check() {
    const auto c2 = st::build_c2();
    st::CodeDefinition basis8 = c2;
    basis8.generators.assign(c2.generators.begin(), c2.generators.begin() + 8);
    basis8.k = 8;
    const auto m = orthogonality_matrix(basis8, MatrixXcd::Identity(4, 4));
    const BoolMask mask = zero_pattern(m.M, 1e-9);
    for (int l = 0; l < 8; ++l)
        for (int c = 0; c < 8; ++c) {
            const bool same_group = (l / 2 == c / 2);
            if (same_group && l != c) continue;  // intra-group coupling unconstrained
            if (!same_group && !mask(l, c)) return false;
        }
    // each group couples internally (diagonal blocks nonzero)
    for (int g = 0; g < 4; ++g)
        if (m.M(2 * g, 2 * g) <= 0 || m.M(2 * g + 1, 2 * g + 1) <= 0) return false;
    return true;
}

double reduction_percent(int exponent, int baseline) {
    return 100.0 * static_cast<double>(baseline - exponent) / static_cast<double>(baseline);
}

}  // namespace relay::fd
