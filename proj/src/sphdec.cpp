#include "relay/sphdec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace relay::sd {

Alphabet Alphabet::pam(int s) {
    if (s < 2 || s % 2 != 0) throw std::invalid_argument("PAM size must be even and >= 2");
    Alphabet a;
    for (int v = -(s - 1); v <= s - 1; v += 2) a.S.push_back(v);
    return a;
}

int Alphabet::slice(double x) const {
    int best = S.front();
    double best_d = std::abs(x - S.front());
    for (size_t j = 1; j < S.size(); ++j) {
        const double d = std::abs(x - S[j]);
        if (d < best_d) {  // ties keep the earlier (smaller) symbol
            best_d = d;
            best = S[j];
        }
    }
    return best;
}

namespace {

bool lex_less(const VectorXi& a, const VectorXi& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                        b.data() + b.size());
}

double direct_metric(const VectorXd& y, const MatrixXd& B, const VectorXi& g) {
    return (y - B * g.cast<double>()).squaredNorm();
}

/// Shared best-so-far update: final metrics always come from direct_metric so
/// every decoder agrees bit for bit; ties go to the lexicographically
/// smallest symbol vector.
struct Best {
    VectorXi g;
    double metric = std::numeric_limits<double>::infinity();

    void consider(const VectorXd& y, const MatrixXd& B, const VectorXi& cand) {
        const double m = direct_metric(y, B, cand);
        if (m < metric || (m == metric && (g.size() == 0 || lex_less(cand, g)))) {
            metric = m;
            g = cand;
        }
    }
    /// Lower bounds above this cannot contain a new optimum (FP slack keeps
    /// exact ties reachable).
    double admit() const { return metric * (1.0 + 1e-9) + 1e-12; }
};

struct ThinQr {
    MatrixXd Q, R;
};

// Modified Gram-Schmidt with a re-orthogonalization pass; R diagonal positive.
ThinQr mgs_qr(const MatrixXd& B) {
    const int k = static_cast<int>(B.cols());
    ThinQr qr{B, MatrixXd::Zero(k, k)};
    for (int j = 0; j < k; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i < j; ++i) {
                const double c = qr.Q.col(i).dot(qr.Q.col(j));
                qr.R(i, j) += c;
                qr.Q.col(j) -= c * qr.Q.col(i);
            }
        qr.R(j, j) = qr.Q.col(j).norm();
        if (qr.R(j, j) <= 1e-12 * B.norm())
            throw std::invalid_argument("lattice matrix is rank deficient");
        qr.Q.col(j) /= qr.R(j, j);
    }
    return qr;
}

// Alphabet values sorted by distance to the center (Schnorr-Euchner order),
// ties by value so the enumeration is deterministic.
std::vector<int> se_order(const Alphabet& S, double center) {
    std::vector<int> vals = S.S;
    std::stable_sort(vals.begin(), vals.end(), [&](int a, int b) {
        return std::abs(a - center) < std::abs(b - center);
    });
    return vals;
}

}  // namespace

DecodeResult exhaustive_ml(const VectorXd& y, const MatrixXd& B, const Alphabet& S) {
    const int k = static_cast<int>(B.cols());
    const double total = std::pow(static_cast<double>(S.size()), k);
    if (total > 1e7) throw std::invalid_argument("exhaustive search space exceeds 1e7 guard");

    Best best;
    std::vector<int> idx(k, 0);
    VectorXi g(k);
    DecodeResult res;
    while (true) {
        for (int j = 0; j < k; ++j) g[j] = S.S[idx[j]];
        ++res.leaves_evaluated;
        best.consider(y, B, g);
        int lvl = k - 1;
        while (lvl >= 0 && idx[lvl] == S.size() - 1) idx[lvl--] = 0;
        if (lvl < 0) break;
        ++idx[lvl];
    }
    res.g_hat = best.g;
    res.metric = best.metric;
    res.nodes_visited = res.leaves_evaluated;
    return res;
}

DecodeResult sphere_decode(const VectorXd& y, const MatrixXd& B, const Alphabet& S) {
    const int k = static_cast<int>(B.cols());
    const auto qr = mgs_qr(B);
    const VectorXd z = qr.Q.transpose() * y;
    const double c0 = std::max(0.0, y.squaredNorm() - z.squaredNorm());

    Best best;
    DecodeResult res;
    VectorXi g = VectorXi::Zero(k);

    // depth-first from the last level; partial metric over rows j..k-1
    auto descend = [&](auto&& self, int j, double partial) -> void {
        if (j < 0) {
            ++res.leaves_evaluated;
            best.consider(y, B, g);
            return;
        }
        double inner = z[j];
        for (int t = j + 1; t < k; ++t) inner -= qr.R(j, t) * g[t];
        const double center = inner / qr.R(j, j);
        for (int v : se_order(S, center)) {
            const double d = inner - qr.R(j, j) * v;
            const double m = partial + d * d;
            ++res.nodes_visited;
            if (c0 + m > best.admit()) break;  // SE order: siblings only get worse
            g[j] = v;
            self(self, j - 1, m);
        }
    };
    descend(descend, k - 1, 0.0);

    res.g_hat = best.g;
    res.metric = best.metric;
    return res;
}

DecodeResult fast_decode(const VectorXd& y, const MatrixXd& B, const Alphabet& S,
                         const fd::GroupPartition& partition) {
    const int k = static_cast<int>(B.cols());
    // Operative decodability condition: realized columns across distinct
    // groups must be orthogonal (exactly what makes R block-diagonal).
    const MatrixXd gram = (B.transpose() * B).cwiseAbs();
    if (!fd::verify_partition(gram, partition, 1e-9))
        throw std::invalid_argument("partition is not valid for this realized lattice");

    std::vector<int> perm;
    std::vector<std::pair<int, int>> group_span;  // (offset, size) in permuted coords
    for (const auto& grp : partition.groups) {
        group_span.emplace_back(static_cast<int>(perm.size()), static_cast<int>(grp.size()));
        perm.insert(perm.end(), grp.begin(), grp.end());
    }
    const int kg = static_cast<int>(perm.size());
    perm.insert(perm.end(), partition.conditioned.begin(), partition.conditioned.end());

    MatrixXd Bp(B.rows(), k);
    for (int j = 0; j < k; ++j) Bp.col(j) = B.col(perm[j]);
    const auto qr = mgs_qr(Bp);
    const VectorXd z = qr.Q.transpose() * y;
    const double c0 = std::max(0.0, y.squaredNorm() - z.squaredNorm());

    Best best;
    DecodeResult res;
    VectorXi gp = VectorXi::Zero(k);  // permuted coordinates
    VectorXi cand(k);

    auto solve_groups = [&](double cond_metric) {
        // residual of the top rows after subtracting the conditioned columns
        VectorXd w = z.head(kg);
        for (int t = kg; t < k; ++t) w -= gp[t] * qr.R.col(t).head(kg);

        double group_total = 0.0;
        for (const auto& [off, sz] : group_span) {
            double gbest = std::numeric_limits<double>::infinity();
            std::vector<int> gbest_sym(sz, 0), idx(sz, 0), sym(sz);
            while (true) {
                for (int j = 0; j < sz; ++j) sym[j] = S.S[idx[j]];
                double gm = 0.0;
                for (int r = sz - 1; r >= 0; --r) {
                    double inner = w[off + r];
                    for (int t = r; t < sz; ++t) inner -= qr.R(off + r, off + t) * sym[t];
                    gm += inner * inner;
                }
                ++res.nodes_visited;
                ++res.leaves_evaluated;
                if (gm < gbest) {  // lex-ascending enumeration settles ties
                    gbest = gm;
                    gbest_sym = sym;
                }
                int lvl = sz - 1;
                while (lvl >= 0 && idx[lvl] == S.size() - 1) idx[lvl--] = 0;
                if (lvl < 0) break;
                ++idx[lvl];
            }
            for (int j = 0; j < sz; ++j) gp[off + j] = gbest_sym[j];
            group_total += gbest;
        }
        if (c0 + cond_metric + group_total <= best.admit()) {
            for (int j = 0; j < k; ++j) cand[perm[j]] = gp[j];
            best.consider(y, B, cand);
        }
    };

    // enumerate the conditioned levels (self-contained rows kg..k-1 of R)
    auto descend = [&](auto&& self, int j, double partial) -> void {
        if (j < kg) {
            solve_groups(partial);
            return;
        }
        double inner = z[j];
        for (int t = j + 1; t < k; ++t) inner -= qr.R(j, t) * gp[t];
        const double center = inner / qr.R(j, j);
        for (int v : se_order(S, center)) {
            const double d = inner - qr.R(j, j) * v;
            const double m = partial + d * d;
            ++res.nodes_visited;
            if (c0 + m > best.admit()) break;
            gp[j] = v;
            self(self, j - 1, m);
        }
    };
    descend(descend, k - 1, 0.0);

    res.g_hat = best.g;
    res.metric = best.metric;
    return res;
}

DecodeResult ordered_sphere_decode(const VectorXd& y, const MatrixXd& B, const Alphabet& S,
                                   const std::vector<int>& ordering) {
    const int k = static_cast<int>(B.cols());
    {
        std::vector<int> sorted = ordering;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> want(k);
        std::iota(want.begin(), want.end(), 0);
        if (sorted != want) throw std::invalid_argument("ordering is not a permutation");
    }
    MatrixXd Bp(B.rows(), k);
    for (int j = 0; j < k; ++j) Bp.col(j) = B.col(ordering[j]);
    const auto qr = mgs_qr(Bp);
    const VectorXd z = qr.Q.transpose() * y;
    const double c0 = std::max(0.0, y.squaredNorm() - z.squaredNorm());

    Best best;
    DecodeResult res;
    VectorXi gp = VectorXi::Zero(k);
    VectorXi cand(k);

    // levels k-1..2 are enumerated; the two Delta levels are sliced
    // independently (R(0,1) is structurally zero under a certified ordering).
    auto slice_delta = [&](double partial) {
        for (int j = 1; j >= 0; --j) {
            double inner = z[j];
            for (int t = 2; t < k; ++t) inner -= qr.R(j, t) * gp[t];
            gp[j] = S.slice(inner / qr.R(j, j));
        }
        ++res.leaves_evaluated;
        (void)partial;
        for (int j = 0; j < k; ++j) cand[ordering[j]] = gp[j];
        best.consider(y, B, cand);
    };

    auto descend = [&](auto&& self, int j, double partial) -> void {
        if (j < 2) {
            slice_delta(partial);
            return;
        }
        double inner = z[j];
        for (int t = j + 1; t < k; ++t) inner -= qr.R(j, t) * gp[t];
        const double center = inner / qr.R(j, j);
        for (int v : se_order(S, center)) {
            const double d = inner - qr.R(j, j) * v;
            const double m = partial + d * d;
            ++res.nodes_visited;
            if (c0 + m > best.admit()) break;
            gp[j] = v;
            self(self, j - 1, m);
        }
    };
    descend(descend, k - 1, 0.0);

    res.g_hat = best.g;
    res.metric = best.metric;
    return res;
}

}  // namespace relay::sd
