#pragma once

// Vectorized lattices seen through a channel, the orthogonality matrix M and
// its zero pattern, group partitions, QR structure, and the certification
// checks built on them.

#include <Eigen/Dense>
#include <cstdint>

#include "relay/stcodes.hpp"

namespace relay::fd {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using st::GroupPartition;

using BoolMask = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// vec-real: stack columns (column-major), then real parts over imaginary.
VectorXd vec_real(const MatrixXcd& m);

/// Real 2Tn_r x k matrix whose column i is vec_real(H * B_i).
struct RealizedLattice {
    MatrixXd B;
    MatrixXcd H;
    int T = 0;
    int k = 0;
};

RealizedLattice realize(const st::CodeDefinition& code, const MatrixXcd& H);

/// M_{l,m} = || (H B_l)(H B_m)^† + (H B_m)(H B_l)^† ||_F. Zeros of M are
/// stable under left multiplication by any channel and predict zeros in R;
/// the transposed-product variant does not have the stability property.
struct OrthogonalityMatrix {
    MatrixXd M;
    double tol;
};

OrthogonalityMatrix orthogonality_matrix(const st::CodeDefinition& code, const MatrixXcd& H,
                                         double tol = 1e-9);

/// mask(l,m) = true iff M(l,m) <= tol * max(M).
BoolMask zero_pattern(const MatrixXd& M, double tol);

/// True iff every cross-group pair (both indices in proper groups, different
/// groups) is a zero of M. Throws on a malformed partition.
bool verify_partition(const MatrixXd& M, const GroupPartition& partition, double tol);

/// |Gamma^C| + max_i |Gamma_i|; k when there are no proper groups.
int complexity_exponent(const GroupPartition& partition);

/// Greedy partition discovery on the nonzero graph of the mask: repeatedly
/// condition out the highest-degree vertex until the graph is edgeless;
/// among the snapshots (components = groups) the one with the smallest
/// complexity exponent wins, ties to the more-conditioned snapshot.
/// Best-effort, not optimal.
GroupPartition auto_partition(const BoolMask& mask);

/// Thin QR with positive diagonal (modified Gram-Schmidt, deterministic),
/// zero mask of |R|, and the size of the leading diagonal block of R.
struct QrStructure {
    MatrixXd R;
    BoolMask mask;
    int delta_prefix = 0;
};

QrStructure qr_structure(const RealizedLattice& lat, double tol = 1e-9);

/// Zeros of M at H = I persist for `trials` random full-rank channels.
/// real_channels restricts the draw to real Gaussian H.
bool pattern_stability_check(const st::CodeDefinition& code, int trials, std::uint64_t seed,
                             bool real_channels = false, double tol = 1e-9);

/// C2 over its 8-element Z(i)-basis (the unit multiples): M splits into the
/// four groups {0,1},{2,3},{4,5},{6,7} with no conditioned set, so a complex
/// decoder sees complexity degree 2.
bool complex_basis_group_check();

/// Percent reduction of exponent e against the dense baseline exponent.
double reduction_percent(int exponent, int baseline);

}  // namespace relay::fd
