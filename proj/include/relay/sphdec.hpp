#pragma once

// ML decoding over the realized real lattice: exhaustive oracle, sphere
// decoder, conditional-group fast decoder, and the ordered (Delta-slicing)
// decoder. All decoders return the exhaustive argmin under a shared
// lexicographic tie-break, with node/leaf counters.

#include <Eigen/Dense>
#include <vector>

#include "relay/fastdec.hpp"

namespace relay::sd {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Eigen::VectorXi;

/// PAM alphabet {±1, ±3, ..., ±(s-1)}, ascending.
struct Alphabet {
    std::vector<int> S;

    static Alphabet pam(int s);
    int size() const { return static_cast<int>(S.size()); }
    /// Nearest alphabet point; half-way ties go to the smaller symbol.
    int slice(double x) const;
};

struct DecodeResult {
    VectorXi g_hat;
    double metric = 0.0;
    long long nodes_visited = 0;
    long long leaves_evaluated = 0;
};

/// Brute force over all s^k vectors (guarded at 1e7); ties broken by the
/// lexicographically smallest symbol vector. The oracle for everything else.
DecodeResult exhaustive_ml(const VectorXd& y, const MatrixXd& B, const Alphabet& S);

/// Schnorr-Euchner sphere decoder, infinite initial radius, radius shrink on
/// every leaf. Final metrics are recomputed directly from (y, B) so results
/// match exhaustive_ml bit for bit.
DecodeResult sphere_decode(const VectorXd& y, const MatrixXd& B, const Alphabet& S);

/// Conditional-group decoder: enumerates the conditioned symbols, then decodes
/// each group independently through the block-diagonal R. Refuses partitions
/// whose cross-group realized columns are not orthogonal.
DecodeResult fast_decode(const VectorXd& y, const MatrixXd& B, const Alphabet& S,
                         const fd::GroupPartition& partition);

/// Decoder for a leading diagonal R block: enumerates levels ordering[2..k-1],
/// slices the two Delta levels. `ordering` permutes the columns of B first.
DecodeResult ordered_sphere_decode(const VectorXd& y, const MatrixXd& B, const Alphabet& S,
                                   const std::vector<int>& ordering);

}  // namespace relay::sd
