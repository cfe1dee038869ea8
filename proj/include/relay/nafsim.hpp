#pragma once

// Nonorthogonal amplify-and-forward relay channel: quasi-static Rayleigh
// draws, the per-superframe equivalent channel with noise whitening, and
// Monte Carlo BLER sweeps.
//
// Conventions (the model leaves them open):
//  * Each relay contributes one 2-slot cooperation frame. The codeword rows
//    (2r, 2r+1) are seen through the lower-triangular per-relay block
//      [ sqrt(pi1*SNR) F              0            ]
//      [ sqrt(pi1*pi3*rho)*SNR*b*h*G  sqrt(pi2*SNR) F ]
//    so H_eq is block-diagonal with N such blocks, (2*N*n_d) x n_t.
//  * b is per-realization: b^2 = 1 / (pi1*rho*SNR*|h|^2 + 1).
//  * W = Sigma^{-1/2} whitens the complex noise; the decoder input is
//    sqrt(2) * vec_real(W H_eq X) plus unit-variance real noise, so the
//    real-stacked noise covariance is the identity.
//  * Codewords are scaled by kappa with kappa^2 = n_t*T / (sigma_S^2 * sum
//    ||B_i||_F^2) so the average slot energy is 1 and pi1*SNR is the direct
//    first-slot received SNR per antenna.

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "relay/stcodes.hpp"

namespace relay::ns {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;

struct NafParams {
    int N = 2;        // relays
    int n_s = 1;      // source antennas (only 1 supported)
    int n_r = 1;      // relay antennas (only 1 supported; scalar b)
    int n_d = 2;      // destination antennas
    std::array<double, 3> pi = {1.0, 1.0, 1.0};
    double rho = 1.0;  // source-relay gain
    double snr_db = 0.0;

    double snr_linear() const;
};

struct NafRealization {
    MatrixXcd F;                 // n_d x 1 direct channel
    std::vector<MatrixXcd> H;    // per relay, 1 x 1
    std::vector<MatrixXcd> G;    // per relay, n_d x 1
    std::vector<double> b;       // per relay amplification
};

NafRealization sample_channels(const NafParams& params, std::mt19937_64& rng);

struct EquivalentChannel {
    MatrixXcd H_eq;   // (2*N*n_d) x n_t
    MatrixXcd Sigma;  // complex noise covariance before whitening
    MatrixXcd W;      // Sigma^{-1/2}
};

EquivalentChannel equivalent_channel(const NafRealization& real, const NafParams& params, int n_t);

/// kappa for code normalization at PAM size s.
double code_scale(const st::CodeDefinition& code, int alphabet_size);

struct SweepConfig {
    st::CodeName code;
    std::string decoder;  // exhaustive | sphere | fast | ordered
    std::vector<double> snr_db;
    long long trials = 1;
    std::array<double, 3> pi = {1.0, 1.0, 1.0};
    double rho = 1.0;
    int alphabet_size = 2;
    std::uint64_t seed = 0;
    double noise_scale = 1.0;  // 0 gives the SNR = +inf proxy
    int n_d = 2;
};

struct SimRecord {
    std::string code;
    std::string decoder;
    double snr_db = 0.0;
    long long trials = 0;
    long long block_errors = 0;
    double bler = 0.0;
    double avg_nodes = 0.0;
    double avg_leaves = 0.0;
    std::uint64_t seed = 0;
};

std::vector<SimRecord> run_sweep(const SweepConfig& cfg);

/// Header "code,decoder,snr_db,trials,block_errors,bler,avg_nodes,avg_leaves,seed".
std::string to_csv(const std::vector<SimRecord>& records);

/// Deterministic per-trial stream: mixes (seed, snr_index, trial).
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t snr_index, std::uint64_t trial);

}  // namespace relay::ns
