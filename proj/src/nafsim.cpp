#include "relay/nafsim.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "relay/sphdec.hpp"

namespace relay::ns {

double NafParams::snr_linear() const { return std::pow(10.0, snr_db / 10.0); }

namespace {

std::complex<double> cgauss(std::mt19937_64& rng) {
    // circularly-symmetric, unit variance (1/2 per real dimension)
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    const double re = g(rng);
    const double im = g(rng);
    return {re, im};
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t snr_index, std::uint64_t trial) {
    return splitmix(splitmix(seed ^ splitmix(snr_index + 1)) ^ splitmix(trial + 0x100000001ULL));
}

NafRealization sample_channels(const NafParams& params, std::mt19937_64& rng) {
    if (params.n_s != 1 || params.n_r != 1)
        throw std::invalid_argument("only single-antenna source/relays are supported");
    if (params.N < 1 || params.n_d < 1) throw std::invalid_argument("counts must be >= 1");
    const double snr = params.snr_linear();

    NafRealization r;
    r.F.resize(params.n_d, 1);
    for (int a = 0; a < params.n_d; ++a) r.F(a, 0) = cgauss(rng);
    for (int rel = 0; rel < params.N; ++rel) {
        MatrixXcd h(1, 1), g(params.n_d, 1);
        h(0, 0) = cgauss(rng);
        for (int a = 0; a < params.n_d; ++a) g(a, 0) = cgauss(rng);
        const double b2 = 1.0 / (params.pi[0] * params.rho * snr * std::norm(h(0, 0)) + 1.0);
        r.H.push_back(h);
        r.G.push_back(g);
        r.b.push_back(std::sqrt(b2));
    }
    return r;
}

EquivalentChannel equivalent_channel(const NafRealization& real, const NafParams& params,
                                     int n_t) {
    if (n_t != 2 * params.N)
        throw std::invalid_argument("code height does not match the relay count");
    const double snr = params.snr_linear();
    const int nd = params.n_d;
    const int rows = 2 * params.N * nd;

    EquivalentChannel eq;
    eq.H_eq = MatrixXcd::Zero(rows, n_t);
    eq.Sigma = MatrixXcd::Identity(rows, rows);
    for (int rel = 0; rel < params.N; ++rel) {
        const int r0 = 2 * nd * rel;  // first observation row of this frame
        const int c0 = 2 * rel;       // first codeword row seen in this frame
        const auto& g = real.G[rel];
        const std::complex<double> h = real.H[rel](0, 0);
        const double b = real.b[rel];

        eq.H_eq.block(r0, c0, nd, 1) = std::sqrt(params.pi[0] * snr) * real.F;
        eq.H_eq.block(r0 + nd, c0, nd, 1) =
            std::sqrt(params.pi[0] * params.pi[2] * params.rho) * snr * b * h * g;
        eq.H_eq.block(r0 + nd, c0 + 1, nd, 1) = std::sqrt(params.pi[1] * snr) * real.F;

        eq.Sigma.block(r0 + nd, r0 + nd, nd, nd) +=
            params.pi[2] * snr * b * b * g * g.adjoint();
    }

    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(eq.Sigma);
    eq.W = es.eigenvectors() *
           es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
           es.eigenvectors().adjoint();
    return eq;
}

double code_scale(const st::CodeDefinition& code, int alphabet_size) {
    const double sigma2 = (static_cast<double>(alphabet_size) * alphabet_size - 1.0) / 3.0;
    double energy = 0.0;
    for (const auto& b : code.generators) energy += b.squaredNorm();
    return std::sqrt(static_cast<double>(code.n_t) * code.T / (sigma2 * energy));
}

std::vector<SimRecord> run_sweep(const SweepConfig& cfg) {
    const auto code = st::build_code(cfg.code);
    const auto S = sd::Alphabet::pam(cfg.alphabet_size);
    const double kappa = code_scale(code, cfg.alphabet_size);
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (cfg.decoder == "fast" && !code.declared_partition)
        throw std::invalid_argument("code has no declared partition for the fast decoder");

    NafParams params;
    params.N = code.n_t / 2;
    params.n_d = cfg.n_d;
    params.pi = cfg.pi;
    params.rho = cfg.rho;

    std::vector<SimRecord> records;
    for (size_t si = 0; si < cfg.snr_db.size(); ++si) {
        params.snr_db = cfg.snr_db[si];
        SimRecord rec;
        rec.code = code.label;
        rec.decoder = cfg.decoder;
        rec.snr_db = params.snr_db;
        rec.trials = cfg.trials;
        rec.seed = cfg.seed;
        double nodes = 0.0, leaves = 0.0;

        for (long long t = 0; t < cfg.trials; ++t) {
            std::mt19937_64 rng(trial_seed(cfg.seed, si, static_cast<std::uint64_t>(t)));
            const auto real = sample_channels(params, rng);
            const auto eq = equivalent_channel(real, params, code.n_t);
            const MatrixXcd chan = std::sqrt(2.0) * kappa * (eq.W * eq.H_eq);

            Eigen::MatrixXd B(2 * code.T * chan.rows(), code.k);
            for (int i = 0; i < code.k; ++i) {
                const MatrixXcd hb = chan * code.generators[i];
                Eigen::Map<const Eigen::VectorXcd> flat(hb.data(), hb.size());
                B.col(i).head(hb.size()) = flat.real();
                B.col(i).tail(hb.size()) = flat.imag();
            }

            std::uniform_int_distribution<int> pick(0, S.size() - 1);
            Eigen::VectorXi g(code.k);
            for (int j = 0; j < code.k; ++j) g[j] = S.S[pick(rng)];

            std::normal_distribution<double> gauss(0.0, 1.0);
            Eigen::VectorXd y = B * g.cast<double>();
            for (int j = 0; j < y.size(); ++j) y[j] += cfg.noise_scale * gauss(rng);

            sd::DecodeResult res;
            if (cfg.decoder == "exhaustive") {
                res = sd::exhaustive_ml(y, B, S);
            } else if (cfg.decoder == "sphere") {
                res = sd::sphere_decode(y, B, S);
            } else if (cfg.decoder == "fast") {
                res = sd::fast_decode(y, B, S, *code.declared_partition);
            } else if (cfg.decoder == "ordered") {
                std::vector<int> ordering(code.k);
                for (int j = 0; j < code.k; ++j) ordering[j] = j;
                res = sd::ordered_sphere_decode(y, B, S, ordering);
            } else {
                throw std::invalid_argument("unknown decoder: " + cfg.decoder);
            }

            if (res.g_hat != g) ++rec.block_errors;
            nodes += static_cast<double>(res.nodes_visited);
            leaves += static_cast<double>(res.leaves_evaluated);
        }
        rec.bler = static_cast<double>(rec.block_errors) / static_cast<double>(rec.trials);
        rec.avg_nodes = nodes / static_cast<double>(rec.trials);
        rec.avg_leaves = leaves / static_cast<double>(rec.trials);
        records.push_back(std::move(rec));
    }
    return records;
}

std::string to_csv(const std::vector<SimRecord>& records) {
    std::ostringstream out;
    out.precision(10);
    out << "code,decoder,snr_db,trials,block_errors,bler,avg_nodes,avg_leaves,seed\n";
    for (const auto& r : records)
        out << r.code << ',' << r.decoder << ',' << r.snr_db << ',' << r.trials << ','
            << r.block_errors << ',' << r.bler << ',' << r.avg_nodes << ',' << r.avg_leaves
            << ',' << r.seed << '\n';
    return out.str();
}

}  // namespace relay::ns
