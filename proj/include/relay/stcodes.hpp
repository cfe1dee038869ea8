#pragma once

// The four explicit relay code constructions as ordered generator-matrix
// lists, plus encoding and desk-scale determinant / diversity verification.

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relay/numfield.hpp"

namespace relay::st {

using Eigen::MatrixXcd;

enum class CodeName { C1_6x6, C2_4x4, C3_4x2, C4_4x2 };

std::string to_string(CodeName name);
std::optional<CodeName> code_from_string(const std::string& s);

/// Disjoint index groups plus a conditioned remainder, over generator indices
/// 0..k-1. Complexity exponent = |conditioned| + max group size.
struct GroupPartition {
    std::vector<std::vector<int>> groups;
    std::vector<int> conditioned;
};

/// An exact generator entry a + sqrt(radicand)*b with a, b in a fixed field.
/// radicand is 11 for C1, 2 for C2, 1 (with b = 0) for C3/C4.
struct ExactEntry {
    nf::FieldElement base;
    nf::FieldElement radical_part;
    long long radicand = 1;

    std::complex<double> embed() const;
    ExactEntry apply_auto(const std::string& name) const;
};

using ExactMatrix = std::vector<std::vector<ExactEntry>>;

struct CodeDefinition {
    CodeName name;
    std::string label;
    int n_t = 0;
    int T = 0;
    int k = 0;
    std::vector<MatrixXcd> generators;
    std::optional<GroupPartition> declared_partition;
    std::vector<ExactMatrix> exact_generators;  // empty for imported codes

    double rate() const { return static_cast<double>(k) / T; }
};

CodeDefinition build_c1();
CodeDefinition build_c2();
CodeDefinition build_c3();
CodeDefinition build_c4();
CodeDefinition build_code(CodeName name);

/// X = sum_i g_i B_i.
MatrixXcd encode(const CodeDefinition& code, const Eigen::VectorXi& g);

/// det(X^† X) for the codeword of g; equals |det X|^2 for square codes.
double det_gram(const CodeDefinition& code, const Eigen::VectorXi& g);

struct MinDetMode {
    enum Kind { Exhaustive, Sampled, Sparse } kind = Exhaustive;
    int samples = 0;          // Sampled
    std::uint64_t seed = 0;   // Sampled
    int weight = 0;           // Sparse
};

struct MinDetReport {
    double min_value = 0.0;
    Eigen::VectorXi argmin;
    long long count = 0;  // scanned nonzero vectors
};

/// Minimum of det_gram over nonzero coefficient vectors with entries in
/// [-coeff_bound, coeff_bound]. Exhaustive mode guarded at 1e7 evaluations.
MinDetReport min_det_search(const CodeDefinition& code, int coeff_bound, const MinDetMode& mode);

/// Residue-field non-square certificate: (q=11^3, gamma=-1) for C1,
/// (q=5, gamma=-2) for C2. Throws for C3/C4 (no residue-based NVD claim).
bool nvd_residue_certificate(const CodeDefinition& code);

}  // namespace relay::st
