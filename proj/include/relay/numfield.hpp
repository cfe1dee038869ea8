#pragma once

// Exact arithmetic in the six fixed number fields used by the code
// constructions: Q(i), Q(z7), Q(i,z7), Q(z8), Q(z8,sqrt5), Q(i,sqrt31,sqrt5).
// Coordinates are exact rationals over a fixed monomial basis; numeric
// embeddings are double precision.

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace relay::nf {

using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

enum class FieldId {
    Qi,             // Q(i), degree 2
    QZeta7,         // Q(z7), degree 6
    QiZeta7,        // Q(i, z7), degree 12
    QZeta8,         // Q(z8), degree 4
    QZeta8Sqrt5,    // Q(z8, sqrt5) via theta = (1+sqrt5)/2, degree 8
    QiSqrt31Sqrt5,  // Q(i, sqrt31, sqrt5), degree 8
};

std::string to_string(FieldId id);
std::optional<FieldId> field_from_string(std::string_view s);

class FieldElement;

/// A fixed number field: basis, structure constants, automorphisms and the
/// full set of complex embeddings. Instances are immutable singletons.
class NumberField {
  public:
    static const NumberField& of(FieldId id);

    FieldId id() const { return id_; }
    int degree() const { return degree_; }
    const std::vector<std::string>& basis() const { return basis_; }
    std::vector<std::string> automorphism_names() const;
    bool has_automorphism(const std::string& name) const;
    int embedding_count() const { return static_cast<int>(embeddings_.size()); }

    /// Complex value of basis monomial `j` under embedding `emb`
    /// (embedding 0 is the principal one: z_n -> exp(2*pi*i/n), positive roots).
    Complex embedding_value(int emb, int j) const;

    /// Debug serialization: {"id":..., "degree":..., "basis":[...]}.
    std::string to_json() const;

  private:
    friend class FieldElement;
    struct Generator {
        std::string symbol;
        int deg;
        std::vector<Rational> reduction;  // gen^deg = sum reduction[j] gen^j
        std::vector<Complex> conjugates;  // conjugates[0] = principal value
    };
    NumberField(FieldId id, std::vector<Generator> gens,
                const std::vector<std::pair<std::string, std::vector<std::vector<Rational>>>>& autos);

    std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const;
    std::vector<Rational> apply_matrix(const std::vector<std::vector<Rational>>& m,
                                       const std::vector<Rational>& v) const;

    FieldId id_;
    int degree_;
    std::vector<Generator> gens_;
    std::vector<std::vector<int>> basis_exp_;  // basis index -> exponent per generator
    std::vector<std::string> basis_;
    // mult_table_[a][b] = coordinates of basis_a * basis_b
    std::vector<std::vector<std::vector<Rational>>> mult_table_;
    // name -> columns: image coordinates of each basis monomial
    std::map<std::string, std::vector<std::vector<Rational>>> automorphisms_;
    // embeddings_[e][j] = complex value of basis monomial j
    std::vector<std::vector<Complex>> embeddings_;
};

/// An element of one of the supported fields, exact rational coordinates.
class FieldElement {
  public:
    FieldElement() : field_(FieldId::Qi), coords_(2, Rational(0)) {}
    FieldElement(FieldId field, std::vector<Rational> coords);

    static FieldElement zero(FieldId field);
    static FieldElement one(FieldId field);
    static FieldElement basis(FieldId field, int idx);
    static FieldElement integer(FieldId field, long long n);

    FieldId field() const { return field_; }
    const std::vector<Rational>& coords() const { return coords_; }
    bool is_zero() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator*(const Rational& r) const;
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    Complex embed(int emb = 0) const;
    FieldElement apply_auto(const std::string& name) const;
    Rational norm() const;

  private:
    FieldId field_;
    std::vector<Rational> coords_;
};

// Convenience builders for the generators of each field.
FieldElement make_i(FieldId field);      // i (fails for fields without i)
FieldElement make_zeta7();               // z7 in Q(z7)
FieldElement make_zeta7_l();             // z7 in Q(i,z7)
FieldElement make_zeta8(FieldId field);  // z8 in Q(z8) or Q(z8,sqrt5)
FieldElement make_theta();               // (1+sqrt5)/2 in Q(z8,sqrt5)
FieldElement make_sqrt5();               // sqrt5 in Q(i,sqrt31,sqrt5)
FieldElement make_sqrt31();              // sqrt31 in Q(i,sqrt31,sqrt5)
FieldElement make_sqrt_minus7();         // sqrt(-7) as Gauss sum in Q(i,z7)

}  // namespace relay::nf
