#pragma once

// Small odd-characteristic finite fields F_{p^f} in polynomial representation,
// just large enough for the Euler-criterion residue witness.

#include <cstdint>
#include <vector>

namespace relay::ff {

/// F_{p^f} = F_p[t]/(m(t)). For p=11, f=3 the modulus is fixed to t^3 - t - 4
/// (asserted irreducible at construction); otherwise the lexicographically
/// smallest monic irreducible of degree f is used.
class PrimePowerField {
  public:
    PrimePowerField(long long p, int f);

    long long p() const { return p_; }
    int f() const { return f_; }
    long long q() const { return q_; }
    const std::vector<long long>& modulus() const { return modulus_; }

    using Elem = std::vector<long long>;  // coefficients, degree < f

    Elem from_integer(long long n) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(Elem a, long long e) const;
    bool is_one(const Elem& a) const;
    bool is_zero(const Elem& a) const;

    /// All q field elements, for brute-force enumeration.
    std::vector<Elem> elements() const;

  private:
    long long p_;
    int f_;
    long long q_;
    std::vector<long long> modulus_;  // monic, length f+1
};

/// Euler criterion in F_q: true iff gamma^((q-1)/2) != 1, i.e. gamma is not a
/// square in the residue field. q must be an odd prime power; gamma is an
/// integer residue, nonzero mod p.
bool residue_nonsquare_witness(long long q, long long gamma);

}  // namespace relay::ff
