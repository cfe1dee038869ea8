#include "relay/numfield.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace relay::nf {

namespace {

constexpr double kPi = std::numbers::pi;

Complex root_of_unity(int num, int den) {
    const double a = 2.0 * kPi * num / den;
    return {std::cos(a), std::sin(a)};
}

std::vector<Rational> rvec(std::initializer_list<long long> v) {
    std::vector<Rational> out;
    out.reserve(v.size());
    for (long long x : v) out.emplace_back(x);
    return out;
}

}  // namespace

std::string to_string(FieldId id) {
    switch (id) {
        case FieldId::Qi: return "Q(i)";
        case FieldId::QZeta7: return "Q(zeta7)";
        case FieldId::QiZeta7: return "Q(i,zeta7)";
        case FieldId::QZeta8: return "Q(zeta8)";
        case FieldId::QZeta8Sqrt5: return "Q(zeta8,sqrt5)";
        case FieldId::QiSqrt31Sqrt5: return "Q(i,sqrt31,sqrt5)";
    }
    return "?";
}

std::optional<FieldId> field_from_string(std::string_view s) {
    for (FieldId id : {FieldId::Qi, FieldId::QZeta7, FieldId::QiZeta7, FieldId::QZeta8,
                       FieldId::QZeta8Sqrt5, FieldId::QiSqrt31Sqrt5}) {
        if (to_string(id) == s) return id;
    }
    return std::nullopt;
}

NumberField::NumberField(
    FieldId id, std::vector<Generator> gens,
    const std::vector<std::pair<std::string, std::vector<std::vector<Rational>>>>& autos)
    : id_(id), gens_(std::move(gens)) {
    degree_ = 1;
    for (const auto& g : gens_) degree_ *= g.deg;

    // Basis monomials, row-major over the generator list (first generator slowest).
    basis_exp_.assign(degree_, std::vector<int>(gens_.size(), 0));
    for (int idx = 0; idx < degree_; ++idx) {
        int rem = idx;
        for (int g = static_cast<int>(gens_.size()) - 1; g >= 0; --g) {
            basis_exp_[idx][g] = rem % gens_[g].deg;
            rem /= gens_[g].deg;
        }
        std::string label;
        for (size_t g = 0; g < gens_.size(); ++g) {
            int e = basis_exp_[idx][g];
            if (e == 0) continue;
            if (!label.empty()) label += "*";
            label += gens_[g].symbol;
            if (e > 1) label += "^" + std::to_string(e);
        }
        basis_.push_back(label.empty() ? "1" : label);
    }

    // Structure constants: multiply monomials and reduce generator powers.
    auto reduce = [&](std::map<std::vector<int>, Rational> terms) {
        bool again = true;
        while (again) {
            again = false;
            for (auto it = terms.begin(); it != terms.end(); ++it) {
                for (size_t g = 0; g < gens_.size(); ++g) {
                    if (it->second == 0) continue;
                    if (it->first[g] >= gens_[g].deg) {
                        auto exps = it->first;
                        Rational c = it->second;
                        exps[g] -= gens_[g].deg;
                        terms.erase(it);
                        for (int j = 0; j < gens_[g].deg; ++j) {
                            const Rational& rj = gens_[g].reduction[j];
                            if (rj == 0) continue;
                            auto e2 = exps;
                            e2[g] += j;
                            terms[e2] += c * rj;
                        }
                        again = true;
                        break;
                    }
                }
                if (again) break;
            }
        }
        std::vector<Rational> coords(degree_, Rational(0));
        for (const auto& [exps, c] : terms) {
            int idx = 0;
            for (size_t g = 0; g < gens_.size(); ++g) idx = idx * gens_[g].deg + exps[g];
            coords[idx] = c;
        }
        return coords;
    };

    mult_table_.assign(degree_, std::vector<std::vector<Rational>>(degree_));
    for (int a = 0; a < degree_; ++a) {
        for (int b = 0; b < degree_; ++b) {
            std::vector<int> exps(gens_.size());
            for (size_t g = 0; g < gens_.size(); ++g) exps[g] = basis_exp_[a][g] + basis_exp_[b][g];
            std::map<std::vector<int>, Rational> terms;
            terms[exps] = 1;
            mult_table_[a][b] = reduce(std::move(terms));
        }
    }

    // Embeddings: all combinations of generator conjugates (valid because the
    // supported fields are tensor products of the simple extensions).
    int embs = 1;
    for (const auto& g : gens_) embs *= static_cast<int>(g.conjugates.size());
    embeddings_.assign(embs, std::vector<Complex>(degree_));
    for (int e = 0; e < embs; ++e) {
        std::vector<int> choice(gens_.size());
        int rem = e;
        for (int g = static_cast<int>(gens_.size()) - 1; g >= 0; --g) {
            choice[g] = rem % gens_[g].conjugates.size();
            rem /= static_cast<int>(gens_[g].conjugates.size());
        }
        for (int j = 0; j < degree_; ++j) {
            Complex v = 1.0;
            for (size_t g = 0; g < gens_.size(); ++g)
                for (int p = 0; p < basis_exp_[j][g]; ++p) v *= gens_[g].conjugates[choice[g]];
            embeddings_[e][j] = v;
        }
    }

    // Automorphism matrices: image of each basis monomial is the product of the
    // generator images, computed with the field multiplication.
    std::vector<std::vector<Rational>> ident(degree_);
    for (int j = 0; j < degree_; ++j) {
        ident[j].assign(degree_, Rational(0));
        ident[j][j] = 1;
    }
    automorphisms_["id"] = ident;
    for (const auto& [name, gen_images] : autos) {
        std::vector<std::vector<Rational>> cols(degree_);
        for (int j = 0; j < degree_; ++j) {
            std::vector<Rational> acc(degree_, Rational(0));
            acc[0] = 1;
            for (size_t g = 0; g < gens_.size(); ++g)
                for (int p = 0; p < basis_exp_[j][g]; ++p) acc = multiply(acc, gen_images[g]);
            // closure: automorphisms must map basis monomials to integer combinations
            for (const Rational& c : acc)
                if (boost::multiprecision::denominator(c) != 1)
                    throw std::logic_error("automorphism image not integral in " + to_string(id_));
            cols[j] = std::move(acc);
        }
        automorphisms_[name] = std::move(cols);
    }
}

std::vector<Rational> NumberField::multiply(const std::vector<Rational>& a,
                                            const std::vector<Rational>& b) const {
    std::vector<Rational> out(degree_, Rational(0));
    for (int i = 0; i < degree_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < degree_; ++j) {
            if (b[j] == 0) continue;
            const Rational c = a[i] * b[j];
            const auto& prod = mult_table_[i][j];
            for (int t = 0; t < degree_; ++t)
                if (prod[t] != 0) out[t] += c * prod[t];
        }
    }
    return out;
}

std::vector<Rational> NumberField::apply_matrix(const std::vector<std::vector<Rational>>& m,
                                                const std::vector<Rational>& v) const {
    std::vector<Rational> out(degree_, Rational(0));
    for (int j = 0; j < degree_; ++j) {
        if (v[j] == 0) continue;
        for (int t = 0; t < degree_; ++t)
            if (m[j][t] != 0) out[t] += v[j] * m[j][t];
    }
    return out;
}

std::vector<std::string> NumberField::automorphism_names() const {
    std::vector<std::string> names;
    for (const auto& [n, _] : automorphisms_) names.push_back(n);
    return names;
}

bool NumberField::has_automorphism(const std::string& name) const {
    return automorphisms_.count(name) > 0;
}

Complex NumberField::embedding_value(int emb, int j) const {
    return embeddings_.at(emb).at(j);
}

std::string NumberField::to_json() const {
    std::ostringstream os;
    os << "{\"id\":\"" << to_string(id_) << "\",\"degree\":" << degree_ << ",\"basis\":[";
    for (int j = 0; j < degree_; ++j) os << (j ? "," : "") << "\"" << basis_[j] << "\"";
    os << "]}";
    return os.str();
}

const NumberField& NumberField::of(FieldId id) {
    using G = Generator;
    static const NumberField qi{
        FieldId::Qi,
        {G{"i", 2, rvec({-1, 0}), {Complex(0, 1), Complex(0, -1)}}},
        {{"conj", {rvec({0, -1})}}}};

    // z7^6 = -(1 + z7 + ... + z7^5)
    static const auto z7red = rvec({-1, -1, -1, -1, -1, -1});
    static const auto z7conj = [] {
        std::vector<Complex> v;
        for (int m = 1; m <= 6; ++m) v.push_back(root_of_unity(m, 7));
        return v;
    }();
    static const NumberField qz7{
        FieldId::QZeta7,
        {G{"z7", 6, z7red, z7conj}},
        {{"tau", {rvec({0, 0, 1, 0, 0, 0})}},        // z7 -> z7^2
         {"conj", {rvec({-1, -1, -1, -1, -1, -1})}}  // z7 -> z7^6
        }};

    // basis index = a*2 + b for z7^a i^b
    static const NumberField qiz7{
        FieldId::QiZeta7,
        {G{"z7", 6, z7red, z7conj}, G{"i", 2, rvec({-1, 0}), {Complex(0, 1), Complex(0, -1)}}},
        {{"sigma",
          {rvec({0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0}),     // z7 fixed
           rvec({0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0})}},  // i -> -i
         {"tau",
          {rvec({0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0}),    // z7 -> z7^2
           rvec({0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0})}},  // i fixed
         {"conj",
          {rvec({-1, 0, -1, 0, -1, 0, -1, 0, -1, 0, -1, 0}),  // z7 -> z7^6
           rvec({0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0})}}}};

    // z8^4 = -1
    static const auto z8conj = [] {
        std::vector<Complex> v;
        for (int m : {1, 3, 5, 7}) v.push_back(root_of_unity(m, 8));
        return v;
    }();
    static const NumberField qz8{
        FieldId::QZeta8,
        {G{"z8", 4, rvec({-1, 0, 0, 0}), z8conj}},
        {{"tau", {rvec({0, -1, 0, 0})}},       // z8 -> -z8 (sqrt2 -> -sqrt2)
         {"conj", {rvec({0, 0, 0, -1})}},      // z8 -> z8^7 = -z8^3
         {"tau_conj", {rvec({0, 0, 0, 1})}}}}; // z8 -> z8^3

    // theta^2 = theta + 1; basis index = a*2 + b for z8^a theta^b
    static const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;
    static const NumberField qz8s5{
        FieldId::QZeta8Sqrt5,
        {G{"z8", 4, rvec({-1, 0, 0, 0}), z8conj},
         G{"th", 2, rvec({1, 1}), {Complex(kGolden, 0), Complex(1.0 - kGolden, 0)}}},
        {{"tau",
          {rvec({0, 0, -1, 0, 0, 0, 0, 0}),    // z8 -> -z8
           rvec({0, 1, 0, 0, 0, 0, 0, 0})}},   // theta fixed
         {"r",
          {rvec({0, 0, 1, 0, 0, 0, 0, 0}),     // z8 fixed
           rvec({1, -1, 0, 0, 0, 0, 0, 0})}},  // theta -> 1 - theta
         {"tau_r",
          {rvec({0, 0, -1, 0, 0, 0, 0, 0}),
           rvec({1, -1, 0, 0, 0, 0, 0, 0})}},
         {"conj",
          {rvec({0, 0, 0, 0, 0, 0, -1, 0}),    // z8 -> -z8^3
           rvec({0, 1, 0, 0, 0, 0, 0, 0})}}}};

    // basis index = a*4 + b*2 + c for i^a sqrt31^b sqrt5^c
    static const double s31 = std::sqrt(31.0), s5 = std::sqrt(5.0);
    static const NumberField qis31s5{
        FieldId::QiSqrt31Sqrt5,
        {G{"i", 2, rvec({-1, 0}), {Complex(0, 1), Complex(0, -1)}},
         G{"r31", 2, rvec({31, 0}), {Complex(s31, 0), Complex(-s31, 0)}},
         G{"r5", 2, rvec({5, 0}), {Complex(s5, 0), Complex(-s5, 0)}}},
        {{"sigma",
          {rvec({0, 0, 0, 0, 1, 0, 0, 0}),      // i fixed
           rvec({0, 0, 1, 0, 0, 0, 0, 0}),      // sqrt31 fixed
           rvec({0, -1, 0, 0, 0, 0, 0, 0})}},   // sqrt5 -> -sqrt5
         {"tau",
          {rvec({0, 0, 0, 0, 1, 0, 0, 0}),
           rvec({0, 0, -1, 0, 0, 0, 0, 0}),     // sqrt31 -> -sqrt31
           rvec({0, 1, 0, 0, 0, 0, 0, 0})}},
         {"sigma_tau",
          {rvec({0, 0, 0, 0, 1, 0, 0, 0}),
           rvec({0, 0, -1, 0, 0, 0, 0, 0}),
           rvec({0, -1, 0, 0, 0, 0, 0, 0})}},
         {"conj",
          {rvec({0, 0, 0, 0, -1, 0, 0, 0}),    // i -> -i
           rvec({0, 0, 1, 0, 0, 0, 0, 0}),
           rvec({0, 1, 0, 0, 0, 0, 0, 0})}}}};

    switch (id) {
        case FieldId::Qi: return qi;
        case FieldId::QZeta7: return qz7;
        case FieldId::QiZeta7: return qiz7;
        case FieldId::QZeta8: return qz8;
        case FieldId::QZeta8Sqrt5: return qz8s5;
        case FieldId::QiSqrt31Sqrt5: return qis31s5;
    }
    throw std::invalid_argument("unsupported field id");
}

FieldElement::FieldElement(FieldId field, std::vector<Rational> coords)
    : field_(field), coords_(std::move(coords)) {
    if (static_cast<int>(coords_.size()) != NumberField::of(field_).degree())
        throw std::invalid_argument("coordinate count does not match field degree");
}

FieldElement FieldElement::zero(FieldId field) {
    return {field, std::vector<Rational>(NumberField::of(field).degree(), Rational(0))};
}

FieldElement FieldElement::one(FieldId field) { return integer(field, 1); }

FieldElement FieldElement::basis(FieldId field, int idx) {
    auto e = zero(field);
    e.coords_.at(idx) = 1;
    return e;
}

FieldElement FieldElement::integer(FieldId field, long long n) {
    auto e = zero(field);
    e.coords_[0] = n;
    return e;
}

bool FieldElement::is_zero() const {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    if (field_ != o.field_) throw std::invalid_argument("field mismatch");
    auto out = *this;
    for (size_t j = 0; j < coords_.size(); ++j) out.coords_[j] += o.coords_[j];
    return out;
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator-() const {
    auto out = *this;
    for (auto& c : out.coords_) c = -c;
    return out;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    if (field_ != o.field_) throw std::invalid_argument("field mismatch");
    return {field_, NumberField::of(field_).multiply(coords_, o.coords_)};
}

FieldElement FieldElement::operator*(const Rational& r) const {
    auto out = *this;
    for (auto& c : out.coords_) c *= r;
    return out;
}

bool FieldElement::operator==(const FieldElement& o) const {
    return field_ == o.field_ && coords_ == o.coords_;
}

Complex FieldElement::embed(int emb) const {
    const auto& f = NumberField::of(field_);
    if (emb < 0 || emb >= f.embedding_count())
        throw std::invalid_argument("embedding out of range for " + to_string(field_));
    Complex v = 0.0;
    for (int j = 0; j < f.degree(); ++j)
        if (coords_[j] != 0) v += coords_[j].convert_to<double>() * f.embedding_value(emb, j);
    return v;
}

FieldElement FieldElement::apply_auto(const std::string& name) const {
    const auto& f = NumberField::of(field_);
    auto it = f.automorphisms_.find(name);
    if (it == f.automorphisms_.end())
        throw std::invalid_argument("unknown automorphism '" + name + "' on " + to_string(field_));
    return {field_, f.apply_matrix(it->second, coords_)};
}

Rational FieldElement::norm() const {
    // Determinant of the multiplication-by-x matrix, exact Gaussian elimination.
    const auto& f = NumberField::of(field_);
    const int n = f.degree();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (int j = 0; j < n; ++j) {
        auto col = f.multiply(coords_, FieldElement::basis(field_, j).coords());
        for (int t = 0; t < n; ++t) m[t][j] = col[t];
    }
    Rational det = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (m[r][c] != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        const Rational inv = Rational(1) / m[c][c];
        for (int r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            const Rational factor = m[r][c] * inv;
            for (int t = c; t < n; ++t) m[r][t] -= factor * m[c][t];
        }
    }
    return det;
}

FieldElement make_i(FieldId field) {
    switch (field) {
        case FieldId::Qi: return FieldElement::basis(field, 1);
        case FieldId::QiZeta7: return FieldElement::basis(field, 1);           // z7^0 i^1
        case FieldId::QZeta8: return FieldElement::basis(field, 2);            // z8^2
        case FieldId::QZeta8Sqrt5: return FieldElement::basis(field, 4);       // z8^2 th^0
        case FieldId::QiSqrt31Sqrt5: return FieldElement::basis(field, 4);     // i^1
        default: throw std::invalid_argument("field has no canonical i");
    }
}

FieldElement make_zeta7() { return FieldElement::basis(FieldId::QZeta7, 1); }
FieldElement make_zeta7_l() { return FieldElement::basis(FieldId::QiZeta7, 2); }  // z7^1 i^0

FieldElement make_zeta8(FieldId field) {
    if (field == FieldId::QZeta8) return FieldElement::basis(field, 1);
    if (field == FieldId::QZeta8Sqrt5) return FieldElement::basis(field, 2);  // z8^1 th^0
    throw std::invalid_argument("field has no zeta8");
}

FieldElement make_theta() { return FieldElement::basis(FieldId::QZeta8Sqrt5, 1); }
FieldElement make_sqrt5() { return FieldElement::basis(FieldId::QiSqrt31Sqrt5, 1); }
FieldElement make_sqrt31() { return FieldElement::basis(FieldId::QiSqrt31Sqrt5, 2); }

FieldElement make_sqrt_minus7() {
    // Gauss sum: z + z^2 + z^4 - z^3 - z^5 - z^6 over the quadratic residues mod 7.
    const FieldId f = FieldId::QiZeta7;
    auto z = make_zeta7_l();
    auto acc = FieldElement::zero(f);
    auto zp = FieldElement::one(f);
    for (int e = 1; e <= 6; ++e) {
        zp = (e == 1) ? z : zp * z;
        bool qr = (e == 1 || e == 2 || e == 4);
        acc = qr ? acc + zp : acc - zp;
    }
    return acc;
}

}  // namespace relay::nf
