// Reference surface, curve alphabets and the homology action of Dehn twists.
//
// Homology vectors are written in a symplectic basis ordered
// (alpha_1, beta_1, ..., alpha_g, beta_g) with <alpha_i, beta_i> = 1.
// A positive Dehn twist about c acts on H_1 by x -> x + <x, c> c.
#pragma once

#include "lefschetz/errors.hpp"
#include "lefschetz/exact.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lefschetz {

struct Curve {
    std::string id;
    IntVector homology;
    bool separating = false;
    /// Genus of the smaller side when separating, in [1, g/2].
    std::optional<int> split_genus;
};

struct GeometricIntersection {
    std::string first;
    std::string second;
    int count = 0;
};

/// A finite set of labelled curves on the closed genus-g surface together
/// with their declared geometric intersection numbers. Immutable.
class CurveAlphabet {
public:
    /// Pairs not listed in `intersections` are disjoint. Throws InvalidArgument
    /// when an invariant fails (vector length, separating flag, a geometric
    /// count below the algebraic one or of the wrong parity, ...).
    CurveAlphabet(int genus, std::vector<Curve> curves,
                  const std::vector<GeometricIntersection>& intersections);

    int genus() const { return genus_; }
    std::size_t size() const { return curves_.size(); }
    std::span<const Curve> curves() const { return curves_; }
    const Curve& curve(std::size_t index) const { return curves_.at(index); }

    std::optional<std::size_t> find(std::string_view id) const;
    /// Throws InvalidArgument for an unknown id.
    std::size_t index_of(std::string_view id) const;

    int geometric_intersection(std::size_t a, std::size_t b) const { return geometric_(a, b); }
    int geometric_intersection(std::string_view a, std::string_view b) const {
        return geometric_(index_of(a), index_of(b));
    }

    friend bool operator==(const CurveAlphabet& a, const CurveAlphabet& b);

private:
    int genus_;
    std::vector<Curve> curves_;
    Eigen::MatrixXi geometric_;
};

/// Chain curves a_1, b_1, ..., a_g, b_g. For g = 3 also the two boundary
/// curves d2, e2 of a regular neighbourhood of a_1 u b_1 u a_2.
///
/// Consecutive chain curves meet once. Homology: a_1 = alpha_1,
/// a_i = alpha_i - alpha_{i-1} for i >= 2, b_i = beta_i, d2 = e2 = [a_1] + [a_2].
CurveAlphabet standard_alphabet(int genus);

/// standard_alphabet(genus) plus the closing chain curve a_{g+1}
/// (homology -alpha_g), giving the full chain of 2g+1 curves.
CurveAlphabet chain_alphabet(int genus);

/// Resolves `standard:<g>`, `chain:<g>` or a path to an alphabet file.
CurveAlphabet resolve_alphabet(std::string_view spec,
                               const std::filesystem::path& base_dir = {});

/// Symplectic pairing sum_i (u_{alpha_i} v_{beta_i} - u_{beta_i} v_{alpha_i}).
template <typename Derived1, typename Derived2>
auto symplectic_pairing(const Eigen::MatrixBase<Derived1>& u, const Eigen::MatrixBase<Derived2>& v) {
    using Scalar = typename Derived1::Scalar;
    if (u.size() != v.size() || u.size() % 2 != 0)
        throw InvalidArgument("symplectic pairing of vectors with lengths " +
                              std::to_string(u.size()) + " and " + std::to_string(v.size()));
    Scalar sum(0);
    for (Eigen::Index i = 0; i + 1 < u.size(); i += 2) sum += u(i) * v(i + 1) - u(i + 1) * v(i);
    return sum;
}

Integer algebraic_intersection(const Curve& u, const Curve& v);

/// The standard symplectic form J with <x, y> = x^T J y.
template <typename Scalar = Integer>
Matrix<Scalar> symplectic_form(int genus) {
    Matrix<Scalar> j = Matrix<Scalar>::Zero(2 * genus, 2 * genus);
    for (int i = 0; i < genus; ++i) {
        j(2 * i, 2 * i + 1) = Scalar(1);
        j(2 * i + 1, 2 * i) = Scalar(-1);
    }
    return j;
}

/// Matrix of x -> x + exponent * <x, c> c. Exponent -1 gives the inverse.
template <typename Scalar = Integer>
Matrix<Scalar> transvection_matrix(const Curve& c, int genus, int exponent = 1) {
    const auto n = static_cast<Eigen::Index>(2 * genus);
    if (c.homology.size() != n)
        throw InvalidArgument("curve '" + c.id + "' does not live on a genus-" +
                              std::to_string(genus) + " surface");
    Matrix<Scalar> m = Matrix<Scalar>::Identity(n, n);
    if (c.separating) return m;
    const Vector<Scalar> h = c.homology.template cast<Scalar>();
    // <x, c> = x^T J c, so the column for basis vector e_j is e_j + (J c)_j c.
    const Vector<Scalar> jc = symplectic_form<Scalar>(genus) * h;
    m += Scalar(exponent) * h * jc.transpose();
    return m;
}

std::string format_alphabet(const CurveAlphabet& alphabet);
/// Parses the line-oriented alphabet format (see docs/formats.md).
CurveAlphabet parse_alphabet(std::string_view text);
CurveAlphabet load_alphabet(const std::filesystem::path& path);

}  // namespace lefschetz
