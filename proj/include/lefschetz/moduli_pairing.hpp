// Formal divisor classes on the moduli space of h-pointed genus-g stable curves
// and their pairing with the sphere a fibration induces.
//
// Generators: lambda, delta_0 .. delta_{g/2}, psi_1 .. psi_h, and omega_RD
// (the relative dualising class, used when h = 1). All coefficients exact.
#pragma once

#include "lefschetz/errors.hpp"
#include "lefschetz/exact.hpp"
#include "lefschetz/invariants.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lefschetz {

enum class Normalization { functor, chow };

struct DivisorClass {
    int genus = 1;
    int markings = 0;
    Rational lambda;
    std::vector<Rational> delta;  // size genus/2 + 1
    std::vector<Rational> psi;    // size markings
    Rational omega_rd;
    Normalization normalization = Normalization::functor;

    /// The zero class on M_{g,h}-bar.
    static DivisorClass zero(int genus, int markings = 0, Normalization n = Normalization::functor);

    DivisorClass& operator+=(const DivisorClass& o);
    DivisorClass& operator-=(const DivisorClass& o);
    DivisorClass& operator*=(const Rational& c);
    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator*(const Rational& c, DivisorClass a) { return a *= c; }
    friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
};

/// Evaluations of the generators on the sphere of a fibration.
struct SphereData {
    int genus = 1;
    int markings = 0;
    Rational lambda;
    std::vector<Integer> delta;
    std::vector<Integer> psi;
    Integer omega_rd;

    friend bool operator==(const SphereData&, const SphereData&) = default;
};

/// Sphere of a report: markings = base points, delta from the census,
/// psi_j = -(s_j . s_j) = 1 on each exceptional section, and
/// omega_RD = -(s . s) for the given section square (default -1 when h >= 1).
SphereData sphere_from_report(const InvariantReport& report, std::optional<Integer> section_square = std::nullopt);

/// Sum of coefficient times value. Throws InvalidArgument on a (g, h) mismatch.
Rational pair(const DivisorClass& c, const SphereData& s);
/// Non-fatal remarks about a pairing (Chow normalisation with delta_1 != 0).
std::vector<std::string> pairing_warnings(const DivisorClass& c, const SphereData& s);

/// Genus 3: 9 lambda - delta_0 - 3 delta_1 (functor) or 18 lambda - 2 delta_0 - 3 delta_1 (Chow).
DivisorClass hyperelliptic_class(Normalization n = Normalization::functor);

/// c_k = 3 (2k-4)! / (k! (k-2)!) for k >= 2.
Rational brill_noether_constant(int k);

/// c_k [(g+3) lambda - (g+1)/6 delta_0 - sum_i i(g-i) delta_i], k = (g+1)/2.
/// Throws InvalidArgument for even g or g < 3.
DivisorClass brill_noether_class(int genus);

/// brill_noether_class(g) / c_k - sum_{j <= h} psi_j on M_{g,h}-bar.
DivisorClass covering_divisor(int genus, int markings);

/// Genus 2, one marking: 3 omega_RD - lambda - delta_1.
DivisorClass weierstrass_class();

/// Change of the pairing with a lambda - b delta under T: -(10b - a).
Rational T_pairing_delta(const Rational& a, const Rational& b);

/// Named classes: hyperelliptic, hyperelliptic_chow, weierstrass,
/// brill_noether:<g>, covering:<g>:<h>. Throws InvalidArgument.
DivisorClass named_divisor_class(std::string_view name);

/// Class files hold `key value` lines: genus, markings, normalization
/// (functor|chow), lambda, delta<i>, psi<j> (1-based), omega_rd. Coefficients
/// are rationals; omitted ones are zero. `#` starts a comment.
DivisorClass parse_divisor_class(std::string_view text);
std::string format_divisor_class(const DivisorClass& c);

struct CoveringInputs {
    Integer K_dot_omega;
    Integer omega_sq;
    Integer c1_sq;
    Integer c2;
};

struct CoveringSphere {
    Integer genus;
    Integer base_points;
    SphereData sphere;
};

/// The degree-k pencil's sphere: genus from adjunction, k^2 w^2 base points,
/// sigma = (c1^2 - 2 c2)/3, delta_0 from e = c2, delta_i = 0 for i > 0.
/// Throws InvalidArgument unless k >= 2 is even and the genus is odd and >= 3.
CoveringSphere covering_sphere(const CoveringInputs& in, int k);

/// pair(covering_divisor, covering_sphere).
Rational covering_sequence_term(const CoveringInputs& in, int k);

/// ((g+1)(g+7)/12) K.w + ((g+3)/12) c1^2 + ((1-g)/12) c2.
Rational covering_closed_form(const CoveringInputs& in, const Integer& genus);
/// ((g+7)k/6) K.w + ((g+3)/12) c1^2 + ((1-g)/12) c2, the value the pipeline reduces to.
Rational covering_k_form(const CoveringInputs& in, const Integer& genus, int k);

}  // namespace lefschetz
