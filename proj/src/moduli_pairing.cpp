#include "lefschetz/moduli_pairing.hpp"

#include "text_util.hpp"

#include <sstream>

namespace lefschetz {

namespace {

void require_same_shape(const DivisorClass& a, const DivisorClass& b) {
    if (a.genus != b.genus || a.markings != b.markings)
        throw InvalidArgument("divisor classes live on different moduli spaces");
    if (a.normalization != b.normalization) throw InvalidArgument("divisor classes use different normalizations");
}

Integer factorial(int n) {
    Integer f(1);
    for (int i = 2; i <= n; ++i) f *= Integer(i);
    return f;
}

}  // namespace

DivisorClass DivisorClass::zero(int genus, int markings, Normalization n) {
    if (genus < 1 || markings < 0) throw InvalidArgument("bad moduli space dimensions");
    DivisorClass c;
    c.genus = genus;
    c.markings = markings;
    c.delta.assign(static_cast<std::size_t>(genus / 2 + 1), Rational(0));
    c.psi.assign(static_cast<std::size_t>(markings), Rational(0));
    c.normalization = n;
    return c;
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
    require_same_shape(*this, o);
    lambda += o.lambda;
    for (std::size_t i = 0; i < delta.size(); ++i) delta[i] += o.delta[i];
    for (std::size_t j = 0; j < psi.size(); ++j) psi[j] += o.psi[j];
    omega_rd += o.omega_rd;
    return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) { return *this += Rational(-1) * o; }

DivisorClass& DivisorClass::operator*=(const Rational& c) {
    lambda *= c;
    for (auto& d : delta) d *= c;
    for (auto& p : psi) p *= c;
    omega_rd *= c;
    return *this;
}

SphereData sphere_from_report(const InvariantReport& report, std::optional<Integer> section_square) {
    SphereData s;
    s.genus = report.genus;
    s.markings = report.base_points;
    s.lambda = report.lambda;
    s.delta.assign(static_cast<std::size_t>(report.genus / 2 + 1), Integer(0));
    s.delta[0] = report.census.n;
    for (const auto& [h, count] : report.census.s_by_genus) s.delta.at(static_cast<std::size_t>(h)) = count;
    s.psi.assign(static_cast<std::size_t>(report.base_points), Integer(1));
    if (section_square) s.omega_rd = -*section_square;
    else if (report.base_points >= 1) s.omega_rd = Integer(1);
    return s;
}

Rational pair(const DivisorClass& c, const SphereData& s) {
    if (c.genus != s.genus || c.markings != s.markings)
        throw InvalidArgument("class on M(" + std::to_string(c.genus) + "," + std::to_string(c.markings) +
                              ") paired with a sphere in M(" + std::to_string(s.genus) + "," +
                              std::to_string(s.markings) + ")");
    if (c.delta.size() != s.delta.size() || c.psi.size() != s.psi.size())
        throw InvalidArgument("malformed class or sphere");
    Rational v = c.lambda * s.lambda;
    for (std::size_t i = 0; i < c.delta.size(); ++i) v += c.delta[i] * Rational(s.delta[i]);
    for (std::size_t j = 0; j < c.psi.size(); ++j) v += c.psi[j] * Rational(s.psi[j]);
    v += c.omega_rd * Rational(s.omega_rd);
    return v;
}

std::vector<std::string> pairing_warnings(const DivisorClass& c, const SphereData& s) {
    std::vector<std::string> out;
    if (c.normalization == Normalization::chow && s.delta.size() > 1 && !s.delta[1].is_zero())
        out.push_back("Chow normalization differs from the functor one on delta_1; the sphere has delta_1 = " +
                      s.delta[1].str());
    return out;
}

DivisorClass hyperelliptic_class(Normalization n) {
    DivisorClass c = DivisorClass::zero(3, 0, n);
    const bool chow = n == Normalization::chow;
    c.lambda = chow ? 18 : 9;
    c.delta[0] = chow ? -2 : -1;
    c.delta[1] = -3;
    return c;
}

Rational brill_noether_constant(int k) {
    if (k < 2) throw InvalidArgument("Brill-Noether constant needs k >= 2");
    return Rational(Integer(3) * factorial(2 * k - 4), factorial(k) * factorial(k - 2));
}

DivisorClass brill_noether_class(int genus) {
    if (genus < 3 || genus % 2 == 0)
        throw InvalidArgument("Brill-Noether divisor class needs odd genus >= 3, got " + std::to_string(genus));
    const int k = (genus + 1) / 2;
    DivisorClass c = DivisorClass::zero(genus);
    c.lambda = genus + 3;
    c.delta[0] = -Rational(genus + 1, 6);
    for (int i = 1; i <= genus / 2; ++i) c.delta[static_cast<std::size_t>(i)] = -(i * (genus - i));
    c *= brill_noether_constant(k);
    return c;
}

DivisorClass covering_divisor(int genus, int markings) {
    const DivisorClass bn = brill_noether_class(genus);
    DivisorClass c = DivisorClass::zero(genus, markings);
    c.lambda = bn.lambda;
    c.delta = bn.delta;
    c *= Rational(1) / brill_noether_constant((genus + 1) / 2);
    for (auto& p : c.psi) p = -1;
    return c;
}

DivisorClass weierstrass_class() {
    DivisorClass c = DivisorClass::zero(2, 1);
    c.omega_rd = 3;
    c.lambda = -1;
    c.delta[1] = -1;
    return c;
}

Rational T_pairing_delta(const Rational& a, const Rational& b) { return -(Rational(10) * b - a); }

CoveringSphere covering_sphere(const CoveringInputs& in, int k) {
    if (k < 2 || k % 2 != 0) throw InvalidArgument("covering sequence needs an even k >= 2, got " + std::to_string(k));
    const Integer kk(k);
    const Integer g = adjunction_genus(in.K_dot_omega, in.omega_sq, kk);
    if (g < Integer(3) || !(g - Integer(1)).divisible_by(2))
        throw InvalidArgument("degree " + std::to_string(k) + " gives genus " + g.str() +
                              "; the covering divisor needs odd genus >= 3");
    const Integer b = kk * kk * in.omega_sq;
    if (b.sign() < 0) throw InvalidArgument("negative base-point count");
    const int gi = static_cast<int>(g.to_int64());
    const Integer delta0 = in.c2 - Integer(4 - 4 * gi) + b;
    if (delta0.sign() < 0) throw InvalidArgument("inputs give a negative number of critical fibres");
    const Rational sigma(in.c1_sq - Integer(2) * in.c2, Integer(3));

    CoveringSphere out;
    out.genus = g;
    out.base_points = b;
    SphereData& s = out.sphere;
    s.genus = gi;
    s.markings = static_cast<int>(b.to_int64());
    s.lambda = (sigma - Rational(b) + Rational(delta0)) / Rational(4);
    s.delta.assign(static_cast<std::size_t>(gi / 2 + 1), Integer(0));
    s.delta[0] = delta0;
    s.psi.assign(static_cast<std::size_t>(s.markings), Integer(1));
    return out;
}

Rational covering_sequence_term(const CoveringInputs& in, int k) {
    const CoveringSphere cs = covering_sphere(in, k);
    return pair(covering_divisor(cs.sphere.genus, cs.sphere.markings), cs.sphere);
}

Rational covering_closed_form(const CoveringInputs& in, const Integer& genus) {
    const Rational g(genus);
    return (g + 1) * (g + 7) / 12 * Rational(in.K_dot_omega) + (g + 3) / 12 * Rational(in.c1_sq) +
           (Rational(1) - g) / 12 * Rational(in.c2);
}

Rational covering_k_form(const CoveringInputs& in, const Integer& genus, int k) {
    const Rational g(genus);
    return (g + 7) * Rational(k) / 6 * Rational(in.K_dot_omega) + (g + 3) / 12 * Rational(in.c1_sq) +
           (Rational(1) - g) / 12 * Rational(in.c2);
}

DivisorClass named_divisor_class(std::string_view name) {
    if (name == "hyperelliptic") return hyperelliptic_class(Normalization::functor);
    if (name == "hyperelliptic_chow") return hyperelliptic_class(Normalization::chow);
    if (name == "weierstrass") return weierstrass_class();
    const auto parts = detail::split(name, ':');
    try {
        if (parts.size() == 2 && parts[0] == "brill_noether")
            return brill_noether_class(static_cast<int>(Integer::parse(parts[1]).to_int64()));
        if (parts.size() == 3 && parts[0] == "covering")
            return covering_divisor(static_cast<int>(Integer::parse(parts[1]).to_int64()),
                                    static_cast<int>(Integer::parse(parts[2]).to_int64()));
    } catch (const std::invalid_argument&) {
        throw InvalidArgument("bad number in class name '" + std::string(name) + "'");
    }
    throw InvalidArgument("unknown divisor class '" + std::string(name) +
                          "' (expected hyperelliptic, hyperelliptic_chow, weierstrass, brill_noether:<g> or covering:<g>:<h>)");
}

DivisorClass parse_divisor_class(std::string_view text) {
    int genus = 0;
    int markings = 0;
    Normalization norm = Normalization::functor;
    std::vector<std::pair<detail::Line, std::vector<std::string_view>>> coeffs;
    for (const auto& line : detail::content_lines(text)) {
        auto words = detail::split_ws(line.text);
        if (words.size() != 2) throw ParseError("expected 'key value'", line.number, 1);
        const auto col = detail::column_of(line.text, words[1]);
        auto int_value = [&] {
            try {
                const auto v = Integer::parse(words[1]).to_int64();
                if (v < 0 || v > 1000) throw std::invalid_argument("range");
                return static_cast<int>(v);
            } catch (const std::exception&) {
                throw ParseError("expected a small non-negative integer", line.number, col);
            }
        };
        if (words[0] == "genus") genus = int_value();
        else if (words[0] == "markings") markings = int_value();
        else if (words[0] == "normalization") {
            if (words[1] == "functor") norm = Normalization::functor;
            else if (words[1] == "chow") norm = Normalization::chow;
            else throw ParseError("normalization must be functor or chow", line.number, col);
        } else coeffs.push_back({line, words});
    }
    if (genus < 1) throw ParseError("class file: missing 'genus'");
    DivisorClass c = DivisorClass::zero(genus, markings, norm);
    for (const auto& [line, words] : coeffs) {
        Rational value;
        try {
            value = Rational::parse(words[1]);
        } catch (const std::exception&) {
            throw ParseError("expected a rational coefficient", line.number, detail::column_of(line.text, words[1]));
        }
        const std::string_view key = words[0];
        auto index = [&](std::string_view prefix, std::size_t size, std::size_t base) -> Rational& {
            std::size_t i = 0;
            try {
                const auto v = Integer::parse(key.substr(prefix.size())).to_int64();
                if (v < static_cast<long long>(base)) throw std::invalid_argument("range");
                i = static_cast<std::size_t>(v) - base;
            } catch (const std::exception&) {
                throw ParseError("bad index in '" + std::string(key) + "'", line.number, 1);
            }
            if (i >= size) throw ParseError("'" + std::string(key) + "' is out of range for this moduli space", line.number, 1);
            return prefix == "delta" ? c.delta[i] : c.psi[i];
        };
        if (key == "lambda") c.lambda = value;
        else if (key == "omega_rd") c.omega_rd = value;
        else if (key.rfind("delta", 0) == 0) index("delta", c.delta.size(), 0) = value;
        else if (key.rfind("psi", 0) == 0) index("psi", c.psi.size(), 1) = value;
        else throw ParseError("unknown key '" + std::string(key) + "'", line.number, 1);
    }
    return c;
}

std::string format_divisor_class(const DivisorClass& c) {
    std::ostringstream out;
    out << "genus " << c.genus << "\nmarkings " << c.markings << "\nnormalization "
        << (c.normalization == Normalization::chow ? "chow" : "functor") << "\nlambda " << c.lambda.str() << '\n';
    for (std::size_t i = 0; i < c.delta.size(); ++i) out << "delta" << i << ' ' << c.delta[i].str() << '\n';
    for (std::size_t j = 0; j < c.psi.size(); ++j) out << "psi" << j + 1 << ' ' << c.psi[j].str() << '\n';
    out << "omega_rd " << c.omega_rd.str() << '\n';
    return out.str();
}

}  // namespace lefschetz
