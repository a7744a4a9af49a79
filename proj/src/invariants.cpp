#include "lefschetz/invariants.hpp"

#include "lefschetz/smith_normal_form.hpp"

#include <tuple>

namespace lefschetz {

namespace {

Integer exact_div(const Integer& a, const Integer& b, const std::string& what) {
    if (!a.divisible_by(b)) throw NonIntegral(what + ": " + a.str() + " is not divisible by " + b.str());
    return a / b;
}

Integer census_count(const TwistCensus& c, int h) {
    auto it = c.s_by_genus.find(h);
    return it == c.s_by_genus.end() ? Integer(0) : it->second;
}

void finish(InvariantReport& r) {
    std::tie(r.c1_sq, r.c2) = chern_numbers(r.e, r.sigma);
    r.lambda = hodge_lambda(r.sigma_fibration(), r.census);
}

}  // namespace

std::string to_string(SignatureKind k) {
    switch (k) {
        case SignatureKind::endo_g3: return "endo_g3";
        case SignatureKind::genus2_formula: return "genus2_formula";
        case SignatureKind::user_supplied: return "user_supplied";
        case SignatureKind::chain_derived: return "chain_derived";
    }
    return "?";
}

Integer euler_char(int genus, const Integer& delta, int base_points) {
    if (delta.sign() < 0) throw InvalidArgument("negative number of critical fibres");
    return Integer(4 - 4 * genus) + delta - Integer(base_points);
}

Integer signature_genus3_hyperelliptic(const Integer& irreducible, const Integer& reducible) {
    return exact_div(Integer(-4) * irreducible + reducible, Integer(7), "hyperelliptic genus-3 signature");
}

Integer signature_genus2(const Integer& n, const Integer& s, int base_points) {
    return -exact_div(Integer(3) * n + s, Integer(5), "genus-2 signature") + Integer(base_points);
}

Rational hodge_lambda(const Integer& sigma_fibration, const TwistCensus& census) {
    return Rational(sigma_fibration + census.total, Integer(4));
}

std::pair<Integer, Integer> chern_numbers(const Integer& e, const Integer& sigma) {
    return {Integer(2) * e + Integer(3) * sigma, e};
}

Integer adjunction_genus(const Integer& K_dot_omega, const Integer& omega_sq, const Integer& k) {
    if (k < Integer(1)) throw InvalidArgument("adjunction needs k >= 1, got " + k.str());
    const Integer twice = k * K_dot_omega + k * k * omega_sq;
    const Integer g = exact_div(twice + Integer(2), Integer(2), "adjunction genus");
    if (g.sign() < 0) throw InvalidArgument("adjunction gives negative genus " + g.str());
    return g;
}

std::vector<Integer> first_homology(const TwistWord& w) {
    const auto n = static_cast<Eigen::Index>(2 * w.genus());
    std::vector<bool> used(w.alphabet().size(), false);
    for (const Letter& l : w.letters()) used[l.curve] = true;
    std::vector<const Curve*> columns;
    for (std::size_t i = 0; i < used.size(); ++i)
        if (used[i] && !w.alphabet().curve(i).separating) columns.push_back(&w.alphabet().curve(i));
    IntMatrix m(n, static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = columns[j]->homology;
    return cokernel_invariants(m);
}

InvariantReport compute_invariants(const FibrationData& data) {
    if (data.word.genus() != data.genus)
        throw GenusMismatch("fibration genus " + std::to_string(data.genus) + " but the word lives on genus " +
                            std::to_string(data.word.genus()));
    if (data.base_points < 0) throw InvalidArgument("negative base-point count");

    InvariantReport r;
    r.genus = data.genus;
    r.base_points = data.base_points;
    r.census = classify_twists(data.word);
    r.e = euler_char(data.genus, r.census.total, data.base_points);
    r.h1 = first_homology(data.word);
    r.signature_route = to_string(data.signature.kind);

    const Integer b(data.base_points);
    switch (data.signature.kind) {
        case SignatureKind::endo_g3: {
            if (data.genus != 3) throw InvalidArgument("the hyperelliptic signature formula needs genus 3");
            r.sigma = signature_genus3_hyperelliptic(r.census.n, census_count(r.census, 1)) + b;
            break;
        }
        case SignatureKind::genus2_formula: {
            if (data.genus != 2) throw InvalidArgument("the genus-2 signature formula needs genus 2");
            r.sigma = signature_genus2(r.census.n, census_count(r.census, 1), data.base_points);
            r.notes.push_back("genus-2 signature taken as -(3n+s)/5 + b; the printed formula has +3n/5");
            break;
        }
        case SignatureKind::user_supplied: r.sigma = data.signature.sigma; break;
        case SignatureKind::chain_derived: {
            if (!data.signature.origin) throw InvalidArgument("chain-derived signature without an origin report");
            InvariantReport via = *data.signature.origin;
            if (via.genus != data.genus || via.base_points != data.base_points)
                throw InvalidArgument("origin report has different genus or base points");
            const int steps = data.signature.t_steps;
            for (int i = 0; i < (steps < 0 ? -steps : steps); ++i)
                via = T_effect(via, steps < 0 ? Direction::backward : Direction::forward);
            if (!(via.census == r.census) || via.e != r.e)
                throw InvalidArgument("origin report moved by " + std::to_string(steps) +
                                      " chain substitutions does not match the word's census");
            r.sigma = via.sigma;
            r.signature_route += " (" + via.signature_route + ", " + std::to_string(steps) + " T)";
            break;
        }
    }
    finish(r);
    return r;
}

InvariantReport T_effect(const InvariantReport& report, Direction direction) {
    const Integer sign(direction == Direction::forward ? 1 : -1);
    InvariantReport r = report;
    r.e += sign * Integer(10);
    r.sigma -= sign * Integer(6);
    r.census.n += sign * Integer(10);
    r.census.total += sign * Integer(10);
    if (r.census.n.sign() < 0) throw InvalidArgument("T^-1 needs at least ten irreducible fibres");
    r.h1.reset();
    finish(r);
    return r;
}

InvariantReport fibre_sum_invariants(const InvariantReport& r1, const InvariantReport& r2, int genus) {
    if (r1.genus != genus || r2.genus != genus)
        throw GenusMismatch("fibre sum of genus " + std::to_string(r1.genus) + " and " + std::to_string(r2.genus) +
                            " reports at genus " + std::to_string(genus));
    if (r1.base_points != 0 || r2.base_points != 0) throw InvalidArgument("fibre sums are defined for fibrations (b = 0)");
    InvariantReport r;
    r.genus = genus;
    r.sigma = r1.sigma + r2.sigma;
    r.e = r1.e + r2.e - Integer(2) * Integer(2 - 2 * genus);
    r.census.n = r1.census.n + r2.census.n;
    r.census.total = r1.census.total + r2.census.total;
    r.census.s_by_genus = r1.census.s_by_genus;
    for (const auto& [h, c] : r2.census.s_by_genus) r.census.s_by_genus[h] += c;
    r.signature_route = "fibre_sum";
    finish(r);
    return r;
}

InvariantReport report_from_characteristics(int genus, const Integer& e, const Integer& sigma, int base_points) {
    InvariantReport r;
    r.genus = genus;
    r.base_points = base_points;
    r.e = e;
    r.sigma = sigma;
    r.census.n = e - Integer(4 - 4 * genus) + Integer(base_points);
    if (r.census.n.sign() < 0) throw InvalidArgument("Euler characteristic below that of a surface bundle");
    r.census.total = r.census.n;
    r.signature_route = "user_supplied";
    finish(r);
    return r;
}

}  // namespace lefschetz
