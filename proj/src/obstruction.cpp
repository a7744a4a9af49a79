#include "lefschetz/obstruction.hpp"

#include "lefschetz/invariants.hpp"

#include <algorithm>

namespace lefschetz {

ObstructionVerdict genus3_obstruction(const Integer& e, const Integer& sigma, bool has_reducible, bool refine_mod14) {
    if (has_reducible)
        throw RefusesVerdict("the genus-3 obstruction applies only to fibrations with irreducible fibres");
    ObstructionVerdict v;
    if (refine_mod14) {
        const Integer irreducible = e + Integer(8);
        v.hyperelliptic_possible = irreducible.divisible_by(14);
        v.reasons.push_back(std::string("mod14: 14 ") + (v.hyperelliptic_possible ? "divides" : "does not divide") +
                            " the irreducible fibre count e+8 = " + irreducible.str());
    } else {
        const Integer e1 = e + Integer(1);
        v.hyperelliptic_possible = e1.divisible_by(7);
        v.reasons.push_back(std::string("mod7: 7 ") + (v.hyperelliptic_possible ? "divides" : "does not divide") +
                            " e+1 = " + e1.str());
    }
    v.pairing_value = Rational(Integer(9) * sigma + Integer(5) * e + Integer(40), Integer(4));
    v.reasons.push_back("pairing: (9 sigma + 5e + 40)/4 = " + v.pairing_value.str() +
                        (v.pairing_value.sign() < 0 ? " < 0" : " >= 0"));
    v.reasons.push_back("precondition: all singular fibres irreducible (supplied)");
    v.non_holomorphic = !v.hyperelliptic_possible && v.pairing_value.sign() < 0;
    return v;
}

bool reducibility_parity_certificate(bool form_even, bool K_even, const Integer& k) {
    return k.divisible_by(2) && (form_even || K_even);
}

GateResult hodge_index_reducibility_gate(const Integer& D1_sq, const Integer& D2_sq, const Integer& k,
                                         const Integer& C_sq) {
    if (k < Integer(2)) return {true, "not applicable: k < 2"};
    const Integer kc = k * k * C_sq;
    if (kc <= Integer(4)) return {true, "not applicable: k^2 C^2 <= 4"};
    if (D1_sq + D2_sq != kc - Integer(2)) return {false, "sum: D1^2 + D2^2 must equal k^2 C^2 - 2 = " + (kc - Integer(2)).str()};
    // One of the squares is positive since the sum exceeds 2; call it D1.
    Integer a = D1_sq, b = D2_sq;
    if (a.sign() <= 0) std::swap(a, b);
    const Integer product = a * b;
    if (product == Integer(1)) return {false, "case1: D1 = D1^2 D2 forces D1^2 = D2^2 = 1, but their sum exceeds 2"};
    if (product >= Integer(1)) return {false, "hodge_index: (D1^2)(D2^2) must be < 1"};
    const Integer q = Integer(1) + b;
    if (q.sign() <= 0) return {false, "positivity: 1 + D2^2 = " + q.str() + " must be > 0"};
    if (!q.divisible_by(k)) return {false, "divisibility: k = " + k.str() + " must divide 1 + D2^2 = " + q.str()};
    return {true, "no contradiction"};
}

std::string to_string(GeographyBranch b) {
    switch (b) {
        case GeographyBranch::K_zero: return "K_zero";
        case GeographyBranch::K_omega_one: return "K_omega_one";
        case GeographyBranch::b_plus_one: return "b_plus_one";
    }
    return "?";
}

namespace {

// Genus-2 pencil with n + s critical fibres and b base points.
GeographyCase make_case(GeographyBranch branch, int n, int s, int b) {
    GeographyCase c;
    c.branch = branch;
    c.n = n;
    c.s = s;
    c.omega_sq = b;
    c.e = euler_char(2, c.n + c.s, b);
    c.sigma = signature_genus2(c.n, c.s, b);
    c.c1_sq = chern_numbers(c.e, c.sigma).first;
    return c;
}

// Common filters, returning the first failed one.
std::string common_exclusion(const GeographyCase& c) {
    if (!(c.n + Integer(2) * c.s).divisible_by(10)) return "abelianization: 10 does not divide n + 2s";
    if (!(Integer(3) * c.n + c.s).divisible_by(5)) return "signature: 5 does not divide 3n + s";
    if (c.n + c.s < Integer(7)) return "minimum: a genus-2 Lefschetz fibration has at least 7 singular fibres";
    return {};
}

}  // namespace

std::vector<GeographyCandidate> genus2_geography_candidates() {
    std::vector<GeographyCandidate> out;

    // K = 0, w^2 = 2: c1^2 = 0 gives n + 7s = 30.
    for (int s = 0; 7 * s <= 30; ++s) {
        GeographyCandidate cand{make_case(GeographyBranch::K_zero, 30 - 7 * s, s, 2), {}};
        cand.excluded_by = common_exclusion(cand.entry);
        if (cand.excluded_by.empty() && s == 0) cand.entry.homeo_word = "g2_word2";
        out.push_back(std::move(cand));
    }
    // K.w = 1, w^2 = 1: r = 1 gives n + 7s = 40.
    for (int s = 0; 7 * s <= 40; ++s) {
        GeographyCandidate cand{make_case(GeographyBranch::K_omega_one, 40 - 7 * s, s, 1), {}};
        cand.excluded_by = common_exclusion(cand.entry);
        if (cand.excluded_by.empty()) {
            if (s == 0) cand.entry.homeo_word = "g2_word3";
            else cand.entry.label = "no model word known";
        }
        out.push_back(std::move(cand));
    }
    // b+ = 1: sigma + e = 4 - 2 b1 gives n + 2s = 20 - 5 b1; K.w + w^2 = 2 with K.w >= 0, w^2 >= 1.
    for (int b1 : {0, 2}) {
        for (int w2 : {1, 2}) {
            for (int s = 0; 2 * s <= 20 - 5 * b1; ++s) {
                GeographyCandidate cand{make_case(GeographyBranch::b_plus_one, 20 - 5 * b1 - 2 * s, s, w2), {}};
                cand.entry.b1 = b1;
                cand.excluded_by = common_exclusion(cand.entry);
                if (cand.excluded_by.empty() && b1 == 2 && s == 0)
                    cand.excluded_by = "b1: s = 0 gives a simply connected total space, so b1 = 0";
                if (cand.excluded_by.empty() && cand.entry.sigma > Integer(1))
                    cand.excluded_by = "b_minus: 1 - sigma must be non-negative";
                if (cand.excluded_by.empty() && s == 0) cand.entry.homeo_word = "g2_word1";
                out.push_back(std::move(cand));
            }
        }
    }
    return out;
}

std::vector<GeographyCase> genus2_geography() {
    std::vector<GeographyCase> out;
    for (auto& c : genus2_geography_candidates())
        if (c.excluded_by.empty()) out.push_back(std::move(c.entry));
    return out;
}

std::string to_string(SectionBound v) {
    switch (v) {
        case SectionBound::case1: return "case1";
        case SectionBound::case2: return "case2";
        case SectionBound::violation: return "violation";
    }
    return "?";
}

SectionBound genus2_section_bound(const Integer& delta0, const Integer& delta1, const Integer& s_dot_s) {
    const Integer total = delta0 + Integer(2) * delta1;
    if (!total.divisible_by(10))
        throw NonDivisible("delta0 + 2 delta1 = " + total.str() + " is not divisible by 10");
    const Integer m = total / Integer(10);
    const Integer ss = abs(s_dot_s);
    if (Integer(3) * ss >= m + delta1) return SectionBound::case1;
    if (Integer(4) * ss == m + delta1) return SectionBound::case2;
    return SectionBound::violation;
}

TwistCensus trade_reducible(const TwistCensus& census, int h) {
    auto it = census.s_by_genus.find(h);
    if (it == census.s_by_genus.end() || it->second.sign() <= 0)
        throw NoSuchFibre("no reducible fibre of split genus " + std::to_string(h));
    TwistCensus out = census;
    const Integer added((4 * h + 2) * 2 * h);
    out.s_by_genus[h] -= 1;
    if (out.s_by_genus[h].is_zero()) out.s_by_genus.erase(h);
    out.n += added;
    out.total += added - Integer(1);
    return out;
}

bool pencil_duality_check(const Integer& base_points, const Integer& delta1) {
    return !(base_points == Integer(1) && delta1 >= Integer(1));
}

std::string to_string(CoveringVerdictKind v) {
    switch (v) {
        case CoveringVerdictKind::unbounded_growth: return "unbounded_growth";
        case CoveringVerdictKind::bounded: return "bounded";
        case CoveringVerdictKind::identically_zero: return "identically_zero";
    }
    return "?";
}

namespace {

// Coefficients (constant first) of the covering term as a polynomial in k,
// after substituting g = (K.w k + w^2 k^2 + 2)/2.
std::vector<Rational> covering_polynomial(const CoveringInputs& in) {
    const Rational kw(in.K_dot_omega), w2(in.omega_sq), c1(in.c1_sq), c2(in.c2);
    std::vector<Rational> p{
        c1 / 3,
        Rational(16) * kw / 12 + kw * (c1 - c2) / 24,
        kw * kw / 12 + w2 * (c1 - c2) / 24,
        w2 * kw / 12,
    };
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

// 1 + max |a_i / a_n|, an upper bound for the real roots.
Rational cauchy_bound(const std::vector<Rational>& p) {
    Rational m(0);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) m = std::max(m, abs(p[i] / p.back()));
    return m + 1;
}

Integer ceil_of(const Rational& r) {
    const Integer fl = floor_div(r.numerator(), r.denominator());
    return Rational(fl) == r ? fl : fl + Integer(1);
}

std::optional<Rational> defined_term(const CoveringInputs& in, int k) {
    try {
        return covering_sequence_term(in, k);
    } catch (const InvalidArgument&) {
        return std::nullopt;
    } catch (const NonIntegral&) {
        return std::nullopt;
    }
}

}  // namespace

CoveringVerdict covering_boundedness(const CoveringInputs& in, int kmax) {
    if (kmax < 2 || kmax % 2 != 0) throw InvalidArgument("kmax must be even and >= 2");
    CoveringVerdict v;
    const auto p = covering_polynomial(in);
    if (p.empty()) v.kind = CoveringVerdictKind::identically_zero;
    else if (p.size() >= 2 && p.back().sign() > 0) v.kind = CoveringVerdictKind::unbounded_growth;
    else v.kind = CoveringVerdictKind::bounded;

    if (p.size() >= 2) {
        std::vector<Rational> dp;
        for (std::size_t i = 1; i < p.size(); ++i) dp.push_back(p[i] * Rational(static_cast<int>(i)));
        Rational bound = cauchy_bound(p);
        if (dp.size() >= 2) bound = std::max(bound, cauchy_bound(dp));
        v.threshold = ceil_of(bound);
    }

    auto add = [&](int k) {
        CoveringTerm t;
        t.k = k;
        try {
            t.genus = adjunction_genus(in.K_dot_omega, in.omega_sq, Integer(k));
        } catch (const Error&) {
            t.genus = Integer(-1);
        }
        t.value = defined_term(in, k);
        v.terms.push_back(std::move(t));
    };
    for (int k = 2; k <= kmax; k += 2) add(k);

    if (v.kind == CoveringVerdictKind::unbounded_growth) {
        auto grown = [&] {
            const CoveringTerm* first = nullptr;
            const CoveringTerm* last = nullptr;
            for (const auto& t : v.terms)
                if (t.value) {
                    if (!first) first = &t;
                    last = &t;
                }
            return first && last != first && *last->value > *first->value && Integer(last->k) >= v.threshold;
        };
        constexpr int max_extra = 4096;
        for (int k = kmax + 2, extra = 0; !grown() && extra < max_extra; k += 2, ++extra) add(k);
    }
    return v;
}

}  // namespace lefschetz
