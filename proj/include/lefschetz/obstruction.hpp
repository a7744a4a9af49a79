// Decision procedures on fibration data: the genus-3 non-holomorphicity test,
// reducible-fibre certificates, genus-2 geography and section-square bounds.
//
// Verdicts are certificates or silence. A gate that fails to certify says
// nothing about the opposite conclusion.
#pragma once

#include "lefschetz/errors.hpp"
#include "lefschetz/exact.hpp"
#include "lefschetz/moduli_pairing.hpp"
#include "lefschetz/word_engine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lefschetz {

struct ObstructionVerdict {
    bool hyperelliptic_possible = true;
    Rational pairing_value;
    bool non_holomorphic = false;
    std::vector<std::string> reasons;
};

/// Genus-3 fibration with (e, sigma) and only irreducible fibres. The
/// hyperelliptic test is 7 | e + 1, or 14 | e + 8 (14 dividing the number of
/// irreducible fibres) with the mod-14 refinement. Pairing (9 sigma + 5e + 40)/4.
/// Throws RefusesVerdict when has_reducible is set.
ObstructionVerdict genus3_obstruction(const Integer& e, const Integer& sigma, bool has_reducible,
                                      bool refine_mod14 = false);

/// True when a pencil in degree k is certified to have no reducible fibres:
/// k even and (even intersection form or 2-divisible K).
bool reducibility_parity_certificate(bool form_even, bool K_even, const Integer& k);

struct GateResult {
    bool feasible = true;
    std::string reason;
};

/// Checks a candidate split k[C] = D1 + D2 with D1.D2 = 1 on a Kaehler surface.
/// Returns feasible = false with the first contradiction found; k < 2 or
/// k^2 C^2 <= 4 are outside the gate and return feasible = true.
GateResult hodge_index_reducibility_gate(const Integer& D1_sq, const Integer& D2_sq, const Integer& k,
                                         const Integer& C_sq);

enum class GeographyBranch { K_zero, K_omega_one, b_plus_one };
std::string to_string(GeographyBranch b);

struct GeographyCase {
    GeographyBranch branch = GeographyBranch::K_zero;
    Integer n;
    Integer s;
    /// Known on the b_plus_one branch only.
    std::optional<int> b1;
    /// Number of base points of the pencil.
    Integer omega_sq;
    Integer e;
    Integer sigma;
    Integer c1_sq;
    std::optional<std::string> homeo_word;
    /// Empty, or "no model word known" for lattice solutions without a known realising word.
    std::string label;

    friend bool operator==(const GeographyCase&, const GeographyCase&) = default;
};

struct GeographyCandidate {
    GeographyCase entry;
    /// Empty for accepted cases.
    std::string excluded_by;
};

/// Every lattice point examined by the enumeration, with the reason for each exclusion.
std::vector<GeographyCandidate> genus2_geography_candidates();
/// The accepted cases, in branch order.
std::vector<GeographyCase> genus2_geography();

enum class SectionBound { case1, case2, violation };
std::string to_string(SectionBound v);

/// m = (delta0 + 2 delta1)/10. case1 if 3|s.s| >= m + delta1, else case2 if
/// 4|s.s| = m + delta1, else violation. Throws NonDivisible when 10 does not
/// divide delta0 + 2 delta1.
SectionBound genus2_section_bound(const Integer& delta0, const Integer& delta1, const Integer& s_dot_s);

/// Replaces one reducible fibre of split genus h by (4h+2)2h irreducible ones.
/// Throws NoSuchFibre if the census has none.
TwistCensus trade_reducible(const TwistCensus& census, int h);

/// False (obstructed) iff base_points = 1 and delta1 >= 1.
bool pencil_duality_check(const Integer& base_points, const Integer& delta1);

enum class CoveringVerdictKind { unbounded_growth, bounded, identically_zero };
std::string to_string(CoveringVerdictKind v);

struct CoveringTerm {
    int k = 0;
    Integer genus;
    /// Empty when the genus is even or below 3 (no covering divisor there).
    std::optional<Rational> value;
};

struct CoveringVerdict {
    CoveringVerdictKind kind = CoveringVerdictKind::bounded;
    std::vector<CoveringTerm> terms;
    /// Beyond this k the terms are monotone and of fixed sign.
    Integer threshold;
};

/// Evaluates the covering sequence over even k in [2, kmax] and classifies it
/// from the exact polynomial in k the terms follow. The window is widened past
/// kmax when needed so that growth is visible in the returned terms.
CoveringVerdict covering_boundedness(const CoveringInputs& in, int kmax);

}  // namespace lefschetz
