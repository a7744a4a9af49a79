// Topological invariants of the total space of a fibration or pencil.
//
// Reports describe the pencil's total space X when base_points > 0 and the
// fibration otherwise. The blown-up fibration has e + b and sigma - b.
#pragma once

#include "lefschetz/errors.hpp"
#include "lefschetz/exact.hpp"
#include "lefschetz/word_engine.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lefschetz {

struct InvariantReport {
    int genus = 1;
    int base_points = 0;
    Integer e;
    Integer sigma;
    Integer c1_sq;
    Integer c2;
    Rational lambda;
    TwistCensus census;
    /// Invariant factors of H_1 (see first_homology); unknown after formula-level operations.
    std::optional<std::vector<Integer>> h1;
    /// How sigma was obtained.
    std::string signature_route;
    std::vector<std::string> notes;

    Integer sigma_fibration() const { return sigma - Integer(base_points); }
    Integer e_fibration() const { return e + Integer(base_points); }

    friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

enum class SignatureKind { endo_g3, genus2_formula, user_supplied, chain_derived };

struct SignatureSource {
    SignatureKind kind = SignatureKind::user_supplied;
    /// user_supplied: signature of the total space described by the report.
    Integer sigma;
    /// chain_derived: a report for a word related to this one by chain substitutions,
    /// and the net number of forward T moves from that word to this one.
    std::optional<InvariantReport> origin;
    int t_steps = 0;

    static SignatureSource endo() { return {SignatureKind::endo_g3, {}, {}, 0}; }
    static SignatureSource genus2() { return {SignatureKind::genus2_formula, {}, {}, 0}; }
    static SignatureSource user(Integer s) { return {SignatureKind::user_supplied, std::move(s), {}, 0}; }
    static SignatureSource derived(InvariantReport from, int steps) {
        return {SignatureKind::chain_derived, {}, std::move(from), steps};
    }
};

std::string to_string(SignatureKind k);

struct FibrationData {
    int genus;
    TwistWord word;
    int base_points = 0;
    SignatureSource signature;
};

/// 4 - 4g + delta - b.
Integer euler_char(int genus, const Integer& delta, int base_points);

/// (-4i + r) / 7. Throws NonIntegral when 7 does not divide -4i + r, which
/// rules out a hyperelliptic genus-3 fibration.
Integer signature_genus3_hyperelliptic(const Integer& irreducible, const Integer& reducible);

/// -(3n + s)/5 + b. The sign on n is the opposite of the one printed in the
/// source; this form gives sigma(K3) = -16 and the n + 7s = 30 constraint.
/// Throws NonIntegral when 5 does not divide 3n + s.
Integer signature_genus2(const Integer& n, const Integer& s, int base_points);

/// (sigma_fib + total) / 4.
Rational hodge_lambda(const Integer& sigma_fibration, const TwistCensus& census);

/// (c1^2, c2) = (2e + 3 sigma, e).
std::pair<Integer, Integer> chern_numbers(const Integer& e, const Integer& sigma);

/// Genus of a smooth curve in k[omega]: (k K.w + k^2 w^2 + 2) / 2.
/// Throws NonIntegral for an odd numerator, InvalidArgument for k < 1 or negative genus.
Integer adjunction_genus(const Integer& K_dot_omega, const Integer& omega_sq, const Integer& k);

/// Invariant factors of Z^{2g} / span of the letters' homology classes;
/// 0 stands for a free summand, an empty list for the trivial group.
std::vector<Integer> first_homology(const TwistWord& w);

/// Throws InvalidArgument when the data violate the source's preconditions
/// (wrong genus, negative letters, mismatched derivation origin).
InvariantReport compute_invariants(const FibrationData& data);

/// Effect of one chain substitution: forward is e + 10, sigma - 6, c1^2 + 2,
/// n + 10, lambda + 1. H_1 becomes unknown.
InvariantReport T_effect(const InvariantReport& report, Direction direction);

/// Fibre sum of two fibrations of the same genus:
/// sigma = sigma1 + sigma2, e = e1 + e2 - 2 e(F).
InvariantReport fibre_sum_invariants(const InvariantReport& r1, const InvariantReport& r2, int genus);

/// A report known only through (e, sigma); all critical fibres are taken to be irreducible.
InvariantReport report_from_characteristics(int genus, const Integer& e, const Integer& sigma, int base_points = 0);

}  // namespace lefschetz
