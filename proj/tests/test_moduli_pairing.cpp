#include "lefschetz/corpus.hpp"
#include "lefschetz/moduli_pairing.hpp"

#include <doctest.h>

#include <random>

using namespace lefschetz;

namespace {

Rational q(long long p, long long d = 1) { return Rational(Integer(p), Integer(d)); }

SphereData genus3_sphere(const Integer& sigma_fib, const Integer& delta0) {
    SphereData s;
    s.genus = 3;
    s.lambda = Rational(sigma_fib + delta0, Integer(4));
    s.delta = {delta0, Integer(0)};
    return s;
}

}  // namespace

TEST_CASE("hyperelliptic classes") {
    const DivisorClass f = hyperelliptic_class(Normalization::functor);
    CHECK(f.lambda == q(9));
    CHECK(f.delta == std::vector<Rational>{q(-1), q(-3)});
    const DivisorClass c = hyperelliptic_class(Normalization::chow);
    CHECK(c.lambda == q(18));
    CHECK(c.delta == std::vector<Rational>{q(-2), q(-3)});
    // doubling the functor class differs from the Chow class only in delta_1
    DivisorClass doubled = q(2) * f;
    CHECK(doubled.lambda == c.lambda);
    CHECK(doubled.delta[0] == c.delta[0]);
    CHECK(doubled.delta[1] != c.delta[1]);
}

TEST_CASE("Brill-Noether classes") {
    CHECK(brill_noether_constant(2) == q(3, 2));
    CHECK(brill_noether_constant(3) == q(1));
    const DivisorClass g3 = brill_noether_class(3);
    CHECK(g3.lambda == q(9));
    CHECK(g3.delta == std::vector<Rational>{q(-1), q(-3)});
    CHECK(g3 == hyperelliptic_class(Normalization::functor));
    const DivisorClass g5 = brill_noether_class(5);
    CHECK(g5.lambda == q(8));
    CHECK(g5.delta == std::vector<Rational>{q(-1), q(-4), q(-6)});
    CHECK_THROWS_AS(brill_noether_class(4), InvalidArgument);
    CHECK_THROWS_AS(brill_noether_class(1), InvalidArgument);
}

TEST_CASE("covering divisors") {
    const DivisorClass c = covering_divisor(3, 4);
    CHECK(c.lambda == q(6));
    CHECK(c.delta[0] == q(-2, 3));
    CHECK(c.psi == std::vector<Rational>(4, q(-1)));
    CHECK(covering_divisor(5, 9).psi.size() == 9);
    CHECK(covering_divisor(5, 9).lambda == q(8));

    SphereData s;
    s.genus = 3;
    s.markings = 4;
    s.lambda = q(5);
    s.delta = {Integer(12), Integer(0)};
    s.psi.assign(4, Integer(0));
    SphereData bare = s;
    bare.markings = 0;
    bare.psi.clear();
    CHECK(pair(c, s) == pair(brill_noether_class(3), bare) / brill_noether_constant(2));
}

TEST_CASE("Weierstrass class") {
    const DivisorClass w = weierstrass_class();
    CHECK(w.genus == 2);
    CHECK(w.markings == 1);
    CHECK(w.omega_rd == q(3));
    CHECK(w.lambda == q(-1));
    CHECK(w.delta[1] == q(-1));
    SphereData s;
    s.genus = 2;
    s.markings = 1;
    s.lambda = q(7, 4);
    s.delta = {Integer(3), Integer(0)};
    s.psi = {Integer(1)};
    s.omega_rd = Integer(1);
    CHECK(pair(w, s) == q(3) - q(7, 4));
}

TEST_CASE("pairings on corpus spheres") {
    const Corpus& c = Corpus::bundled();
    const DivisorClass hyp = hyperelliptic_class();
    const SphereData w = sphere_from_report(c.report(c.get("fuller_W")));
    CHECK(w.lambda == q(8));
    CHECK(w.delta == std::vector<Integer>{Integer(74), Integer(0)});
    CHECK(pair(hyp, w) == q(-2));
    const SphereData h = sphere_from_report(c.report(c.get("horikawa_g3")));
    CHECK(pair(hyp, h) == q(-3));
    CHECK(pair(hyp, w) - pair(hyp, h) == -T_pairing_delta(q(9), q(1)));
    CHECK(pair(DivisorClass::zero(3), w) == q(0));
    CHECK_THROWS_AS(pair(weierstrass_class(), w), InvalidArgument);
}

TEST_CASE("sections and markings") {
    const Corpus& c = Corpus::bundled();
    const InvariantReport r = c.report(c.get("g2_word3"));
    const SphereData s = sphere_from_report(r);
    CHECK(s.markings == 1);
    CHECK(s.psi == std::vector<Integer>{Integer(1)});
    CHECK(s.omega_rd == Integer(1));
    CHECK(sphere_from_report(r, Integer(-3)).omega_rd == Integer(3));
}

TEST_CASE("four times the hyperelliptic pairing is 9 sigma + 5 e + 40") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> delta(0, 400);
    std::uniform_int_distribution<int> sig(-300, 100);
    const DivisorClass hyp = hyperelliptic_class();
    for (int t = 0; t < 200; ++t) {
        const Integer d0(delta(rng));
        const Integer sigma(sig(rng));
        const Integer e = d0 - Integer(8);  // genus 3, no base points
        CHECK(q(4) * pair(hyp, genus3_sphere(sigma, d0)) == Rational(Integer(9) * sigma + Integer(5) * e + Integer(40)));
    }
}

TEST_CASE("T shifts a lambda - b delta_0 pairings by b - 10 a") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> num(-50, 50);
    std::uniform_int_distribution<int> den(1, 12);
    const Corpus& c = Corpus::bundled();
    const InvariantReport w = c.report(c.get("fuller_W"));
    const SphereData before = sphere_from_report(w);
    const SphereData after = sphere_from_report(T_effect(w, Direction::forward));
    for (int t = 0; t < 100; ++t) {
        const Rational a = q(num(rng), den(rng));
        const Rational b = q(num(rng), den(rng));
        DivisorClass cls = DivisorClass::zero(3);
        cls.lambda = a;
        cls.delta[0] = -b;
        CHECK(pair(cls, after) - pair(cls, before) == T_pairing_delta(a, b));
    }
    CHECK(T_pairing_delta(q(9), q(1)) == q(-1));
    CHECK(T_pairing_delta(q(10), q(1)) == q(0));
    CHECK(T_pairing_delta(q(0), q(0)) == q(0));
}

TEST_CASE("chow normalisation warns about delta_1") {
    SphereData s = genus3_sphere(Integer(-4), Integer(10));
    CHECK(pairing_warnings(hyperelliptic_class(Normalization::chow), s).empty());
    s.delta[1] = Integer(2);
    CHECK_FALSE(pairing_warnings(hyperelliptic_class(Normalization::chow), s).empty());
    CHECK(pairing_warnings(hyperelliptic_class(Normalization::functor), s).empty());
}

TEST_CASE("divisor class files") {
    for (const DivisorClass& c : {hyperelliptic_class(), hyperelliptic_class(Normalization::chow), weierstrass_class(),
                                  covering_divisor(5, 3)})
        CHECK(parse_divisor_class(format_divisor_class(c)) == c);
    CHECK(named_divisor_class("brill_noether:5") == brill_noether_class(5));
    CHECK(named_divisor_class("covering:3:2") == covering_divisor(3, 2));
    CHECK_THROWS_AS(named_divisor_class("nope"), InvalidArgument);
    try {
        parse_divisor_class("genus 3\nlambda 9\ndelta7 1\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("covering sequence pipeline") {
    // K.w = 0 and c1^2 = 0 leave ((1 - g)/12) c2
    const CoveringInputs flat{Integer(0), Integer(2), Integer(0), Integer(24)};
    for (int k : {2, 4, 6}) {
        const CoveringSphere s = covering_sphere(flat, k);
        CHECK(covering_sequence_term(flat, k) == Rational(Integer(1) - s.genus, Integer(12)) * q(24));
    }
    const CoveringInputs zero{Integer(0), Integer(2), Integer(0), Integer(0)};
    CHECK(covering_sequence_term(zero, 4) == q(0));
    CHECK_THROWS_AS(covering_sphere(zero, 3), InvalidArgument);

    // the pipeline value matches the k-form on a grid
    for (int kw = 0; kw <= 2; ++kw)
        for (int w2 : {1, 2})
            for (int c1 : {0, 3, 6})
                for (int c2 : {0, 12, 24}) {
                    const CoveringInputs in{Integer(kw), Integer(w2), Integer(c1), Integer(c2)};
                    for (int k = 2; k <= 8; k += 2) {
                        const Integer g = adjunction_genus(in.K_dot_omega, in.omega_sq, Integer(k));
                        if (!g.divisible_by(Integer(2)) && g >= Integer(3))
                            CHECK(covering_sequence_term(in, k) == covering_k_form(in, g, k));
                    }
                }
}

TEST_CASE("closed form and k-form agree when g = 2k - 1") {
    const CoveringInputs in{Integer(3), Integer(5), Integer(7), Integer(11)};
    for (int k = 2; k <= 10; ++k) {
        const Integer g(2 * k - 1);
        CHECK(covering_closed_form(in, g) == covering_k_form(in, g, k));
    }
}
