#include "lefschetz/corpus.hpp"
#include "lefschetz/invariants.hpp"

#include <doctest.h>

using namespace lefschetz;

namespace {

TwistWord W(std::string_view text, std::string_view alphabet = "standard:3") {
    return parse_word(text, shared_alphabet(alphabet));
}

}  // namespace

TEST_CASE("euler characteristic") {
    CHECK(euler_char(3, Integer(74), 0) == Integer(66));
    CHECK(euler_char(2, Integer(30), 2) == Integer(24));
    CHECK(euler_char(4, Integer(0), 0) == Integer(4 - 16));
}

TEST_CASE("genus-3 hyperelliptic signature") {
    CHECK(signature_genus3_hyperelliptic(Integer(84), Integer(0)) == Integer(-48));
    CHECK(signature_genus3_hyperelliptic(Integer(0), Integer(0)) == Integer(0));
    CHECK_THROWS_AS(signature_genus3_hyperelliptic(Integer(74), Integer(0)), NonIntegral);
}

TEST_CASE("genus-2 signature") {
    CHECK(signature_genus2(Integer(30), Integer(0), 2) == Integer(-16));
    CHECK(signature_genus2(Integer(6), Integer(2), 0) == Integer(-4));
    CHECK(signature_genus2(Integer(0), Integer(0), 0) == Integer(0));
    CHECK_THROWS_AS(signature_genus2(Integer(7), Integer(0), 0), NonIntegral);
}

TEST_CASE("hodge class and chern numbers") {
    TwistCensus h;
    h.n = Integer(84);
    h.total = Integer(84);
    CHECK(hodge_lambda(Integer(-48), h) == Rational(9));
    TwistCensus w;
    w.n = Integer(74);
    w.total = Integer(74);
    CHECK(hodge_lambda(Integer(-42), w) == Rational(8));
    CHECK(hodge_lambda(Integer(0), TwistCensus{}) == Rational(0));
    CHECK(chern_numbers(Integer(24), Integer(-16)) == std::pair{Integer(0), Integer(24)});
    CHECK(chern_numbers(Integer(66), Integer(-42)) == std::pair{Integer(6), Integer(66)});
    CHECK(chern_numbers(Integer(0), Integer(0)) == std::pair{Integer(0), Integer(0)});
}

TEST_CASE("adjunction genus") {
    CHECK(adjunction_genus(Integer(0), Integer(2), Integer(1)) == Integer(2));
    CHECK(adjunction_genus(Integer(1), Integer(1), Integer(1)) == Integer(2));
    CHECK(adjunction_genus(Integer(0), Integer(2), Integer(2)) == Integer(5));
    CHECK_THROWS_AS(adjunction_genus(Integer(1), Integer(0), Integer(1)), NonIntegral);
    CHECK_THROWS(adjunction_genus(Integer(-9), Integer(1), Integer(1)));
}

TEST_CASE("first homology") {
    CHECK(first_homology(W("(a1 b1 a2 b2 a3 b3)^14")).empty());
    CHECK(first_homology(W("1")) == std::vector<Integer>(6, Integer(0)));
    CHECK(first_homology(W("a1", "standard:1")) == std::vector<Integer>{Integer(0)});
    CHECK(first_homology(W("a1 b1 a2 b2 a3 b3 a1")).empty());
}

TEST_CASE("corpus reports match their expected values") {
    const Corpus& c = Corpus::bundled();
    int checked = 0;
    for (const auto& e : c.entries()) {
        if (!e.is_fibration()) continue;
        const InvariantReport r = c.report(e);
        REQUIRE(e.expected.has_value());
        CHECK_MESSAGE(Corpus::compare(r, *e.expected).empty(), e.id);
        // c1^2 = 2e + 3 sigma and lambda = (sigma_fib + delta)/4
        CHECK(r.c1_sq == Integer(2) * r.e + Integer(3) * r.sigma);
        CHECK(r.lambda * Rational(4) == Rational(r.sigma_fibration() + r.census.total));
        CHECK((r.lambda * Rational(4)).is_integer());
        if (r.census.total > Integer(0)) CHECK(r.lambda > Rational(0));
        CHECK(r.h1.has_value());
        CHECK(r.h1->empty());
        ++checked;
    }
    CHECK(checked == 5);
}

TEST_CASE("W is one backward T from Horikawa") {
    const Corpus& c = Corpus::bundled();
    const InvariantReport h = c.report(c.get("horikawa_g3"));
    CHECK(h.e == Integer(76));
    CHECK(h.sigma == Integer(-48));
    const InvariantReport w = T_effect(h, Direction::backward);
    CHECK(w.e == Integer(66));
    CHECK(w.sigma == Integer(-42));
    CHECK(w.c1_sq == Integer(6));
    CHECK(w.census.total == Integer(74));
    CHECK(T_effect(w, Direction::forward).e == h.e);
    CHECK(T_effect(w, Direction::forward).sigma == h.sigma);
    CHECK(T_effect(w, Direction::forward).lambda == h.lambda);

    const InvariantReport z = report_from_characteristics(3, Integer(0), Integer(0));
    const InvariantReport t = T_effect(z, Direction::forward);
    CHECK(t.e == Integer(10));
    CHECK(t.sigma == Integer(-6));
    CHECK(t.c1_sq == Integer(2));
}

TEST_CASE("the derived signature route checks the word against its origin") {
    const Corpus& c = Corpus::bundled();
    const InvariantReport h = c.report(c.get("horikawa_g3"));
    const FibrationData w = c.fibration(c.get("fuller_W"));
    CHECK(w.signature.kind == SignatureKind::chain_derived);
    FibrationData wrong = w;
    wrong.signature = SignatureSource::derived(h, -2);
    CHECK_THROWS_AS(compute_invariants(wrong), InvalidArgument);
    FibrationData endo = w;
    endo.signature = SignatureSource::endo();
    CHECK_THROWS_AS(compute_invariants(endo), NonIntegral);
    FibrationData user = w;
    user.signature = SignatureSource::user(Integer(-42));
    CHECK(compute_invariants(user).sigma == Integer(-42));
}

TEST_CASE("fibre sum invariants") {
    const Corpus& c = Corpus::bundled();
    const InvariantReport w = c.report(c.get("fuller_W"));
    const InvariantReport ww = fibre_sum_invariants(w, w, 3);
    CHECK(ww.e == Integer(140));
    CHECK(ww.sigma == Integer(-84));
    auto functional = [](const InvariantReport& r) { return Integer(9) * r.sigma + Integer(5) * r.e + Integer(40); };
    CHECK(functional(ww) == Integer(-16));
    for (int r = 1; r <= 5; ++r) {
        const InvariantReport z = report_from_characteristics(3, Integer(7 * r - 8), Integer(-4 * r));
        CHECK(functional(fibre_sum_invariants(z, w, 3)) == functional(w) - Integer(r));
    }
    const InvariantReport trivial = report_from_characteristics(3, Integer(-8), Integer(0));
    CHECK(fibre_sum_invariants(w, trivial, 3).e == w.e);
    CHECK(fibre_sum_invariants(w, trivial, 3).sigma == w.sigma);

    // T commutes with fibre summing in either slot
    const InvariantReport h = c.report(c.get("horikawa_g3"));
    const InvariantReport a = T_effect(fibre_sum_invariants(w, h, 3), Direction::forward);
    const InvariantReport b = fibre_sum_invariants(T_effect(w, Direction::forward), h, 3);
    const InvariantReport d = fibre_sum_invariants(w, T_effect(h, Direction::forward), 3);
    CHECK(a.e == b.e);
    CHECK(a.sigma == b.sigma);
    CHECK(a.lambda == b.lambda);
    CHECK(a.e == d.e);
    CHECK(a.sigma == d.sigma);
    CHECK(a.census == d.census);

    InvariantReport pointed = w;
    pointed.base_points = 1;
    CHECK_THROWS_AS(fibre_sum_invariants(pointed, w, 3), InvalidArgument);
}

TEST_CASE("genus-2 reports") {
    const Corpus& c = Corpus::bundled();
    const InvariantReport r = c.report(c.get("g2_word2"));
    CHECK(r.base_points == 2);
    CHECK(r.e == Integer(24));
    CHECK(r.sigma == Integer(-16));
    CHECK(r.c1_sq == Integer(0));
    CHECK(r.e_fibration() == Integer(26));
}
