#include "lefschetz/corpus.hpp"
#include "lefschetz/report_io.hpp"

#include <doctest.h>

using namespace lefschetz;

TEST_CASE("reports round trip in both formats") {
    const Corpus& c = Corpus::bundled();
    for (const auto& e : c.entries()) {
        if (!e.is_fibration()) continue;
        const InvariantReport r = c.report(e);
        for (Format f : {Format::text, Format::structured}) {
            const std::string bytes = emit_report(r, f);
            CHECK(parse_report(bytes) == r);
            CHECK(emit_report(parse_report(bytes), f) == bytes);
        }
    }
    InvariantReport with_split;
    with_split.genus = 2;
    with_split.census.s_by_genus[1] = Integer(3);
    with_split.lambda = Rational(Integer(7), Integer(4));
    with_split.h1 = std::vector<Integer>{Integer(2), Integer(0)};
    with_split.notes = {"a", "b: c"};
    for (Format f : {Format::text, Format::structured}) CHECK(parse_report(emit_report(with_split, f)) == with_split);
}

TEST_CASE("text reports use sorted flattened keys") {
    const Corpus& c = Corpus::bundled();
    const std::string text = emit_report(c.report(c.get("fuller_W")), Format::text);
    CHECK(text.find("e: 66\n") != std::string::npos);
    CHECK(text.find("sigma: -42\n") != std::string::npos);
    CHECK(text.find("census.total: 74\n") != std::string::npos);
    CHECK(text.find("h1: []\n") != std::string::npos);
    std::vector<std::string> keys;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        const std::string line = text.substr(pos, nl - pos);
        keys.push_back(line.substr(0, line.find(':')));
        pos = nl + 1;
    }
    CHECK(std::is_sorted(keys.begin(), keys.end()));
}

TEST_CASE("zero report") {
    const InvariantReport zero;
    const std::string text = emit_report(zero, Format::text);
    CHECK(text ==
          "base_points: 0\nc1_sq: 0\nc2: 0\ncensus.n: 0\ncensus.s_by_genus: {}\ncensus.total: 0\ne: 0\ngenus: 1\n"
          "kind: invariants\nlambda: 0\nnotes: []\nschema: lefschetz-report/1\nsigma: 0\nsignature_route: \n");
    CHECK(parse_report(text) == zero);
}

TEST_CASE("rationals are printed in lowest terms") {
    InvariantReport r;
    r.lambda = Rational(Integer(6), Integer(8));
    CHECK(emit_report(r, Format::structured).find("\"lambda\": \"3/4\"") != std::string::npos);
}

TEST_CASE("malformed reports") {
    CHECK_THROWS_AS(parse_report("e 66\n"), ParseError);
    CHECK_THROWS_AS(parse_report("e: 1\ne: 2\n"), ParseError);
    CHECK_THROWS_AS(parse_report("{\"e\": "), ParseError);
    CHECK_THROWS_AS(parse_report("genus: 3\n"), ParseError);
    CHECK_THROWS_AS(parse_format("xml"), InvalidArgument);
    try {
        parse_report("genus: 3\nfoo\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}
