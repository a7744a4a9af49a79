#include "lefschetz/surface_model.hpp"

#include "text_util.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace lefschetz {

namespace {

std::string str(int v) { return std::to_string(v); }

}  // namespace

CurveAlphabet::CurveAlphabet(int genus, std::vector<Curve> curves,
                             const std::vector<GeometricIntersection>& intersections)
    : genus_(genus), curves_(std::move(curves)) {
    if (genus_ < 1) throw InvalidArgument("alphabet genus must be positive, got " + str(genus_));
    const auto n = static_cast<Eigen::Index>(curves_.size());
    for (std::size_t i = 0; i < curves_.size(); ++i) {
        const Curve& c = curves_[i];
        if (!detail::is_identifier(c.id)) throw InvalidArgument("bad curve id '" + c.id + "'");
        for (std::size_t j = 0; j < i; ++j)
            if (curves_[j].id == c.id) throw InvalidArgument("duplicate curve id '" + c.id + "'");
        if (c.homology.size() != 2 * genus_)
            throw InvalidArgument("curve '" + c.id + "' has a homology vector of length " +
                                  std::to_string(c.homology.size()) + ", expected " + str(2 * genus_));
        const bool zero = c.homology.isZero();
        if (c.separating != zero)
            throw InvalidArgument("curve '" + c.id +
                                  "': separating flag must hold exactly when the homology is zero");
        if (c.separating != c.split_genus.has_value())
            throw InvalidArgument("curve '" + c.id + "': split genus is required exactly for separating curves");
        if (c.split_genus && (*c.split_genus < 1 || 2 * *c.split_genus > genus_))
            throw InvalidArgument("curve '" + c.id + "': split genus " + str(*c.split_genus) +
                                  " outside [1, g/2]");
    }
    geometric_ = Eigen::MatrixXi::Zero(n, n);
    std::vector<std::vector<bool>> seen(curves_.size(), std::vector<bool>(curves_.size(), false));
    for (const auto& gi : intersections) {
        const std::size_t a = index_of(gi.first);
        const std::size_t b = index_of(gi.second);
        if (gi.count < 0) throw InvalidArgument("negative geometric intersection for (" + gi.first + "," + gi.second + ")");
        if (a == b && gi.count != 0)
            throw InvalidArgument("curve '" + gi.first + "' must have zero self-intersection");
        if (seen[a][b] && geometric_(a, b) != gi.count)
            throw InvalidArgument("conflicting geometric intersection for (" + gi.first + "," + gi.second + ")");
        seen[a][b] = seen[b][a] = true;
        geometric_(a, b) = geometric_(b, a) = gi.count;
    }
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = a + 1; b < n; ++b) {
            const Integer alg = abs(algebraic_intersection(curves_[a], curves_[b]));
            const Integer geo(geometric_(a, b));
            if (alg > geo)
                throw InvalidArgument("declared geometric intersection of (" + curves_[a].id + "," +
                                      curves_[b].id + ") is " + geo.str() +
                                      " but the algebraic intersection is " + alg.str());
            if (!(geo - alg).divisible_by(2))
                throw InvalidArgument("geometric and algebraic intersection of (" + curves_[a].id + "," +
                                      curves_[b].id + ") differ in parity");
        }
    }
}

std::optional<std::size_t> CurveAlphabet::find(std::string_view id) const {
    for (std::size_t i = 0; i < curves_.size(); ++i)
        if (curves_[i].id == id) return i;
    return std::nullopt;
}

std::size_t CurveAlphabet::index_of(std::string_view id) const {
    if (auto i = find(id)) return *i;
    throw InvalidArgument("unknown curve '" + std::string(id) + "'");
}

bool operator==(const CurveAlphabet& a, const CurveAlphabet& b) {
    if (a.genus_ != b.genus_ || a.curves_.size() != b.curves_.size()) return false;
    for (std::size_t i = 0; i < a.curves_.size(); ++i) {
        const Curve& x = a.curves_[i];
        const Curve& y = b.curves_[i];
        if (x.id != y.id || x.homology != y.homology || x.separating != y.separating ||
            x.split_genus != y.split_genus)
            return false;
    }
    return a.geometric_ == b.geometric_;
}

Integer algebraic_intersection(const Curve& u, const Curve& v) {
    return symplectic_pairing(u.homology, v.homology);
}

namespace {

IntVector basis(int genus, int index) {
    IntVector v = IntVector::Zero(2 * genus);
    v(index) = 1;
    return v;
}

Curve nonseparating(std::string id, IntVector h) { return Curve{std::move(id), std::move(h), false, std::nullopt}; }

struct ChainBuilder {
    int genus;
    std::vector<Curve> curves;
    std::vector<GeometricIntersection> meets;

    void chain() {
        for (int i = 1; i <= genus; ++i) {
            IntVector a = basis(genus, 2 * (i - 1));
            if (i > 1) a -= basis(genus, 2 * (i - 2));
            curves.push_back(nonseparating("a" + str(i), a));
            curves.push_back(nonseparating("b" + str(i), basis(genus, 2 * (i - 1) + 1)));
        }
        for (std::size_t i = 0; i + 1 < curves.size(); ++i)
            meets.push_back({curves[i].id, curves[i + 1].id, 1});
    }
};

}  // namespace

CurveAlphabet standard_alphabet(int genus) {
    if (genus < 1) throw InvalidArgument("standard alphabet needs genus >= 1, got " + str(genus));
    ChainBuilder b{genus, {}, {}};
    b.chain();
    if (genus == 3) {
        const IntVector neck = b.curves[0].homology + b.curves[2].homology;
        b.curves.push_back(nonseparating("d2", neck));
        b.curves.push_back(nonseparating("e2", neck));
        b.meets.push_back({"d2", "b2", 1});
        b.meets.push_back({"e2", "b2", 1});
    }
    return CurveAlphabet(genus, std::move(b.curves), b.meets);
}

CurveAlphabet chain_alphabet(int genus) {
    if (genus < 1) throw InvalidArgument("chain alphabet needs genus >= 1, got " + str(genus));
    const CurveAlphabet base = standard_alphabet(genus);
    std::vector<Curve> curves(base.curves().begin(), base.curves().end());
    std::vector<GeometricIntersection> meets;
    for (std::size_t i = 0; i < base.size(); ++i)
        for (std::size_t j = i + 1; j < base.size(); ++j)
            if (int n = base.geometric_intersection(i, j); n != 0) meets.push_back({curves[i].id, curves[j].id, n});
    const std::string last = "a" + str(genus + 1);
    curves.push_back(nonseparating(last, -basis(genus, 2 * (genus - 1))));
    meets.push_back({"b" + str(genus), last, 1});
    return CurveAlphabet(genus, std::move(curves), meets);
}

CurveAlphabet resolve_alphabet(std::string_view spec, const std::filesystem::path& base_dir) {
    auto genus_after = [&](std::string_view prefix) -> std::optional<int> {
        if (spec.substr(0, prefix.size()) != prefix) return std::nullopt;
        const auto rest = spec.substr(prefix.size());
        int g = 0;
        auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), g);
        if (ec != std::errc() || p != rest.data() + rest.size())
            throw ParseError("bad alphabet spec '" + std::string(spec) + "'");
        return g;
    };
    if (auto g = genus_after("standard:")) return standard_alphabet(*g);
    if (auto g = genus_after("chain:")) return chain_alphabet(*g);
    std::filesystem::path p(spec);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    return load_alphabet(p);
}

std::string format_alphabet(const CurveAlphabet& alphabet) {
    std::ostringstream out;
    out << "genus " << alphabet.genus() << '\n';
    for (const Curve& c : alphabet.curves()) {
        out << c.id << "  h=";
        for (Eigen::Index i = 0; i < c.homology.size(); ++i) out << (i ? "," : "") << c.homology(i);
        out << "  sep=" << (c.separating ? 1 : 0);
        if (c.split_genus) out << ",h=" << *c.split_genus;
        out << '\n';
    }
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        for (std::size_t j = i + 1; j < alphabet.size(); ++j)
            if (int n = alphabet.geometric_intersection(i, j); n != 0)
                out << "i(" << alphabet.curve(i).id << "," << alphabet.curve(j).id << ")=" << n << '\n';
    return out.str();
}

CurveAlphabet parse_alphabet(std::string_view text) {
    std::optional<int> genus;
    std::vector<Curve> curves;
    std::vector<GeometricIntersection> meets;
    bool in_intersections = false;

    for (const auto& line : detail::content_lines(text)) {
        const auto tokens = detail::split_ws(line.text);
        auto fail = [&](const std::string& what, std::string_view at) -> ParseError {
            return ParseError(what, line.number, detail::column_of(line.text, at));
        };
        auto to_int = [&](std::string_view s) {
            try {
                return static_cast<int>(Integer::parse(s).to_int64());
            } catch (const std::exception&) {
                throw fail("expected an integer, got '" + std::string(s) + "'", s);
            }
        };

        if (tokens[0] == "genus") {
            if (tokens.size() != 2) throw fail("expected 'genus <g>'", tokens[0]);
            genus = to_int(tokens[1]);
            continue;
        }
        if (tokens[0].substr(0, 2) == "i(") {
            in_intersections = true;
            const std::string_view t = tokens[0];
            const auto close = t.find(")=");
            if (tokens.size() != 1 || close == std::string_view::npos)
                throw fail("expected 'i(<id>,<id>)=<n>'", t);
            const auto ids = detail::split(t.substr(2, close - 2), ',');
            if (ids.size() != 2) throw fail("expected two curve ids", t);
            meets.push_back({std::string(ids[0]), std::string(ids[1]), to_int(t.substr(close + 2))});
            continue;
        }
        if (in_intersections) throw fail("curve definitions must precede the intersection block", tokens[0]);
        if (!detail::is_identifier(tokens[0])) throw fail("bad curve id '" + std::string(tokens[0]) + "'", tokens[0]);

        Curve c;
        c.id = std::string(tokens[0]);
        bool have_h = false, have_sep = false;
        for (std::size_t k = 1; k < tokens.size(); ++k) {
            const std::string_view t = tokens[k];
            if (t.substr(0, 2) == "h=") {
                const auto parts = detail::split(t.substr(2), ',');
                c.homology = IntVector(static_cast<Eigen::Index>(parts.size()));
                for (std::size_t i = 0; i < parts.size(); ++i) c.homology(static_cast<Eigen::Index>(i)) = to_int(parts[i]);
                have_h = true;
            } else if (t.substr(0, 4) == "sep=") {
                const auto parts = detail::split(t.substr(4), ',');
                if (parts[0] == "1") {
                    c.separating = true;
                } else if (parts[0] != "0") {
                    throw fail("sep must be 0 or 1", t);
                }
                if (parts.size() == 2) {
                    if (parts[1].substr(0, 2) != "h=") throw fail("expected ',h=<k>' after sep", t);
                    c.split_genus = to_int(parts[1].substr(2));
                } else if (parts.size() > 2) {
                    throw fail("unexpected fields in sep", t);
                }
                have_sep = true;
            } else {
                throw fail("unknown field '" + std::string(t) + "'", t);
            }
        }
        if (!have_h || !have_sep) throw fail("curve line needs both h= and sep=", tokens[0]);
        if (!genus) genus = static_cast<int>(c.homology.size() / 2);
        curves.push_back(std::move(c));
    }
    if (!genus) throw ParseError("empty alphabet");
    return CurveAlphabet(*genus, std::move(curves), meets);
}

CurveAlphabet load_alphabet(const std::filesystem::path& path) { return parse_alphabet(detail::read_file(path)); }

}  // namespace lefschetz
