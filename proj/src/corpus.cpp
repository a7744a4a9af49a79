#include "lefschetz/corpus.hpp"

#include "corpus_data.hpp"
#include "text_util.hpp"

#include <json.hpp>

#include <cstdlib>

namespace lefschetz {

namespace {

using nlohmann::json;

std::string field(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) throw ParseError(std::string("corpus index: missing string field '") + key + "'");
    return j[key].get<std::string>();
}

ExpectedReport parse_expected(const json& j) {
    ExpectedReport x;
    x.e = Integer::parse(field(j, "e"));
    x.sigma = Integer::parse(field(j, "sigma"));
    x.c1_sq = Integer::parse(field(j, "c1_sq"));
    x.lambda = Rational::parse(field(j, "lambda"));
    x.n = Integer::parse(field(j, "n"));
    x.total = Integer::parse(field(j, "total"));
    if (j.contains("h1")) {
        std::vector<Integer> h1;
        for (const auto& v : j["h1"]) h1.push_back(Integer::parse(v.get<std::string>()));
        x.h1 = std::move(h1);
    }
    return x;
}

}  // namespace

Corpus Corpus::embedded() {
    Corpus c;
    for (const auto& f : detail::embedded_corpus()) c.files_.emplace(std::string(f.name), std::string(f.content));
    c.load_index();
    return c;
}

Corpus Corpus::from_directory(const std::filesystem::path& dir) {
    Corpus c;
    c.dir_ = dir;
    if (!std::filesystem::is_directory(dir)) throw InvalidArgument("corpus directory '" + dir.string() + "' not found");
    c.load_index();
    return c;
}

const Corpus& Corpus::bundled() {
    static const Corpus corpus = [] {
        if (const char* dir = std::getenv("LEFSCHETZ_CORPUS_DIR"); dir && *dir) return from_directory(dir);
        return embedded();
    }();
    return corpus;
}

void Corpus::load_index() {
    json index;
    try {
        index = json::parse(read("corpus.json"));
    } catch (const json::exception& e) {
        throw ParseError(std::string("corpus index: ") + e.what());
    }
    for (const auto& j : index.at("entries")) {
        CorpusEntry e;
        e.id = field(j, "id");
        e.kind = field(j, "kind");
        e.genus = j.at("genus").get<int>();
        e.word_file = field(j, "word");
        if (j.contains("trace")) e.trace_file = field(j, "trace");
        e.base_points = j.value("base_points", 0);
        e.signature = j.value("signature", std::string());
        e.provenance = j.value("provenance", std::string());
        if (j.contains("expected")) e.expected = parse_expected(j["expected"]);
        if (contains(e.id)) throw ParseError("corpus index: duplicate id '" + e.id + "'");
        entries_.push_back(std::move(e));
    }
}

bool Corpus::contains(std::string_view id) const {
    for (const auto& e : entries_)
        if (e.id == id) return true;
    return false;
}

const CorpusEntry& Corpus::get(std::string_view id) const {
    for (const auto& e : entries_)
        if (e.id == id) return e;
    throw InvalidArgument("unknown corpus entry '" + std::string(id) + "'");
}

std::string Corpus::read(std::string_view file) const {
    if (!dir_.empty()) return detail::read_file(dir_ / std::string(file));
    auto it = files_.find(file);
    if (it == files_.end()) throw InvalidArgument("corpus file '" + std::string(file) + "' not found");
    return it->second;
}

RelationFile Corpus::relation(const CorpusEntry& e) const {
    RelationFile rf = parse_relation_file(read(e.word_file), dir_);
    if (rf.relation.genus() != e.genus)
        throw InvalidArgument("corpus entry '" + e.id + "' declares genus " + std::to_string(e.genus));
    return rf;
}

Trace Corpus::trace(const CorpusEntry& e) const {
    if (!e.trace_file) throw InvalidArgument("corpus entry '" + e.id + "' has no trace");
    return parse_trace(read(*e.trace_file), dir_);
}

std::optional<std::string> Corpus::powered_form(const CorpusEntry& e) const {
    const std::string text = read(e.word_file);
    std::string_view rest = text;
    constexpr std::string_view tag = "# powered:";
    const auto at = rest.find(tag);
    if (at == std::string_view::npos) return std::nullopt;
    rest = rest.substr(at + tag.size());
    return std::string(detail::trim(rest.substr(0, rest.find('\n'))));
}

FibrationData Corpus::fibration(const CorpusEntry& e) const {
    if (!e.is_fibration()) throw InvalidArgument("corpus entry '" + e.id + "' is not a fibration");
    RelationFile rf = relation(e);
    if (!rf.relation.is_identity()) throw InvalidArgument("corpus entry '" + e.id + "' is not a relation to the identity");
    return FibrationData{e.genus, rf.relation.lhs, e.base_points, parse_signature_source(e.signature, *this)};
}

InvariantReport Corpus::report(const CorpusEntry& e) const { return compute_invariants(fibration(e)); }

std::vector<std::string> Corpus::compare(const InvariantReport& r, const ExpectedReport& x) {
    std::vector<std::string> out;
    auto check = [&](const char* name, const auto& have, const auto& want) {
        if (have != want) out.push_back(std::string(name) + ": expected " + want.str() + ", got " + have.str());
    };
    check("e", r.e, x.e);
    check("sigma", r.sigma, x.sigma);
    check("c1_sq", r.c1_sq, x.c1_sq);
    check("lambda", r.lambda, x.lambda);
    check("n", r.census.n, x.n);
    check("total", r.census.total, x.total);
    if (x.h1 && r.h1 != x.h1) out.push_back("h1 differs");
    return out;
}

SignatureSource parse_signature_source(std::string_view spec, const Corpus& corpus) {
    if (spec == "endo_g3") return SignatureSource::endo();
    if (spec == "genus2" || spec == "genus2_formula") return SignatureSource::genus2();
    const auto parts = detail::split(spec, ':');
    try {
        if (parts.size() == 2 && parts[0] == "user") return SignatureSource::user(Integer::parse(parts[1]));
        if (parts.size() == 3 && parts[0] == "derived") {
            const int steps = static_cast<int>(Integer::parse(parts[2]).to_int64());
            return SignatureSource::derived(corpus.report(corpus.get(parts[1])), steps);
        }
    } catch (const std::invalid_argument&) {
        throw InvalidArgument("bad number in signature source '" + std::string(spec) + "'");
    }
    throw InvalidArgument("unknown signature source '" + std::string(spec) +
                          "' (expected endo_g3, genus2, user:<sigma> or derived:<id>:<steps>)");
}

}  // namespace lefschetz
