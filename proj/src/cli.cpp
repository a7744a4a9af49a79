#include "lefschetz/cli.hpp"

#include "lefschetz/corpus.hpp"
#include "lefschetz/moduli_pairing.hpp"
#include "lefschetz/obstruction.hpp"
#include "lefschetz/report_io.hpp"

#include "text_util.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace lefschetz::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

enum Exit { ok = 0, check_failed = 1, bad_input = 2 };

// ---------------------------------------------------------------------------
// Inputs

struct Source {
    std::string label;
    const CorpusEntry* entry = nullptr;
    fs::path file;
};

struct WordOptions {
    std::vector<std::string> corpus;
    std::vector<std::string> relation;
    std::string alphabet;

    void add_to(CLI::App* app) {
        app->add_option("--corpus", corpus, "bundled corpus id (repeatable; 'all' for every entry)");
        app->add_option("--relation", relation, "relation file (repeatable)");
        app->add_option("--alphabet", alphabet, "alphabet for relation files without a directive");
    }

    std::vector<Source> sources(bool fibrations_only) const {
        const Corpus& c = Corpus::bundled();
        std::vector<Source> out;
        for (const auto& id : corpus) {
            if (id == "all") {
                for (const auto& e : c.entries())
                    if (!fibrations_only || e.is_fibration()) out.push_back({e.id, &e, {}});
            } else {
                const CorpusEntry& e = c.get(id);
                out.push_back({e.id, &e, {}});
            }
        }
        for (const auto& f : relation) out.push_back({f, nullptr, f});
        if (out.empty()) throw InvalidArgument("no input: give --corpus <id> or --relation <file>");
        return out;
    }

    Relation load(const Source& s) const {
        if (s.entry) return Corpus::bundled().relation(*s.entry).relation;
        return load_relation_file(s.file, alphabet).relation;
    }
};

struct FibrationOptions {
    std::optional<int> genus;
    std::optional<int> base_points;
    std::string sigma_source;

    void add_to(CLI::App* app) {
        app->add_option("--genus", genus, "fibre genus (checked against the relation)");
        app->add_option("--base-points", base_points, "number of base points")->check(CLI::NonNegativeNumber);
        app->add_option("--sigma-source", sigma_source, "endo_g3 | genus2 | user:<sigma> | derived:<id>:<steps>");
    }

    FibrationData load(const WordOptions& words, const Source& s) const {
        const Corpus& corpus = Corpus::bundled();
        if (s.entry) {
            FibrationData d = corpus.fibration(*s.entry);
            if (genus && *genus != d.genus)
                throw GenusMismatch("corpus entry '" + s.entry->id + "' has genus " + std::to_string(d.genus));
            if (base_points) d.base_points = *base_points;
            if (!sigma_source.empty()) d.signature = parse_signature_source(sigma_source, corpus);
            return d;
        }
        const Relation r = words.load(s);
        if (!r.is_identity()) throw InvalidArgument(s.label + ": invariants need a relation to the identity");
        const int g = r.genus();
        if (genus && *genus != g)
            throw GenusMismatch(s.label + ": relation has genus " + std::to_string(g) + ", --genus says " +
                                std::to_string(*genus));
        std::string spec = sigma_source;
        if (spec.empty()) {
            if (g == 3) spec = "endo_g3";
            else if (g == 2) spec = "genus2";
            else throw InvalidArgument("genus " + std::to_string(g) + " needs --sigma-source");
        }
        return FibrationData{g, r.lhs, base_points.value_or(0), parse_signature_source(spec, corpus)};
    }
};

// Runs `task` over [0, count) on up to `jobs` workers; results keep input order.
std::vector<json> fan_out(std::size_t count, unsigned jobs, const std::function<json(std::size_t)>& task) {
    std::vector<json> out(count);
    jobs = std::max(1u, jobs);
    for (std::size_t begin = 0; begin < count; begin += jobs) {
        const std::size_t end = std::min(count, begin + jobs);
        if (end - begin == 1) {
            out[begin] = task(begin);
            continue;
        }
        std::vector<std::future<json>> pending;
        for (std::size_t i = begin; i < end; ++i) pending.push_back(std::async(std::launch::async, task, i));
        for (std::size_t i = begin; i < end; ++i) out[i] = pending[i - begin].get();
    }
    return out;
}

json batch(std::vector<json> results) {
    if (results.size() == 1) return std::move(results.front());
    json doc;
    doc["results"] = std::move(results);
    return doc;
}

json census_json(const TwistCensus& c) {
    json j;
    j["n"] = c.n.str();
    j["total"] = c.total.str();
    json s = json::object();
    for (const auto& [h, count] : c.s_by_genus) s[std::to_string(h)] = count.str();
    j["s_by_genus"] = s;
    return j;
}

json integers_json(const std::vector<Integer>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

Integer integer_option(const std::string& text, const char* name) {
    try {
        return Integer::parse(text);
    } catch (const std::invalid_argument&) {
        throw InvalidArgument(std::string("--") + name + ": '" + text + "' is not an integer");
    }
}

// ---------------------------------------------------------------------------
// Commands

struct Context {
    Format format = Format::text;
    std::ostream& out;
};

int cmd_verify(const Context& ctx, const WordOptions& words, const std::string& mode, unsigned jobs) {
    const auto sources = words.sources(false);
    const auto results = fan_out(sources.size(), jobs, [&](std::size_t i) {
        const Source& s = sources[i];
        json j;
        j["input"] = s.label;
        j["mode"] = mode;
        bool pass = false;
        if (mode == "homology") {
            const Relation r = words.load(s);
            pass = verify_relation_homology(r);
            j["genus"] = std::to_string(r.genus());
            j["lhs_length"] = std::to_string(r.lhs.size());
            j["rhs_length"] = std::to_string(r.rhs.size());
        } else {
            if (!s.entry) throw InvalidArgument("--mode trace needs a corpus entry; use 'trace --file' for trace files");
            const TraceResult t = check_trace(Corpus::bundled().trace(*s.entry));
            pass = t.ok;
            j["moves"] = std::to_string(Corpus::bundled().trace(*s.entry).moves.size());
            if (!t.ok) j["reason"] = t.reason;
        }
        j["result"] = pass ? "pass" : "fail";
        return j;
    });
    bool all = true;
    for (const auto& r : results) all = all && r["result"] == "pass";
    ctx.out << emit(batch(results), ctx.format);
    return all ? ok : check_failed;
}

int cmd_trace(const Context& ctx, const std::string& file, const std::string& corpus_id) {
    if (file.empty() == corpus_id.empty()) throw InvalidArgument("give exactly one of --file or --corpus");
    const Trace t = file.empty() ? Corpus::bundled().trace(Corpus::bundled().get(corpus_id)) : load_trace(file);
    const TraceResult r = check_trace(t);
    json j;
    j["input"] = file.empty() ? corpus_id : file;
    j["moves"] = std::to_string(t.moves.size());
    j["start_length"] = std::to_string(t.start.size());
    j["end_length"] = std::to_string(t.claimed_end.size());
    j["result"] = r.ok ? "pass" : "fail";
    if (r.failing_move) {
        j["failing_move"] = std::to_string(*r.failing_move + 1);
        j["failing_move_text"] = format_move(t.moves[*r.failing_move]);
    }
    if (!r.reason.empty()) j["reason"] = r.reason;
    bool homology_ok = true;
    if (t.identity_relation) {
        const bool start_ok = verify_relation_homology(Relation{t.start});
        const bool end_ok = verify_relation_homology(Relation{t.claimed_end});
        j["start_homology"] = start_ok ? "identity" : "not identity";
        j["end_homology"] = end_ok ? "identity" : "not identity";
        homology_ok = start_ok && end_ok;
    }
    ctx.out << emit(j, ctx.format);
    return r.ok && homology_ok ? ok : check_failed;
}

int cmd_invariants(const Context& ctx, const WordOptions& words, const FibrationOptions& fib, unsigned jobs) {
    const auto sources = words.sources(true);
    const auto results = fan_out(sources.size(), jobs, [&](std::size_t i) {
        const Source& s = sources[i];
        const InvariantReport r = compute_invariants(fib.load(words, s));
        json j = report_to_json(r);
        j["input"] = s.label;
        const bool overridden = fib.base_points || !fib.sigma_source.empty();
        if (s.entry && s.entry->expected && !overridden) {
            const auto diffs = Corpus::compare(r, *s.entry->expected);
            j["expected_check"] = diffs.empty() ? "match" : "mismatch";
            if (!diffs.empty()) j["expected_diffs"] = diffs;
        }
        return j;
    });
    bool all = true;
    for (const auto& r : results) all = all && r.value("expected_check", "match") == "match";
    ctx.out << emit(batch(results), ctx.format);
    return all ? ok : check_failed;
}

int cmd_pair(const Context& ctx, const std::string& cls, const std::string& sphere_file, const std::string& corpus_id,
             const std::optional<std::string>& section_square) {
    if (sphere_file.empty() == corpus_id.empty()) throw InvalidArgument("give exactly one of --sphere or --corpus");
    const DivisorClass c = fs::is_regular_file(cls) ? parse_divisor_class(detail::read_file(cls)) : named_divisor_class(cls);
    const Corpus& corpus = Corpus::bundled();
    const InvariantReport report = sphere_file.empty() ? corpus.report(corpus.get(corpus_id))
                                                       : parse_report(detail::read_file(sphere_file));
    std::optional<Integer> ss;
    if (section_square) ss = integer_option(*section_square, "section-square");
    const SphereData s = sphere_from_report(report, ss);
    json j;
    j["class"] = cls;
    j["value"] = pair(c, s).str();
    j["warnings"] = pairing_warnings(c, s);
    json sphere;
    sphere["genus"] = std::to_string(s.genus);
    sphere["markings"] = std::to_string(s.markings);
    sphere["lambda"] = s.lambda.str();
    sphere["delta"] = integers_json(s.delta);
    sphere["psi"] = integers_json(s.psi);
    sphere["omega_rd"] = s.omega_rd.str();
    j["sphere"] = sphere;
    ctx.out << emit(j, ctx.format);
    return ok;
}

struct CoveringArgs {
    std::string K_dot_omega;
    std::string omega_sq;
    std::string c1_sq = "0";
    std::string c2 = "0";
    int kmax = 8;
};

int cmd_covering(const Context& ctx, const CoveringArgs& a) {
    const CoveringInputs in{integer_option(a.K_dot_omega, "K.w"), integer_option(a.omega_sq, "w2"),
                            integer_option(a.c1_sq, "c1sq"), integer_option(a.c2, "c2")};
    if (a.kmax < 2 || a.kmax % 2 != 0) throw InvalidArgument("--kmax must be even and at least 2");
    const CoveringVerdict v = covering_boundedness(in, a.kmax);

    std::vector<std::string> notes;
    json terms = json::array();
    for (const auto& t : v.terms) {
        json term;
        term["k"] = std::to_string(t.k);
        term["genus"] = t.genus.str();
        if (t.value) {
            term["value"] = t.value->str();
            const Rational closed = covering_closed_form(in, t.genus);
            if (closed != *t.value)
                notes.push_back("k=" + std::to_string(t.k) + ": value differs from the (g+1)(g+7)/12 closed form " +
                                closed.str() + "; it equals the (g+7)k/6 form " +
                                covering_k_form(in, t.genus, t.k).str());
        } else {
            term["value"] = "undefined";
        }
        terms.push_back(term);
    }

    if (ctx.format == Format::structured) {
        json j;
        j["inputs"] = {{"K_dot_omega", in.K_dot_omega.str()},
                       {"omega_sq", in.omega_sq.str()},
                       {"c1_sq", in.c1_sq.str()},
                       {"c2", in.c2.str()}};
        j["terms"] = terms;
        j["verdict"] = to_string(v.kind);
        j["threshold"] = v.threshold.str();
        j["notes"] = notes;
        ctx.out << emit(j, ctx.format);
        return ok;
    }
    for (const auto& t : v.terms) {
        ctx.out << t.k << ": ";
        if (t.value) ctx.out << t.value->str() << '\n';
        else ctx.out << "undefined (genus " << t.genus.str() << ")\n";
    }
    ctx.out << "verdict: " << to_string(v.kind) << '\n' << "threshold: " << v.threshold.str() << '\n';
    for (const auto& n : notes) ctx.out << "note: " << n << '\n';
    return ok;
}

int cmd_obstruct(const Context& ctx, const std::string& e, const std::string& sigma, bool reducible, bool mod14) {
    const ObstructionVerdict v =
        genus3_obstruction(integer_option(e, "e"), integer_option(sigma, "sigma"), reducible, mod14);
    json j;
    j["hyperelliptic_possible"] = v.hyperelliptic_possible;
    j["non_holomorphic"] = v.non_holomorphic;
    j["pairing"] = v.pairing_value.str();
    j["reasons"] = v.reasons;
    ctx.out << emit(j, ctx.format);
    return ok;
}

json case_json(const GeographyCase& c) {
    json j;
    j["branch"] = to_string(c.branch);
    j["n"] = c.n.str();
    j["s"] = c.s.str();
    if (c.b1) j["b1"] = std::to_string(*c.b1);
    j["omega_sq"] = c.omega_sq.str();
    j["e"] = c.e.str();
    j["sigma"] = c.sigma.str();
    j["c1_sq"] = c.c1_sq.str();
    if (c.homeo_word) j["homeo_word"] = *c.homeo_word;
    if (!c.label.empty()) j["label"] = c.label;
    return j;
}

int cmd_geography(const Context& ctx, bool all) {
    std::vector<GeographyCandidate> rows;
    if (all) rows = genus2_geography_candidates();
    else
        for (auto& c : genus2_geography()) rows.push_back({c, {}});

    if (ctx.format == Format::structured) {
        json cases = json::array();
        for (const auto& r : rows) {
            json j = case_json(r.entry);
            if (all) j["excluded_by"] = r.excluded_by;
            cases.push_back(j);
        }
        json doc;
        doc["cases"] = cases;
        ctx.out << emit(doc, ctx.format);
        return ok;
    }
    std::ostringstream t;
    t << std::left << std::setw(12) << "branch" << std::right << std::setw(4) << "n" << std::setw(4) << "s"
      << std::setw(4) << "b1" << std::setw(4) << "w2" << std::setw(5) << "e" << std::setw(7) << "sigma"
      << std::setw(7) << "c1^2" << "  " << std::left << std::setw(10) << "homeo" << "note";
    ctx.out << detail::trim(t.str()) << '\n';
    for (const auto& r : rows) {
        const auto& c = r.entry;
        std::ostringstream line;
        std::string note = c.label;
        if (!r.excluded_by.empty()) note = "excluded: " + r.excluded_by + (note.empty() ? "" : "; " + note);
        line << std::left << std::setw(12) << to_string(c.branch) << std::right << std::setw(4) << c.n.str()
             << std::setw(4) << c.s.str() << std::setw(4) << (c.b1 ? std::to_string(*c.b1) : "-") << std::setw(4)
             << c.omega_sq.str() << std::setw(5) << c.e.str() << std::setw(7) << c.sigma.str() << std::setw(7)
             << c.c1_sq.str() << "  " << std::left << std::setw(10) << c.homeo_word.value_or("-") << note;
        std::string s = line.str();
        while (!s.empty() && s.back() == ' ') s.pop_back();
        ctx.out << s << '\n';
    }
    return ok;
}

int cmd_section_bound(const Context& ctx, const std::string& d0, const std::string& d1, const std::string& ss) {
    const Integer delta0 = integer_option(d0, "d0");
    const Integer delta1 = integer_option(d1, "d1");
    const SectionBound v = genus2_section_bound(delta0, delta1, integer_option(ss, "ss"));
    json j;
    j["verdict"] = to_string(v);
    j["m"] = Rational(delta0 + Integer(2) * delta1, Integer(10)).str();
    ctx.out << emit(j, ctx.format);
    return ok;
}

struct TransformArgs {
    std::string op;
    int steps = 1;
    int split_genus = 1;
};

int cmd_transform(const Context& ctx, const WordOptions& words, const FibrationOptions& fib, const TransformArgs& a) {
    const auto sources = words.sources(a.op == "T" || a.op == "Tinv" || a.op == "fibre-sum");
    auto single = [&]() -> const Source& {
        if (sources.size() != 1) throw InvalidArgument("--op " + a.op + " takes exactly one input");
        return sources.front();
    };
    json j;
    if (a.op == "T" || a.op == "Tinv") {
        if (a.steps < 0) throw InvalidArgument("--steps must be non-negative");
        InvariantReport r = compute_invariants(fib.load(words, single()));
        for (int i = 0; i < a.steps; ++i) r = T_effect(r, a.op == "T" ? Direction::forward : Direction::backward);
        j = report_to_json(r);
    } else if (a.op == "fibre-sum") {
        if (sources.size() != 2) throw InvalidArgument("--op fibre-sum takes exactly two inputs");
        const FibrationData f1 = fib.load(words, sources[0]);
        const FibrationData f2 = fib.load(words, sources[1]);
        const Relation sum = fibre_sum(Relation{f1.word}, Relation{f2.word});
        j = report_to_json(fibre_sum_invariants(compute_invariants(f1), compute_invariants(f2), f1.genus));
        j["word_length"] = std::to_string(sum.lhs.size());
        j["homology"] = verify_relation_homology(sum) ? "identity" : "not identity";
    } else {
        const Relation r = words.load(single());
        const TwistWord& w = r.lhs;
        if (a.op == "normalize") {
            j["word"] = format_word(cyclic_normal_form(w));
        } else if (a.op == "census") {
            j["census"] = census_json(classify_twists(w));
        } else if (a.op == "residue") {
            j["residue"] = std::to_string(abelianized_residue(w));
        } else if (a.op == "h1") {
            j["h1"] = integers_json(first_homology(w));
        } else if (a.op == "trade") {
            j["census"] = census_json(trade_reducible(classify_twists(w), a.split_genus));
        } else {
            throw InvalidArgument("unknown --op '" + a.op + "'");
        }
    }
    j["input"] = sources.size() == 1 ? sources[0].label : sources[0].label + " + " + sources[1].label;
    j["op"] = a.op;
    ctx.out << emit(j, ctx.format);
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lefschetz fibration relations, invariants and obstructions"};
    app.name("lefschetz");
    app.require_subcommand(1);
    app.fallthrough();
    std::string format_name = "text";
    app.add_option("--format", format_name, "text | structured")->check(CLI::IsMember({"text", "structured"}));

    WordOptions words;
    FibrationOptions fib;
    unsigned jobs = 1;

    auto* verify = app.add_subcommand("verify", "check relations in homology or replay their traces");
    std::string mode = "homology";
    words.add_to(verify);
    verify->add_option("--mode", mode, "homology | trace")->check(CLI::IsMember({"homology", "trace"}));
    verify->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* trace = app.add_subcommand("trace", "replay a rewrite trace");
    std::string trace_file;
    std::string trace_corpus;
    trace->add_option("--file", trace_file, "trace file");
    trace->add_option("--corpus", trace_corpus, "corpus entry with a trace");

    auto* invariants = app.add_subcommand("invariants", "compute the invariants of a fibration");
    words.add_to(invariants);
    fib.add_to(invariants);
    invariants->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* pair_cmd = app.add_subcommand("pair", "pair a divisor class with a fibration sphere");
    std::string cls;
    std::string sphere_file;
    std::string pair_corpus;
    std::optional<std::string> section_square;
    pair_cmd->add_option("--class", cls, "class name or class file")->required();
    pair_cmd->add_option("--sphere", sphere_file, "report file");
    pair_cmd->add_option("--corpus", pair_corpus, "corpus entry");
    pair_cmd->add_option("--section-square", section_square, "self-intersection of the section");

    auto* covering = app.add_subcommand("covering", "covering sequence and its boundedness verdict");
    CoveringArgs cov;
    covering->add_option("--K.w", cov.K_dot_omega, "K . omega")->required();
    covering->add_option("--w2", cov.omega_sq, "omega^2")->required();
    covering->add_option("--c1sq", cov.c1_sq, "c1^2 (default 0)");
    covering->add_option("--c2", cov.c2, "c2 (default 0)");
    covering->add_option("--kmax", cov.kmax, "largest even k");

    auto* obstruct = app.add_subcommand("obstruct", "genus-3 hyperelliptic obstruction");
    std::string ob_e;
    std::string ob_sigma;
    bool reducible = false;
    bool mod14 = false;
    obstruct->add_option("--e", ob_e, "Euler characteristic")->required();
    obstruct->add_option("--sigma", ob_sigma, "signature")->required();
    obstruct->add_flag("--reducible", reducible, "the fibration has reducible fibres");
    obstruct->add_flag("--mod14", mod14, "apply the mod-14 refinement");

    auto* geography = app.add_subcommand("geography", "genus-2 pencil geography");
    bool geo_all = false;
    geography->add_flag("--all", geo_all, "include excluded lattice points with reasons");

    auto* section = app.add_subcommand("section-bound", "genus-2 section self-intersection bound");
    std::string d0;
    std::string d1;
    std::string ss;
    section->add_option("--d0", d0, "delta_0")->required();
    section->add_option("--d1", d1, "delta_1")->required();
    section->add_option("--ss", ss, "s . s")->required();

    auto* transform = app.add_subcommand("transform", "T moves, fibre sums and word utilities");
    TransformArgs tr;
    transform->add_option("--op", tr.op, "T | Tinv | fibre-sum | normalize | census | residue | h1 | trade")->required();
    transform->add_option("--steps", tr.steps, "number of T or Tinv applications");
    transform->add_option("--split-genus", tr.split_genus, "split genus for trade");
    words.add_to(transform);
    fib.add_to(transform);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return bad_input;
    }

    try {
        const Context ctx{parse_format(format_name), out};
        if (verify->parsed()) return cmd_verify(ctx, words, mode, jobs);
        if (trace->parsed()) return cmd_trace(ctx, trace_file, trace_corpus);
        if (invariants->parsed()) return cmd_invariants(ctx, words, fib, jobs);
        if (pair_cmd->parsed()) return cmd_pair(ctx, cls, sphere_file, pair_corpus, section_square);
        if (covering->parsed()) return cmd_covering(ctx, cov);
        if (obstruct->parsed()) return cmd_obstruct(ctx, ob_e, ob_sigma, reducible, mod14);
        if (geography->parsed()) return cmd_geography(ctx, geo_all);
        if (section->parsed()) return cmd_section_bound(ctx, d0, d1, ss);
        if (transform->parsed()) return cmd_transform(ctx, words, fib, tr);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return bad_input;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return bad_input;
    }
    return bad_input;
}

}  // namespace lefschetz::cli
