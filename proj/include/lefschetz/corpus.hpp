// Bundled example relations with their expected invariants.
//
// The corpus is compiled into the library. Setting LEFSCHETZ_CORPUS_DIR
// points the default corpus at a directory with the same layout instead.
#pragma once

#include "lefschetz/invariants.hpp"
#include "lefschetz/word_engine.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lefschetz {

struct ExpectedReport {
    Integer e;
    Integer sigma;
    Integer c1_sq;
    Rational lambda;
    Integer n;
    Integer total;
    std::optional<std::vector<Integer>> h1;
};

struct CorpusEntry {
    std::string id;
    /// "fibration" (a relation to the identity with invariants) or "relation".
    std::string kind;
    int genus = 0;
    std::string word_file;
    std::optional<std::string> trace_file;
    int base_points = 0;
    /// endo_g3 | genus2 | user:<sigma> | derived:<corpus id>:<net T steps>
    std::string signature;
    std::string provenance;
    std::optional<ExpectedReport> expected;

    bool is_fibration() const { return kind == "fibration"; }
};

class Corpus {
public:
    /// The embedded corpus, or the directory named by LEFSCHETZ_CORPUS_DIR.
    static const Corpus& bundled();
    static Corpus embedded();
    static Corpus from_directory(const std::filesystem::path& dir);

    const std::vector<CorpusEntry>& entries() const { return entries_; }
    /// Throws InvalidArgument for an unknown id.
    const CorpusEntry& get(std::string_view id) const;
    bool contains(std::string_view id) const;

    std::string read(std::string_view file) const;
    RelationFile relation(const CorpusEntry& e) const;
    /// Throws InvalidArgument if the entry ships no trace.
    Trace trace(const CorpusEntry& e) const;
    /// The first `# powered:` comment of the word file, if any.
    std::optional<std::string> powered_form(const CorpusEntry& e) const;

    FibrationData fibration(const CorpusEntry& e) const;
    InvariantReport report(const CorpusEntry& e) const;

    /// Differences between a recomputed report and the expected one; empty when they agree.
    static std::vector<std::string> compare(const InvariantReport& r, const ExpectedReport& expected);

private:
    Corpus() = default;
    void load_index();

    std::map<std::string, std::string, std::less<>> files_;
    std::filesystem::path dir_;
    std::vector<CorpusEntry> entries_;
};

/// Parses a signature source spec (see CorpusEntry::signature). Derived
/// sources are resolved against `corpus`.
SignatureSource parse_signature_source(std::string_view spec, const Corpus& corpus);

}  // namespace lefschetz
