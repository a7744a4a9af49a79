// Twist words, relations between them, and exact rewriting.
//
// A relation is checked in one of two ways: through its image in Sp(2g, Z)
// (necessary only, since the Torelli group is invisible there) or by replaying
// a supplied derivation made of braid, commutation, cyclic, cancellation and
// axiom-substitution moves.
#pragma once

#include "lefschetz/errors.hpp"
#include "lefschetz/exact.hpp"
#include "lefschetz/surface_model.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lefschetz {

using AlphabetPtr = std::shared_ptr<const CurveAlphabet>;

struct Letter {
    std::size_t curve = 0;  // index into the alphabet
    int exponent = 1;       // +1 or -1

    friend bool operator==(const Letter&, const Letter&) = default;
};

class TwistWord {
public:
    explicit TwistWord(AlphabetPtr alphabet, std::vector<Letter> letters = {});
    /// Builds a word from curve ids; every exponent must be +1 or -1.
    static TwistWord from_ids(AlphabetPtr alphabet,
                              const std::vector<std::pair<std::string, int>>& letters);

    const CurveAlphabet& alphabet() const { return *alphabet_; }
    const AlphabetPtr& alphabet_ptr() const { return alphabet_; }
    int genus() const { return alphabet_->genus(); }

    std::span<const Letter> letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    const Letter& operator[](std::size_t i) const { return letters_[i]; }
    const Curve& curve_at(std::size_t i) const { return alphabet_->curve(letters_[i].curve); }

    bool is_positive() const;
    TwistWord inverse() const;
    /// Letters [pos, pos + len).
    TwistWord slice(std::size_t pos, std::size_t len) const;
    /// Concatenation; both words must share an alphabet.
    TwistWord operator*(const TwistWord& other) const;

    friend bool operator==(const TwistWord& a, const TwistWord& b);

private:
    AlphabetPtr alphabet_;
    std::vector<Letter> letters_;
};

bool same_alphabet(const CurveAlphabet& a, const CurveAlphabet& b);

/// Space separated letters, `id` or `id^-1`. The empty word prints as `1`.
std::string format_word(const TwistWord& w);

/// lhs = rhs. A relation with empty rhs asserts lhs = 1.
struct Relation {
    TwistWord lhs;
    TwistWord rhs;

    Relation(TwistWord l, TwistWord r);
    explicit Relation(TwistWord l);

    bool is_identity() const { return rhs.empty(); }
    int genus() const { return lhs.genus(); }
};

std::string format_relation(const Relation& r);

// ---------------------------------------------------------------------------
// Axioms

struct AxiomLetter {
    std::size_t role = 0;
    int exponent = 1;

    friend bool operator==(const AxiomLetter&, const AxiomLetter&) = default;
};

struct RoleMeeting {
    std::size_t first = 0;
    std::size_t second = 0;
    int count = 0;
};

/// A relation between words in abstract roles, together with the geometric
/// intersection pattern the roles must realise. Role pairs not listed in the
/// meeting table are required to be disjoint.
class Axiom {
public:
    Axiom(std::string id, std::vector<std::string> roles, std::vector<RoleMeeting> meetings,
          std::vector<AxiomLetter> lhs, std::vector<AxiomLetter> rhs);

    const std::string& id() const { return id_; }
    const std::vector<std::string>& roles() const { return roles_; }
    const std::vector<AxiomLetter>& lhs() const { return lhs_; }
    const std::vector<AxiomLetter>& rhs() const { return rhs_; }
    std::size_t role_index(std::string_view role) const;
    int required_intersection(std::size_t r1, std::size_t r2) const;

private:
    std::string id_;
    std::vector<std::string> roles_;
    std::vector<std::vector<int>> meet_;
    std::vector<AxiomLetter> lhs_;
    std::vector<AxiomLetter> rhs_;
};

/// One-holed torus: lhs B1, rhs (U V)^6.
Axiom chain2_axiom();
/// Two-holed torus: lhs B1 B2, rhs (U V W)^4. Forward replaces the boundary
/// pair by the chain (the T operation); backward is T^-1.
Axiom chain3_axiom();

/// Parses `<id> roles=R1,R2,... [meet=R1.R2:n,...] | lhs = rhs`.
Axiom parse_axiom(std::string_view text);
std::string format_axiom(const Axiom& a);

class AxiomSet {
public:
    /// Holds chain2 and chain3.
    AxiomSet();
    /// Throws InvalidArgument when the id is taken.
    void add(Axiom axiom);
    const Axiom& get(std::string_view id) const;
    bool contains(std::string_view id) const;
    /// User-registered axioms in insertion order.
    const std::vector<Axiom>& user_axioms() const { return user_; }

private:
    std::vector<Axiom> builtin_;
    std::vector<Axiom> user_;
};

// ---------------------------------------------------------------------------
// Moves and traces

enum class MoveKind { braid, commute, cyclic_shift, cancel_pair, axiom_substitute };
enum class Direction { forward, backward };

/// role id -> curve id
using Embedding = std::map<std::string, std::string>;

struct RewriteMove {
    MoveKind kind = MoveKind::braid;
    /// Letter index, or the shift amount for cyclic_shift.
    long position = 0;
    std::string axiom_id;
    Direction direction = Direction::forward;
    Embedding embedding;

    friend bool operator==(const RewriteMove&, const RewriteMove&) = default;
};

std::string format_move(const RewriteMove& m);
/// One move in trace syntax (`braid@i`, `sub axiom=... dir=f @i map=...`).
RewriteMove parse_move(std::string_view text);

struct MoveContext {
    /// Cyclic shifts are legal only on words asserted equal to the identity.
    bool identity_relation = false;
    /// Null means the built-in chain2/chain3 set.
    const AxiomSet* axioms = nullptr;
};

/// Throws IllegalMove with the reason when the move does not apply.
TwistWord apply_move(const TwistWord& w, const RewriteMove& m, const MoveContext& ctx = {});

/// The chain3 substitution B1 B2 -> (U V W)^4 at `position`.
TwistWord apply_T(const TwistWord& w, std::size_t position, const Embedding& embedding);
/// The chain3 substitution (U V W)^4 -> B1 B2 at `position`.
TwistWord apply_Tinv(const TwistWord& w, std::size_t position, const Embedding& embedding);

struct Trace {
    TwistWord start;
    std::vector<RewriteMove> moves;
    TwistWord claimed_end;
    bool identity_relation = false;
    AxiomSet axioms;
};

struct TraceResult {
    bool ok = false;
    /// Index of the first illegal move; empty if every move applied.
    std::optional<std::size_t> failing_move;
    std::string reason;
    std::optional<TwistWord> reached;
};

TraceResult check_trace(const Trace& t);

Trace parse_trace(std::string_view text, const std::filesystem::path& base_dir = {});
Trace load_trace(const std::filesystem::path& path);
std::string format_trace(const Trace& t, std::string_view alphabet_spec);

// ---------------------------------------------------------------------------
// Homology

/// Ordered product of transvection matrices, left to right.
IntMatrix homology_image(const TwistWord& w);
bool verify_relation_homology(const Relation& r);

// ---------------------------------------------------------------------------
// Structure

/// Concatenation of two relations to the identity on the same genus.
Relation fibre_sum(const Relation& r1, const Relation& r2);

struct TwistCensus {
    Integer n;                            // non-separating letters
    std::map<int, Integer> s_by_genus;   // split genus -> count
    Integer total;

    Integer separating() const;
    friend bool operator==(const TwistCensus&, const TwistCensus&) = default;
};

/// Throws InvalidArgument for words with negative letters.
TwistCensus classify_twists(const TwistWord& w);

/// (n + 2s) mod 10 for genus-two positive words. Throws InvalidArgument otherwise.
int abelianized_residue(const TwistWord& w);
int abelianized_residue(const TwistCensus& census);

/// Lexicographically least rotation (by curve index, then exponent).
TwistWord cyclic_normal_form(const TwistWord& w);
bool cyclically_equivalent(const TwistWord& a, const TwistWord& b);

// ---------------------------------------------------------------------------
// Word and relation files

/// Word expression: letters `id`, `id^k`, groups `( ... )^k`, `1` for the
/// empty word. Negative powers invert. Throws ParseError with positions.
TwistWord parse_word(std::string_view text, AlphabetPtr alphabet);
/// `lhs = rhs`, or a bare word meaning `word = 1`.
Relation parse_relation(std::string_view text, AlphabetPtr alphabet);

struct RelationFile {
    std::string alphabet_spec;
    Relation relation;
};

/// A relation file may start with `alphabet <spec>`; otherwise `fallback`
/// (resolved the same way) is used. Throws ParseError if neither is given.
RelationFile parse_relation_file(std::string_view text, const std::filesystem::path& base_dir = {},
                                 std::string_view fallback_alphabet = {});
RelationFile load_relation_file(const std::filesystem::path& path, std::string_view fallback_alphabet = {});

/// Caches the built-in alphabets so repeated loads share one instance.
AlphabetPtr shared_alphabet(std::string_view spec, const std::filesystem::path& base_dir = {});

}  // namespace lefschetz
