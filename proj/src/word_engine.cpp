#include "lefschetz/word_engine.hpp"

#include "text_util.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <set>
#include <sstream>

namespace lefschetz {

// ---------------------------------------------------------------------------
// TwistWord

TwistWord::TwistWord(AlphabetPtr alphabet, std::vector<Letter> letters)
    : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {
    if (!alphabet_) throw InvalidArgument("twist word without an alphabet");
    for (const Letter& l : letters_) {
        if (l.curve >= alphabet_->size()) throw InvalidArgument("letter refers to a curve outside the alphabet");
        if (l.exponent != 1 && l.exponent != -1) throw InvalidArgument("letter exponents must be +1 or -1");
    }
}

TwistWord TwistWord::from_ids(AlphabetPtr alphabet, const std::vector<std::pair<std::string, int>>& letters) {
    std::vector<Letter> out;
    out.reserve(letters.size());
    for (const auto& [id, e] : letters) out.push_back({alphabet->index_of(id), e});
    return TwistWord(std::move(alphabet), std::move(out));
}

bool TwistWord::is_positive() const {
    return std::all_of(letters_.begin(), letters_.end(), [](const Letter& l) { return l.exponent == 1; });
}

TwistWord TwistWord::inverse() const {
    std::vector<Letter> out(letters_.rbegin(), letters_.rend());
    for (Letter& l : out) l.exponent = -l.exponent;
    return TwistWord(alphabet_, std::move(out));
}

TwistWord TwistWord::slice(std::size_t pos, std::size_t len) const {
    if (pos > letters_.size() || len > letters_.size() - pos) throw InvalidArgument("slice outside the word");
    return TwistWord(alphabet_, std::vector<Letter>(letters_.begin() + static_cast<long>(pos),
                                                    letters_.begin() + static_cast<long>(pos + len)));
}

TwistWord TwistWord::operator*(const TwistWord& other) const {
    if (!same_alphabet(*alphabet_, *other.alphabet_)) throw InvalidArgument("cannot concatenate words over different alphabets");
    std::vector<Letter> out = letters_;
    out.insert(out.end(), other.letters_.begin(), other.letters_.end());
    return TwistWord(alphabet_, std::move(out));
}

bool same_alphabet(const CurveAlphabet& a, const CurveAlphabet& b) { return &a == &b || a == b; }

bool operator==(const TwistWord& a, const TwistWord& b) {
    return a.letters_ == b.letters_ && same_alphabet(*a.alphabet_, *b.alphabet_);
}

std::string format_word(const TwistWord& w) {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += w.curve_at(i).id;
        if (w[i].exponent < 0) out += "^-1";
    }
    return out;
}

Relation::Relation(TwistWord l, TwistWord r) : lhs(std::move(l)), rhs(std::move(r)) {
    if (!same_alphabet(lhs.alphabet(), rhs.alphabet()))
        throw InvalidArgument("relation sides use different alphabets");
}

Relation::Relation(TwistWord l) : lhs(std::move(l)), rhs(lhs.alphabet_ptr()) {}

std::string format_relation(const Relation& r) { return format_word(r.lhs) + " = " + format_word(r.rhs); }

// ---------------------------------------------------------------------------
// Word expression parser

namespace {

enum class Tok { ident, integer, lparen, rparen, caret, equals, end };

struct Token {
    Tok kind;
    std::string_view text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
public:
    Lexer(std::string_view text, std::size_t line, std::size_t column)
        : text_(text), line_(line), column_(column) {
        advance();
    }

    const Token& peek() const { return current_; }
    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void advance() {
        for (;;) {
            while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) bump();
            if (pos_ < text_.size() && text_[pos_] == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') bump();
                continue;
            }
            break;
        }
        const std::size_t start = pos_, line = line_, column = column_;
        auto make = [&](Tok k) { current_ = Token{k, text_.substr(start, pos_ - start), line, column}; };
        if (pos_ == text_.size()) return make(Tok::end);
        const char c = text_[pos_];
        auto single = [&](Tok k) {
            bump();
            make(k);
        };
        if (c == '(') return single(Tok::lparen);
        if (c == ')') return single(Tok::rparen);
        if (c == '^') return single(Tok::caret);
        if (c == '=') return single(Tok::equals);
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
            bump();
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) bump();
            make(Tok::integer);
            if (current_.text.size() == 1 && !std::isdigit(static_cast<unsigned char>(c)))
                throw ParseError("sign without digits", line, column);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\''))
                bump();
            return make(Tok::ident);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, column);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t column_;
    Token current_{Tok::end, {}, 0, 0};
};

struct RawLetter {
    std::string id;
    int exponent;
    std::size_t line;
    std::size_t column;
};

using RawWord = std::vector<RawLetter>;

constexpr std::size_t max_expanded_length = 10'000'000;

class WordParser {
public:
    explicit WordParser(Lexer& lex) : lex_(lex) {}

    RawWord sequence() {
        RawWord out;
        for (;;) {
            const Token t = lex_.peek();
            if (t.kind == Tok::end || t.kind == Tok::equals || t.kind == Tok::rparen) return out;
            RawWord item = atom();
            while (lex_.peek().kind == Tok::caret) {
                lex_.take();
                const Token k = lex_.take();
                if (k.kind != Tok::integer) throw ParseError("expected an exponent after '^'", k.line, k.column);
                long power = 0;
                try {
                    power = static_cast<long>(Integer::parse(k.text).to_int64());
                } catch (const std::exception&) {
                    throw ParseError("exponent out of range", k.line, k.column);
                }
                item = raise(std::move(item), power, k);
            }
            if (out.size() + item.size() > max_expanded_length)
                throw ParseError("expanded word too long", t.line, t.column);
            out.insert(out.end(), item.begin(), item.end());
        }
    }

private:
    RawWord atom() {
        const Token t = lex_.take();
        switch (t.kind) {
            case Tok::ident: return {RawLetter{std::string(t.text), 1, t.line, t.column}};
            case Tok::integer:
                if (t.text == "1") return {};
                throw ParseError("unexpected number '" + std::string(t.text) + "' (only 1 denotes the empty word)",
                                 t.line, t.column);
            case Tok::lparen: {
                RawWord inner = sequence();
                const Token close = lex_.take();
                if (close.kind == Tok::end)
                    throw ParseError("unclosed '(' (input ends before ')')", t.line, t.column);
                if (close.kind != Tok::rparen) throw ParseError("expected ')'", close.line, close.column);
                return inner;
            }
            case Tok::rparen: throw ParseError("unbalanced ')'", t.line, t.column);
            case Tok::caret: throw ParseError("'^' without a base", t.line, t.column);
            case Tok::equals: throw ParseError("unexpected '='", t.line, t.column);
            case Tok::end: break;
        }
        throw ParseError("unexpected end of input", t.line, t.column);
    }

    static RawWord raise(RawWord w, long power, const Token& at) {
        if (power < 0) {
            std::reverse(w.begin(), w.end());
            for (auto& l : w) l.exponent = -l.exponent;
            power = -power;
        }
        if (!w.empty() && static_cast<std::size_t>(power) > max_expanded_length / w.size())
            throw ParseError("expanded word too long", at.line, at.column);
        RawWord out;
        out.reserve(w.size() * static_cast<std::size_t>(power));
        for (long i = 0; i < power; ++i) out.insert(out.end(), w.begin(), w.end());
        return out;
    }

    Lexer& lex_;
};

TwistWord resolve(const RawWord& raw, const AlphabetPtr& alphabet) {
    std::vector<Letter> letters;
    letters.reserve(raw.size());
    for (const auto& r : raw) {
        const auto idx = alphabet->find(r.id);
        if (!idx) throw ParseError("unknown curve '" + r.id + "'", r.line, r.column);
        letters.push_back({*idx, r.exponent});
    }
    return TwistWord(alphabet, std::move(letters));
}

struct RawRelation {
    RawWord lhs;
    RawWord rhs;
};

RawRelation parse_raw_relation(std::string_view text, std::size_t line, std::size_t column, bool allow_bare) {
    Lexer lex(text, line, column);
    WordParser p(lex);
    RawRelation out;
    out.lhs = p.sequence();
    Token t = lex.take();
    if (t.kind == Tok::equals) {
        out.rhs = p.sequence();
        t = lex.take();
    } else if (!allow_bare && t.kind == Tok::end) {
        throw ParseError("expected 'lhs = rhs'", t.line, t.column);
    }
    if (t.kind == Tok::rparen) throw ParseError("unbalanced ')'", t.line, t.column);
    if (t.kind != Tok::end) throw ParseError("unexpected '" + std::string(t.text) + "'", t.line, t.column);
    return out;
}

RawWord parse_raw_word(std::string_view text, std::size_t line, std::size_t column) {
    Lexer lex(text, line, column);
    WordParser p(lex);
    RawWord w = p.sequence();
    const Token t = lex.take();
    if (t.kind == Tok::rparen) throw ParseError("unbalanced ')'", t.line, t.column);
    if (t.kind != Tok::end) throw ParseError("unexpected '" + std::string(t.text) + "'", t.line, t.column);
    return w;
}

}  // namespace

TwistWord parse_word(std::string_view text, AlphabetPtr alphabet) {
    return resolve(parse_raw_word(text, 1, 1), alphabet);
}

Relation parse_relation(std::string_view text, AlphabetPtr alphabet) {
    const RawRelation raw = parse_raw_relation(text, 1, 1, true);
    return Relation(resolve(raw.lhs, alphabet), resolve(raw.rhs, alphabet));
}

AlphabetPtr shared_alphabet(std::string_view spec, const std::filesystem::path& base_dir) {
    static std::mutex mutex;
    static std::map<std::string, AlphabetPtr, std::less<>> cache;
    const bool builtin = spec.rfind("standard:", 0) == 0 || spec.rfind("chain:", 0) == 0;
    if (!builtin) return std::make_shared<const CurveAlphabet>(resolve_alphabet(spec, base_dir));
    std::lock_guard lock(mutex);
    if (auto it = cache.find(spec); it != cache.end()) return it->second;
    auto ptr = std::make_shared<const CurveAlphabet>(resolve_alphabet(spec, base_dir));
    cache.emplace(std::string(spec), ptr);
    return ptr;
}

namespace {

// Replaces directive lines by blanks so that positions in the rest stay valid.
struct Directives {
    std::string body;
    std::vector<std::pair<detail::Line, std::vector<std::string_view>>> lines;
};

Directives split_directives(std::string_view text, const std::set<std::string_view>& names) {
    Directives d;
    d.body.assign(text);
    for (const auto& line : detail::content_lines(text)) {
        auto tokens = detail::split_ws(line.text);
        if (!names.count(tokens[0])) continue;
        const auto offset = static_cast<std::size_t>(line.text.data() - text.data());
        std::fill(d.body.begin() + static_cast<long>(offset),
                  d.body.begin() + static_cast<long>(offset + line.text.size()), ' ');
        d.lines.emplace_back(line, std::move(tokens));
    }
    return d;
}

}  // namespace

RelationFile parse_relation_file(std::string_view text, const std::filesystem::path& base_dir,
                                 std::string_view fallback_alphabet) {
    const Directives d = split_directives(text, {"alphabet"});
    std::string spec(fallback_alphabet);
    bool seen = false;
    for (const auto& [line, tokens] : d.lines) {
        if (seen) throw ParseError("repeated alphabet directive", line.number, detail::column_of(line.text, tokens[0]));
        if (tokens.size() != 2)
            throw ParseError("expected 'alphabet <spec>'", line.number, detail::column_of(line.text, tokens[0]));
        spec = std::string(tokens[1]);
        seen = true;
    }
    if (spec.empty()) throw ParseError("no alphabet given (add an 'alphabet <spec>' line)");
    const RawRelation raw = parse_raw_relation(d.body, 1, 1, true);
    AlphabetPtr alphabet = shared_alphabet(spec, base_dir);
    return RelationFile{spec, Relation(resolve(raw.lhs, alphabet), resolve(raw.rhs, alphabet))};
}

RelationFile load_relation_file(const std::filesystem::path& path, std::string_view fallback_alphabet) {
    return parse_relation_file(detail::read_file(path), path.parent_path(), fallback_alphabet);
}

// ---------------------------------------------------------------------------
// Axioms

Axiom::Axiom(std::string id, std::vector<std::string> roles, std::vector<RoleMeeting> meetings,
             std::vector<AxiomLetter> lhs, std::vector<AxiomLetter> rhs)
    : id_(std::move(id)), roles_(std::move(roles)), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {
    if (!detail::is_identifier(id_)) throw InvalidArgument("bad axiom id '" + id_ + "'");
    if (roles_.empty()) throw InvalidArgument("axiom '" + id_ + "' has no roles");
    for (std::size_t i = 0; i < roles_.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (roles_[i] == roles_[j]) throw InvalidArgument("axiom '" + id_ + "' repeats role " + roles_[i]);
    meet_.assign(roles_.size(), std::vector<int>(roles_.size(), 0));
    for (const auto& m : meetings) {
        if (m.first >= roles_.size() || m.second >= roles_.size() || m.first == m.second || m.count < 0)
            throw InvalidArgument("bad meeting entry in axiom '" + id_ + "'");
        meet_[m.first][m.second] = meet_[m.second][m.first] = m.count;
    }
    for (const auto* side : {&lhs_, &rhs_})
        for (const auto& l : *side)
            if (l.role >= roles_.size() || (l.exponent != 1 && l.exponent != -1))
                throw InvalidArgument("bad letter in axiom '" + id_ + "'");
}

std::size_t Axiom::role_index(std::string_view role) const {
    for (std::size_t i = 0; i < roles_.size(); ++i)
        if (roles_[i] == role) return i;
    throw InvalidArgument("axiom '" + id_ + "' has no role '" + std::string(role) + "'");
}

int Axiom::required_intersection(std::size_t r1, std::size_t r2) const { return meet_.at(r1).at(r2); }

Axiom chain2_axiom() {
    std::vector<AxiomLetter> chain;
    for (int i = 0; i < 6; ++i) {
        chain.push_back({0, 1});
        chain.push_back({1, 1});
    }
    return Axiom("chain2", {"U", "V", "B1"}, {{0, 1, 1}}, {{2, 1}}, std::move(chain));
}

Axiom chain3_axiom() {
    std::vector<AxiomLetter> chain;
    for (int i = 0; i < 4; ++i)
        for (std::size_t r = 0; r < 3; ++r) chain.push_back({r, 1});
    return Axiom("chain3", {"U", "V", "W", "B1", "B2"}, {{0, 1, 1}, {1, 2, 1}}, {{3, 1}, {4, 1}}, std::move(chain));
}

Axiom parse_axiom(std::string_view text) {
    const auto bar = text.find('|');
    if (bar == std::string_view::npos) throw ParseError("axiom needs '| lhs = rhs'");
    const auto head = detail::split_ws(text.substr(0, bar));
    if (head.empty()) throw ParseError("axiom without an id", 1, 1);
    auto col = [&](std::string_view part) { return detail::column_of(text, part); };

    std::string id(head[0]);
    std::vector<std::string> roles;
    std::vector<std::string_view> meet_specs;
    for (std::size_t i = 1; i < head.size(); ++i) {
        const auto t = head[i];
        if (t.rfind("roles=", 0) == 0) {
            for (auto r : detail::split(t.substr(6), ',')) {
                if (!detail::is_identifier(r)) throw ParseError("bad role '" + std::string(r) + "'", 1, col(t));
                roles.emplace_back(r);
            }
        } else if (t.rfind("meet=", 0) == 0) {
            for (auto m : detail::split(t.substr(5), ',')) meet_specs.push_back(m);
        } else {
            throw ParseError("unknown axiom field '" + std::string(t) + "'", 1, col(t));
        }
    }
    auto role_of = [&](std::string_view name, std::size_t column) -> std::size_t {
        for (std::size_t i = 0; i < roles.size(); ++i)
            if (roles[i] == name) return i;
        throw ParseError("unknown role '" + std::string(name) + "'", 1, column);
    };
    std::vector<RoleMeeting> meetings;
    for (auto m : meet_specs) {
        const auto dot = m.find('.');
        const auto colon = m.find(':');
        if (dot == std::string_view::npos || colon == std::string_view::npos || colon < dot)
            throw ParseError("expected meet=R1.R2:n", 1, col(m));
        int count = 0;
        try {
            count = static_cast<int>(Integer::parse(m.substr(colon + 1)).to_int64());
        } catch (const std::exception&) {
            throw ParseError("bad meeting count", 1, col(m));
        }
        meetings.push_back({role_of(m.substr(0, dot), col(m)), role_of(m.substr(dot + 1, colon - dot - 1), col(m)), count});
    }
    const RawRelation raw = parse_raw_relation(text.substr(bar + 1), 1, bar + 2, false);
    auto to_roles = [&](const RawWord& w) {
        std::vector<AxiomLetter> out;
        for (const auto& l : w) out.push_back({role_of(l.id, l.column), l.exponent});
        return out;
    };
    try {
        return Axiom(std::move(id), std::move(roles), std::move(meetings), to_roles(raw.lhs), to_roles(raw.rhs));
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), 1, 1);
    }
}

std::string format_axiom(const Axiom& a) {
    std::ostringstream out;
    out << a.id() << " roles=";
    for (std::size_t i = 0; i < a.roles().size(); ++i) out << (i ? "," : "") << a.roles()[i];
    bool first = true;
    for (std::size_t i = 0; i < a.roles().size(); ++i)
        for (std::size_t j = i + 1; j < a.roles().size(); ++j)
            if (int n = a.required_intersection(i, j); n != 0) {
                out << (first ? " meet=" : ",") << a.roles()[i] << '.' << a.roles()[j] << ':' << n;
                first = false;
            }
    auto side = [&](const std::vector<AxiomLetter>& w) {
        if (w.empty()) return std::string("1");
        std::string s;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) s += ' ';
            s += a.roles()[w[i].role];
            if (w[i].exponent < 0) s += "^-1";
        }
        return s;
    };
    out << " | " << side(a.lhs()) << " = " << side(a.rhs());
    return out.str();
}

AxiomSet::AxiomSet() : builtin_{chain2_axiom(), chain3_axiom()} {}

void AxiomSet::add(Axiom axiom) {
    if (contains(axiom.id())) throw InvalidArgument("axiom id '" + axiom.id() + "' already registered");
    user_.push_back(std::move(axiom));
}

bool AxiomSet::contains(std::string_view id) const {
    auto has = [&](const std::vector<Axiom>& v) {
        return std::any_of(v.begin(), v.end(), [&](const Axiom& a) { return a.id() == id; });
    };
    return has(builtin_) || has(user_);
}

const Axiom& AxiomSet::get(std::string_view id) const {
    for (const auto* v : {&builtin_, &user_})
        for (const auto& a : *v)
            if (a.id() == id) return a;
    throw InvalidArgument("unknown axiom '" + std::string(id) + "'");
}

// ---------------------------------------------------------------------------
// Moves

std::string format_move(const RewriteMove& m) {
    switch (m.kind) {
        case MoveKind::braid: return "braid@" + std::to_string(m.position);
        case MoveKind::commute: return "commute@" + std::to_string(m.position);
        case MoveKind::cyclic_shift: return "cyc@" + std::to_string(m.position);
        case MoveKind::cancel_pair: return "cancel@" + std::to_string(m.position);
        case MoveKind::axiom_substitute: break;
    }
    std::string out = "sub axiom=" + m.axiom_id + " dir=" + (m.direction == Direction::forward ? "f" : "b") + " @" +
                      std::to_string(m.position) + " map=";
    bool first = true;
    for (const auto& [role, curve] : m.embedding) {
        out += (first ? "" : ",") + role + ":" + curve;
        first = false;
    }
    return out;
}

RewriteMove parse_move(std::string_view text) {
    const auto tokens = detail::split_ws(text);
    if (tokens.empty()) throw ParseError("empty move");
    auto col = [&](std::string_view part) { return detail::column_of(text, part); };
    auto number = [&](std::string_view s, std::string_view at) {
        try {
            return static_cast<long>(Integer::parse(s).to_int64());
        } catch (const std::exception&) {
            throw ParseError("expected an integer, got '" + std::string(s) + "'", 1, col(at));
        }
    };
    RewriteMove m;
    const std::string_view first = tokens[0];
    if (first != "sub") {
        const auto at = first.find('@');
        if (at == std::string_view::npos || tokens.size() != 1)
            throw ParseError("expected '<kind>@<index>'", 1, col(first));
        const auto kind = first.substr(0, at);
        if (kind == "braid") m.kind = MoveKind::braid;
        else if (kind == "commute") m.kind = MoveKind::commute;
        else if (kind == "cyc") m.kind = MoveKind::cyclic_shift;
        else if (kind == "cancel") m.kind = MoveKind::cancel_pair;
        else throw ParseError("unknown move '" + std::string(kind) + "'", 1, col(first));
        m.position = number(first.substr(at + 1), first);
        if (m.kind != MoveKind::cyclic_shift && m.position < 0)
            throw ParseError("negative move position", 1, col(first));
        return m;
    }
    m.kind = MoveKind::axiom_substitute;
    bool have_axiom = false, have_dir = false, have_pos = false, have_map = false;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const auto t = tokens[i];
        if (t.rfind("axiom=", 0) == 0) {
            m.axiom_id = std::string(t.substr(6));
            have_axiom = !m.axiom_id.empty();
        } else if (t.rfind("dir=", 0) == 0) {
            const auto d = t.substr(4);
            if (d == "f" || d == "forward") m.direction = Direction::forward;
            else if (d == "b" || d == "backward") m.direction = Direction::backward;
            else throw ParseError("dir must be f or b", 1, col(t));
            have_dir = true;
        } else if (t.rfind('@', 0) == 0) {
            m.position = number(t.substr(1), t);
            if (m.position < 0) throw ParseError("negative move position", 1, col(t));
            have_pos = true;
        } else if (t.rfind("map=", 0) == 0) {
            for (auto pair : detail::split(t.substr(4), ',')) {
                const auto colon = pair.find(':');
                if (colon == std::string_view::npos) throw ParseError("expected role:curve in map", 1, col(t));
                const std::string role(pair.substr(0, colon));
                if (!m.embedding.emplace(role, std::string(pair.substr(colon + 1))).second)
                    throw ParseError("role '" + role + "' mapped twice", 1, col(t));
            }
            have_map = true;
        } else {
            throw ParseError("unknown field '" + std::string(t) + "'", 1, col(t));
        }
    }
    if (!have_axiom || !have_dir || !have_pos || !have_map)
        throw ParseError("sub needs axiom=, dir=, @index and map=", 1, col(first));
    return m;
}

namespace {

struct Instantiated {
    std::vector<Letter> source;
    std::vector<Letter> target;
};

std::vector<Letter> instantiate(const std::vector<AxiomLetter>& side, const std::vector<std::size_t>& curves) {
    std::vector<Letter> out;
    out.reserve(side.size());
    for (const auto& l : side) out.push_back({curves[l.role], l.exponent});
    return out;
}

Instantiated check_embedding(const TwistWord& w, const Axiom& axiom, const RewriteMove& m) {
    const CurveAlphabet& alphabet = w.alphabet();
    const auto fail = [&](const std::string& why) { return IllegalMove(format_move(m) + ": bad embedding: " + why); };
    std::vector<std::size_t> curves(axiom.roles().size());
    for (const auto& [role, curve] : m.embedding) {
        const auto& roles = axiom.roles();
        if (std::find(roles.begin(), roles.end(), role) == roles.end())
            throw fail("axiom " + axiom.id() + " has no role " + role);
        const auto idx = alphabet.find(curve);
        if (!idx) throw fail("unknown curve " + curve);
        curves[axiom.role_index(role)] = *idx;
    }
    for (std::size_t r = 0; r < axiom.roles().size(); ++r) {
        if (!m.embedding.count(axiom.roles()[r])) throw fail("role " + axiom.roles()[r] + " is not mapped");
        for (std::size_t q = 0; q < r; ++q) {
            if (curves[q] == curves[r])
                throw fail("roles " + axiom.roles()[q] + " and " + axiom.roles()[r] + " share a curve");
            const int want = axiom.required_intersection(q, r);
            const int have = alphabet.geometric_intersection(curves[q], curves[r]);
            if (want != have)
                throw fail("roles " + axiom.roles()[q] + "," + axiom.roles()[r] + " need intersection " +
                           std::to_string(want) + " but " + alphabet.curve(curves[q]).id + "," +
                           alphabet.curve(curves[r]).id + " meet " + std::to_string(have) + " times");
        }
    }
    auto lhs = instantiate(axiom.lhs(), curves);
    auto rhs = instantiate(axiom.rhs(), curves);
    const AlphabetPtr& ap = w.alphabet_ptr();
    if (homology_image(TwistWord(ap, lhs)) != homology_image(TwistWord(ap, rhs)))
        throw fail("the embedded axiom does not hold in homology");
    if (m.direction == Direction::forward) return {std::move(lhs), std::move(rhs)};
    return {std::move(rhs), std::move(lhs)};
}

}  // namespace

TwistWord apply_move(const TwistWord& w, const RewriteMove& m, const MoveContext& ctx) {
    const auto fail = [&](const std::string& why) { return IllegalMove(format_move(m) + ": " + why); };
    const auto& letters = w.letters();
    const std::size_t n = letters.size();
    const auto pos = static_cast<std::size_t>(m.position);
    std::vector<Letter> out(letters.begin(), letters.end());
    auto geometric = [&](const Letter& a, const Letter& b) {
        return w.alphabet().geometric_intersection(a.curve, b.curve);
    };
    auto id = [&](const Letter& l) { return w.alphabet().curve(l.curve).id; };

    switch (m.kind) {
        case MoveKind::braid: {
            if (m.position < 0 || pos + 3 > n) throw fail("position out of range for a word of length " + std::to_string(n));
            const Letter x = letters[pos], y = letters[pos + 1], z = letters[pos + 2];
            if (x.curve != z.curve) throw fail("pattern mismatch: " + id(x) + " " + id(y) + " " + id(z) + " is not x y x");
            if (x.exponent != y.exponent || y.exponent != z.exponent) throw fail("pattern mismatch: mixed exponents");
            if (const int g = geometric(x, y); g != 1)
                throw fail("curves " + id(x) + "," + id(y) + " meet " + std::to_string(g) + " times, braid needs 1");
            out[pos] = y;
            out[pos + 1] = x;
            out[pos + 2] = y;
            break;
        }
        case MoveKind::commute: {
            if (m.position < 0 || pos + 2 > n) throw fail("position out of range for a word of length " + std::to_string(n));
            if (const int g = geometric(letters[pos], letters[pos + 1]); g != 0)
                throw fail("curves " + id(letters[pos]) + "," + id(letters[pos + 1]) + " meet " + std::to_string(g) +
                           " times, commute needs 0");
            std::swap(out[pos], out[pos + 1]);
            break;
        }
        case MoveKind::cyclic_shift: {
            if (!ctx.identity_relation) throw fail("cyclic shifts are only legal on relations to the identity");
            if (n == 0) break;
            const long k = ((m.position % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n);
            std::rotate(out.begin(), out.begin() + k, out.end());
            break;
        }
        case MoveKind::cancel_pair: {
            if (m.position < 0 || pos + 2 > n) throw fail("position out of range for a word of length " + std::to_string(n));
            const Letter x = letters[pos], y = letters[pos + 1];
            if (x.curve != y.curve || x.exponent != -y.exponent) throw fail("letters are not an inverse pair");
            out.erase(out.begin() + static_cast<long>(pos), out.begin() + static_cast<long>(pos + 2));
            break;
        }
        case MoveKind::axiom_substitute: {
            static const AxiomSet builtin;
            const AxiomSet& axioms = ctx.axioms ? *ctx.axioms : builtin;
            if (!axioms.contains(m.axiom_id)) throw fail("unknown axiom '" + m.axiom_id + "'");
            const Instantiated inst = check_embedding(w, axioms.get(m.axiom_id), m);
            if (m.position < 0 || pos + inst.source.size() > n) throw fail("pattern runs past the end of the word");
            if (!std::equal(inst.source.begin(), inst.source.end(), letters.begin() + static_cast<long>(pos)))
                throw fail("pattern mismatch: the axiom's source side is not present at the position");
            out.erase(out.begin() + static_cast<long>(pos), out.begin() + static_cast<long>(pos + inst.source.size()));
            out.insert(out.begin() + static_cast<long>(pos), inst.target.begin(), inst.target.end());
            break;
        }
    }
    return TwistWord(w.alphabet_ptr(), std::move(out));
}

TwistWord apply_T(const TwistWord& w, std::size_t position, const Embedding& embedding) {
    return apply_move(w, RewriteMove{MoveKind::axiom_substitute, static_cast<long>(position), "chain3",
                                     Direction::forward, embedding});
}

TwistWord apply_Tinv(const TwistWord& w, std::size_t position, const Embedding& embedding) {
    return apply_move(w, RewriteMove{MoveKind::axiom_substitute, static_cast<long>(position), "chain3",
                                     Direction::backward, embedding});
}

TraceResult check_trace(const Trace& t) {
    TraceResult result;
    const MoveContext ctx{t.identity_relation, &t.axioms};
    TwistWord w = t.start;
    for (std::size_t i = 0; i < t.moves.size(); ++i) {
        try {
            w = apply_move(w, t.moves[i], ctx);
        } catch (const IllegalMove& e) {
            result.failing_move = i;
            result.reason = e.what();
            result.reached = w;
            return result;
        }
    }
    result.reached = w;
    if (!(w == t.claimed_end)) {
        result.reason = "replay ends at a word different from the claimed end";
        return result;
    }
    result.ok = true;
    return result;
}

Trace parse_trace(std::string_view text, const std::filesystem::path& base_dir) {
    AlphabetPtr alphabet;
    std::string alphabet_spec;
    std::optional<TwistWord> start, end;
    std::optional<bool> identity;
    AxiomSet axioms;
    std::vector<RewriteMove> moves;

    for (const auto& line : detail::content_lines(text)) {
        const auto tokens = detail::split_ws(line.text);
        const std::string_view key = tokens[0];
        const std::size_t key_col = detail::column_of(line.text, key);
        const auto rest_of = [&]() {
            return line.text.substr(key_col - 1 + key.size());
        };
        if (key == "alphabet") {
            if (alphabet) throw ParseError("repeated alphabet directive", line.number, key_col);
            if (tokens.size() != 2) throw ParseError("expected 'alphabet <spec>'", line.number, key_col);
            alphabet_spec = std::string(tokens[1]);
            alphabet = shared_alphabet(alphabet_spec, base_dir);
        } else if (key == "relation") {
            if (tokens.size() != 2 || (tokens[1] != "identity" && tokens[1] != "general"))
                throw ParseError("expected 'relation identity' or 'relation general'", line.number, key_col);
            identity = tokens[1] == "identity";
        } else if (key == "start" || key == "end") {
            if (!alphabet) throw ParseError("'alphabet' must precede '" + std::string(key) + "'", line.number, key_col);
            const auto rest = rest_of();
            const auto col = detail::column_of(line.text, rest);
            TwistWord word = resolve(parse_raw_word(rest, line.number, col), alphabet);
            auto& slot = key == "start" ? start : end;
            if (slot) throw ParseError("repeated '" + std::string(key) + "'", line.number, key_col);
            slot = std::move(word);
        } else if (key == "axiom") {
            const auto rest = rest_of();
            const auto col = detail::column_of(line.text, rest);
            try {
                axioms.add(parse_axiom(rest));
            } catch (const ParseError& e) {
                throw ParseError(e.message(), line.number, col + (e.column() ? e.column() - 1 : 0));
            } catch (const InvalidArgument& e) {
                throw ParseError(e.what(), line.number, key_col);
            }
        } else {
            try {
                moves.push_back(parse_move(line.text));
            } catch (const ParseError& e) {
                throw ParseError(e.message(), line.number, e.column() ? e.column() : key_col);
            }
        }
    }
    if (!start) throw ParseError("trace has no 'start' line");
    if (!end) throw ParseError("trace has no 'end' line");
    Trace t{std::move(*start), std::move(moves), std::move(*end), identity.value_or(false), std::move(axioms)};
    return t;
}

Trace load_trace(const std::filesystem::path& path) {
    return parse_trace(detail::read_file(path), path.parent_path());
}

std::string format_trace(const Trace& t, std::string_view alphabet_spec) {
    std::ostringstream out;
    out << "alphabet " << alphabet_spec << '\n';
    out << "relation " << (t.identity_relation ? "identity" : "general") << '\n';
    out << "start " << format_word(t.start) << '\n';
    out << "end " << format_word(t.claimed_end) << '\n';
    for (const auto& a : t.axioms.user_axioms()) out << "axiom " << format_axiom(a) << '\n';
    for (const auto& m : t.moves) out << format_move(m) << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Homology

IntMatrix homology_image(const TwistWord& w) {
    const int g = w.genus();
    const auto n = static_cast<Eigen::Index>(2 * g);
    const IntMatrix j = symplectic_form<Integer>(g);
    IntMatrix m = IntMatrix::Identity(n, n);
    // M T_c = M + e (M c)(J c)^T, a rank-one update per letter.
    for (const Letter& l : w.letters()) {
        const Curve& c = w.alphabet().curve(l.curve);
        if (c.separating) continue;
        const IntVector jc = j * c.homology;
        const IntVector mc = m * c.homology;
        m += Integer(l.exponent) * mc * jc.transpose();
    }
    return m;
}

bool verify_relation_homology(const Relation& r) { return homology_image(r.lhs) == homology_image(r.rhs); }

// ---------------------------------------------------------------------------
// Structure

Relation fibre_sum(const Relation& r1, const Relation& r2) {
    if (r1.genus() != r2.genus())
        throw GenusMismatch("fibre sum of genus " + std::to_string(r1.genus()) + " and genus " +
                            std::to_string(r2.genus()) + " relations");
    if (!r1.is_identity() || !r2.is_identity()) throw InvalidArgument("fibre sum needs relations to the identity");
    return Relation(r1.lhs * r2.lhs);
}

Integer TwistCensus::separating() const {
    Integer s;
    for (const auto& [h, count] : s_by_genus) s += count;
    return s;
}

TwistCensus classify_twists(const TwistWord& w) {
    if (!w.is_positive()) throw InvalidArgument("twist census needs a positive word");
    TwistCensus c;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Curve& curve = w.curve_at(i);
        if (curve.separating) c.s_by_genus[*curve.split_genus] += 1;
        else c.n += 1;
        c.total += 1;
    }
    return c;
}

int abelianized_residue(const TwistCensus& census) {
    return static_cast<int>(mod(census.n + Integer(2) * census.separating(), Integer(10)).to_int64());
}

int abelianized_residue(const TwistWord& w) {
    if (w.genus() != 2)
        throw InvalidArgument("abelianized residue is defined for genus 2 only, got genus " + std::to_string(w.genus()));
    return abelianized_residue(classify_twists(w));
}

TwistWord cyclic_normal_form(const TwistWord& w) {
    const auto& l = w.letters();
    const std::size_t n = l.size();
    auto key = [](const Letter& x) { return std::pair(x.curve, x.exponent); };
    std::size_t best = 0;
    for (std::size_t r = 1; r < n; ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto a = key(l[(r + i) % n]);
            const auto b = key(l[(best + i) % n]);
            if (a < b) {
                best = r;
                break;
            }
            if (b < a) break;
        }
    }
    std::vector<Letter> out(l.begin(), l.end());
    std::rotate(out.begin(), out.begin() + static_cast<long>(best), out.end());
    return TwistWord(w.alphabet_ptr(), std::move(out));
}

bool cyclically_equivalent(const TwistWord& a, const TwistWord& b) {
    return a.size() == b.size() && cyclic_normal_form(a) == cyclic_normal_form(b);
}

}  // namespace lefschetz
