#include "lefschetz/report_io.hpp"

#include "text_util.hpp"

#include <sstream>

namespace lefschetz {

using nlohmann::json;

Format parse_format(std::string_view name) {
    if (name == "text") return Format::text;
    if (name == "structured" || name == "json") return Format::structured;
    throw InvalidArgument("unknown format '" + std::string(name) + "' (expected text or structured)");
}

namespace {

void flatten(const json& j, const std::string& path, std::ostringstream& out) {
    if (j.is_object()) {
        if (j.empty()) {
            out << path << ": {}\n";
            return;
        }
        for (const auto& [key, value] : j.items()) flatten(value, path.empty() ? key : path + "." + key, out);
    } else if (j.is_array()) {
        if (j.empty()) {
            out << path << ": []\n";
            return;
        }
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
    } else if (j.is_string()) {
        out << path << ": " << j.get<std::string>() << '\n';
    } else {
        out << path << ": " << j.dump() << '\n';
    }
}

// Walks `path` (a.b[2].c) in `root`, creating containers on the way.
json& slot(json& root, std::string_view path, std::size_t line) {
    json* cur = &root;
    std::size_t i = 0;
    while (i < path.size()) {
        if (path[i] == '[') {
            const auto close = path.find(']', i);
            if (close == std::string_view::npos) throw ParseError("unterminated index in '" + std::string(path) + "'", line, 1);
            std::size_t idx = 0;
            try {
                idx = static_cast<std::size_t>(std::stoul(std::string(path.substr(i + 1, close - i - 1))));
            } catch (const std::exception&) {
                throw ParseError("bad index in '" + std::string(path) + "'", line, 1);
            }
            if (cur->is_null()) *cur = json::array();
            if (!cur->is_array()) throw ParseError("'" + std::string(path) + "' mixes list and map", line, 1);
            while (cur->size() <= idx) cur->push_back(json());
            cur = &(*cur)[idx];
            i = close + 1;
            if (i < path.size() && path[i] == '.') ++i;
            continue;
        }
        const auto end = path.find_first_of(".[", i);
        const std::string key(path.substr(i, end == std::string_view::npos ? std::string_view::npos : end - i));
        if (key.empty()) throw ParseError("empty key in '" + std::string(path) + "'", line, 1);
        if (cur->is_null()) *cur = json::object();
        if (!cur->is_object()) throw ParseError("'" + std::string(path) + "' mixes list and map", line, 1);
        cur = &(*cur)[key];
        i = end == std::string_view::npos ? path.size() : end;
        if (i < path.size() && path[i] == '.') ++i;
    }
    return *cur;
}

Integer integer_leaf(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("report: missing '") + key + "'");
    const json& v = j[key];
    try {
        if (v.is_string()) return Integer::parse(v.get<std::string>());
        if (v.is_number_integer()) return Integer(v.get<long long>());
    } catch (const std::invalid_argument&) {
    }
    throw ParseError(std::string("report: '") + key + "' is not an integer");
}

Rational rational_leaf(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("report: missing '") + key + "'");
    const json& v = j[key];
    try {
        if (v.is_string()) return Rational::parse(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long long>());
    } catch (const std::exception&) {
    }
    throw ParseError(std::string("report: '") + key + "' is not a rational");
}

}  // namespace

std::string emit(const json& document, Format format) {
    if (format == Format::structured) return document.dump(2) + "\n";
    std::ostringstream out;
    if (document.is_object() && document.empty()) return "";
    flatten(document, "", out);
    return out.str();
}

json parse_document(std::string_view text) {
    const auto t = detail::trim(text);
    if (!t.empty() && t.front() == '{') {
        try {
            return json::parse(t);
        } catch (const json::parse_error& e) {
            throw ParseError(std::string("structured report: ") + e.what());
        }
    }
    json root = json::object();
    std::size_t number = 0;
    std::string_view rest = text;
    while (!rest.empty()) {
        ++number;
        const auto nl = rest.find('\n');
        const std::string_view line = rest.substr(0, nl);
        rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
        if (detail::trim(line).empty()) continue;
        const auto colon = line.find(": ");
        if (colon == std::string_view::npos) throw ParseError("expected 'key: value'", number, 1);
        json& leaf = slot(root, detail::trim(line.substr(0, colon)), number);
        if (!leaf.is_null()) throw ParseError("duplicate key", number, 1);
        const std::string_view value = line.substr(colon + 2);
        if (value == "[]") leaf = json::array();
        else if (value == "{}") leaf = json::object();
        else leaf = std::string(value);
    }
    return root;
}

json report_to_json(const InvariantReport& r) {
    json j;
    j["schema"] = std::string(report_schema);
    j["kind"] = "invariants";
    j["genus"] = std::to_string(r.genus);
    j["base_points"] = std::to_string(r.base_points);
    j["e"] = r.e.str();
    j["sigma"] = r.sigma.str();
    j["c1_sq"] = r.c1_sq.str();
    j["c2"] = r.c2.str();
    j["lambda"] = r.lambda.str();
    json census;
    census["n"] = r.census.n.str();
    census["total"] = r.census.total.str();
    json s = json::object();
    for (const auto& [h, count] : r.census.s_by_genus) s[std::to_string(h)] = count.str();
    census["s_by_genus"] = s;
    j["census"] = census;
    if (r.h1) {
        json h1 = json::array();
        for (const auto& f : *r.h1) h1.push_back(f.str());
        j["h1"] = h1;
    }
    j["signature_route"] = r.signature_route;
    j["notes"] = r.notes;
    return j;
}

InvariantReport report_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("report: expected an object");
    if (j.contains("schema") && j["schema"] != std::string(report_schema))
        throw ParseError("report: unsupported schema " + j["schema"].dump());
    InvariantReport r;
    r.genus = static_cast<int>(integer_leaf(j, "genus").to_int64());
    r.base_points = static_cast<int>(integer_leaf(j, "base_points").to_int64());
    r.e = integer_leaf(j, "e");
    r.sigma = integer_leaf(j, "sigma");
    r.c1_sq = integer_leaf(j, "c1_sq");
    r.c2 = integer_leaf(j, "c2");
    r.lambda = rational_leaf(j, "lambda");
    if (!j.contains("census") || !j["census"].is_object()) throw ParseError("report: missing census");
    const json& c = j["census"];
    r.census.n = integer_leaf(c, "n");
    r.census.total = integer_leaf(c, "total");
    if (c.contains("s_by_genus")) {
        for (const auto& [h, count] : c["s_by_genus"].items()) {
            try {
                r.census.s_by_genus[std::stoi(h)] = integer_leaf(c["s_by_genus"], h.c_str());
            } catch (const std::logic_error&) {
                throw ParseError("report: bad split genus '" + h + "'");
            }
        }
    }
    if (j.contains("h1")) {
        std::vector<Integer> h1;
        for (const auto& v : j["h1"]) {
            if (!v.is_string()) throw ParseError("report: h1 entries must be strings");
            h1.push_back(Integer::parse(v.get<std::string>()));
        }
        r.h1 = std::move(h1);
    }
    if (j.contains("signature_route")) r.signature_route = j["signature_route"].get<std::string>();
    if (j.contains("notes"))
        for (const auto& n : j["notes"]) r.notes.push_back(n.get<std::string>());
    return r;
}

std::string emit_report(const InvariantReport& r, Format format) { return emit(report_to_json(r), format); }

InvariantReport parse_report(std::string_view text) { return report_from_json(parse_document(text)); }

}  // namespace lefschetz
