#pragma once

#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gqg/hc.hpp"

namespace gqg {

// std::map-backed, so keys come out sorted and dumps are deterministic
using Json = nlohmann::json;

// ---- job specifications -------------------------------------------------------

struct JobSpec {
    std::string command;
    FieldSpec field;
    std::vector<std::vector<std::string>> qlit;  // matrix entries as literals
    Bicharacter chi;
    std::optional<EtaHom> eta;
    std::optional<Character> lambda;
    long box = 4;
    long cap_roots = 1024;
    long cap_height = 12;
    std::optional<Weight> root;
    long position = 1;
    long twist = 1;
    std::vector<std::pair<Weight, Weight>> seeds;  // window seeds; empty = full box
    std::string preset;
    std::string out;
    std::string cache;
};

inline const std::vector<std::string>& job_commands() {
    static const std::vector<std::string> cmds = {
        "roots",  "groupoid",     "pbw-dims", "shapovalov",  "singular",
        "radical", "center-rank1", "hc-solve", "center-lift", "verify-all"};
    return cmds;
}

// ---- presets --------------------------------------------------------------------

struct PresetDef {
    FieldSpec field;
    std::vector<std::vector<std::string>> q;
};

inline const std::vector<std::pair<std::string, PresetDef>>& preset_table() {
    static const std::vector<std::pair<std::string, PresetDef>> table = {
        {"A1-generic", {FieldSpec::rational_function(), {{"t"}}}},
        {"A1-zeta3", {FieldSpec::cyclotomic(3), {{"z"}}}},
        {"A1-zeta4", {FieldSpec::cyclotomic(4), {{"z"}}}},
        {"A1-zeta6", {FieldSpec::cyclotomic(6), {{"z"}}}},
        {"A2-generic",
         {FieldSpec::rational_function(), {{"t^2", "t^-1"}, {"t^-1", "t^2"}}}},
        {"A2-zeta3", {FieldSpec::cyclotomic(3), {{"z", "z"}, {"z", "z"}}}},
        {"B2-generic", {FieldSpec::rational_function(), {{"t^2", "t^-1"}, {"t^-1", "t"}}}},
        {"groupoid-example", {FieldSpec::cyclotomic(6), {{"z^2", "z^4"}, {"1", "z^3"}}}},
    };
    return table;
}

inline const PresetDef& find_preset(const std::string& name) {
    for (const auto& [key, def] : preset_table())
        if (key == name) return def;
    std::string known;
    for (const auto& [key, def] : preset_table()) known += (known.empty() ? "" : ", ") + key;
    throw ValidationError("field 'preset' names no known preset '" + name + "' (known: " + known +
                          ")");
}

inline Bicharacter preset_chi(const PresetDef& def) {
    std::vector<std::vector<Scalar>> mat;
    for (const auto& row : def.q) {
        std::vector<Scalar> vals;
        for (const auto& lit : row) vals.push_back(parse_scalar(def.field, lit));
        mat.push_back(std::move(vals));
    }
    return Bicharacter{def.field, static_cast<int>(def.q.size()), std::move(mat)};
}

namespace detail {

inline long json_long(const Json& j, const std::string& name) {
    if (!j.is_number_integer()) throw ValidationError("field '" + name + "' must be an integer");
    return j.get<long>();
}

inline Weight json_weight(const Json& j, const std::string& name) {
    if (!j.is_array()) throw ValidationError("field '" + name + "' must be an integer array");
    Weight w;
    for (const auto& x : j) w.push_back(json_long(x, name));
    return w;
}

}  // namespace detail

// build and validate a JobSpec from a parsed JSON object; defaults are applied
// here so every consumer sees a complete spec
inline JobSpec job_from_json(const Json& j) {
    if (!j.is_object()) throw ValidationError("job must be a JSON object");
    JobSpec job;
    if (!j.contains("command") || !j.at("command").is_string())
        throw ValidationError("field 'command' is required and must be a string");
    job.command = j.at("command").get<std::string>();
    const auto& cmds = job_commands();
    if (std::find(cmds.begin(), cmds.end(), job.command) == cmds.end())
        throw ValidationError("field 'command' has no subcommand named '" + job.command + "'");

    if (j.contains("preset")) {
        if (!j.at("preset").is_string()) throw ValidationError("field 'preset' must be a string");
        job.preset = j.at("preset").get<std::string>();
    }

    bool have_field = j.contains("field");
    if (have_field) {
        const Json& f = j.at("field");
        if (!f.is_object() || f.size() != 1)
            throw ValidationError("field 'field' must select exactly one backend");
        if (f.contains("cyclotomic")) {
            long n = detail::json_long(f.at("cyclotomic"), "field.cyclotomic");
            if (n < 1) throw ValidationError("field 'field.cyclotomic' must be positive");
            job.field = FieldSpec::cyclotomic(static_cast<unsigned>(n));
        } else if (f.contains("rational_function")) {
            job.field = FieldSpec::rational_function();
        } else {
            throw ValidationError("field 'field' must name 'cyclotomic' or 'rational_function'");
        }
    }

    if (j.contains("q")) {
        if (!have_field) throw ValidationError("field 'field' is required alongside 'q'");
        const Json& q = j.at("q");
        if (!q.is_array() || q.empty()) throw ValidationError("field 'q' must be a nonempty matrix");
        std::size_t n = q.size();
        std::vector<std::vector<Scalar>> mat;
        for (std::size_t r = 0; r < n; ++r) {
            const Json& row = q.at(r);
            if (!row.is_array() || row.size() != n)
                throw ValidationError("field 'q' must be a square matrix");
            std::vector<std::string> lits;
            std::vector<Scalar> vals;
            for (std::size_t c = 0; c < n; ++c) {
                if (!row.at(c).is_string())
                    throw ValidationError("field 'q' entries must be scalar literals");
                std::string lit = row.at(c).get<std::string>();
                lits.push_back(lit);
                try {
                    vals.push_back(parse_scalar(job.field, lit));
                } catch (const ParseError& e) {
                    throw ValidationError("field 'q[" + std::to_string(r) + "][" +
                                          std::to_string(c) + "]': " + e.what());
                }
                if (vals.back().is_zero())
                    throw ValidationError("field 'q' entries must be nonzero");
            }
            job.qlit.push_back(std::move(lits));
            mat.push_back(std::move(vals));
        }
        job.chi = Bicharacter{job.field, static_cast<int>(n), std::move(mat)};
    } else if (have_field && job.preset.empty()) {
        throw ValidationError("field 'q' is required when 'field' is given without a preset");
    }

    bool have_chi = !job.qlit.empty();
    if (!have_chi && !job.preset.empty()) {
        if (have_field)
            throw ValidationError("field 'field' without 'q' conflicts with 'preset'");
        const PresetDef& def = find_preset(job.preset);
        job.field = def.field;
        job.qlit = def.q;
        job.chi = preset_chi(def);
        have_chi = true;
    }
    if (!have_chi && job.command != "verify-all")
        throw ValidationError("field 'q' (with 'field') or 'preset' is required");

    if (j.contains("caps")) {
        const Json& caps = j.at("caps");
        if (!caps.is_object()) throw ValidationError("field 'caps' must be an object");
        if (caps.contains("roots")) job.cap_roots = detail::json_long(caps.at("roots"), "caps.roots");
        if (caps.contains("height"))
            job.cap_height = detail::json_long(caps.at("height"), "caps.height");
    }
    if (j.contains("box")) job.box = detail::json_long(j.at("box"), "box");
    if (job.cap_roots <= 0 || job.cap_height <= 0 || job.box <= 0)
        throw ValidationError("fields 'caps.roots', 'caps.height', 'box' must be positive");

    if (j.contains("eta")) {
        if (!have_chi) throw ValidationError("field 'eta' needs an explicit q matrix");
        const Json& e = j.at("eta");
        if (!e.is_array() || e.size() != static_cast<std::size_t>(job.chi.rank))
            throw ValidationError("field 'eta' must list one literal per row of q");
        EtaHom eta{job.field, {}};
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e.at(i).is_string()) throw ValidationError("field 'eta' entries must be literals");
            try {
                eta.vals.push_back(parse_scalar(job.field, e.at(i).get<std::string>()));
            } catch (const ParseError& ex) {
                throw ValidationError("field 'eta[" + std::to_string(i) + "]': " + ex.what());
            }
            if (eta.vals.back().is_zero())
                throw ValidationError("field 'eta' entries must be nonzero");
        }
        job.eta = std::move(eta);
    }

    if (j.contains("lambda")) {
        if (!have_chi) throw ValidationError("field 'lambda' needs an explicit q matrix");
        const Json& l = j.at("lambda");
        if (!l.is_object() || !l.contains("k") || !l.contains("l"))
            throw ValidationError("field 'lambda' must carry arrays 'k' and 'l'");
        Character lam{job.field, {}, {}};
        auto read = [&](const Json& arr, const char* which, std::vector<Scalar>& dst) {
            if (!arr.is_array() || arr.size() != static_cast<std::size_t>(job.chi.rank))
                throw ValidationError(std::string("field 'lambda.") + which +
                                      "' must list one literal per row of q");
            for (std::size_t i = 0; i < arr.size(); ++i) {
                if (!arr.at(i).is_string())
                    throw ValidationError(std::string("field 'lambda.") + which +
                                          "' entries must be literals");
                try {
                    dst.push_back(parse_scalar(job.field, arr.at(i).get<std::string>()));
                } catch (const ParseError& ex) {
                    throw ValidationError(std::string("field 'lambda.") + which + "[" +
                                          std::to_string(i) + "]': " + ex.what());
                }
                if (dst.back().is_zero())
                    throw ValidationError(std::string("field 'lambda.") + which +
                                          "' entries must be nonzero");
            }
        };
        read(l.at("k"), "k", lam.kvals);
        read(l.at("l"), "l", lam.lvals);
        job.lambda = std::move(lam);
    }

    if (j.contains("root")) {
        job.root = detail::json_weight(j.at("root"), "root");
        if (have_chi && job.root->size() != static_cast<std::size_t>(job.chi.rank))
            throw ValidationError("field 'root' must have one entry per row of q");
    }
    if (j.contains("position")) job.position = detail::json_long(j.at("position"), "position");
    if (j.contains("twist")) job.twist = detail::json_long(j.at("twist"), "twist");

    if (j.contains("window")) {
        const Json& w = j.at("window");
        if (!w.is_object()) throw ValidationError("field 'window' must be an object");
        if (w.contains("box")) job.box = detail::json_long(w.at("box"), "window.box");
        if (w.contains("radius")) job.box = detail::json_long(w.at("radius"), "window.radius");
        if (job.box <= 0) throw ValidationError("field 'window' radius must be positive");
        if (w.contains("seeds")) {
            const Json& s = w.at("seeds");
            if (!s.is_array()) throw ValidationError("field 'window.seeds' must be an array");
            for (const auto& pair : s) {
                if (!pair.is_array() || pair.size() != 2)
                    throw ValidationError("field 'window.seeds' entries must be [lambda, mu] pairs");
                job.seeds.emplace_back(detail::json_weight(pair.at(0), "window.seeds"),
                                       detail::json_weight(pair.at(1), "window.seeds"));
            }
        }
    }

    if (j.contains("out")) {
        if (!j.at("out").is_string()) throw ValidationError("field 'out' must be a string");
        job.out = j.at("out").get<std::string>();
    }
    if (j.contains("cache")) {
        if (!j.at("cache").is_string()) throw ValidationError("field 'cache' must be a string");
        job.cache = j.at("cache").get<std::string>();
    }
    return job;
}

// ---- a small TOML subset ------------------------------------------------------
//
// Enough for job files: top-level and [section] scopes, `key = value` lines,
// strings, integers, booleans, and (nested) arrays.  '#' starts a comment
// outside strings; arrays may span lines until their brackets balance.

namespace detail {

struct TomlCursor {
    const std::string& s;
    std::size_t i = 0;
    int line = 1;

    bool eof() const { return i >= s.size(); }
    char peek() const { return s[i]; }
    void advance() {
        if (s[i] == '\n') ++line;
        ++i;
    }
    void skip_ws_inline() {
        while (!eof() && (s[i] == ' ' || s[i] == '\t')) advance();
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("line " + std::to_string(line) + ": " + what);
    }
};

inline Json toml_value(TomlCursor& c);

inline Json toml_array(TomlCursor& c) {
    Json arr = Json::array();
    c.advance();  // '['
    for (;;) {
        while (!c.eof() && (std::isspace(static_cast<unsigned char>(c.peek())) || c.peek() == '#')) {
            if (c.peek() == '#')
                while (!c.eof() && c.peek() != '\n') c.advance();
            else
                c.advance();
        }
        if (c.eof()) c.fail("unterminated array");
        if (c.peek() == ']') {
            c.advance();
            return arr;
        }
        arr.push_back(toml_value(c));
        while (!c.eof() && (std::isspace(static_cast<unsigned char>(c.peek())) || c.peek() == '#')) {
            if (c.peek() == '#')
                while (!c.eof() && c.peek() != '\n') c.advance();
            else
                c.advance();
        }
        if (c.eof()) c.fail("unterminated array");
        if (c.peek() == ',') {
            c.advance();
            continue;
        }
        if (c.peek() == ']') {
            c.advance();
            return arr;
        }
        c.fail("expected ',' or ']' in array");
    }
}

inline Json toml_value(TomlCursor& c) {
    c.skip_ws_inline();
    if (c.eof()) c.fail("expected a value");
    char ch = c.peek();
    if (ch == '[') return toml_array(c);
    if (ch == '"') {
        c.advance();
        std::string out;
        while (!c.eof() && c.peek() != '"') {
            if (c.peek() == '\n') c.fail("unterminated string");
            out.push_back(c.peek());
            c.advance();
        }
        if (c.eof()) c.fail("unterminated string");
        c.advance();
        return Json(out);
    }
    std::string tok;
    while (!c.eof() && (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '-' ||
                        c.peek() == '+' || c.peek() == '_'))
    {
        tok.push_back(c.peek());
        c.advance();
    }
    if (tok == "true") return Json(true);
    if (tok == "false") return Json(false);
    if (tok.empty()) c.fail("expected a value");
    try {
        std::size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size()) c.fail("bad integer '" + tok + "'");
        return Json(v);
    } catch (const std::invalid_argument&) {
        c.fail("bad value '" + tok + "'");
    } catch (const std::out_of_range&) {
        c.fail("integer out of range '" + tok + "'");
    }
}

}  // namespace detail

inline Json toml_to_json(const std::string& text) {
    detail::TomlCursor c{text};
    Json root = Json::object();
    Json* scope = &root;
    while (!c.eof()) {
        c.skip_ws_inline();
        if (c.eof()) break;
        char ch = c.peek();
        if (ch == '\n') {
            c.advance();
            continue;
        }
        if (ch == '#') {
            while (!c.eof() && c.peek() != '\n') c.advance();
            continue;
        }
        if (ch == '[') {
            c.advance();
            std::string name;
            while (!c.eof() && c.peek() != ']' && c.peek() != '\n') {
                name.push_back(c.peek());
                c.advance();
            }
            if (c.eof() || c.peek() != ']') c.fail("unterminated section header");
            c.advance();
            if (name.empty()) c.fail("empty section name");
            scope = &root[name];
            if (!scope->is_object()) *scope = Json::object();
            continue;
        }
        std::string key;
        while (!c.eof() && (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '_' ||
                            c.peek() == '-'))
        {
            key.push_back(c.peek());
            c.advance();
        }
        if (key.empty()) c.fail("expected a key");
        c.skip_ws_inline();
        if (c.eof() || c.peek() != '=') c.fail("expected '=' after key '" + key + "'");
        c.advance();
        (*scope)[key] = detail::toml_value(c);
        c.skip_ws_inline();
        if (!c.eof() && c.peek() == '#')
            while (!c.eof() && c.peek() != '\n') c.advance();
        if (!c.eof() && c.peek() != '\n') c.fail("trailing characters after value for '" + key + "'");
    }
    return root;
}

// ---- entry points --------------------------------------------------------------

inline JobSpec parse_job_text(const std::string& text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) throw ParseError("empty job input");
    Json j;
    if (text[i] == '{') {
        try {
            j = Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw ParseError(std::string("JSON: ") + e.what());
        }
    } else {
        j = toml_to_json(text);
    }
    return job_from_json(j);
}

// path "-" reads standard input
inline JobSpec parse_job(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open job file '" + path + "'");
        buf << in.rdbuf();
    }
    return parse_job_text(buf.str());
}

// ---- report helpers -------------------------------------------------------------

inline Json weight_json(const Weight& w) {
    Json a = Json::array();
    for (long x : w) a.push_back(x);
    return a;
}

inline std::string report_dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace gqg
