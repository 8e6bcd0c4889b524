#include "gc/io.hpp"

#include "gc/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace gc {

namespace {

constexpr std::string_view operator_chars = "<>~!+*/^&|-";

struct Token {
    std::string_view text;
    std::size_t column; // 1-based
};

std::vector<Token> split(std::string_view line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#')
            break;
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' && line[j] != '#')
            ++j;
        out.push_back({line.substr(i, j - i), i + 1});
        i = j;
    }
    return out;
}

std::size_t parse_count(const Token& t, std::size_t line)
{
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size())
        throw ParseError(line, t.column, "expected a non-negative integer, got '" + std::string(t.text) + "'");
    return v;
}

class Reader {
public:
    Reader(std::string_view text, bool forest) : text_(text), forest_(forest) {}

    ForestStructure run()
    {
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text_.size()) {
            auto end = text_.find('\n', pos);
            if (end == std::string_view::npos)
                end = text_.size();
            ++line_no;
            line(split(text_.substr(pos, end - pos)), line_no);
            pos = end + 1;
        }
        return finish();
    }

private:
    struct Deferred {
        std::size_t line;
        std::vector<Token> tokens;
    };

    void expect_args(const std::vector<Token>& t, std::size_t n, std::size_t line_no)
    {
        if (t.size() != n + 1) {
            auto col = t.size() > n + 1 ? t[n + 1].column : t.back().column + t.back().text.size();
            throw ParseError(line_no, col,
                             "'" + std::string(t[0].text) + "' takes " + std::to_string(n) + " argument(s)");
        }
    }

    Element element(const Token& t, std::size_t line_no)
    {
        auto e = s_.find(t.text);
        if (!e)
            throw ParseError(line_no, t.column, "unknown element " + std::string(t.text));
        return *e;
    }

    void line(const std::vector<Token>& t, std::size_t line_no)
    {
        if (t.empty())
            return;
        const auto d = t[0].text;
        if (d == "rel") {
            expect_args(t, 2, line_no);
            if (!elements_.empty() || tuples_seen_)
                throw ParseError(line_no, t[0].column, "relations must be declared before elements");
            if (!is_relation_name(t[1].text))
                throw ParseError(line_no, t[1].column, "invalid relation name '" + std::string(t[1].text) + "'");
            auto arity = parse_count(t[2], line_no);
            if (arity == 0)
                throw ParseError(line_no, t[2].column, "arity must be positive");
            if (vocab_.find(t[1].text))
                throw ParseError(line_no, t[1].column, "duplicate relation " + std::string(t[1].text));
            vocab_.add(std::string(t[1].text), arity);
        } else if (d == "elem") {
            expect_args(t, 1, line_no);
            start();
            if (!is_identifier(t[1].text))
                throw ParseError(line_no, t[1].column, "invalid element id '" + std::string(t[1].text) + "'");
            if (s_.find(t[1].text))
                throw ParseError(line_no, t[1].column, "duplicate element " + std::string(t[1].text));
            s_.add_element(std::string(t[1].text));
            elements_.push_back(std::string(t[1].text));
        } else if (d == "tuple") {
            start();
            tuples_seen_ = true;
            if (t.size() < 2)
                throw ParseError(line_no, t[0].column + 5, "'tuple' needs a relation name");
            auto sym = vocab_.find(t[1].text);
            if (!sym)
                throw ParseError(line_no, t[1].column, "unknown relation " + std::string(t[1].text));
            const auto arity = vocab_[*sym].arity;
            if (t.size() - 2 != arity)
                throw ParseError(line_no, t[1].column,
                                 "arity mismatch: " + std::string(t[1].text) + " has arity " + std::to_string(arity) +
                                     ", got " + std::to_string(t.size() - 2) + " entries");
            Tuple tuple;
            for (std::size_t i = 2; i < t.size(); ++i)
                tuple.push_back(element(t[i], line_no));
            s_.add_tuple(*sym, std::move(tuple));
        } else if (d == "point") {
            expect_args(t, 1, line_no);
            start();
            if (point_seen_)
                throw ParseError(line_no, t[0].column, "multiple point lines");
            point_seen_ = true;
            s_.set_point(element(t[1], line_no));
        } else if (forest_ && (d == "parent" || d == "pebble" || d == "pebbles")) {
            expect_args(t, d == "pebbles" ? 1 : 2, line_no);
            start();
            deferred_.push_back({line_no, t});
        } else {
            throw ParseError(line_no, t[0].column, "unknown directive '" + std::string(d) + "'");
        }
    }

    void start()
    {
        if (!started_) {
            s_ = Structure(vocab_);
            started_ = true;
        }
    }

    ForestStructure finish()
    {
        start();
        ForestStructure f(std::move(s_));
        std::vector<bool> has_parent(f.size(), false);
        std::vector<std::size_t> pebble(f.size(), 0);
        bool any_pebble = false;
        for (const auto& [line_no, t] : deferred_) {
            auto find = [&](const Token& tok) {
                auto e = f.base.find(tok.text);
                if (!e)
                    throw ParseError(line_no, tok.column, "unknown element " + std::string(tok.text));
                return *e;
            };
            if (t[0].text == "parent") {
                auto c = find(t[1]);
                auto p = find(t[2]);
                if (has_parent[c])
                    throw ParseError(line_no, t[1].column, "second parent for " + std::string(t[1].text));
                has_parent[c] = true;
                f.parent[c] = p;
            } else if (t[0].text == "pebble") {
                auto e = find(t[1]);
                auto idx = parse_count(t[2], line_no);
                if (idx == 0)
                    throw ParseError(line_no, t[2].column, "pebble indices start at 1");
                if (pebble[e] != 0)
                    throw ParseError(line_no, t[1].column, "second pebble for " + std::string(t[1].text));
                pebble[e] = idx;
                any_pebble = true;
            } else {
                if (f.pebble_bound)
                    throw ParseError(line_no, t[0].column, "multiple pebbles lines");
                auto k = parse_count(t[1], line_no);
                if (k == 0)
                    throw ParseError(line_no, t[1].column, "pebble bound must be positive");
                f.pebble_bound = k;
            }
        }
        if (any_pebble || f.pebble_bound) {
            for (Element e = 0; e < f.size(); ++e)
                if (pebble[e] == 0)
                    throw ParseError(deferred_.empty() ? 1 : deferred_.back().line, 1,
                                     "element " + f.base.name(e) + " has no pebble index");
            f.pebble = std::move(pebble);
        }
        return f;
    }

    std::string_view text_;
    bool forest_;
    Vocabulary vocab_;
    Structure s_;
    bool started_ = false;
    bool tuples_seen_ = false;
    bool point_seen_ = false;
    std::vector<std::string> elements_;
    std::vector<Deferred> deferred_;
};

std::string rewrite(std::string_view name)
{
    std::string out;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
            out += c;
        else if (c == ',' || c == ' ')
            out += '_';
        else if (c == '(' && !out.empty() && out.back() != '_')
            out += '_';
    }
    return out;
}

} // namespace

bool is_identifier(std::string_view token)
{
    return !token.empty() && std::all_of(token.begin(), token.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

bool is_relation_name(std::string_view token)
{
    if (is_identifier(token))
        return true;
    return !token.empty() &&
           std::all_of(token.begin(), token.end(), [](char c) { return operator_chars.find(c) != std::string_view::npos; });
}

Structure parse_structure(std::string_view text) { return Reader(text, false).run().base; }

ForestStructure parse_forest(std::string_view text) { return Reader(text, true).run(); }

std::vector<std::string> file_safe_names(const Structure& s)
{
    std::vector<std::string> out;
    std::set<std::string> seen;
    bool clash = false;
    for (const auto& n : s.names()) {
        auto r = is_identifier(n) ? n : rewrite(n);
        if (r.empty() || !seen.insert(r).second)
            clash = true;
        out.push_back(std::move(r));
    }
    if (clash)
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = "e" + std::to_string(i);
    return out;
}

std::string render_structure(const Structure& s)
{
    const auto names = file_safe_names(s);
    std::ostringstream out;
    for (const auto& sym : s.vocabulary().symbols())
        out << "rel " << sym.name << ' ' << sym.arity << '\n';
    for (const auto& n : names)
        out << "elem " << n << '\n';
    for (std::size_t sym = 0; sym < s.vocabulary().size(); ++sym)
        for (const auto& t : s.table(sym)) {
            out << "tuple " << s.vocabulary()[sym].name;
            for (auto e : t)
                out << ' ' << names[e];
            out << '\n';
        }
    if (s.point())
        out << "point " << names[*s.point()] << '\n';
    return out.str();
}

std::string render_forest(const ForestStructure& f)
{
    const auto names = file_safe_names(f.base);
    std::ostringstream out;
    out << render_structure(f.base);
    if (f.pebble_bound)
        out << "pebbles " << *f.pebble_bound << '\n';
    for (Element x = 0; x < f.size(); ++x)
        if (f.parent[x])
            out << "parent " << names[x] << ' ' << names[*f.parent[x]] << '\n';
    if (f.pebble)
        for (Element x = 0; x < f.size(); ++x)
            out << "pebble " << names[x] << ' ' << (*f.pebble)[x] << '\n';
    return out.str();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw PreconditionError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace gc
