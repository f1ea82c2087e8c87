#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "totcol/error.hpp"
#include "totcol/graph.hpp"

namespace totcol {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t byte_offset)
        : std::runtime_error(what + " (byte " + std::to_string(byte_offset) + ")"),
          offset_(byte_offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

enum class GraphFormat { graph6, edge_list };

// --- graph6, bit-exact per the published format ---------------------------

inline Graph parse_graph6(std::string_view s) {
    std::size_t pos = 0;
    while (pos < s.size() && (s[pos] == '\n' || s[pos] == '\r')) ++pos;
    if (pos < s.size() && s.compare(pos, 10, ">>graph6<<") == 0) pos += 10;
    auto need = [&](std::size_t k) {
        if (pos + k > s.size()) throw ParseError("graph6: truncated input", s.size());
    };
    auto byte = [&](std::size_t i) -> int {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (c < 63 || c > 126) throw ParseError("graph6: byte out of range 63..126", i);
        return c - 63;
    };

    need(1);
    long long n;
    if (s[pos] != '~') {
        n = byte(pos);
        ++pos;
    } else {
        ++pos;
        need(1);
        if (s[pos] == '~') throw ParseError("graph6: n > 258047 unsupported", pos);
        need(3);
        n = (static_cast<long long>(byte(pos)) << 12) |
            (static_cast<long long>(byte(pos + 1)) << 6) | byte(pos + 2);
        pos += 3;
    }
    Graph g(static_cast<int>(n));
    long long nbits = n * (n - 1) / 2;
    long long bit = 0;
    int cur = 0, left = 0;
    std::size_t curpos = 0;
    for (Vertex v = 1; v < n; ++v)
        for (Vertex u = 0; u < v; ++u) {
            if (left == 0) {
                need(1);
                cur = byte(pos);
                curpos = pos;
                ++pos;
                left = 6;
            }
            if (cur & (1 << (left - 1))) g.add_edge(u, v);
            --left;
            ++bit;
        }
    if (left > 0 && (cur & ((1 << left) - 1)) != 0)
        throw ParseError("graph6: nonzero padding bits", curpos);
    (void)nbits;
    while (pos < s.size() && (s[pos] == '\n' || s[pos] == '\r')) ++pos;
    if (pos != s.size()) throw ParseError("graph6: trailing bytes", pos);
    return g;
}

inline std::string emit_graph6(const Graph& g) {
    std::string out;
    long long n = g.n();
    if (n <= 62) {
        out.push_back(char(n + 63));
    } else {
        out.push_back('~');
        out.push_back(char(((n >> 12) & 63) + 63));
        out.push_back(char(((n >> 6) & 63) + 63));
        out.push_back(char((n & 63) + 63));
    }
    int cur = 0, nb = 0;
    for (Vertex v = 1; v < n; ++v)
        for (Vertex u = 0; u < v; ++u) {
            cur = (cur << 1) | (g.has_edge(u, v) ? 1 : 0);
            if (++nb == 6) {
                out.push_back(char(cur + 63));
                cur = nb = 0;
            }
        }
    if (nb > 0) out.push_back(char((cur << (6 - nb)) + 63));
    return out;
}

// --- whitespace-separated edge list with an "n m" header line -------------

namespace detail {
inline long long read_int(std::string_view s, std::size_t& pos, const char* what) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos >= s.size())
        throw ParseError(std::string("edge-list: expected ") + what + ", got end of input", pos);
    std::size_t start = pos;
    bool neg = false;
    if (s[pos] == '-') {
        neg = true;
        ++pos;
    }
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
        throw ParseError(std::string("edge-list: expected ") + what, start);
    long long x = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        x = x * 10 + (s[pos] - '0');
        if (x > (1LL << 40)) throw ParseError("edge-list: number too large", start);
        ++pos;
    }
    return neg ? -x : x;
}
} // namespace detail

inline Graph parse_edge_list(std::string_view s) {
    std::size_t pos = 0;
    long long n = detail::read_int(s, pos, "vertex count");
    long long m = detail::read_int(s, pos, "edge count");
    if (n < 0 || m < 0) throw ParseError("edge-list: negative header value", 0);
    Graph g(static_cast<int>(n));
    for (long long i = 0; i < m; ++i) {
        std::size_t at = pos;
        long long u = detail::read_int(s, pos, "endpoint");
        long long v = detail::read_int(s, pos, "endpoint");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError("edge-list: vertex index out of range 0..n-1", at);
        if (u == v) throw ParseError("edge-list: loop not allowed", at);
        g.add_edge(int(u), int(v));
    }
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw ParseError("edge-list: trailing content", pos);
    return g;
}

inline std::string emit_edge_list(const Graph& g) {
    std::string out = std::to_string(g.n()) + " " + std::to_string(g.edge_count()) + "\n";
    for (auto [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

inline Graph parse_graph(std::string_view s, GraphFormat fmt) {
    return fmt == GraphFormat::graph6 ? parse_graph6(s) : parse_edge_list(s);
}

inline std::string emit_graph(const Graph& g, GraphFormat fmt) {
    return fmt == GraphFormat::graph6 ? emit_graph6(g) : emit_edge_list(g);
}

} // namespace totcol
