#include "khg/io.hpp"

#include <fstream>
#include <sstream>

namespace khg {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
    throw ValidationError("line " + std::to_string(line) + ": " + what);
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open " + path);
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot write " + path);
    return f;
}

} // namespace

Hypergraph read_khg(std::istream& in) {
    std::string line;
    int lineno = 1;
    if (!std::getline(in, line)) fail(lineno, "missing header");
    {
        std::istringstream ss(line);
        std::string magic;
        int version = 0;
        if (!(ss >> magic >> version) || magic != "khg" || version != 1)
            fail(lineno, "expected header 'khg 1'");
        std::string extra;
        if (ss >> extra) fail(lineno, "trailing tokens in header");
    }

    ++lineno;
    if (!std::getline(in, line)) fail(lineno, "missing dimensions");
    long long k = 0, n = 0, m = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> k >> n >> m)) fail(lineno, "expected 'k n m'");
        std::string extra;
        if (ss >> extra) fail(lineno, "trailing tokens after dimensions");
    }
    if (k < 2 || n < k || m < 0) fail(lineno, "invalid dimensions");

    std::vector<std::vector<Vertex>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long e = 0; e < m; ++e) {
        ++lineno;
        if (!std::getline(in, line)) fail(lineno, "missing edge line");
        std::istringstream ss(line);
        std::vector<Vertex> row;
        long long v;
        while (ss >> v) {
            if (v < 1 || v > n) fail(lineno, "vertex out of range");
            row.push_back(static_cast<Vertex>(v - 1));
        }
        if (!ss.eof()) fail(lineno, "malformed edge line");
        if (static_cast<long long>(row.size()) != k) fail(lineno, "edge with wrong arity");
        for (std::size_t i = 1; i < row.size(); ++i)
            if (row[i] <= row[i - 1]) fail(lineno, "vertex ids must be strictly increasing");
        edges.push_back(std::move(row));
    }

    // Detect duplicates before canonicalization so the error is line-numbered.
    {
        std::vector<std::pair<std::vector<Vertex>, int>> seen;
        seen.reserve(edges.size());
        for (std::size_t i = 0; i < edges.size(); ++i) seen.emplace_back(edges[i], static_cast<int>(i) + 3);
        std::sort(seen.begin(), seen.end());
        for (std::size_t i = 1; i < seen.size(); ++i)
            if (seen[i].first == seen[i - 1].first)
                fail(std::max(seen[i].second, seen[i - 1].second), "duplicate edge");
    }

    return Hypergraph::build(static_cast<int>(n), static_cast<int>(k), edges);
}

Hypergraph read_khg_file(const std::string& path) {
    auto f = open_in(path);
    return read_khg(f);
}

void write_khg(std::ostream& out, const Hypergraph& h) {
    out << "khg 1\n" << h.k() << ' ' << h.n() << ' ' << h.m() << '\n';
    for (std::size_t e = 0; e < h.m(); ++e) {
        auto row = h.edge(e);
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i] + 1;
        out << '\n';
    }
}

void write_khg_file(const std::string& path, const Hypergraph& h) {
    auto f = open_out(path);
    write_khg(f, h);
}

Bipartition read_part(std::istream& in, int n) {
    Bipartition p(static_cast<std::size_t>(n));
    std::vector<bool> assigned(static_cast<std::size_t>(n), false);
    const char* tags[2] = {"X:", "Y:"};
    std::string line;
    for (int s = 0; s < 2; ++s) {
        if (!std::getline(in, line)) fail(s + 1, "missing partition line");
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag != tags[s]) fail(s + 1, std::string("expected '") + tags[s] + "'");
        long long v;
        while (ss >> v) {
            if (v < 1 || v > n) fail(s + 1, "vertex out of range");
            auto idx = static_cast<std::size_t>(v - 1);
            if (assigned[idx]) fail(s + 1, "vertex listed twice");
            assigned[idx] = true;
            p.set(static_cast<Vertex>(idx), s == 0 ? Side::X : Side::Y);
        }
        if (!ss.eof()) fail(s + 1, "malformed partition line");
    }
    for (std::size_t v = 0; v < assigned.size(); ++v)
        if (!assigned[v]) fail(2, "vertex " + std::to_string(v + 1) + " not listed");
    return p;
}

Bipartition read_part_file(const std::string& path, int n) {
    auto f = open_in(path);
    return read_part(f, n);
}

void write_part(std::ostream& out, const Bipartition& p) {
    for (int s = 0; s < 2; ++s) {
        out << (s == 0 ? "X:" : "Y:");
        for (std::size_t v = 0; v < p.size(); ++v)
            if (p.side(static_cast<Vertex>(v)) == (s == 0 ? Side::X : Side::Y)) out << ' ' << v + 1;
        out << '\n';
    }
}

void write_part_file(const std::string& path, const Bipartition& p) {
    auto f = open_out(path);
    write_part(f, p);
}

} // namespace khg
