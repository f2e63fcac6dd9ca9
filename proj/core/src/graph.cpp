#include <dircomm/graph.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace dircomm {

ParseError::ParseError(std::size_t line, const std::string &what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

void build_csr(std::size_t n, const std::vector<Edge> &edges, bool by_src,
               std::vector<std::size_t> &offsets, std::vector<Neighbor> &targets) {
    offsets.assign(n + 1, 0);
    for (const Edge &e : edges)
        ++offsets[(by_src ? e.src : e.dst) + 1];
    for (std::size_t i = 0; i < n; ++i)
        offsets[i + 1] += offsets[i];
    targets.resize(edges.size());
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    // edges are sorted by (src, dst), so out lists come out sorted; in lists are
    // filled in src order which is also sorted.
    for (const Edge &e : edges) {
        const NodeId key = by_src ? e.src : e.dst;
        targets[cursor[key]++] = Neighbor{by_src ? e.dst : e.src, e.weight};
    }
}

std::string format_weight(double w) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w);
    return std::string(buf, ptr);
}

std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

bool is_comment_or_blank(const std::vector<std::string_view> &tokens) {
    return tokens.empty() || tokens.front().front() == '#';
}

} // namespace

DirectedGraph DirectedGraph::from_edges(std::size_t n, std::span<const Edge> edges,
                                        std::vector<std::string> labels) {
    if (labels.empty()) {
        labels.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            labels.push_back(std::to_string(i));
    }
    if (labels.size() != n)
        throw ValidationError("label table has " + std::to_string(labels.size()) +
                              " entries for " + std::to_string(n) + " nodes");

    std::vector<Edge> merged(edges.begin(), edges.end());
    for (const Edge &e : merged) {
        if (e.src >= n || e.dst >= n)
            throw ValidationError("edge endpoint out of range");
        if (e.src == e.dst)
            throw ValidationError("self-loop on node '" + labels[e.src] + "'");
        if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
            throw ValidationError("invalid weight " + format_weight(e.weight) + " on edge '" +
                                  labels[e.src] + "' -> '" + labels[e.dst] + "'");
    }
    std::sort(merged.begin(), merged.end(), [](const Edge &a, const Edge &b) {
        return a.src != b.src ? a.src < b.src : a.dst < b.dst;
    });
    std::size_t w = 0;
    for (std::size_t r = 0; r < merged.size(); ++r) {
        if (w > 0 && merged[w - 1].src == merged[r].src && merged[w - 1].dst == merged[r].dst)
            merged[w - 1].weight += merged[r].weight;
        else
            merged[w++] = merged[r];
    }
    merged.resize(w);
    // A_ij = 0 entries are absent.
    std::erase_if(merged, [](const Edge &e) { return e.weight == 0.0; });

    DirectedGraph g;
    build_csr(n, merged, true, g.out_offsets_, g.out_targets_);
    build_csr(n, merged, false, g.in_offsets_, g.in_sources_);

    g.out_strength_.assign(n, 0.0);
    g.in_strength_.assign(n, 0.0);
    for (const Edge &e : merged) {
        g.out_strength_[e.src] += e.weight;
        g.in_strength_[e.dst] += e.weight;
        g.total_weight_ += e.weight;
    }

    g.adjacent_offsets_.assign(n + 1, 0);
    g.adjacent_.reserve(2 * merged.size());
    for (NodeId u = 0; u < n; ++u) {
        const std::size_t begin = g.adjacent_.size();
        for (const Neighbor &v : g.out_neighbors(u))
            g.adjacent_.push_back(v.node);
        for (const Neighbor &v : g.in_neighbors(u))
            g.adjacent_.push_back(v.node);
        std::sort(g.adjacent_.begin() + begin, g.adjacent_.end());
        g.adjacent_.erase(std::unique(g.adjacent_.begin() + begin, g.adjacent_.end()),
                          g.adjacent_.end());
        g.adjacent_offsets_[u + 1] = g.adjacent_.size();
    }

    g.labels_ = std::move(labels);
    g.index_.reserve(n);
    for (NodeId u = 0; u < n; ++u) {
        if (!g.index_.emplace(g.labels_[u], u).second)
            throw ValidationError("duplicate node label '" + g.labels_[u] + "'");
    }
    return g;
}

double DirectedGraph::weight(NodeId u, NodeId v) const noexcept {
    auto out = out_neighbors(u);
    auto it = std::lower_bound(out.begin(), out.end(), v,
                               [](const Neighbor &a, NodeId b) { return a.node < b; });
    return (it != out.end() && it->node == v) ? it->weight : 0.0;
}

std::optional<NodeId> DirectedGraph::find(const std::string &label) const {
    auto it = index_.find(label);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::vector<Edge> DirectedGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (NodeId u = 0; u < node_count(); ++u)
        for (const Neighbor &v : out_neighbors(u))
            out.push_back({u, v.node, v.weight});
    return out;
}

bool DirectedGraph::is_weighted() const noexcept {
    return std::any_of(out_targets_.begin(), out_targets_.end(),
                       [](const Neighbor &v) { return v.weight != 1.0; });
}

DirectedGraph read_edge_list(std::istream &in, bool directed) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> ids;
    std::vector<Edge> edges;
    std::vector<std::size_t> edge_line;

    auto intern = [&](std::string_view tok) {
        auto [it, inserted] = ids.emplace(std::string(tok), static_cast<NodeId>(labels.size()));
        if (inserted)
            labels.emplace_back(tok);
        return it->second;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tokens = tokenize(line);
        if (is_comment_or_blank(tokens))
            continue;
        if (tokens.size() == 1) {
            intern(tokens[0]); // isolated node declaration
            continue;
        }
        if (tokens.size() > 3)
            throw ParseError(lineno, "expected 'src dst [weight]', got " +
                                         std::to_string(tokens.size()) + " fields");
        double w = 1.0;
        if (tokens.size() == 3) {
            auto tok = tokens[2];
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), w);
            if (ec != std::errc() || ptr != tok.data() + tok.size())
                throw ParseError(lineno, "bad weight '" + std::string(tok) + "'");
            if (w < 0.0 || !std::isfinite(w))
                throw ValidationError("line " + std::to_string(lineno) + ": negative or non-finite weight '" +
                                      std::string(tok) + "'");
        }
        const NodeId s = intern(tokens[0]);
        const NodeId t = intern(tokens[1]);
        if (s == t)
            throw ValidationError("line " + std::to_string(lineno) + ": self-loop on node '" +
                                  labels[s] + "'");
        edges.push_back({s, t, w});
        if (!directed)
            edges.push_back({t, s, w});
    }
    const std::size_t n = labels.size();
    return DirectedGraph::from_edges(n, edges, std::move(labels));
}

DirectedGraph load_edge_list(const std::string &path, bool directed) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    return read_edge_list(in, directed);
}

void write_edge_list(const DirectedGraph &g, std::ostream &out) {
    for (const Edge &e : g.edges())
        out << g.label(e.src) << ' ' << g.label(e.dst) << ' ' << format_weight(e.weight) << '\n';
    for (NodeId u = 0; u < g.node_count(); ++u)
        if (g.neighbors(u).empty())
            out << g.label(u) << '\n';
}

void save_edge_list(const DirectedGraph &g, const std::string &path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    write_edge_list(g, out);
}

DirectedGraph symmetrize(const DirectedGraph &g) {
    std::vector<Edge> edges;
    edges.reserve(2 * g.edge_count());
    for (const Edge &e : g.edges()) {
        edges.push_back(e);
        edges.push_back({e.dst, e.src, e.weight});
    }
    return DirectedGraph::from_edges(g.node_count(), edges, g.labels());
}

InducedSubgraph subgraph_complement(const DirectedGraph &g, std::span<const NodeId> removed) {
    const std::size_t n = g.node_count();
    std::vector<bool> drop(n, false);
    for (NodeId u : removed) {
        if (u >= n)
            throw ValidationError("node " + std::to_string(u) + " out of range (graph has " +
                                  std::to_string(n) + " nodes)");
        drop[u] = true;
    }
    InducedSubgraph sub;
    constexpr auto absent = static_cast<NodeId>(-1);
    std::vector<NodeId> to_new(n, absent);
    std::vector<std::string> labels;
    for (NodeId u = 0; u < n; ++u) {
        if (drop[u])
            continue;
        to_new[u] = static_cast<NodeId>(sub.to_original.size());
        sub.to_original.push_back(u);
        labels.push_back(g.label(u));
    }
    std::vector<Edge> edges;
    for (const Edge &e : g.edges())
        if (to_new[e.src] != absent && to_new[e.dst] != absent)
            edges.push_back({to_new[e.src], to_new[e.dst], e.weight});
    sub.graph = DirectedGraph::from_edges(sub.to_original.size(), edges, std::move(labels));
    return sub;
}

std::vector<std::int64_t> read_assignment(std::istream &in, const DirectedGraph &g) {
    std::vector<std::int64_t> assignment(g.node_count(), -1);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tokens = tokenize(line);
        if (is_comment_or_blank(tokens))
            continue;
        if (tokens.size() != 2)
            throw ParseError(lineno, "expected 'label community_id'");
        std::int64_t id = 0;
        auto tok = tokens[1];
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), id);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || id < 0)
            throw ParseError(lineno, "bad community id '" + std::string(tok) + "'");
        auto node = g.find(std::string(tokens[0]));
        if (!node)
            throw ValidationError("line " + std::to_string(lineno) + ": unknown node '" +
                                  std::string(tokens[0]) + "'");
        assignment[*node] = id;
    }
    return assignment;
}

std::vector<std::int64_t> load_assignment(const std::string &path, const DirectedGraph &g) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    return read_assignment(in, g);
}

void write_assignment(const DirectedGraph &g, std::span<const std::int64_t> assignment,
                      std::ostream &out) {
    for (NodeId u = 0; u < assignment.size(); ++u)
        if (assignment[u] >= 0)
            out << g.label(u) << ' ' << assignment[u] << '\n';
}

} // namespace dircomm
