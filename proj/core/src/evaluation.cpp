#include <dircomm/evaluation.hpp>

#include <algorithm>
#include <charconv>
#include <map>
#include <ostream>
#include <string>

namespace dircomm {

namespace {

std::vector<NodeId> sorted_unique(std::span<const NodeId> s) {
    std::vector<NodeId> v(s.begin(), s.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

double jaccard(std::span<const NodeId> a, std::span<const NodeId> b) {
    const auto x = sorted_unique(a);
    const auto y = sorted_unique(b);
    if (x.empty() && y.empty())
        return 1.0;
    std::size_t common = 0;
    for (std::size_t i = 0, j = 0; i < x.size() && j < y.size();) {
        if (x[i] < y[j])
            ++i;
        else if (y[j] < x[i])
            ++j;
        else {
            ++common;
            ++i;
            ++j;
        }
    }
    return static_cast<double>(common) / static_cast<double>(x.size() + y.size() - common);
}

double adjusted_jaccard(std::span<const NodeId> s1, std::span<const NodeId> s2,
                        std::span<const NodeId> c1, std::span<const NodeId> c2) {
    const double straight = 0.5 * (jaccard(s1, c1) + jaccard(s2, c2));
    const double crossed = 0.5 * (jaccard(s1, c2) + jaccard(s2, c1));
    return std::max(straight, crossed);
}

PairMatch best_pair(std::span<const NodeId> s1, std::span<const NodeId> s2,
                    const std::vector<std::vector<NodeId>> &found) {
    const std::vector<NodeId> empty;
    auto get = [&](std::size_t i) -> std::span<const NodeId> {
        return i == PairMatch::none ? std::span<const NodeId>(empty) : found[i];
    };
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < found.size(); ++i)
        candidates.push_back(i);
    while (candidates.size() < 2)
        candidates.push_back(PairMatch::none);

    PairMatch best;
    best.score = -1.0;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
        for (std::size_t b = 0; b < candidates.size(); ++b) {
            if (a == b)
                continue;
            // Ordered pairs: (first matched to S1, second matched to S2).
            const double s = 0.5 * (jaccard(s1, get(candidates[a])) + jaccard(s2, get(candidates[b])));
            if (s > best.score) {
                best = {s, candidates[a], candidates[b]};
            }
        }
    }
    return best;
}

std::vector<std::vector<NodeId>> PartitionLabels::groups() const {
    std::map<std::int64_t, std::vector<NodeId>> by_id;
    for (NodeId u = 0; u < assignment.size(); ++u)
        if (assignment[u] >= 0)
            by_id[assignment[u]].push_back(u);
    std::vector<std::vector<NodeId>> out;
    out.reserve(by_id.size());
    for (auto &[id, nodes] : by_id)
        out.push_back(std::move(nodes));
    return out;
}

namespace {

std::string shortest(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

} // namespace

void write_evaluation_header(std::ostream &out) {
    out << "seed,method,rho,n,p1,p2,adjusted_jaccard,runtime_ms,error\n";
}

void write_evaluation_row(std::ostream &out, const EvaluationRow &row) {
    out << row.seed << ',' << row.method << ',' << shortest(row.rho) << ',' << shortest(row.n) << ','
        << shortest(row.p1) << ',' << shortest(row.p2) << ',' << shortest(row.adjusted_jaccard)
        << ',' << shortest(row.runtime_ms) << ',';
    for (char ch : row.error)
        out << (ch == ',' || ch == '\n' || ch == '\r' ? ';' : ch);
    out << '\n';
}

} // namespace dircomm
