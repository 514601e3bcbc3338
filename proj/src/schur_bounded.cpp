#include "hyperlab/schur_bounded.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

namespace hyperlab {

namespace {

// Plain Dinic; the networks here have a few hundred nodes at most.
class MaxFlow {
public:
    explicit MaxFlow(int n) : head_(static_cast<std::size_t>(n), -1), level_(static_cast<std::size_t>(n)), it_(static_cast<std::size_t>(n)) {}

    void add_edge(int u, int v, int cap) {
        edges_.push_back({v, head_[static_cast<std::size_t>(u)], cap});
        head_[static_cast<std::size_t>(u)] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({u, head_[static_cast<std::size_t>(v)], 0});
        head_[static_cast<std::size_t>(v)] = static_cast<int>(edges_.size()) - 1;
    }

    int run(int s, int t) {
        int flow = 0;
        while (bfs(s, t)) {
            it_ = head_;
            while (int pushed = dfs(s, t, std::numeric_limits<int>::max())) flow += pushed;
        }
        return flow;
    }

    int edge_flow(int idx) const { return edges_[static_cast<std::size_t>(2 * idx + 1)].cap; }

private:
    struct Edge {
        int to;
        int next;
        int cap;
    };

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        q.push(s);
        level_[static_cast<std::size_t>(s)] = 0;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int e = head_[static_cast<std::size_t>(u)]; e != -1; e = edges_[static_cast<std::size_t>(e)].next) {
                const auto& ed = edges_[static_cast<std::size_t>(e)];
                if (ed.cap > 0 && level_[static_cast<std::size_t>(ed.to)] < 0) {
                    level_[static_cast<std::size_t>(ed.to)] = level_[static_cast<std::size_t>(u)] + 1;
                    q.push(ed.to);
                }
            }
        }
        return level_[static_cast<std::size_t>(t)] >= 0;
    }

    int dfs(int u, int t, int limit) {
        if (u == t || limit == 0) return limit;
        for (int& e = it_[static_cast<std::size_t>(u)]; e != -1; e = edges_[static_cast<std::size_t>(e)].next) {
            auto& ed = edges_[static_cast<std::size_t>(e)];
            if (ed.cap > 0 && level_[static_cast<std::size_t>(ed.to)] == level_[static_cast<std::size_t>(u)] + 1) {
                const int pushed = dfs(ed.to, t, std::min(limit, ed.cap));
                if (pushed > 0) {
                    ed.cap -= pushed;
                    edges_[static_cast<std::size_t>(e ^ 1)].cap += pushed;
                    return pushed;
                }
            }
        }
        return 0;
    }

    std::vector<Edge> edges_;
    std::vector<int> head_;
    std::vector<int> level_;
    std::vector<int> it_;
};

struct SplitAttempt {
    bool feasible = false;
    Pattern r;
    Pattern c;
};

SplitAttempt try_split(const Pattern& p, int n_cap) {
    const auto entries = p.entries();
    const int e = static_cast<int>(entries.size());
    const int m = p.rows();
    const int n = p.cols();
    // Nodes: 0 source, 1..e entries, e+1..e+m rows, e+m+1..e+m+n cols, last sink.
    const int source = 0;
    const int sink = e + m + n + 1;
    MaxFlow flow(sink + 1);
    for (int k = 0; k < e; ++k) flow.add_edge(source, 1 + k, 1);
    // add_edge call index doubles as the forward-edge id.
    std::vector<int> row_edge_id(static_cast<std::size_t>(e)), col_edge_id(static_cast<std::size_t>(e));
    int next_id = e;  // e source edges added first
    for (int k = 0; k < e; ++k) {
        const auto [i, j] = entries[static_cast<std::size_t>(k)];
        flow.add_edge(1 + k, 1 + e + i, 1);
        row_edge_id[static_cast<std::size_t>(k)] = next_id++;
        flow.add_edge(1 + k, 1 + e + m + j, 1);
        col_edge_id[static_cast<std::size_t>(k)] = next_id++;
    }
    for (int i = 0; i < m; ++i) flow.add_edge(1 + e + i, sink, n_cap);
    for (int j = 0; j < n; ++j) flow.add_edge(1 + e + m + j, sink, n_cap);

    SplitAttempt out{false, Pattern(m, n), Pattern(m, n)};
    if (flow.run(source, sink) != e) return out;
    out.feasible = true;
    for (int k = 0; k < e; ++k) {
        const auto [i, j] = entries[static_cast<std::size_t>(k)];
        if (flow.edge_flow(row_edge_id[static_cast<std::size_t>(k)]) > 0)
            out.r.insert(i, j);
        else
            out.c.insert(i, j);
    }
    return out;
}

} // namespace

RCDecomposition schur_bounded_split(const Pattern& p) {
    int lo = 0;
    int hi = std::max(p.rows(), p.cols());
    // Invariant: hi is feasible, lo-1... search smallest feasible N.
    SplitAttempt best = try_split(p, hi);
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        SplitAttempt attempt = try_split(p, mid);
        if (attempt.feasible) {
            hi = mid;
            best = std::move(attempt);
        } else {
            lo = mid + 1;
        }
    }
    return RCDecomposition{std::move(best.r), std::move(best.c), hi};
}

} // namespace hyperlab
