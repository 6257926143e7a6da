#include "tracematch/matching.hpp"

#include "tracematch/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace tracematch {

namespace {

constexpr std::size_t kFree = static_cast<std::size_t>(-1);

using Adj = std::vector<std::vector<std::size_t>>;

bool augment(const Adj& adj, std::size_t u, std::vector<std::size_t>& left_match,
             std::vector<std::size_t>& right_match, std::vector<char>& seen) {
    for (std::size_t v : adj[u]) {
        if (seen[v]) continue;
        seen[v] = 1;
        if (right_match[v] == kFree || augment(adj, right_match[v], left_match, right_match, seen)) {
            left_match[u] = v;
            right_match[v] = u;
            return true;
        }
    }
    return false;
}

class Enumerator {
public:
    Enumerator(std::size_t n_right, const std::function<bool(const std::vector<std::size_t>&)>& visit,
               std::uint64_t budget)
        : n_right_(n_right), visit_(visit), budget_(budget) {}

    /// Returns false once the visitor asked to stop.
    bool run(const Adj& adj, const std::vector<std::size_t>& match) {
        std::size_t u = kFree;
        for (std::size_t i = 0; i < adj.size(); ++i) {
            if (adj[i].size() >= 2) {
                u = i;
                break;
            }
        }
        if (u == kFree) {
            if (count_ == budget_)
                throw EnumerationBudgetExceeded("more than " + std::to_string(budget_) + " candidate matchings");
            ++count_;
            return visit_(match);
        }
        std::size_t v = match[u];

        Adj with = adj;
        with[u] = {v};
        for (std::size_t w = 0; w < with.size(); ++w) {
            if (w == u) continue;
            auto& row = with[w];
            row.erase(std::remove(row.begin(), row.end(), v), row.end());
        }
        if (!run(with, match)) return false;

        Adj without = adj;
        auto& row = without[u];
        row.erase(std::remove(row.begin(), row.end(), v), row.end());
        std::vector<std::size_t> left = match;
        std::vector<std::size_t> right(n_right_, kFree);
        for (std::size_t i = 0; i < left.size(); ++i) right[left[i]] = i;
        left[u] = kFree;
        right[v] = kFree;
        std::vector<char> seen(n_right_, 0);
        if (!augment(without, u, left, right, seen)) return true;
        return run(without, left);
    }

    std::uint64_t count() const { return count_; }

private:
    std::size_t n_right_;
    const std::function<bool(const std::vector<std::size_t>&)>& visit_;
    std::uint64_t budget_;
    std::uint64_t count_ = 0;
};

}  // namespace

std::vector<std::optional<std::size_t>> maximum_matching(const BipartiteGraph& g) {
    std::vector<std::size_t> left(g.n_left(), kFree);
    std::vector<std::size_t> right(g.n_right, kFree);
    for (std::size_t u = 0; u < g.n_left(); ++u) {
        std::vector<char> seen(g.n_right, 0);
        augment(g.adj, u, left, right, seen);
    }
    std::vector<std::optional<std::size_t>> out(g.n_left());
    for (std::size_t u = 0; u < left.size(); ++u)
        if (left[u] != kFree) out[u] = left[u];
    return out;
}

std::uint64_t enumerate_saturating_matchings(const BipartiteGraph& g,
                                             const std::function<bool(const std::vector<std::size_t>&)>& visit,
                                             std::uint64_t budget) {
    auto initial = maximum_matching(g);
    std::vector<std::size_t> match;
    for (const auto& m : initial) {
        if (!m) return 0;
        match.push_back(*m);
    }
    Enumerator e(g.n_right, visit, budget);
    e.run(g.adj, match);
    return e.count();
}

std::uint64_t default_enumeration_budget() {
    if (const char* env = std::getenv("TRACEMATCH_ENUM_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 1'000'000ULL;
}

}  // namespace tracematch
