#include "tracematch/embedding.hpp"

#include <algorithm>

namespace tracematch {

std::string_view criterion_name(Criterion c) { return c == Criterion::Partial ? "partial" : "full"; }

namespace {

bool contains(const std::vector<LocId>& v, LocId x) { return std::find(v.begin(), v.end(), x) != v.end(); }

bool equal_at(const ComparisonFunction* delta, LocId loc, const Value& x, const Value& y) {
    return delta ? delta->equal(loc, x, y) : values_equal_default(x, y);
}

bool subsequence_impl(const Trace& spec, const Trace& impl, const ComparisonFunction* delta, Criterion c,
                      const MappingFunction& pi, const CoverInfo& covers) {
    std::map<LocId, Int> bound_sum;
    std::size_t k = 0;
    std::size_t ordered = 0;
    for (const auto& e : spec.entries) {
        auto it = pi.find(e.loc);
        bool mapped = it != pi.end() && !it->second.empty();
        if (!mapped) {
            if (covers.optional.count(e.loc)) continue;
            return false;
        }
        if (covers.bounded.count(e.loc)) {
            if (e.value.is(Value::Kind::Int)) bound_sum[e.loc] += e.value.as_int();
            continue;
        }
        ++ordered;
        const auto& img = it->second;
        for (;; ++k) {
            if (k == impl.entries.size()) return false;
            const auto& f = impl.entries[k];
            if (f.kind != EntryKind::LoopIteration && contains(img, f.loc) && equal_at(delta, e.loc, e.value, f.value))
                break;
        }
        ++k;
    }

    std::map<LocId, LocId> owner;
    for (const auto& [l, img] : pi)
        for (LocId m : img) owner[m] = l;
    std::size_t ordered_images = 0;
    std::map<LocId, Int> bounded_count;
    for (const auto& f : impl.entries) {
        if (f.kind == EntryKind::LoopIteration) continue;
        auto it = owner.find(f.loc);
        if (it == owner.end()) continue;
        if (covers.bounded.count(it->second))
            bounded_count[it->second] += 1;
        else
            ++ordered_images;
    }
    if (c == Criterion::Full && ordered_images != ordered) return false;
    for (const auto& [l, n] : bounded_count) {
        auto b = bound_sum.find(l);
        if (b == bound_sum.end() || n > b->second) return false;
    }
    return true;
}

/// Entries of `t` at locations in `img`, order preserved.
Trace restrict_to(const Trace& t, const std::vector<LocId>& img) {
    Trace out;
    for (const auto& e : t.entries)
        if (e.kind != EntryKind::LoopIteration && contains(img, e.loc)) out.entries.push_back(e);
    return out;
}

}  // namespace

bool subsequence(const Trace& spec, const Trace& impl, const ComparisonFunction& delta, Criterion c,
                 const MappingFunction& pi, const CoverInfo& covers) {
    return subsequence_impl(spec, impl, &delta, c, pi, covers);
}

bool check_observed_coverage(const MappingFunction& pi, const Trace& impl) {
    std::set<LocId> images;
    for (const auto& [_, img] : pi) images.insert(img.begin(), img.end());
    std::uint64_t seen = 0;
    std::map<LocId, std::uint64_t> last_marker;
    for (const auto& e : impl.entries) {
        if (e.kind == EntryKind::LoopIteration) {
            auto [it, fresh] = last_marker.emplace(e.loc, seen);
            if (!fresh) {
                if (it->second == seen) return false;
                it->second = seen;
            }
            continue;
        }
        if (images.count(e.loc)) {
            ++seen;
        } else if (e.kind == EntryKind::Value && e.value.is(Value::Kind::Record)) {
            return false;
        }
    }
    return true;
}

std::set<std::pair<LocId, LocId>> PotentialGraph::singleton_edges() const {
    std::set<std::pair<LocId, LocId>> out;
    for (std::size_t i = 0; i < adj.size(); ++i)
        for (std::size_t r : adj[i])
            if (right[r].size() == 1) out.emplace(left[i], right[r][0]);
    return out;
}

std::size_t PotentialGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& row : adj) n += row.size();
    return n;
}

PotentialGraph build_potential_graph(const EmbeddingProblem& p) {
    PotentialGraph g;
    g.left = p.spec_locs;
    for (LocId l : p.impl_locs) g.right.push_back({l});
    for (const auto& grp : p.groups) g.right.push_back(grp);
    g.adj.assign(g.left.size(), {});

    std::size_t inputs = std::min(p.spec_traces.size(), p.impl_traces.size());
    std::vector<std::vector<Trace>> spec_r(inputs), impl_r(inputs);
    for (std::size_t k = 0; k < inputs; ++k) {
        for (LocId l : g.left) spec_r[k].push_back(restrict_to(p.spec_traces[k], {l}));
        for (const auto& img : g.right) impl_r[k].push_back(restrict_to(p.impl_traces[k], img));
    }
    for (std::size_t i = 0; i < g.left.size(); ++i) {
        for (std::size_t r = 0; r < g.right.size(); ++r) {
            MappingFunction single{{g.left[i], g.right[r]}};
            bool ok = true;
            for (std::size_t k = 0; k < inputs && ok; ++k)
                ok = subsequence_impl(spec_r[k][i], impl_r[k][r], p.delta, p.criterion, single, p.covers);
            if (ok) g.adj[i].push_back(r);
        }
    }
    return g;
}

EmbeddingResult embed(const EmbeddingProblem& p) {
    EmbeddingResult res;
    res.graph = build_potential_graph(p);
    const auto& g = res.graph;

    BipartiteGraph bg;
    bg.n_right = g.right.size();
    bg.adj = g.adj;
    for (std::size_t i = 0; i < g.left.size(); ++i) {
        if (p.covers.optional.count(g.left[i])) {
            bg.adj[i].push_back(bg.n_right++);
        } else if (g.adj[i].empty()) {
            res.unmatched_spec_locs.push_back(g.left[i]);
        }
    }
    if (!res.unmatched_spec_locs.empty()) return res;

    std::size_t inputs = std::min(p.spec_traces.size(), p.impl_traces.size());
    auto verify = [&](const std::vector<std::size_t>& match) {
        MappingFunction pi;
        std::set<LocId> used;
        for (std::size_t i = 0; i < match.size(); ++i) {
            if (match[i] >= g.right.size()) continue;
            const auto& img = g.right[match[i]];
            for (LocId m : img)
                if (!used.insert(m).second) return true;  // overlapping images
            pi[g.left[i]] = img;
        }
        for (std::size_t k = 0; k < inputs; ++k) {
            if (!subsequence_impl(p.spec_traces[k], p.impl_traces[k], p.delta, p.criterion, pi, p.covers))
                return true;
            if (p.criterion == Criterion::Full && !check_observed_coverage(pi, p.impl_traces[k])) return true;
        }
        res.found = true;
        res.witness = std::move(pi);
        return false;
    };
    res.matchings_tried = enumerate_saturating_matchings(bg, verify, p.budget);
    return res;
}

namespace {

struct GroupCollector {
    const Program& p;
    std::set<std::vector<StmtId>> groups;

    /// Value location of an assignment statement, or kNoStmt.
    std::pair<std::string, StmtId> value_loc(const Stmt& s) const {
        if (const auto* a = std::get_if<AssignStmt>(&s.node)) {
            if (p.location(s.loc).temporary) return {"", kNoStmt};
            return {a->target, a->result_loc != kNoStmt ? a->result_loc : s.loc};
        }
        if (const auto* a = std::get_if<AssignIndexStmt>(&s.node)) return {a->target, s.loc};
        return {"", kNoStmt};
    }

    bool only_temporaries_before_last(const Block& b) const {
        for (std::size_t i = 0; i + 1 < b.size(); ++i) {
            if (!std::holds_alternative<AssignStmt>(b[i].node) || !p.location(b[i].loc).temporary) return false;
        }
        return true;
    }

    void branches(const IfStmt& n, std::vector<const Block*>& out, std::set<const IfStmt*>& chained) const {
        out.push_back(&n.then_block);
        const Block& e = n.else_block;
        if (e.empty()) return;
        if (const auto* inner = std::get_if<IfStmt>(&e.back().node); inner && only_temporaries_before_last(e)) {
            chained.insert(inner);
            branches(*inner, out, chained);
            return;
        }
        out.push_back(&e);
    }

    void block(const Block& b, std::set<const IfStmt*>& chained) {
        for (const auto& s : b) {
            if (const auto* n = std::get_if<IfStmt>(&s.node)) {
                if (!chained.count(n)) collect(*n, chained);
                block(n->then_block, chained);
                block(n->else_block, chained);
            } else if (const auto* w = std::get_if<WhileStmt>(&s.node)) {
                block(w->prelude, chained);
                block(w->body, chained);
            }
        }
    }

    void collect(const IfStmt& n, std::set<const IfStmt*>& chained) {
        std::vector<const Block*> bs;
        branches(n, bs, chained);
        std::map<std::string, std::vector<StmtId>> by_var;
        for (const Block* b : bs) {
            std::map<std::string, StmtId> last;
            for (const auto& s : *b) {
                auto [var, loc] = value_loc(s);
                if (loc != kNoStmt) last[var] = loc;
            }
            for (const auto& [var, loc] : last) by_var[var].push_back(loc);
        }
        for (auto& [var, locs] : by_var) {
            if (locs.size() < 2) continue;
            std::sort(locs.begin(), locs.end());
            groups.insert(locs);
        }
    }
};

}  // namespace

std::vector<std::vector<StmtId>> one_to_many_candidates(const Program& impl) {
    GroupCollector c{impl, {}};
    std::set<const IfStmt*> chained;
    for (const auto& f : impl.functions) c.block(f.body, chained);
    return {c.groups.begin(), c.groups.end()};
}

}  // namespace tracematch
