#include "nuca/debruijn.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "nuca/conjugacy.hpp"
#include "nuca/engine.hpp"
#include "nuca/errors.hpp"

namespace nuca {

namespace {

// q^e, or -1 past cap.
std::int64_t pow_capped(std::int64_t q, std::int64_t e, std::int64_t cap) {
    std::int64_t v = 1;
    for (std::int64_t i = 0; i < e; ++i) {
        if (v > cap / q) return -1;
        v *= q;
    }
    return v;
}

}  // namespace

DeBruijnGraph build_debruijn(const NuCaSpec& spec, std::int64_t vertexBudget) {
    check_spec(spec);
    if (spec.leftTail.size() != 1 || spec.rightTail.size() != 1)
        throw InputError("graph construction needs structural period 1 on both tails");
    if (spec.radius < 1) throw InputError("graph construction needs radius >= 1");

    DeBruijnGraph g;
    g.alphabet = spec.alphabet;
    g.radius = spec.radius;
    g.k = spec.k;
    g.slots = 2 * spec.k + 2;

    const std::int64_t q = spec.alphabet.q;
    g.wordCount = pow_capped(q, 2 * spec.radius, vertexBudget);
    if (g.wordCount < 0 || g.wordCount > vertexBudget / g.slots)
        throw BudgetError("vertex count exceeds the budget");
    std::int64_t edgeCount = g.wordCount * q * (g.slots + 1);
    if (edgeCount > (1 << 26)) throw BudgetError("edge count exceeds the budget");

    g.out.resize(static_cast<std::size_t>(g.vertex_count()));
    g.edges.reserve(static_cast<std::size_t>(edgeCount));
    const std::int64_t tailWords = g.wordCount / q;  // q^(2r-1)

    auto add = [&](std::int64_t word, std::int64_t slotFrom, std::int64_t slotTo,
                   const LocalRule& f, std::int64_t a, int bit) {
        std::int64_t nb = word * q + a;
        std::int64_t toWord = (word % tailWords) * q + a;
        DeBruijnGraph::Edge e{g.vertex_id(word, slotFrom), g.vertex_id(toWord, slotTo),
                              f.table[static_cast<std::size_t>(nb)], bit};
        g.out[static_cast<std::size_t>(e.from)].push_back(
            static_cast<std::int32_t>(g.edges.size()));
        g.edges.push_back(e);
    };

    for (std::int64_t U = 0; U < g.wordCount; ++U)
        for (std::int64_t a = 0; a < q; ++a) {
            add(U, 0, 0, spec.leftTail[0], a, 0);
            for (std::int64_t s = 0; s <= 2 * spec.k; ++s)
                add(U, s, s + 1, spec.window[static_cast<std::size_t>(s)], a, 0);
            add(U, g.slots - 1, g.slots - 1, spec.rightTail[0], a, 1);
        }
    return g;
}

ProductGraph build_product(const DeBruijnGraph& g, std::int64_t vertexBudget) {
    ProductGraph p;
    p.wordCount = g.wordCount;
    p.slots = g.slots;
    if (g.wordCount > (1 << 16) ||
        g.wordCount * g.wordCount > vertexBudget / g.slots)
        throw BudgetError("product graph vertex count exceeds the budget");

    const std::int64_t V = p.vertex_count();
    p.out.resize(static_cast<std::size_t>(V));
    p.in.resize(static_cast<std::size_t>(V));
    for (std::int64_t s = 0; s < p.slots; ++s)
        for (std::int64_t U = 0; U < p.wordCount; ++U) {
            const auto& eu = g.out[static_cast<std::size_t>(g.vertex_id(U, s))];
            for (std::int64_t W = 0; W < p.wordCount; ++W) {
                const auto& ew = g.out[static_cast<std::size_t>(g.vertex_id(W, s))];
                for (std::int32_t i : eu)
                    for (std::int32_t j : ew) {
                        const auto& a = g.edges[static_cast<std::size_t>(i)];
                        const auto& b = g.edges[static_cast<std::size_t>(j)];
                        if (a.symbol != b.symbol) continue;
                        if (g.slot_of(a.to) != g.slot_of(b.to)) continue;
                        std::int64_t tu = g.word_of(a.to), tw = g.word_of(b.to);
                        ProductGraph::Edge e{p.vertex_id(U, W, s),
                                             p.vertex_id(tu, tw, g.slot_of(a.to)), a.symbol,
                                             (U == W && tu == tw) ? 0 : 1};
                        if (p.edges.size() >= (1u << 26))
                            throw BudgetError("product graph edge count exceeds the budget");
                        std::int32_t id = static_cast<std::int32_t>(p.edges.size());
                        p.out[static_cast<std::size_t>(e.from)].push_back(id);
                        p.in[static_cast<std::size_t>(e.to)].push_back(id);
                        p.edges.push_back(e);
                    }
            }
        }
    return p;
}

namespace {

void tarjan_scc(const ProductGraph& p, std::vector<std::int64_t>& sccId,
                std::int64_t& sccCount) {
    const std::int64_t V = p.vertex_count();
    sccId.assign(static_cast<std::size_t>(V), -1);
    std::vector<std::int64_t> index(static_cast<std::size_t>(V), -1);
    std::vector<std::int64_t> low(static_cast<std::size_t>(V), 0);
    std::vector<char> onStack(static_cast<std::size_t>(V), 0);
    std::vector<std::int64_t> stk;
    struct Frame {
        std::int64_t v;
        std::size_t ei;
    };
    std::vector<Frame> call;
    std::int64_t next = 0;
    sccCount = 0;

    for (std::int64_t root = 0; root < V; ++root) {
        if (index[static_cast<std::size_t>(root)] != -1) continue;
        index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = next++;
        stk.push_back(root);
        onStack[static_cast<std::size_t>(root)] = 1;
        call.push_back({root, 0});
        while (!call.empty()) {
            Frame& fr = call.back();
            const std::int64_t v = fr.v;
            if (fr.ei < p.out[static_cast<std::size_t>(v)].size()) {
                std::int32_t eid = p.out[static_cast<std::size_t>(v)][fr.ei];
                ++fr.ei;
                std::int64_t w = p.edges[static_cast<std::size_t>(eid)].to;
                if (index[static_cast<std::size_t>(w)] == -1) {
                    index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] =
                        next++;
                    stk.push_back(w);
                    onStack[static_cast<std::size_t>(w)] = 1;
                    call.push_back({w, 0});
                } else if (onStack[static_cast<std::size_t>(w)]) {
                    low[static_cast<std::size_t>(v)] = std::min(
                        low[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(w)]);
                }
            } else {
                if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
                    while (true) {
                        std::int64_t w = stk.back();
                        stk.pop_back();
                        onStack[static_cast<std::size_t>(w)] = 0;
                        sccId[static_cast<std::size_t>(w)] = sccCount;
                        if (w == v) break;
                    }
                    ++sccCount;
                }
                call.pop_back();
                if (!call.empty())
                    low[static_cast<std::size_t>(call.back().v)] =
                        std::min(low[static_cast<std::size_t>(call.back().v)],
                                 low[static_cast<std::size_t>(v)]);
            }
        }
    }
}

struct BfsResult {
    std::vector<char> visited;
    std::vector<std::int32_t> parentEdge;  // -1 for seeds and unvisited
};

BfsResult product_bfs(const ProductGraph& p, const std::vector<char>& seeds,
                      const std::vector<char>* mask, bool reverse) {
    const std::int64_t V = p.vertex_count();
    BfsResult r{std::vector<char>(static_cast<std::size_t>(V), 0),
                std::vector<std::int32_t>(static_cast<std::size_t>(V), -1)};
    std::deque<std::int64_t> q;
    for (std::int64_t v = 0; v < V; ++v)
        if (seeds[static_cast<std::size_t>(v)] && (!mask || (*mask)[static_cast<std::size_t>(v)])) {
            r.visited[static_cast<std::size_t>(v)] = 1;
            q.push_back(v);
        }
    while (!q.empty()) {
        std::int64_t v = q.front();
        q.pop_front();
        const auto& adj = reverse ? p.in[static_cast<std::size_t>(v)] : p.out[static_cast<std::size_t>(v)];
        for (std::int32_t eid : adj) {
            const auto& e = p.edges[static_cast<std::size_t>(eid)];
            std::int64_t w = reverse ? e.from : e.to;
            if (mask && !(*mask)[static_cast<std::size_t>(w)]) continue;
            if (!r.visited[static_cast<std::size_t>(w)]) {
                r.visited[static_cast<std::size_t>(w)] = 1;
                r.parentEdge[static_cast<std::size_t>(w)] = eid;
                q.push_back(w);
            }
        }
    }
    return r;
}

std::vector<std::int32_t> path_to_target(const ProductGraph& p, const BfsResult& fwd,
                                         std::int64_t target) {
    std::vector<std::int32_t> edges;
    std::int64_t v = target;
    while (fwd.parentEdge[static_cast<std::size_t>(v)] != -1) {
        std::int32_t e = fwd.parentEdge[static_cast<std::size_t>(v)];
        edges.push_back(e);
        v = p.edges[static_cast<std::size_t>(e)].from;
    }
    std::reverse(edges.begin(), edges.end());
    return edges;
}

std::vector<std::int32_t> path_from_source(const ProductGraph& p, const BfsResult& bwd,
                                           std::int64_t source, std::int64_t* endVertex) {
    std::vector<std::int32_t> edges;
    std::int64_t v = source;
    while (bwd.parentEdge[static_cast<std::size_t>(v)] != -1) {
        std::int32_t e = bwd.parentEdge[static_cast<std::size_t>(v)];
        edges.push_back(e);
        v = p.edges[static_cast<std::size_t>(e)].to;
    }
    *endVertex = v;
    return edges;
}

// Backward walk from start through allowed slot-0 predecessors (least edge id
// first) until a vertex repeats.  Returns edges in path order; the first
// `cycleLen` of them form a cycle.
std::pair<std::vector<std::int32_t>, std::int64_t> pump_left(const ProductGraph& p,
                                                             std::int64_t start,
                                                             const std::vector<char>& allowed) {
    std::map<std::int64_t, std::int64_t> seenAt;
    std::vector<std::int32_t> walk;  // walk[t]: w_{t+1} -> w_t
    std::int64_t v = start;
    std::int64_t t = 0;
    while (true) {
        auto ins = seenAt.emplace(v, t);
        if (!ins.second) {
            std::int64_t t0 = ins.first->second;
            std::vector<std::int32_t> edges(walk.rbegin(), walk.rend());
            return {edges, t - t0};
        }
        std::int32_t pick = -1;
        for (std::int32_t eid : p.in[static_cast<std::size_t>(v)])
            if (allowed[static_cast<std::size_t>(p.edges[static_cast<std::size_t>(eid)].from)]) {
                pick = eid;
                break;
            }
        if (pick == -1) throw std::logic_error("left pump ran out of predecessors");
        walk.push_back(pick);
        v = p.edges[static_cast<std::size_t>(pick)].from;
        ++t;
    }
}

std::pair<std::vector<std::int32_t>, std::int64_t> pump_right(const ProductGraph& p,
                                                              std::int64_t start,
                                                              const std::vector<char>& allowed) {
    std::map<std::int64_t, std::int64_t> seenAt;
    std::vector<std::int32_t> walk;
    std::int64_t v = start;
    std::int64_t t = 0;
    while (true) {
        auto ins = seenAt.emplace(v, t);
        if (!ins.second) return {walk, t - ins.first->second};
        std::int32_t pick = -1;
        for (std::int32_t eid : p.out[static_cast<std::size_t>(v)])
            if (allowed[static_cast<std::size_t>(p.edges[static_cast<std::size_t>(eid)].to)]) {
                pick = eid;
                break;
            }
        if (pick == -1) throw std::logic_error("right pump ran out of successors");
        walk.push_back(pick);
        v = p.edges[static_cast<std::size_t>(pick)].to;
        ++t;
    }
}

// Rebuilds the two preimage configurations spelled by a pair path whose first
// cycleL edges and last cycleR edges are cycles.  The first climbing edge is
// anchored at cell -k.
std::pair<EpConfig, EpConfig> configs_from_pair_path(const DeBruijnGraph& g,
                                                     const ProductGraph& p,
                                                     const std::vector<std::int32_t>& edges,
                                                     std::int64_t cycleL, std::int64_t cycleR) {
    const std::int64_t q = g.alphabet.q;
    std::int64_t climb = -1;
    for (std::size_t j = 0; j < edges.size(); ++j) {
        const auto& e = p.edges[static_cast<std::size_t>(edges[j])];
        if (p.slot_of(e.to) == p.slot_of(e.from) + 1) {
            climb = static_cast<std::int64_t>(j);
            break;
        }
    }
    if (climb < 0) throw std::logic_error("pair path never climbs");
    const std::int64_t offset = (-g.k - climb) - g.radius;

    auto decode_word = [&](std::int64_t w) {
        Word out(static_cast<std::size_t>(2 * g.radius));
        for (std::int64_t m = 2 * g.radius - 1; m >= 0; --m) {
            out.set(static_cast<std::size_t>(m), static_cast<Symbol>(w % q));
            w /= q;
        }
        return out;
    };
    const auto& first = p.edges[static_cast<std::size_t>(edges.front())];
    Word X = decode_word(p.left_word_of(first.from));
    Word Y = decode_word(p.right_word_of(first.from));
    for (std::int32_t eid : edges) {
        const auto& e = p.edges[static_cast<std::size_t>(eid)];
        X.push_back(static_cast<Symbol>(p.left_word_of(e.to) % q));
        Y.push_back(static_cast<Symbol>(p.right_word_of(e.to) % q));
    }
    auto build = [&](const Word& Z) {
        EpConfig c;
        c.alphabet = g.alphabet;
        c.offset = offset;
        c.center = Z;
        c.leftPeriod = subword(Z, 0, static_cast<std::size_t>(cycleL));
        c.rightPeriod = subword(Z, Z.size() - static_cast<std::size_t>(cycleR),
                                static_cast<std::size_t>(cycleR));
        return normalize(c);
    };
    return {build(X), build(Y)};
}

struct DecisionContext {
    PackedSpec packed;
    NuCaSpec canon;
    DeBruijnGraph g;
};

DecisionContext make_decision_context(const NuCaSpec& spec, std::int64_t stateBudget,
                                      std::int64_t tableBudget) {
    DecisionContext ctx{pack_spec(spec, tableBudget), {}, {}};
    ctx.canon = canonical_spec(ctx.packed.spec);
    ctx.g = build_debruijn(ctx.canon, stateBudget);
    return ctx;
}

std::pair<EpConfig, EpConfig> unpack_and_verify(const NuCaSpec& original, const PackedSpec& ps,
                                                const std::pair<EpConfig, EpConfig>& packed) {
    EpConfig a = unpack_config(ps.map, packed.first);
    EpConfig b = unpack_config(ps.map, packed.second);
    if (equals(a, b)) throw std::logic_error("witness pair collapsed to one configuration");
    if (!equals(step(original, a), step(original, b)))
        throw std::logic_error("witness pair images disagree");
    return {a, b};
}

}  // namespace

SurjectivityVerdict decide_surjective(const NuCaSpec& spec, std::int64_t stateBudget,
                                      std::int64_t tableBudget) {
    DecisionContext ctx = make_decision_context(spec, stateBudget, tableBudget);
    const DeBruijnGraph& g = ctx.g;
    const std::int64_t V = g.vertex_count();
    const std::int64_t q = g.alphabet.q;
    const std::size_t words = static_cast<std::size_t>((V + 63) / 64);

    using Bits = std::vector<std::uint64_t>;
    std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> bucket(
        static_cast<std::size_t>(q * 2));
    for (const auto& e : g.edges)
        bucket[static_cast<std::size_t>(e.symbol * 2 + e.bit)].push_back(
            {static_cast<std::int32_t>(e.from), static_cast<std::int32_t>(e.to)});

    Bits start(words, ~0ULL);
    if (V % 64 != 0) start.back() = (1ULL << (V % 64)) - 1;

    struct SNode {
        int phase;
        Bits set;
        std::int32_t parent;
        Symbol sym;
        int bit;
    };
    std::vector<SNode> nodes;
    std::map<std::pair<int, Bits>, std::int32_t> seen;
    nodes.push_back({0, start, -1, 0, 0});
    seen.emplace(std::make_pair(0, start), 0);

    auto report = [&](std::int32_t parent, Symbol sym, int bit) {
        std::vector<std::pair<Symbol, int>> labels{{sym, bit}};
        for (std::int32_t i = parent; i > 0; i = nodes[static_cast<std::size_t>(i)].parent)
            labels.push_back({nodes[static_cast<std::size_t>(i)].sym,
                              nodes[static_cast<std::size_t>(i)].bit});
        std::reverse(labels.begin(), labels.end());
        std::int64_t zeros = 0;
        Word word;
        for (const auto& [s, b0] : labels) {
            if (b0 == 0) ++zeros;
            Word blk = ctx.packed.map.decode(s);
            for (std::size_t m = 0; m < blk.size(); ++m) word.push_back(blk[m]);
        }
        SurjectivityVerdict v;
        v.kind = SurjectivityVerdict::Kind::NotSurjective;
        v.witnessWord = word;
        v.position = (g.k + 1 - zeros) * ctx.packed.map.b;
        return v;
    };

    for (std::size_t head = 0; head < nodes.size(); ++head) {
        const int phase = nodes[head].phase;
        for (Symbol s = 0; s < q; ++s)
            for (int bit = 0; bit < 2; ++bit) {
                if (phase == 1 && bit == 0) continue;
                Bits next(words, 0);
                bool any = false;
                const Bits& cur = nodes[head].set;
                for (const auto& [from, to] : bucket[static_cast<std::size_t>(s * 2 + bit)])
                    if (cur[static_cast<std::size_t>(from) / 64] &
                        (1ULL << (static_cast<std::size_t>(from) % 64))) {
                        next[static_cast<std::size_t>(to) / 64] |=
                            1ULL << (static_cast<std::size_t>(to) % 64);
                        any = true;
                    }
                if (!any) return report(static_cast<std::int32_t>(head), s, bit);
                auto ins = seen.emplace(std::make_pair(bit, next),
                                        static_cast<std::int32_t>(nodes.size()));
                if (ins.second) {
                    if (static_cast<std::int64_t>(nodes.size()) >= stateBudget)
                        throw BudgetError("determinized state count exceeds the budget");
                    nodes.push_back({bit, std::move(next), static_cast<std::int32_t>(head), s, bit});
                }
            }
    }
    return SurjectivityVerdict{};
}

InjectivityVerdict decide_injective(const NuCaSpec& spec, std::int64_t stateBudget,
                                    std::int64_t tableBudget) {
    DecisionContext ctx = make_decision_context(spec, stateBudget, tableBudget);
    const DeBruijnGraph& g = ctx.g;
    ProductGraph p = build_product(g, stateBudget);
    ReducedProductGraph red = build_reduced(p);
    const std::int64_t V = p.vertex_count();

    std::vector<char> init(static_cast<std::size_t>(V), 0);
    std::vector<char> fin(static_cast<std::size_t>(V), 0);
    for (std::int64_t v = 0; v < V; ++v) {
        if (!red.inD[static_cast<std::size_t>(v)]) continue;
        if (p.slot_of(v) == 0) init[static_cast<std::size_t>(v)] = 1;
        if (p.slot_of(v) == p.slots - 1) fin[static_cast<std::size_t>(v)] = 1;
    }
    BfsResult reach = product_bfs(p, init, &red.inD, false);
    BfsResult coreach = product_bfs(p, fin, &red.inD, true);

    std::int32_t chosen = -1;
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
        const auto& e = p.edges[i];
        if (e.bit == 1 && red.inD[static_cast<std::size_t>(e.from)] &&
            red.inD[static_cast<std::size_t>(e.to)] &&
            reach.visited[static_cast<std::size_t>(e.from)] &&
            coreach.visited[static_cast<std::size_t>(e.to)]) {
            chosen = static_cast<std::int32_t>(i);
            break;
        }
    }
    if (chosen == -1) return InjectivityVerdict{};

    const auto& e = p.edges[static_cast<std::size_t>(chosen)];
    std::vector<std::int32_t> before = path_to_target(p, reach, e.from);
    std::int64_t finVertex = 0;
    std::vector<std::int32_t> after = path_from_source(p, coreach, e.to, &finVertex);
    std::int64_t initVertex = before.empty() ? e.from : p.edges[static_cast<std::size_t>(before.front())].from;

    auto [leftEdges, cycleL] = pump_left(p, initVertex, red.inD);
    auto [rightEdges, cycleR] = pump_right(p, finVertex, red.inD);

    std::vector<std::int32_t> path = leftEdges;
    path.insert(path.end(), before.begin(), before.end());
    path.push_back(chosen);
    path.insert(path.end(), after.begin(), after.end());
    path.insert(path.end(), rightEdges.begin(), rightEdges.end());

    auto packedPair = configs_from_pair_path(g, p, path, cycleL, cycleR);
    auto pair = unpack_and_verify(spec, ctx.packed, packedPair);
    InjectivityVerdict v;
    v.kind = InjectivityVerdict::Kind::NotInjective;
    v.witnessA = pair.first;
    v.witnessB = pair.second;
    return v;
}

ReducedProductGraph build_reduced(const ProductGraph& p) {
    ReducedProductGraph r;
    tarjan_scc(p, r.sccId, r.sccCount);
    const std::int64_t V = p.vertex_count();
    std::vector<std::int64_t> size(static_cast<std::size_t>(r.sccCount), 0);
    for (std::int64_t v = 0; v < V; ++v) ++size[static_cast<std::size_t>(r.sccId[static_cast<std::size_t>(v)])];
    r.sccNontrivial.assign(static_cast<std::size_t>(r.sccCount), 0);
    for (std::int64_t s = 0; s < r.sccCount; ++s)
        if (size[static_cast<std::size_t>(s)] >= 2) r.sccNontrivial[static_cast<std::size_t>(s)] = 1;
    for (const auto& e : p.edges)
        if (e.from == e.to)
            r.sccNontrivial[static_cast<std::size_t>(r.sccId[static_cast<std::size_t>(e.from)])] = 1;
    r.nontrivialSccCount = 0;
    for (char c : r.sccNontrivial) r.nontrivialSccCount += c;

    std::vector<char> seeds(static_cast<std::size_t>(V), 0);
    for (std::int64_t v = 0; v < V; ++v)
        if (r.sccNontrivial[static_cast<std::size_t>(r.sccId[static_cast<std::size_t>(v)])])
            seeds[static_cast<std::size_t>(v)] = 1;
    BfsResult fwd = product_bfs(p, seeds, nullptr, false);
    BfsResult bwd = product_bfs(p, seeds, nullptr, true);
    r.inD.assign(static_cast<std::size_t>(V), 0);
    for (std::int64_t v = 0; v < V; ++v)
        r.inD[static_cast<std::size_t>(v)] =
            fwd.visited[static_cast<std::size_t>(v)] && bwd.visited[static_cast<std::size_t>(v)];
    return r;
}

std::optional<std::pair<EpConfig, EpConfig>> injectivity_witness_oracle(
    const NuCaSpec& spec, std::int64_t stateBudget, std::int64_t tableBudget) {
    DecisionContext ctx = make_decision_context(spec, stateBudget, tableBudget);
    const DeBruijnGraph& g = ctx.g;
    ProductGraph p = build_product(g, stateBudget);
    const std::int64_t V = p.vertex_count();
    const std::int64_t lastSlot = p.slots - 1;

    // Slot-0 vertices with an infinite backward history: repeatedly drop
    // vertices with no surviving predecessor.
    std::vector<char> aliveL(static_cast<std::size_t>(V), 0);
    std::vector<std::int64_t> deg(static_cast<std::size_t>(V), 0);
    std::deque<std::int64_t> kill;
    for (std::int64_t v = 0; v < V; ++v) {
        if (p.slot_of(v) != 0) continue;
        aliveL[static_cast<std::size_t>(v)] = 1;
        deg[static_cast<std::size_t>(v)] = static_cast<std::int64_t>(p.in[static_cast<std::size_t>(v)].size());
        if (deg[static_cast<std::size_t>(v)] == 0) kill.push_back(v);
    }
    while (!kill.empty()) {
        std::int64_t v = kill.front();
        kill.pop_front();
        aliveL[static_cast<std::size_t>(v)] = 0;
        for (std::int32_t eid : p.out[static_cast<std::size_t>(v)]) {
            std::int64_t w = p.edges[static_cast<std::size_t>(eid)].to;
            if (p.slot_of(w) != 0 || !aliveL[static_cast<std::size_t>(w)]) continue;
            if (--deg[static_cast<std::size_t>(w)] == 0) kill.push_back(w);
        }
    }

    std::vector<char> aliveR(static_cast<std::size_t>(V), 0);
    std::fill(deg.begin(), deg.end(), 0);
    for (std::int64_t v = 0; v < V; ++v) {
        if (p.slot_of(v) != lastSlot) continue;
        aliveR[static_cast<std::size_t>(v)] = 1;
        deg[static_cast<std::size_t>(v)] = static_cast<std::int64_t>(p.out[static_cast<std::size_t>(v)].size());
        if (deg[static_cast<std::size_t>(v)] == 0) kill.push_back(v);
    }
    while (!kill.empty()) {
        std::int64_t v = kill.front();
        kill.pop_front();
        aliveR[static_cast<std::size_t>(v)] = 0;
        for (std::int32_t eid : p.in[static_cast<std::size_t>(v)]) {
            std::int64_t w = p.edges[static_cast<std::size_t>(eid)].from;
            if (p.slot_of(w) != lastSlot || !aliveR[static_cast<std::size_t>(w)]) continue;
            if (--deg[static_cast<std::size_t>(w)] == 0) kill.push_back(w);
        }
    }

    BfsResult fwd = product_bfs(p, aliveL, nullptr, false);
    BfsResult bwd = product_bfs(p, aliveR, nullptr, true);
    std::int32_t chosen = -1;
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
        const auto& e = p.edges[i];
        if (e.bit == 1 && fwd.visited[static_cast<std::size_t>(e.from)] &&
            bwd.visited[static_cast<std::size_t>(e.to)]) {
            chosen = static_cast<std::int32_t>(i);
            break;
        }
    }
    if (chosen == -1) return std::nullopt;

    const auto& e = p.edges[static_cast<std::size_t>(chosen)];
    std::vector<std::int32_t> before = path_to_target(p, fwd, e.from);
    std::int64_t finVertex = 0;
    std::vector<std::int32_t> after = path_from_source(p, bwd, e.to, &finVertex);
    std::int64_t initVertex = before.empty() ? e.from : p.edges[static_cast<std::size_t>(before.front())].from;

    auto [leftEdges, cycleL] = pump_left(p, initVertex, aliveL);
    auto [rightEdges, cycleR] = pump_right(p, finVertex, aliveR);

    std::vector<std::int32_t> path = leftEdges;
    path.insert(path.end(), before.begin(), before.end());
    path.push_back(chosen);
    path.insert(path.end(), after.begin(), after.end());
    path.insert(path.end(), rightEdges.begin(), rightEdges.end());

    auto packedPair = configs_from_pair_path(g, p, path, cycleL, cycleR);
    return unpack_and_verify(spec, ctx.packed, packedPair);
}

SurjectivityOracleResult surjectivity_oracle(const NuCaSpec& spec, std::int64_t maxHalfWidth,
                                             std::int64_t enumBudget) {
    check_spec(spec);
    const std::int64_t q = spec.alphabet.q;
    const int r = spec.radius;

    // Does the word at [pos, pos+len) lack every length len+2r preimage?
    auto is_free = [&](const std::vector<int>& word, std::int64_t pos) {
        const std::int64_t len = static_cast<std::int64_t>(word.size());
        const std::int64_t srcLen = len + 2 * r;
        std::vector<const Word*> tbl(static_cast<std::size_t>(len));
        for (std::int64_t i = 0; i < len; ++i)
            tbl[static_cast<std::size_t>(i)] = &rule_at(spec, pos + i).table;
        std::vector<int> w(static_cast<std::size_t>(srcLen), 0);
        while (true) {
            bool match = true;
            for (std::int64_t c = 0; c < len && match; ++c) {
                std::int64_t nb = 0;
                for (int m = 0; m <= 2 * r; ++m) nb = nb * q + w[static_cast<std::size_t>(c + m)];
                if ((*tbl[static_cast<std::size_t>(c)])[static_cast<std::size_t>(nb)] !=
                    word[static_cast<std::size_t>(c)])
                    match = false;
            }
            if (match) return false;
            std::int64_t i = srcLen - 1;
            while (i >= 0 && w[static_cast<std::size_t>(i)] == q - 1) w[static_cast<std::size_t>(i--)] = 0;
            if (i < 0) return true;
            ++w[static_cast<std::size_t>(i)];
        }
    };

    for (std::int64_t n = spec.k + 1; n <= maxHalfWidth; ++n) {
        const std::int64_t width = 2 * n + 1;
        const std::int64_t srcLen = width + 2 * r;
        const std::int64_t targets = pow_capped(q, width, enumBudget);
        const std::int64_t sources = pow_capped(q, srcLen, enumBudget);
        if (targets < 0 || sources < 0)
            throw BudgetError("preimage enumeration exceeds the budget");

        std::vector<const Word*> tbl(static_cast<std::size_t>(width));
        for (std::int64_t i = -n; i <= n; ++i)
            tbl[static_cast<std::size_t>(i + n)] = &rule_at(spec, i).table;

        std::vector<char> hit(static_cast<std::size_t>(targets), 0);
        std::vector<int> w(static_cast<std::size_t>(srcLen), 0);
        while (true) {
            std::int64_t idx = 0;
            for (std::int64_t c = 0; c < width; ++c) {
                std::int64_t nb = 0;
                for (int m = 0; m <= 2 * r; ++m) nb = nb * q + w[static_cast<std::size_t>(c + m)];
                idx = idx * q + (*tbl[static_cast<std::size_t>(c)])[static_cast<std::size_t>(nb)];
            }
            hit[static_cast<std::size_t>(idx)] = 1;
            std::int64_t i = srcLen - 1;
            while (i >= 0 && w[static_cast<std::size_t>(i)] == q - 1) w[static_cast<std::size_t>(i--)] = 0;
            if (i < 0) break;
            ++w[static_cast<std::size_t>(i)];
        }

        for (std::int64_t t = 0; t < targets; ++t) {
            if (hit[static_cast<std::size_t>(t)]) continue;
            std::vector<int> word(static_cast<std::size_t>(width));
            std::int64_t v = t;
            for (std::int64_t c = width - 1; c >= 0; --c) {
                word[static_cast<std::size_t>(c)] = static_cast<int>(v % q);
                v /= q;
            }
            std::int64_t pos = -n;
            while (word.size() > 1) {
                std::vector<int> sub(word.begin() + 1, word.end());
                if (!is_free(sub, pos + 1)) break;
                word = std::move(sub);
                ++pos;
            }
            while (word.size() > 1) {
                std::vector<int> sub(word.begin(), word.end() - 1);
                if (!is_free(sub, pos)) break;
                word = std::move(sub);
            }
            SurjectivityOracleResult res;
            res.kind = SurjectivityOracleResult::Kind::RefutedAt;
            for (int s : word) res.word.push_back(s);
            res.position = pos;
            res.n = n;
            return res;
        }
    }
    SurjectivityOracleResult res;
    res.kind = SurjectivityOracleResult::Kind::ConsistentUpTo;
    res.bound = maxHalfWidth;
    return res;
}

std::vector<EpConfig> count_preimages_bounded(const NuCaSpec& spec, const EpConfig& y,
                                              const PreimageBounds& bounds) {
    check_spec(spec);
    check_config(y);
    if (spec.alphabet != y.alphabet) throw InputError("alphabet mismatch");
    const std::int64_t q = spec.alphabet.q;

    std::set<EpConfig> tried;
    std::set<EpConfig> found;
    for (std::int64_t pl = 1; pl <= bounds.maxTailPeriod; ++pl)
        for (std::int64_t pr = 1; pr <= bounds.maxTailPeriod; ++pr)
            for (std::int64_t width = 0; width <= bounds.maxCenterWidth; ++width) {
                const std::int64_t total = pl + width + pr;
                if (pow_capped(q, total, 1 << 22) < 0)
                    throw BudgetError("preimage enumeration exceeds the budget");
                for (std::int64_t off = bounds.offsetMin; off <= bounds.offsetMax; ++off) {
                    std::vector<int> w(static_cast<std::size_t>(total), 0);
                    while (true) {
                        EpConfig x;
                        x.alphabet = spec.alphabet;
                        for (std::int64_t i = 0; i < pl; ++i)
                            x.leftPeriod.push_back(w[static_cast<std::size_t>(i)]);
                        for (std::int64_t i = 0; i < width; ++i)
                            x.center.push_back(w[static_cast<std::size_t>(pl + i)]);
                        for (std::int64_t i = 0; i < pr; ++i)
                            x.rightPeriod.push_back(w[static_cast<std::size_t>(pl + width + i)]);
                        x.offset = off;
                        x = normalize(x);
                        if (tried.insert(x).second && equals(step(spec, x), y)) found.insert(x);
                        std::int64_t i = total - 1;
                        while (i >= 0 && w[static_cast<std::size_t>(i)] == q - 1)
                            w[static_cast<std::size_t>(i--)] = 0;
                        if (i < 0) break;
                        ++w[static_cast<std::size_t>(i)];
                    }
                }
            }
    return std::vector<EpConfig>(found.begin(), found.end());
}

}  // namespace nuca
