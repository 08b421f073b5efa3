#include "pbx/keller.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstring>
#include <map>
#include <mutex>
#include <thread>

namespace pbx {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t pow_u64(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

} // namespace

KellerGraph KellerGraph::build(int d, const Alphabet& alphabet) {
    if (d < 1) throw UsageError("Keller graph dimension must be positive");
    const std::uint64_t n64 = pow_u64(static_cast<std::uint64_t>(alphabet.size()), d);
    // n^2 bits of adjacency; keep well under the sandbox memory.
    if (n64 > (1u << 17) || n64 * n64 / 8 > (std::uint64_t{3} << 30))
        throw ResourceError("Keller graph does not fit the memory budget");

    KellerGraph g;
    g.d_ = d;
    g.alphabet_ = alphabet;
    g.n_ = static_cast<int>(n64);
    g.row_words_ = static_cast<int>((n64 + 63) / 64);
    g.rows_.assign(static_cast<std::size_t>(g.n_) * g.row_words_, 0);

    const int s = alphabet.size();
    std::vector<std::vector<Letter>> words(static_cast<std::size_t>(g.n_));
    for (int v = 0; v < g.n_; ++v) {
        std::vector<Letter> e(static_cast<std::size_t>(d));
        int x = v;
        for (int i = d - 1; i >= 0; --i) {
            e[static_cast<std::size_t>(i)] = static_cast<Letter>(x % s);
            x /= s;
        }
        words[static_cast<std::size_t>(v)] = std::move(e);
    }
    for (int u = 0; u < g.n_; ++u) {
        const auto& wu = words[static_cast<std::size_t>(u)];
        for (int v = u + 1; v < g.n_; ++v) {
            const auto& wv = words[static_cast<std::size_t>(v)];
            int comp = 0, diff = 0;
            for (int i = 0; i < d; ++i) {
                if (wu[static_cast<std::size_t>(i)] == wv[static_cast<std::size_t>(i)]) continue;
                ++diff;
                if ((wu[static_cast<std::size_t>(i)] ^ 1u) == wv[static_cast<std::size_t>(i)]) ++comp;
            }
            if (comp >= 1 && diff >= 2) {
                g.rows_[static_cast<std::size_t>(u) * g.row_words_ + static_cast<std::size_t>(v >> 6)] |= std::uint64_t{1} << (v & 63);
                g.rows_[static_cast<std::size_t>(v) * g.row_words_ + static_cast<std::size_t>(u >> 6)] |= std::uint64_t{1} << (u & 63);
            }
        }
    }
    return g;
}

Word KellerGraph::word(int v) const {
    std::vector<Letter> e(static_cast<std::size_t>(d_));
    int x = v;
    for (int i = d_ - 1; i >= 0; --i) {
        e[static_cast<std::size_t>(i)] = static_cast<Letter>(x % alphabet_.size());
        x /= alphabet_.size();
    }
    return Word(std::move(e));
}

int KellerGraph::index(const Word& w) const {
    if (w.dim() != d_) throw UsageError("word dimension does not match graph");
    int v = 0;
    for (int i = 0; i < d_; ++i) {
        if (!alphabet_.contains(w[i])) throw UsageError("word letter outside graph alphabet");
        v = v * alphabet_.size() + w[i];
    }
    return v;
}

int KellerGraph::degree(int v) const {
    int deg = 0;
    const std::uint64_t* r = row(v);
    for (int i = 0; i < row_words_; ++i) deg += std::popcount(r[i]);
    return deg;
}

// ---------------------------------------------------------------------------
// Maximum clique
// ---------------------------------------------------------------------------

namespace {

struct BitSetOps {
    static bool empty(const std::uint64_t* a, int words) {
        for (int i = 0; i < words; ++i)
            if (a[i]) return false;
        return true;
    }
    static int count(const std::uint64_t* a, int words) {
        int c = 0;
        for (int i = 0; i < words; ++i) c += std::popcount(a[i]);
        return c;
    }
    static void and_into(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, int words) {
        for (int i = 0; i < words; ++i) dst[i] = a[i] & b[i];
    }
};

struct SolverShared {
    const KellerGraph& g;
    std::atomic<int> best;
    std::vector<int> best_clique; // guarded by mutex
    std::mutex mutex;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> aborted{false};
    std::optional<std::uint64_t> node_limit;
    std::optional<Clock::time_point> deadline;

    explicit SolverShared(const KellerGraph& graph) : g(graph), best(0) {}

    void offer(const std::vector<int>& clique) {
        int size = static_cast<int>(clique.size());
        int cur = best.load();
        while (size > cur && !best.compare_exchange_weak(cur, size)) {
        }
        if (size >= cur) {
            std::lock_guard<std::mutex> lock(mutex);
            if (static_cast<int>(clique.size()) >= static_cast<int>(best_clique.size()))
                best_clique = clique;
        }
    }

    bool over_budget() {
        if (aborted.load(std::memory_order_relaxed)) return true;
        if (node_limit && nodes.load(std::memory_order_relaxed) > *node_limit) {
            aborted.store(true);
            return true;
        }
        if (deadline && Clock::now() > *deadline) {
            aborted.store(true);
            return true;
        }
        return false;
    }
};

// Sequential branch and bound with greedy sequential coloring, operating on
// bitsets over the full vertex space.
class Expander {
public:
    Expander(SolverShared& shared, int max_depth_hint)
        : shared_(shared), words_(shared.g.row_words()) {
        buffers_.resize(static_cast<std::size_t>(max_depth_hint + 2));
        for (auto& b : buffers_) {
            b.cand.assign(static_cast<std::size_t>(words_), 0);
            b.verts.assign(static_cast<std::size_t>(shared.g.vertex_count()), 0);
            b.bounds.assign(static_cast<std::size_t>(shared.g.vertex_count()), 0);
        }
        scratch_.assign(static_cast<std::size_t>(words_) * 2, 0);
    }

    // seed is already a clique; cand must be a subset of the common
    // neighborhood of seed.
    void run(const std::vector<int>& seed, const std::uint64_t* cand) {
        current_ = seed;
        if (static_cast<int>(current_.size()) > shared_.best.load()) shared_.offer(current_);
        std::memcpy(buffers_[0].cand.data(), cand, static_cast<std::size_t>(words_) * 8);
        expand(0);
    }

    std::uint64_t local_nodes = 0;

private:
    struct Buffers {
        std::vector<std::uint64_t> cand;
        std::vector<int> verts;
        std::vector<int> bounds;
    };

    int color_sort(const std::uint64_t* p, int* verts, int* bounds) {
        std::uint64_t* q = scratch_.data();
        std::uint64_t* c = scratch_.data() + words_;
        std::memcpy(q, p, static_cast<std::size_t>(words_) * 8);
        int k = 0, color = 0;
        while (!BitSetOps::empty(q, words_)) {
            ++color;
            std::memcpy(c, q, static_cast<std::size_t>(words_) * 8);
            while (true) {
                int v = -1;
                for (int i = 0; i < words_; ++i) {
                    if (c[i]) {
                        v = i * 64 + std::countr_zero(c[i]);
                        break;
                    }
                }
                if (v < 0) break;
                c[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
                q[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
                const std::uint64_t* row = shared_.g.row(v);
                for (int i = 0; i < words_; ++i) c[i] &= ~row[i];
                verts[k] = v;
                bounds[k] = color;
                ++k;
            }
        }
        return k;
    }

    void expand(int depth) {
        if ((++local_nodes & 1023u) == 0) {
            shared_.nodes.fetch_add(1024, std::memory_order_relaxed);
            if (shared_.over_budget()) return;
        }
        if (depth + 2 >= static_cast<int>(buffers_.size())) grow(depth + 2);
        Buffers& b = buffers_[static_cast<std::size_t>(depth)];
        Buffers& next = buffers_[static_cast<std::size_t>(depth + 1)];

        int k = color_sort(b.cand.data(), b.verts.data(), b.bounds.data());
        for (int i = k - 1; i >= 0; --i) {
            if (shared_.aborted.load(std::memory_order_relaxed)) return;
            int csize = static_cast<int>(current_.size());
            if (csize + b.bounds[static_cast<std::size_t>(i)] <= shared_.best.load(std::memory_order_relaxed))
                return;
            int v = b.verts[static_cast<std::size_t>(i)];
            b.cand[static_cast<std::size_t>(v >> 6)] &= ~(std::uint64_t{1} << (v & 63));
            BitSetOps::and_into(next.cand.data(), b.cand.data(), shared_.g.row(v), words_);
            current_.push_back(v);
            if (BitSetOps::empty(next.cand.data(), words_)) {
                if (static_cast<int>(current_.size()) > shared_.best.load(std::memory_order_relaxed))
                    shared_.offer(current_);
            } else {
                expand(depth + 1);
            }
            current_.pop_back();
        }
    }

    void grow(int depth) {
        std::size_t old = buffers_.size();
        buffers_.resize(static_cast<std::size_t>(depth + 8));
        for (std::size_t i = old; i < buffers_.size(); ++i) {
            buffers_[i].cand.assign(static_cast<std::size_t>(words_), 0);
            buffers_[i].verts.assign(static_cast<std::size_t>(shared_.g.vertex_count()), 0);
            buffers_[i].bounds.assign(static_cast<std::size_t>(shared_.g.vertex_count()), 0);
        }
    }

    SolverShared& shared_;
    int words_;
    std::vector<Buffers> buffers_;
    std::vector<std::uint64_t> scratch_;
    std::vector<int> current_;
};

// Letter classes under the stabiliser of previously fixed vertices: 0 and 1
// are the two letters of pair a (always distinguished once the all-a word is
// fixed); other letters normalise to their pair with free orientation until a
// fixed vertex pins them down.
struct SymState {
    std::vector<int> coord_class;   // per coordinate
    std::vector<bool> orient_free;  // per coordinate: non-a pair orientation still free

    static SymState initial(int d) {
        SymState s;
        s.coord_class.assign(static_cast<std::size_t>(d), 0);
        s.orient_free.assign(static_cast<std::size_t>(d), true);
        return s;
    }
};

// A signature that is constant exactly on the orbits of the class-preserving
// subgroup: per coordinate class, the sorted multiset of normalised letters.
std::vector<int> orbit_signature(const KellerGraph& g, const SymState& sym, int v) {
    const int d = g.dim();
    Word w = g.word(v);
    std::vector<std::vector<int>> per_class;
    for (int i = 0; i < d; ++i) {
        int cls = sym.coord_class[static_cast<std::size_t>(i)];
        if (cls >= static_cast<int>(per_class.size())) per_class.resize(static_cast<std::size_t>(cls + 1));
        int letter = w[i];
        if (letter >= 2 && sym.orient_free[static_cast<std::size_t>(i)]) letter = (letter / 2) * 2;
        per_class[static_cast<std::size_t>(cls)].push_back(letter);
    }
    std::vector<int> sig;
    for (auto& bucket : per_class) {
        std::sort(bucket.begin(), bucket.end());
        sig.push_back(-1);
        for (int x : bucket) sig.push_back(x);
    }
    return sig;
}

SymState refine(const KellerGraph& g, const SymState& sym, int fixed) {
    const int d = g.dim();
    Word w = g.word(fixed);
    SymState out = sym;
    std::map<std::pair<int, int>, int> remap;
    for (int i = 0; i < d; ++i) {
        int letter = w[i];
        if (letter >= 2 && sym.orient_free[static_cast<std::size_t>(i)])
            out.orient_free[static_cast<std::size_t>(i)] = false;
        auto key = std::make_pair(sym.coord_class[static_cast<std::size_t>(i)], letter);
        auto [it, inserted] = remap.emplace(key, static_cast<int>(remap.size()));
        out.coord_class[static_cast<std::size_t>(i)] = it->second;
    }
    return out;
}

struct WorkItem {
    std::vector<int> seed;
    std::vector<std::uint64_t> cand;
};

// Splits a subproblem along the orbits of the candidate set, excluding
// earlier orbits from later branches. Valid for any subgroup of the seed's
// stabiliser, so the class-based under-approximation is safe.
void split_symmetric(const KellerGraph& g, const SymState& sym, const std::vector<int>& seed,
                     const std::vector<std::uint64_t>& cand, int depth_left, int min_split_size,
                     std::vector<WorkItem>& out) {
    const int words = g.row_words();
    int cand_count = BitSetOps::count(cand.data(), words);
    if (depth_left == 0 || cand_count < min_split_size || g.alphabet().pair_count() != 2) {
        out.push_back(WorkItem{seed, cand});
        return;
    }

    std::vector<int> vertices;
    for (int i = 0; i < words; ++i) {
        std::uint64_t bits = cand[static_cast<std::size_t>(i)];
        while (bits) {
            int v = i * 64 + std::countr_zero(bits);
            bits &= bits - 1;
            vertices.push_back(v);
        }
    }
    std::map<std::vector<int>, std::vector<int>> orbits;
    for (int v : vertices) orbits[orbit_signature(g, sym, v)].push_back(v);

    std::vector<std::vector<int>> groups;
    for (auto& [sig, members] : orbits) groups.push_back(members);
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    std::vector<std::uint64_t> remaining = cand;
    for (const auto& group : groups) {
        int rep = group.front();
        std::vector<std::uint64_t> sub(static_cast<std::size_t>(words));
        BitSetOps::and_into(sub.data(), remaining.data(), g.row(rep), words);
        std::vector<int> new_seed = seed;
        new_seed.push_back(rep);
        split_symmetric(g, refine(g, sym, rep), new_seed, sub, depth_left - 1, min_split_size, out);
        // Later branches may not use any vertex of this orbit.
        for (int v : group) remaining[static_cast<std::size_t>(v >> 6)] &= ~(std::uint64_t{1} << (v & 63));
    }
}

} // namespace

CliqueResult max_clique(const KellerGraph& g, const SearchBudget& budget, int threads) {
    SolverShared shared(g);
    if (budget.nodes) shared.node_limit = budget.nodes;
    if (budget.seconds)
        shared.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                             std::chrono::duration<double>(*budget.seconds));
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;

    const int words = g.row_words();
    const int n = g.vertex_count();

    // The isomorphism group acts transitively on vertices, so some maximum
    // clique contains vertex 0 (the all-a word).
    std::vector<int> seed{0};
    shared.offer(seed);
    std::vector<std::uint64_t> cand(static_cast<std::size_t>(words));
    std::memcpy(cand.data(), g.row(0), static_cast<std::size_t>(words) * 8);

    std::vector<WorkItem> items;
    if (g.alphabet().pair_count() == 2 && n >= 64) {
        split_symmetric(g, refine(g, SymState::initial(g.dim()), 0), seed, cand,
                        /*depth_left=*/3, /*min_split_size=*/96, items);
    } else {
        items.push_back(WorkItem{seed, cand});
    }
    // Large candidate sets first so the work queue drains evenly.
    std::stable_sort(items.begin(), items.end(), [&](const WorkItem& a, const WorkItem& b) {
        return BitSetOps::count(a.cand.data(), words) > BitSetOps::count(b.cand.data(), words);
    });

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        Expander expander(shared, 64);
        while (true) {
            std::size_t mine = next.fetch_add(1);
            if (mine >= items.size() || shared.aborted.load()) break;
            const WorkItem& item = items[mine];
            if (static_cast<int>(item.seed.size()) + BitSetOps::count(item.cand.data(), words) <=
                shared.best.load())
                continue;
            expander.run(item.seed, item.cand.data());
        }
        shared.nodes.fetch_add(expander.local_nodes & 1023u);
    };

    if (threads == 1 || items.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<Word> clique_words;
    for (int v : shared.best_clique) clique_words.push_back(g.word(v));
    CliqueResult result;
    result.clique = PolyboxCode::validate(g.alphabet(), g.dim(), std::move(clique_words));
    result.proven_optimal = !shared.aborted.load();
    result.nodes = shared.nodes.load();
    return result;
}

void for_each_clique(const KellerGraph& g, const std::vector<int>& seed,
                     const std::function<bool(const std::vector<int>&)>& visit) {
    const int words = g.row_words();
    std::vector<std::uint64_t> cand(static_cast<std::size_t>(words), ~std::uint64_t{0});
    int extra = g.vertex_count() % 64;
    if (extra) cand[static_cast<std::size_t>(words - 1)] = (std::uint64_t{1} << extra) - 1;
    int max_seed = -1;
    for (int v : seed) {
        for (int u : seed)
            if (u != v && !g.adjacent(u, v)) throw UsageError("for_each_clique seed is not a clique");
        BitSetOps::and_into(cand.data(), cand.data(), g.row(v), words);
        max_seed = std::max(max_seed, v);
    }
    // Only extend upward so every clique appears exactly once.
    for (int i = 0; i <= max_seed && i < g.vertex_count(); ++i)
        cand[static_cast<std::size_t>(i >> 6)] &= ~(std::uint64_t{1} << (i & 63));

    std::vector<int> current = seed;
    bool stop = false;
    auto rec = [&](auto&& self, std::vector<std::uint64_t>& p) -> void {
        if (stop) return;
        if (!current.empty() && !visit(current)) {
            stop = true;
            return;
        }
        std::vector<std::uint64_t> sub(static_cast<std::size_t>(words));
        for (int i = 0; i < words && !stop; ++i) {
            std::uint64_t bits = p[static_cast<std::size_t>(i)];
            while (bits && !stop) {
                int v = i * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                p[static_cast<std::size_t>(i)] &= ~(std::uint64_t{1} << (v & 63));
                BitSetOps::and_into(sub.data(), p.data(), g.row(v), words);
                // Keep only vertices above v for the recursion.
                current.push_back(v);
                self(self, sub);
                current.pop_back();
            }
        }
    };
    rec(rec, cand);
}

bool equivalent_cliques(const KellerGraph& g, const PolyboxCode& a, const PolyboxCode& b) {
    for (const PolyboxCode* code : {&a, &b}) {
        if (code->dim() != g.dim() || code->alphabet() != g.alphabet())
            throw UsageError("clique does not belong to this graph");
        if (!code->star_free()) throw UsageError("clique words must be star-free");
        if (find_twin_pair(*code)) throw UsageError("input is not a clique: twin pair present");
    }
    return equivalent(a, b);
}

bool SiblingGraph::adjacent(int u, int v) const {
    for (const SiblingEdge& e : edges)
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return true;
    return false;
}

SiblingGraph sibling_graph(const PolyboxCode& code) {
    if (!code.star_free()) throw UsageError("sibling_graph requires a star-free code");
    SiblingGraph sg;
    sg.vertices = code.words();
    sg.degree.assign(sg.vertices.size(), 0);
    const int d = code.dim();
    for (int u = 0; u < code.size(); ++u) {
        for (int v = u + 1; v < code.size(); ++v) {
            // i-siblings differ at exactly two coordinates, one complementary
            // (the twin witness) and one free (the colour).
            int free_coord = -1, comp_coord = -1, diff = 0;
            for (int i = 0; i < d && diff <= 2; ++i) {
                Letter a = code[u][i], b = code[v][i];
                if (a == b) continue;
                ++diff;
                if (complementary(a, b))
                    comp_coord = i;
                else
                    free_coord = i;
            }
            if (diff == 2 && free_coord >= 0 && comp_coord >= 0) {
                sg.edges.push_back(SiblingEdge{u, v, {free_coord}});
                ++sg.degree[static_cast<std::size_t>(u)];
                ++sg.degree[static_cast<std::size_t>(v)];
            }
        }
    }
    return sg;
}

SiblingReport check_sibling_invariants(const PolyboxCode& code) {
    if (!code.star_free()) throw UsageError("check_sibling_invariants requires a star-free code");
    if (find_twin_pair(code)) throw UsageError("check_sibling_invariants requires a twin-pair-free code");

    SiblingGraph sg = sibling_graph(code);
    SiblingReport report;
    const int d = code.dim();
    const int n = code.size();

    for (int v = 0; v < n; ++v) report.max_degree = std::max(report.max_degree, sg.degree[static_cast<std::size_t>(v)]);
    if (report.max_degree > d) {
        report.ok = false;
        report.violations.push_back("sibling degree exceeds the dimension");
    }

    for (const SiblingEdge& e : sg.edges) {
        for (int w = 0; w < n && report.triangle_free; ++w) {
            if (w == e.u || w == e.v) continue;
            if (sg.adjacent(e.u, w) && sg.adjacent(e.v, w)) report.triangle_free = false;
        }
    }
    if (!report.triangle_free) {
        report.ok = false;
        report.violations.push_back("sibling graph contains a triangle");
    }

    int max_group_total = 0;
    for (int i = 0; i < d; ++i)
        for (const auto& group : distribution(code, i).groups)
            max_group_total = std::max(max_group_total, group.total());

    for (const SiblingEdge& e : sg.edges) {
        int s = sg.degree[static_cast<std::size_t>(e.u)] + sg.degree[static_cast<std::size_t>(e.v)];
        report.max_adjacent_degree_sum = std::max(report.max_adjacent_degree_sum, s);
        if (s == 2 * d && max_group_total < 2 * d - 2) {
            report.ok = false;
            report.violations.push_back("saturated adjacent pair without a group of size 2d-2");
        }
        if (s <= 2 * d - 1 && max_group_total < s - 1) {
            report.ok = false;
            report.violations.push_back("adjacent pair without a group of size d(u)+d(v)-1");
        }
    }

    // Average degree at most half the worst adjacent degree sum.
    if (4 * static_cast<long long>(sg.edges.size()) >
        static_cast<long long>(report.max_adjacent_degree_sum) * n) {
        report.ok = false;
        report.violations.push_back("average degree exceeds half the maximal adjacent degree sum");
    }
    return report;
}

std::optional<std::pair<Word, Word>> twin_pair_by_spread(const PolyboxCode& code, int i) {
    if (!code.star_free()) throw UsageError("twin_pair_by_spread requires a star-free code");
    if (!is_partition_code(code)) throw UsageError("twin_pair_by_spread requires a partition code");
    if (i < 0 || i >= code.dim()) throw UsageError("coordinate out of range in twin_pair_by_spread");

    Distribution dist = distribution(code, i);
    const int d = code.dim();
    const int k = dist.group_count();

    for (const auto& group : dist.groups) {
        for (const std::vector<Word>* half : {&group.with_letter, &group.with_complement}) {
            for (std::size_t a = 0; a < half->size(); ++a)
                for (std::size_t b = a + 1; b < half->size(); ++b)
                    if (is_twin_pair((*half)[a], (*half)[b]))
                        return std::make_pair((*half)[a], (*half)[b]);
        }
        for (const Word& u : group.with_letter)
            for (const Word& v : group.with_complement)
                if (u.drop(i) == v.drop(i)) return std::make_pair(u, v);
    }

    // Group count above 2^(d-3)/3 guarantees a twin pair.
    if (static_cast<std::uint64_t>(24) * static_cast<std::uint64_t>(k) > (std::uint64_t{1} << d))
        throw DefectError("twin pair guaranteed by the spread bound but not found");
    return std::nullopt;
}

} // namespace pbx
