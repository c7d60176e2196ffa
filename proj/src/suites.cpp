#include "treembed/suites.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <unordered_set>

namespace treembed {

void SuiteReport::fail(std::string detail) {
    ++failures;
    if (details.size() < 20) details.push_back(std::move(detail));
}

namespace {

const std::vector<std::string> kTreeAlphabet{"a", "b"};
const std::vector<std::string> kPatternLabels{"a", "b", "*"};

// Canonical text straight from a parent array (parent[i] < i).
std::string canonical(const std::vector<NodeId>& parent, const std::vector<std::size_t>& label,
                      const std::vector<EdgeKind>& kind, const std::vector<std::string>& names) {
    const std::size_t n = parent.size();
    std::vector<std::vector<std::string>> kids(n);
    std::string done;
    for (std::size_t i = n; i-- > 0;) {
        auto& parts = kids[i];
        std::sort(parts.begin(), parts.end());
        std::string s = names[label[i]] + "(";
        for (auto& part : parts) s += part + ",";
        s += ")";
        if (i == 0) return s;
        kids[parent[i]].push_back((kind[i] == EdgeKind::Descendant ? "//" : "/") + s);
    }
    return done;
}

StructureBuilder make_builder(const std::vector<NodeId>& parent, const std::vector<std::size_t>& label,
                              const std::vector<EdgeKind>& kind, const std::vector<std::string>& names) {
    StructureBuilder b;
    for (std::size_t i = 0; i < parent.size(); ++i) {
        b.add_node(names[label[i]]);
        if (i > 0) b.add_edge(parent[i], static_cast<NodeId>(i), kind[i]);
    }
    return b;
}

// Calls f(parent, label, kind) for every parent array, labeling and (with
// edge_kinds) edge-kind assignment on n nodes.
void for_each_labeled(std::size_t n, std::size_t label_count, bool edge_kinds,
                      const std::function<void(const std::vector<NodeId>&, const std::vector<std::size_t>&,
                                               const std::vector<EdgeKind>&)>& f) {
    std::vector<NodeId> parent(n, kNoNode);
    std::vector<std::size_t> label(n, 0);
    std::vector<EdgeKind> kind(n, EdgeKind::Child);

    std::function<void(std::size_t)> kinds = [&](std::size_t i) {
        if (i == n) {
            f(parent, label, kind);
            return;
        }
        kind[i] = EdgeKind::Child;
        kinds(i + 1);
        if (edge_kinds) {
            kind[i] = EdgeKind::Descendant;
            kinds(i + 1);
            kind[i] = EdgeKind::Child;
        }
    };
    std::function<void(std::size_t)> labels = [&](std::size_t i) {
        if (i == n) {
            kinds(1);
            return;
        }
        for (std::size_t l = 0; l < label_count; ++l) {
            label[i] = l;
            labels(i + 1);
        }
    };
    std::function<void(std::size_t)> shapes = [&](std::size_t i) {
        if (i == n) {
            labels(0);
            return;
        }
        for (NodeId p = 0; p < i; ++p) {
            parent[i] = p;
            shapes(i + 1);
        }
    };
    shapes(1);
}

std::string describe(const Tree& t, const Pattern& p) {
    return "tree " + render_tree(t) + " pattern " + render_pattern(p);
}

std::string describe(const Tree& t, const Pattern& p, EmbeddingKind kind) {
    return describe(t, p) + " kind " + std::string(kind_name(kind));
}

void check_witness(SuiteReport& r, const Tree& t, const Pattern& p, EmbeddingKind kind, const CheckResult& res) {
    if (!res.yes()) return;
    ++r.witnesses_checked;
    bool ok = false;
    try {
        ok = res.witness && verify(t, p, *res.witness, kind);
    } catch (const Error&) {
        ok = false;
    }
    if (!ok) {
        ++r.witness_failures;
        r.fail(describe(t, p, kind) + ": " + res.algorithm + " returned an invalid witness");
    }
}

std::string verdicts_text(std::initializer_list<std::pair<const char*, const CheckResult*>> rs) {
    std::string s;
    for (auto [name, r] : rs) {
        if (!s.empty()) s += ' ';
        s += std::string(name) + "=" + std::string(verdict_name(r->verdict));
    }
    return s;
}

struct Structural {
    SuiteReport hierarchy{"hierarchy"};
    SuiteReport collapse{"collapse"};
    SuiteReport path{"path-pattern"};

    void run(const Tree& t, const Pattern& p, const SelftestOptions& opts) {
        std::array<CheckResult, 4> d;
        for (auto k : kAllKinds) {
            d[static_cast<std::size_t>(k)] = dispatch(t, p, k, DispatchOptions{opts.search});
            check_witness(hierarchy, t, p, k, d[static_cast<std::size_t>(k)]);
        }
        const auto& [ds, di, da, dl] = d;
        if (std::any_of(d.begin(), d.end(), [](const CheckResult& r) { return r.verdict == Verdict::Unknown; })) {
            ++hierarchy.skipped;
        } else {
            ++hierarchy.cases;
            if ((dl.yes() && !da.yes()) || (da.yes() && !di.yes()) || (di.yes() && !ds.yes()))
                hierarchy.fail(describe(t, p) + ": " +
                               verdicts_text({{"std", &ds}, {"inj", &di}, {"anc", &da}, {"lca", &dl}}));
        }

        if (!p.has_descendant_edges() || p.is_path()) {
            CheckResult inj = solve_inj(t, p, opts.search);
            CheckResult anc = solve_anc(t, p, opts.search);
            CheckResult lca = check_lca(t, p);
            check_witness(collapse, t, p, EmbeddingKind::Inj, inj);
            check_witness(collapse, t, p, EmbeddingKind::Anc, anc);
            check_witness(collapse, t, p, EmbeddingKind::Lca, lca);
            bool unknown = inj.verdict == Verdict::Unknown || anc.verdict == Verdict::Unknown;
            if (!p.has_descendant_edges()) {
                if (unknown) {
                    ++collapse.skipped;
                } else {
                    ++collapse.cases;
                    if (inj.verdict != anc.verdict || anc.verdict != lca.verdict)
                        collapse.fail(describe(t, p) + ": " +
                                      verdicts_text({{"solve_inj", &inj}, {"solve_anc", &anc}, {"check_lca", &lca}}));
                }
            }
            if (p.is_path()) {
                CheckResult st = check_std(t, p);
                check_witness(path, t, p, EmbeddingKind::Std, st);
                if (unknown) {
                    ++path.skipped;
                } else {
                    ++path.cases;
                    if (st.verdict != inj.verdict || inj.verdict != anc.verdict || anc.verdict != lca.verdict)
                        path.fail(describe(t, p) + ": " + verdicts_text({{"check_std", &st},
                                                                         {"solve_inj", &inj},
                                                                         {"solve_anc", &anc},
                                                                         {"check_lca", &lca}}));
                }
            }
        }
    }
};

} // namespace

std::vector<Tree> enumerate_trees(std::size_t max_nodes, const std::vector<std::string>& alphabet) {
    std::vector<Tree> out;
    std::unordered_set<std::string> seen;
    for (std::size_t n = 1; n <= max_nodes; ++n)
        for_each_labeled(n, alphabet.size(), false, [&](const auto& parent, const auto& label, const auto& kind) {
            if (seen.insert(canonical(parent, label, kind, alphabet)).second)
                out.emplace_back(make_builder(parent, label, kind, alphabet));
        });
    return out;
}

std::vector<Pattern> enumerate_patterns(std::size_t max_nodes, const std::vector<std::string>& labels) {
    std::vector<Pattern> out;
    std::unordered_set<std::string> seen;
    for (std::size_t n = 1; n <= max_nodes; ++n)
        for_each_labeled(n, labels.size(), true, [&](const auto& parent, const auto& label, const auto& kind) {
            if (seen.insert(canonical(parent, label, kind, labels)).second)
                out.emplace_back(make_builder(parent, label, kind, labels));
        });
    return out;
}

std::vector<Pattern> enumerate_height_one_patterns(std::size_t max_children,
                                                   const std::vector<std::string>& labels) {
    // A root child is a (label, edge kind) option; children form a multiset,
    // enumerated as nondecreasing option sequences.
    const std::size_t options = labels.size() * 2;
    std::vector<Pattern> out;
    std::vector<std::size_t> seq;
    std::function<void(std::size_t, std::size_t)> grow = [&](std::size_t min_option, std::size_t root_label) {
        StructureBuilder b;
        NodeId r = b.add_node(labels[root_label]);
        for (std::size_t o : seq)
            b.add_child(r, labels[o / 2], o % 2 ? EdgeKind::Descendant : EdgeKind::Child);
        out.emplace_back(b);
        if (seq.size() == max_children) return;
        for (std::size_t o = min_option; o < options; ++o) {
            seq.push_back(o);
            grow(o, root_label);
            seq.pop_back();
        }
    };
    for (std::size_t rl = 0; rl < labels.size(); ++rl) grow(0, rl);
    return out;
}

Tree random_tree(std::mt19937_64& rng, std::size_t nodes, const std::vector<std::string>& alphabet) {
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    StructureBuilder b;
    b.add_node(alphabet[pick(rng)]);
    for (std::size_t i = 1; i < nodes; ++i) {
        std::uniform_int_distribution<NodeId> parent(0, static_cast<NodeId>(i - 1));
        b.add_child(parent(rng), alphabet[pick(rng)]);
    }
    return Tree(b);
}

Pattern random_pattern(std::mt19937_64& rng, std::size_t nodes, const std::vector<std::string>& labels,
                       double desc_probability) {
    std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
    std::bernoulli_distribution desc(desc_probability);
    StructureBuilder b;
    b.add_node(labels[pick(rng)]);
    for (std::size_t i = 1; i < nodes; ++i) {
        std::uniform_int_distribution<NodeId> parent(0, static_cast<NodeId>(i - 1));
        NodeId par = parent(rng);
        b.add_child(par, labels[pick(rng)], desc(rng) ? EdgeKind::Descendant : EdgeKind::Child);
    }
    return Pattern(b);
}

Pattern sample_pattern(std::mt19937_64& rng, const Tree& t, std::size_t nodes, double desc_probability,
                       double wildcard_probability) {
    nodes = std::clamp<std::size_t>(nodes, 1, t.size());
    std::vector<char> in(t.size(), 0);
    in[0] = 1;
    std::size_t count = 1;
    std::vector<NodeId> members{0};
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(t.size() - 1));

    // Adding x to an lca-closed set adds at most one more node: the deepest
    // lca of x with a member, which is also an lca of x with one of its
    // preorder neighbours among the members.
    auto extra_for = [&](NodeId x) {
        auto it = std::lower_bound(members.begin(), members.end(), x);
        NodeId best = kNoNode;
        for (auto nb : {it, it == members.begin() ? members.end() : std::prev(it)}) {
            if (nb == members.end()) continue;
            NodeId a = t.lca(x, *nb);
            if (best == kNoNode || t.depth(a) > t.depth(best)) best = a;
        }
        return best;
    };
    while (count < nodes) {
        NodeId x = pick(rng);
        if (in[x]) continue;
        NodeId a = extra_for(x);
        bool needs_lca = a != x && !in[a];
        if (count + 1 + (needs_lca ? 1 : 0) > nodes) continue;
        for (NodeId v : {x, a}) {
            if (in[v]) continue;
            in[v] = 1;
            ++count;
            members.insert(std::lower_bound(members.begin(), members.end(), v), v);
        }
    }

    std::bernoulli_distribution desc(desc_probability);
    std::bernoulli_distribution wild(wildcard_probability);
    StructureBuilder b;
    std::vector<NodeId> id(t.size(), kNoNode);
    for (NodeId v : members) {
        id[v] = b.add_node(wild(rng) ? std::string(kWildcardText) : std::string(t.label_name(v)));
        if (v == 0) continue;
        NodeId up = *t.parent(v);
        bool adjacent = in[up] != 0;
        while (!in[up]) up = *t.parent(up);
        b.add_edge(id[up], id[v], !adjacent || desc(rng) ? EdgeKind::Descendant : EdgeKind::Child);
    }
    return Pattern(b);
}

Pattern sample_anc_pattern(std::mt19937_64& rng, const Tree& t, std::size_t nodes, std::size_t max_degree,
                           double desc_probability, double wildcard_probability) {
    nodes = std::clamp<std::size_t>(nodes, 1, t.size());
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(t.size() - 1));
    std::vector<char> in;
    std::vector<NodeId> members;
    std::vector<std::size_t> below(t.size());
    std::vector<NodeId> top;

    // A new node x either becomes a leaf or splits the edges above the chosen
    // nodes just below it; either way only x and its nearest chosen ancestor
    // change degree. A run can get stuck short of the target, so restart a
    // few times and keep the largest set.
    std::vector<char> best_in;
    std::vector<NodeId> best_members;
    for (int attempt = 0; attempt < 16 && best_members.size() < nodes; ++attempt) {
        in.assign(t.size(), 0);
        std::fill(below.begin(), below.end(), 0);
        in[0] = 1;
        members.assign(1, 0);
        for (std::size_t misses = 0; members.size() < nodes && misses < 16 * t.size();) {
            NodeId x = pick(rng);
            if (in[x]) {
                ++misses;
                continue;
            }
            NodeId up = *t.parent(x);
            while (!in[up]) up = *t.parent(up);
            top.clear();
            auto it = std::upper_bound(members.begin(), members.end(), x);
            for (auto j = it; j != members.end() && *j < t.subtree_end(x);
                 j = std::lower_bound(j, members.end(), t.subtree_end(*j)))
                top.push_back(*j);
            if (top.size() > max_degree || below[up] + 1 - top.size() > max_degree) {
                ++misses;
                continue;
            }
            misses = 0;
            in[x] = 1;
            below[x] = top.size();
            below[up] = below[up] + 1 - top.size();
            members.insert(it, x);
        }
        if (members.size() > best_members.size()) {
            best_members.swap(members);
            best_in.swap(in);
        }
    }
    in.swap(best_in);
    members.swap(best_members);

    std::bernoulli_distribution desc(desc_probability);
    std::bernoulli_distribution wild(wildcard_probability);
    StructureBuilder b;
    std::vector<NodeId> id(t.size(), kNoNode);
    for (NodeId v : members) {
        id[v] = b.add_node(wild(rng) ? std::string(kWildcardText) : std::string(t.label_name(v)));
        if (v == 0) continue;
        NodeId up = *t.parent(v);
        bool adjacent = in[up] != 0;
        while (!in[up]) up = *t.parent(up);
        b.add_edge(id[up], id[v], !adjacent || desc(rng) ? EdgeKind::Descendant : EdgeKind::Child);
    }
    return Pattern(b);
}

Pattern random_bounded_pattern(std::mt19937_64& rng, std::size_t nodes, const std::vector<std::string>& labels,
                               double desc_probability, std::size_t max_degree) {
    std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
    std::bernoulli_distribution desc(desc_probability);
    StructureBuilder b;
    std::vector<std::size_t> degree{0};
    std::vector<NodeId> open{0};
    b.add_node(labels[pick(rng)]);
    for (std::size_t i = 1; i < nodes; ++i) {
        std::uniform_int_distribution<std::size_t> slot(0, open.size() - 1);
        std::size_t s = slot(rng);
        NodeId par = open[s];
        NodeId c = b.add_child(par, labels[pick(rng)], desc(rng) ? EdgeKind::Descendant : EdgeKind::Child);
        degree.push_back(0);
        if (++degree[par] == max_degree) {
            open[s] = open.back();
            open.pop_back();
        }
        if (max_degree > 0) open.push_back(c);
    }
    return Pattern(b);
}

CnfFormula sample_formula() { return CnfFormula{3, {{1, -3}, {1, -2, 3}, {-1, -2}}}; }

std::vector<CnfFormula> cnf_suite(std::uint64_t seed, std::uint32_t max_vars, std::uint32_t max_clauses,
                                  std::size_t per_cell) {
    std::mt19937_64 rng(seed);
    std::vector<CnfFormula> out;
    for (std::uint32_t n = 1; n <= max_vars; ++n)
        for (std::uint32_t k = 1; k <= max_clauses; ++k)
            for (std::size_t r = 0; r < per_cell; ++r) {
                CnfFormula f{n, {}};
                std::uniform_int_distribution<std::uint32_t> width(1, std::min<std::uint32_t>(3, n));
                for (std::uint32_t c = 0; c < k; ++c) {
                    std::vector<int> vars(n);
                    for (std::uint32_t v = 0; v < n; ++v) vars[v] = static_cast<int>(v + 1);
                    std::shuffle(vars.begin(), vars.end(), rng);
                    vars.resize(width(rng));
                    std::sort(vars.begin(), vars.end());
                    for (int& v : vars)
                        if (rng() & 1U) v = -v;
                    f.clauses.push_back(std::move(vars));
                }
                out.push_back(std::move(f));
            }
    if (max_vars >= 1) out.push_back(CnfFormula{1, {{1}, {-1}}});
    if (max_vars >= 2 && max_clauses >= 4) out.push_back(CnfFormula{2, {{1, 2}, {-1, 2}, {1, -2}, {-1, -2}}});
    if (max_vars >= 3 && max_clauses >= 3) out.push_back(sample_formula());
    return out;
}

std::vector<SuiteReport> run_structural_suites(const SelftestOptions& opts) {
    SuiteReport oracle{"oracle-equivalence"};
    Structural s;
    auto trees = enumerate_trees(opts.max_tree_nodes, kTreeAlphabet);
    auto patterns = enumerate_patterns(opts.max_pattern_nodes, kPatternLabels);
    BruteForceLimits unlimited{0, 0, false};
    for (const auto& t : trees)
        for (const auto& p : patterns) {
            for (auto k : kAllKinds) {
                CheckResult d = dispatch(t, p, k, DispatchOptions{opts.search});
                CheckResult bf = brute_force(t, p, k, unlimited);
                ++oracle.cases;
                if (d.verdict != bf.verdict)
                    oracle.fail(describe(t, p, k) + ": " + d.algorithm + "=" + std::string(verdict_name(d.verdict)) +
                                " brute_force=" + std::string(verdict_name(bf.verdict)));
                check_witness(oracle, t, p, k, d);
                check_witness(oracle, t, p, k, bf);
            }
            s.run(t, p, opts);
        }

    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> tree_size(1, opts.random_max_tree_nodes);
    std::uniform_int_distribution<std::size_t> pattern_size(1, opts.random_max_pattern_nodes);
    for (std::size_t i = 0; i < opts.random_instances; ++i) {
        Tree t = random_tree(rng, tree_size(rng), kTreeAlphabet);
        Pattern p = random_pattern(rng, pattern_size(rng), kPatternLabels, 0.5);
        s.run(t, p, opts);
    }
    return {oracle, s.hierarchy, s.collapse, s.path};
}

SuiteReport run_sat_suite(const SelftestOptions& opts) {
    SuiteReport r{"sat-roundtrip"};
    for (const auto& f : cnf_suite(opts.seed, opts.max_cnf_vars, opts.max_cnf_clauses, opts.cnf_per_cell)) {
        const bool sat = sat_brute_force(f);
        for (auto kind : kAllReductions) {
            bool gadget = kind == ReductionKind::InjWc || kind == ReductionKind::InjNowc || kind == ReductionKind::AncWc;
            if (gadget && (f.num_vars > opts.max_gadget_cnf || f.clauses.size() > opts.max_gadget_cnf)) continue;
            Instance inst = generate(kind, f);
            bool anc = targets_anc(kind);
            CheckResult res = anc ? solve_anc(inst.tree, inst.pattern, opts.search)
                                  : solve_inj(inst.tree, inst.pattern, opts.search);
            ++r.cases;
            std::string what = "reduction " + std::string(reduction_name(kind)) + " on " + render_dimacs(f);
            std::replace(what.begin(), what.end(), '\n', ' ');
            if (res.verdict == Verdict::Unknown)
                r.fail(what + ": search budget exhausted");
            else if (res.yes() != sat)
                r.fail(what + ": " + res.algorithm + "=" + std::string(verdict_name(res.verdict)) +
                       " sat_brute_force=" + (sat ? "yes" : "no"));
            check_witness(r, inst.tree, inst.pattern, anc ? EmbeddingKind::Anc : EmbeddingKind::Inj, res);
        }
    }
    return r;
}

SuiteReport run_height_one_suite(const SelftestOptions& opts) {
    SuiteReport r{"height-one"};
    const CountingReading reading = opts.as_printed_counting ? CountingReading::AsPrinted : CountingReading::Corrected;
    std::uint64_t printed_disagreements = 0;
    auto trees = enumerate_trees(opts.max_tree_nodes, kTreeAlphabet);
    auto patterns = enumerate_height_one_patterns(opts.max_pattern_nodes, kPatternLabels);
    for (const auto& t : trees)
        for (const auto& p : patterns) {
            CheckResult bf = brute_force(t, p, EmbeddingKind::Inj, BruteForceLimits{0, 0, false});
            Embedding h;
            bool matching = height_one_matching(t, p, &h);
            HeightOneCounts counts = count_height_one(t, p);
            bool counting = height_one_counting(counts, reading);
            bool printed = height_one_counting(counts, CountingReading::AsPrinted);
            ++r.cases;
            if (printed != bf.yes()) ++printed_disagreements;
            if (matching != bf.yes() || counting != bf.yes())
                r.fail(describe(t, p, EmbeddingKind::Inj) + ": counting=" + (counting ? "yes" : "no") +
                       " matching=" + (matching ? "yes" : "no") + " brute_force=" + (bf.yes() ? "yes" : "no"));
            if (matching) {
                CheckResult res;
                res.verdict = Verdict::Yes;
                res.witness = h;
                res.algorithm = "height_one_matching";
                check_witness(r, t, p, EmbeddingKind::Inj, res);
            }
        }
    r.note = "as-printed counting reading disagrees with brute force on " + std::to_string(printed_disagreements) +
             " instances";
    return r;
}

std::vector<SuiteReport> run_selftest(const SelftestOptions& opts) {
    auto out = run_structural_suites(opts);
    out.push_back(run_height_one_suite(opts));
    out.push_back(run_sat_suite(opts));
    return out;
}

} // namespace treembed
