#include "stratcat/poset.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace stratcat {

int FinPoset::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (elements[i] == name) return i;
    throw DomainError("UnknownPoint", "no poset element named '" + name + "'");
}

std::string to_string(SubposetClass c) {
    switch (c) {
    case SubposetClass::Clopen: return "clopen";
    case SubposetClass::Sieve: return "sieve";
    case SubposetClass::Cosieve: return "cosieve";
    case SubposetClass::Interval: return "interval";
    case SubposetClass::None: return "none";
    }
    return "none";
}

static void transitive_closure(std::vector<char>& rel, int n) {
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (!rel[static_cast<size_t>(i) * n + k]) continue;
            for (int j = 0; j < n; ++j)
                if (rel[static_cast<size_t>(k) * n + j]) rel[static_cast<size_t>(i) * n + j] = 1;
        }
}

FinPoset make_poset(std::vector<std::string> elements,
                    const std::vector<std::pair<int, int>>& relations) {
    const int n = static_cast<int>(elements.size());
    FinPoset P;
    P.elements = std::move(elements);
    P.rel.assign(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) P.rel[static_cast<size_t>(i) * n + i] = 1;
    for (auto [a, b] : relations) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw DomainError("BadRelation", "relation index out of range");
        P.rel[static_cast<size_t>(a) * n + b] = 1;
    }
    transitive_closure(P.rel, n);
    auto rep = validate_poset(P);
    if (!rep.empty()) throw ValidationError("InvalidPoset", rep);
    return P;
}

FinPoset make_poset_named(std::vector<std::string> elements,
                          const std::vector<std::pair<std::string, std::string>>& relations) {
    std::vector<std::pair<int, int>> rel;
    FinPoset tmp;
    tmp.elements = elements;
    rel.reserve(relations.size());
    for (const auto& [a, b] : relations) rel.emplace_back(tmp.index_of(a), tmp.index_of(b));
    return make_poset(std::move(elements), rel);
}

FinPoset chain_poset(int n) {
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    for (int i = 0; i + 1 < n; ++i) rel.emplace_back(i, i + 1);
    return make_poset(std::move(names), rel);
}

FinPoset antichain_poset(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    return make_poset(std::move(names), {});
}

FinPoset x_n_poset(int n) {
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    names.push_back("inf");
    for (int i = 0; i < n; ++i) rel.emplace_back(i, n);
    return make_poset(std::move(names), rel);
}

std::vector<std::string> validate_poset(const FinPoset& P) {
    std::vector<std::string> rep;
    const int n = P.size();
    if (P.rel.size() != static_cast<size_t>(n) * n) {
        rep.push_back("relation matrix has wrong shape");
        return rep;
    }
    for (int i = 0; i < n; ++i)
        if (!P.leq(i, i)) rep.push_back("not reflexive at " + P.elements[i]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && P.leq(i, j) && P.leq(j, i))
                rep.push_back("antisymmetry fails on (" + P.elements[i] + ", " + P.elements[j] + ")");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!P.leq(i, j)) continue;
            for (int k = 0; k < n; ++k)
                if (P.leq(j, k) && !P.leq(i, k))
                    rep.push_back("transitivity fails on (" + P.elements[i] + ", " + P.elements[j] +
                                  ", " + P.elements[k] + ")");
        }
    return rep;
}

std::vector<std::string> validate_monotone(const MonotoneMap& f) {
    std::vector<std::string> rep;
    const int n = f.source.size();
    if (static_cast<int>(f.map.size()) != n) {
        rep.push_back("assignment has wrong length");
        return rep;
    }
    for (int i = 0; i < n; ++i)
        if (f.map[i] < 0 || f.map[i] >= f.target.size()) {
            rep.push_back("assignment out of range at " + f.source.elements[i]);
            return rep;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (f.source.leq(i, j) && !f.target.leq(f.map[i], f.map[j]))
                rep.push_back("not order-preserving on (" + f.source.elements[i] + ", " +
                              f.source.elements[j] + ")");
    return rep;
}

namespace {

std::vector<char> open_mask(const FiniteSpace& X, const std::vector<int>& open) {
    std::vector<char> m(X.points.size(), 0);
    for (int p : open) m[p] = 1;
    return m;
}

} // namespace

std::vector<std::string> validate_space(const FiniteSpace& X) {
    std::vector<std::string> rep;
    const int n = static_cast<int>(X.points.size());
    std::set<std::vector<int>> fam(X.opens.begin(), X.opens.end());
    std::vector<int> full(n);
    std::iota(full.begin(), full.end(), 0);
    if (!fam.count({})) rep.push_back("empty set not open");
    if (!fam.count(full)) rep.push_back("full set not open");
    for (const auto& U : X.opens)
        for (const auto& V : X.opens) {
            std::vector<int> uni, inter;
            std::set_union(U.begin(), U.end(), V.begin(), V.end(), std::back_inserter(uni));
            std::set_intersection(U.begin(), U.end(), V.begin(), V.end(), std::back_inserter(inter));
            if (!fam.count(uni)) rep.push_back("family not closed under union");
            if (!fam.count(inter)) rep.push_back("family not closed under intersection");
            if (rep.size() > 8) return rep;
        }
    // T0: distinct points have distinct open-neighbourhood families.
    std::set<std::vector<int>> seen;
    for (int p = 0; p < n; ++p) {
        std::vector<int> nbhd;
        for (int u = 0; u < static_cast<int>(X.opens.size()); ++u) {
            auto m = open_mask(X, X.opens[u]);
            if (m[p]) nbhd.push_back(u);
        }
        if (!seen.insert(nbhd).second) rep.push_back("not T0: duplicate neighbourhood family");
    }
    return rep;
}

std::vector<std::string> validate_tower(const PosetTower& T) {
    std::vector<std::string> rep;
    const int n = T.index.size();
    if (static_cast<int>(T.nodes.size()) != n) {
        rep.push_back("one node poset required per index element");
        return rep;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !T.index.leq(i, j)) continue;
            auto it = T.bonds.find({i, j});
            if (it == T.bonds.end()) {
                rep.push_back("missing bond for " + T.index.elements[i] + " <= " + T.index.elements[j]);
                continue;
            }
            const MonotoneMap& b = it->second;
            if (b.source.size() != T.nodes[j].size() || b.target.size() != T.nodes[i].size())
                rep.push_back("bond for (" + T.index.elements[i] + ", " + T.index.elements[j] +
                              ") has mismatched endpoints");
            auto r = validate_monotone(b);
            rep.insert(rep.end(), r.begin(), r.end());
        }
    // functoriality: bond(i,j) o bond(j,k) = bond(i,k)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k || !T.index.lt(i, j) || !T.index.lt(j, k)) continue;
                const auto& bij = T.bonds.at({i, j});
                const auto& bjk = T.bonds.at({j, k});
                const auto& bik = T.bonds.at({i, k});
                for (int x = 0; x < T.nodes[k].size(); ++x)
                    if (bij.map[bjk.map[x]] != bik.map[x]) {
                        rep.push_back("bonds do not compose over (" + T.index.elements[i] + ", " +
                                      T.index.elements[j] + ", " + T.index.elements[k] + ")");
                        break;
                    }
            }
    return rep;
}

std::vector<int> up_set(const FinPoset& P, int p) {
    std::vector<int> r;
    for (int q = 0; q < P.size(); ++q)
        if (P.leq(p, q)) r.push_back(q);
    return r;
}

std::vector<int> down_set(const FinPoset& P, int p) {
    std::vector<int> r;
    for (int q = 0; q < P.size(); ++q)
        if (P.leq(q, p)) r.push_back(q);
    return r;
}

std::vector<std::pair<int, int>> cover_relations(const FinPoset& P) {
    std::vector<std::pair<int, int>> covers;
    const int n = P.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !P.leq(i, j)) continue;
            bool cover = true;
            for (int k = 0; k < n && cover; ++k)
                if (k != i && k != j && P.leq(i, k) && P.leq(k, j)) cover = false;
            if (cover) covers.emplace_back(i, j);
        }
    return covers;
}

int poset_height(const FinPoset& P) {
    const int n = P.size();
    if (n == 0) return -1;
    std::vector<int> h(n, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (P.lt(i, j) && h[j] < h[i] + 1) {
                    h[j] = h[i] + 1;
                    changed = true;
                }
    }
    return *std::max_element(h.begin(), h.end());
}

bool is_sieve(const FinPoset& P, const std::vector<char>& subset) {
    for (int i = 0; i < P.size(); ++i)
        for (int j = 0; j < P.size(); ++j)
            if (P.leq(i, j) && subset[j] && !subset[i]) return false;
    return true;
}

bool is_cosieve(const FinPoset& P, const std::vector<char>& subset) {
    for (int i = 0; i < P.size(); ++i)
        for (int j = 0; j < P.size(); ++j)
            if (P.leq(i, j) && subset[i] && !subset[j]) return false;
    return true;
}

FinPoset induced_subposet(const FinPoset& P, const std::vector<int>& elems) {
    FinPoset Q;
    for (int e : elems) Q.elements.push_back(P.elements[e]);
    const int m = static_cast<int>(elems.size());
    Q.rel.assign(static_cast<size_t>(m) * m, 0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            Q.rel[static_cast<size_t>(a) * m + b] = P.leq(elems[a], elems[b]) ? 1 : 0;
    return Q;
}

bool are_posets_isomorphic(const FinPoset& P, const FinPoset& Q) {
    const int n = P.size();
    if (Q.size() != n) return false;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    // invariant prune: multiset of (|down|, |up|) must match
    auto profile = [](const FinPoset& R) {
        std::vector<std::pair<int, int>> pr;
        for (int i = 0; i < R.size(); ++i)
            pr.emplace_back(static_cast<int>(down_set(R, i).size()),
                            static_cast<int>(up_set(R, i).size()));
        std::sort(pr.begin(), pr.end());
        return pr;
    };
    if (profile(P) != profile(Q)) return false;
    do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j)
                if (P.leq(i, j) != Q.leq(perm[i], perm[j])) ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return n == 0;
}

FiniteSpace alexandroff(const FinPoset& P) {
    const int n = P.size();
    if (n > 20) throw CapExceeded("alexandroff on poset with > 20 elements");
    FiniteSpace X;
    X.points = P.elements;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<char> sub(n, 0);
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) sub[i] = 1;
        if (!is_cosieve(P, sub)) continue;
        std::vector<int> open;
        for (int i = 0; i < n; ++i)
            if (sub[i]) open.push_back(i);
        X.opens.push_back(std::move(open));
    }
    std::sort(X.opens.begin(), X.opens.end());
    return X;
}

FinPoset specialization_poset(const FiniteSpace& X) {
    const int n = static_cast<int>(X.points.size());
    std::vector<std::vector<char>> masks;
    masks.reserve(X.opens.size());
    for (const auto& U : X.opens) masks.push_back(open_mask(X, U));
    // neighbourhood families must be distinct
    std::set<std::vector<char>> fams;
    for (int p = 0; p < n; ++p) {
        std::vector<char> f;
        for (const auto& m : masks) f.push_back(m[p]);
        if (!fams.insert(f).second)
            throw DomainError("NotT0", "points " + X.points[p] + " and an earlier point share all opens");
    }
    FinPoset P;
    P.elements = X.points;
    P.rel.assign(static_cast<size_t>(n) * n, 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            // x in closure of {y}: every open containing x contains y
            bool le = true;
            for (const auto& m : masks)
                if (m[x] && !m[y]) {
                    le = false;
                    break;
                }
            P.rel[static_cast<size_t>(x) * n + y] = le ? 1 : 0;
        }
    auto rep = validate_poset(P);
    if (!rep.empty()) throw ValidationError("InvalidPoset", rep);
    return P;
}

int Subdivision::index_of(const std::vector<int>& s) const {
    for (int i = 0; i < static_cast<int>(strings.size()); ++i)
        if (strings[i] == s) return i;
    throw DomainError("UnknownString", "string not present in subdivision");
}

Subdivision subdivision(const FinPoset& P) {
    const int n = P.size();
    Subdivision S;
    // enumerate chains as index-sorted subsets, depth-first in lexicographic order
    std::vector<int> cur;
    std::vector<std::vector<int>> found;
    auto dfs = [&](auto&& self, int start) -> void {
        for (int i = start; i < n; ++i) {
            bool comp = true;
            for (int c : cur)
                if (!P.leq(c, i) && !P.leq(i, c)) {
                    comp = false;
                    break;
                }
            if (!comp) continue;
            cur.push_back(i);
            found.push_back(cur);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    dfs(dfs, 0);
    // represent each string sorted ascending along the order of P
    for (auto& s : found)
        std::sort(s.begin(), s.end(), [&](int a, int b) { return a != b && P.leq(a, b); });
    std::sort(found.begin(), found.end());
    S.strings = std::move(found);
    const int m = static_cast<int>(S.strings.size());
    FinPoset& Q = S.poset;
    for (const auto& s : S.strings) {
        std::string name = "{";
        for (size_t i = 0; i < s.size(); ++i) {
            if (i) name += ",";
            name += P.elements[s[i]];
        }
        name += "}";
        Q.elements.push_back(name);
    }
    Q.rel.assign(static_cast<size_t>(m) * m, 0);
    std::vector<std::vector<int>> sorted = S.strings;
    for (auto& s : sorted) std::sort(s.begin(), s.end());
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            Q.rel[static_cast<size_t>(a) * m + b] =
                std::includes(sorted[b].begin(), sorted[b].end(), sorted[a].begin(), sorted[a].end())
                    ? 1
                    : 0;
    return S;
}

SubposetClass classify_subposet(const FinPoset& P, const std::vector<char>& subset) {
    const bool sieve = is_sieve(P, subset);
    const bool cosieve = is_cosieve(P, subset);
    if (sieve && cosieve) return SubposetClass::Clopen;
    if (sieve) return SubposetClass::Sieve;
    if (cosieve) return SubposetClass::Cosieve;
    bool interval = true;
    for (int i = 0; i < P.size() && interval; ++i)
        for (int j = 0; j < P.size() && interval; ++j)
            for (int k = 0; k < P.size() && interval; ++k)
                if (P.leq(i, j) && P.leq(j, k) && subset[i] && subset[k] && !subset[j])
                    interval = false;
    return interval ? SubposetClass::Interval : SubposetClass::None;
}

SubposetClass classify_subposet(const FinPoset& P, const std::vector<int>& subset) {
    std::vector<char> mask(P.size(), 0);
    for (int s : subset) mask[s] = 1;
    return classify_subposet(P, mask);
}

FinPoset tower_limit(const PosetTower& T) {
    auto rep = validate_tower(T);
    if (!rep.empty()) throw ValidationError("InvalidTower", rep);
    const int n = T.index.size();
    std::vector<std::vector<int>> families;
    std::vector<int> cur(n, 0);
    auto compatible = [&](int upto) {
        for (int i = 0; i <= upto; ++i)
            for (int j = 0; j <= upto; ++j) {
                if (i == j || !T.index.lt(i, j)) continue;
                if (T.bonds.at({i, j}).map[cur[j]] != cur[i]) return false;
            }
        return true;
    };
    auto dfs = [&](auto&& self, int i) -> void {
        if (i == n) {
            families.push_back(cur);
            return;
        }
        for (int x = 0; x < T.nodes[i].size(); ++x) {
            cur[i] = x;
            if (compatible(i)) self(self, i + 1);
        }
    };
    if (n == 0)
        families.push_back({});
    else
        dfs(dfs, 0);
    FinPoset L;
    for (const auto& f : families) {
        std::string name = "(";
        for (int i = 0; i < n; ++i) {
            if (i) name += ",";
            name += T.nodes[i].elements[f[i]];
        }
        name += ")";
        L.elements.push_back(name);
    }
    const int m = static_cast<int>(families.size());
    L.rel.assign(static_cast<size_t>(m) * m, 0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            bool le = true;
            for (int i = 0; i < n; ++i)
                if (!T.nodes[i].leq(families[a][i], families[b][i])) {
                    le = false;
                    break;
                }
            L.rel[static_cast<size_t>(a) * m + b] = le ? 1 : 0;
        }
    return L;
}

MonotoneMap tower_limit_projection(const PosetTower& T, const FinPoset& limit, int i) {
    // limit elements are named "(a,b,...)"; recompute families to project
    MonotoneMap f;
    f.source = limit;
    f.target = T.nodes[i];
    for (const auto& name : limit.elements) {
        // parse the i-th component
        std::vector<std::string> parts;
        std::string curpart;
        for (size_t k = 1; k + 1 < name.size(); ++k) {
            if (name[k] == ',') {
                parts.push_back(curpart);
                curpart.clear();
            } else
                curpart += name[k];
        }
        parts.push_back(curpart);
        f.map.push_back(T.nodes[i].index_of(parts[i]));
    }
    return f;
}

namespace {

// all set partitions of {0..n-1} as block-assignment vectors (restricted
// growth strings, lexicographic)
void partitions_rec(int n, int i, int maxUsed, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
    if (i == n) {
        out.push_back(cur);
        return;
    }
    for (int b = 0; b <= maxUsed + 1; ++b) {
        cur[i] = b;
        partitions_rec(n, i + 1, std::max(maxUsed, b), cur, out);
    }
}

// enumerate all partial orders on k labeled points extending `forced`
// (already transitively closed, antisymmetric); emits relation matrices
void extensions_rec(int k, std::vector<char>& rel, int pairIdx,
                    const std::vector<std::pair<int, int>>& pairs,
                    std::vector<std::vector<char>>& out) {
    if (pairIdx == static_cast<int>(pairs.size())) {
        out.push_back(rel);
        return;
    }
    auto [a, b] = pairs[pairIdx];
    // branch 1: leave (a,b) unrelated (if not already forced by closure)
    extensions_rec(k, rel, pairIdx + 1, pairs, out);
    // branch 2: add a <= b if consistent
    if (!rel[a * k + b] && !rel[b * k + a]) {
        std::vector<char> r2 = rel;
        r2[a * k + b] = 1;
        transitive_closure(r2, k);
        bool anti = true;
        for (int i = 0; i < k && anti; ++i)
            for (int j = 0; j < k && anti; ++j)
                if (i != j && r2[i * k + j] && r2[j * k + i]) anti = false;
        // avoid duplicates: the closure must not have related any EARLIER
        // directed pair (each direction appears separately in the list)
        bool fresh = true;
        for (int t = 0; t < pairIdx && fresh; ++t) {
            auto [x, y] = pairs[t];
            if (r2[x * k + y] != rel[x * k + y]) fresh = false;
        }
        if (anti && fresh) extensions_rec(k, r2, pairIdx + 1, pairs, out);
    }
}

} // namespace

std::vector<MonotoneMap> enumerate_stratifications(const FinPoset& P) {
    const int n = P.size();
    std::vector<MonotoneMap> result;
    if (n == 0) {
        MonotoneMap f;
        f.source = P;
        f.target = P;
        result.push_back(f);
        return result;
    }
    std::vector<std::vector<int>> parts;
    std::vector<int> cur(n, 0);
    partitions_rec(n, 1, 0, cur, parts); // element 0 always in block 0
    for (const auto& assign : parts) {
        const int k = 1 + *std::max_element(assign.begin(), assign.end());
        // forced relations between blocks
        std::vector<char> forced(static_cast<size_t>(k) * k, 0);
        for (int b = 0; b < k; ++b) forced[static_cast<size_t>(b) * k + b] = 1;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (P.leq(i, j)) forced[static_cast<size_t>(assign[i]) * k + assign[j]] = 1;
        transitive_closure(forced, k);
        bool anti = true;
        for (int a = 0; a < k && anti; ++a)
            for (int b = 0; b < k && anti; ++b)
                if (a != b && forced[a * k + b] && forced[b * k + a]) anti = false;
        if (!anti) continue;
        std::vector<std::pair<int, int>> freePairs;
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                if (a != b && !forced[a * k + b] && !forced[b * k + a] && a < b) {
                    freePairs.emplace_back(a, b);
                    freePairs.emplace_back(b, a);
                }
        std::vector<std::vector<char>> orders;
        std::vector<char> base = forced;
        extensions_rec(k, base, 0, freePairs, orders);
        std::sort(orders.begin(), orders.end());
        orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
        for (const auto& rel : orders) {
            FinPoset Q;
            // block named after its least member
            std::vector<int> least(k, -1);
            for (int i = n - 1; i >= 0; --i) least[assign[i]] = i;
            for (int b = 0; b < k; ++b) Q.elements.push_back(P.elements[least[b]]);
            Q.rel = rel;
            MonotoneMap f;
            f.source = P;
            f.target = Q;
            f.map = assign;
            result.push_back(std::move(f));
        }
    }
    return result;
}

} // namespace stratcat
