#include "stratcat/group.hpp"

#include <algorithm>
#include <numeric>

namespace stratcat {

Perm perm_identity(int degree) {
    Perm p(degree);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm perm_mult(const Perm& a, const Perm& b) {
    Perm c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
    return c;
}

Perm perm_inverse(const Perm& a) {
    Perm c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[a[i]] = static_cast<int>(i);
    return c;
}

Perm perm_from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
    Perm p = perm_identity(degree);
    for (const auto& cyc : cycles) {
        for (size_t i = 0; i < cyc.size(); ++i) {
            int from = cyc[i], to = cyc[(i + 1) % cyc.size()];
            if (from < 0 || from >= degree || to < 0 || to >= degree)
                throw DomainError("BadCycle", "cycle entry out of range");
            p[from] = to;
        }
    }
    return p;
}

std::vector<std::vector<int>> cycles_of_perm(const Perm& p) {
    std::vector<std::vector<int>> cycles;
    std::vector<char> seen(p.size(), 0);
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
        if (seen[i] || p[i] == i) continue;
        std::vector<int> cyc;
        int j = i;
        while (!seen[j]) {
            seen[j] = 1;
            cyc.push_back(j);
            j = p[j];
        }
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

FinGroup::FinGroup(int degree, std::vector<Perm> generators, int orderCap) : degree_(degree) {
    init(std::move(generators), orderCap);
}

void FinGroup::init(std::vector<Perm> generators, int orderCap) {
    gens_ = std::move(generators);
    for (const auto& g : gens_)
        if (static_cast<int>(g.size()) != degree_)
            throw DomainError("BadGenerator", "generator degree mismatch");
    elems_.push_back(perm_identity(degree_));
    index_[elems_[0]] = 0;
    words_.push_back({});
    // breadth-first closure
    for (size_t head = 0; head < elems_.size(); ++head) {
        for (int gi = 0; gi < n_gens(); ++gi) {
            Perm next = perm_mult(gens_[gi], elems_[head]);
            if (index_.count(next)) continue;
            if (static_cast<int>(elems_.size()) >= orderCap)
                throw CapExceeded("group order exceeds cap " + std::to_string(orderCap));
            index_[next] = static_cast<int>(elems_.size());
            auto w = words_[head];
            w.push_back(gi);
            elems_.push_back(std::move(next));
            words_.push_back(std::move(w));
        }
    }
    genElems_.clear();
    for (const auto& g : gens_) genElems_.push_back(index_.at(g));
    const int n = order();
    mult_.assign(static_cast<size_t>(n) * n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) mult_[static_cast<size_t>(a) * n + b] = index_.at(perm_mult(elems_[a], elems_[b]));
    inv_.assign(n, 0);
    for (int a = 0; a < n; ++a) inv_[a] = index_.at(perm_inverse(elems_[a]));
}

int FinGroup::index_of(const Perm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw DomainError("NotAnElement", "permutation not in the group");
    return it->second;
}

FinGroup trivial_group() { return FinGroup(1, {}); }

FinGroup cyclic_group(int n) {
    std::vector<int> cyc(n);
    std::iota(cyc.begin(), cyc.end(), 0);
    return FinGroup(n, {perm_from_cycles(n, {cyc})});
}

FinGroup symmetric_group(int n) {
    if (n > 7) throw CapExceeded("symmetric group degree capped at 7");
    if (n <= 1) return trivial_group();
    std::vector<int> cyc(n);
    std::iota(cyc.begin(), cyc.end(), 0);
    return FinGroup(n, {perm_from_cycles(n, {{0, 1}}), perm_from_cycles(n, {cyc})});
}

FinGroup group_from_cycles(int degree, const std::vector<std::vector<std::vector<int>>>& genCycles) {
    std::vector<Perm> gens;
    for (const auto& cycles : genCycles) gens.push_back(perm_from_cycles(degree, cycles));
    return FinGroup(degree, std::move(gens));
}

GroupHom make_group_hom(const FinGroup& G, const FinGroup& H, const std::vector<int>& genImages) {
    if (static_cast<int>(genImages.size()) != G.n_gens())
        throw DomainError("BadHom", "one image per generator required");
    GroupHom h;
    h.source = G;
    h.target = H;
    h.genImages = genImages;
    h.elemImages.assign(G.order(), -1);
    auto eval = [&](const std::vector<int>& word) {
        int v = 0;
        for (int gi : word) v = H.mult(genImages[gi], v);
        return v;
    };
    for (int e = 0; e < G.order(); ++e) h.elemImages[e] = eval(G.word_of(e));
    // multiplicativity along the Cayley graph implies a homomorphism
    for (int e = 0; e < G.order(); ++e)
        for (int gi = 0; gi < G.n_gens(); ++gi) {
            int prod = G.mult(G.gen_element(gi), e);
            if (h.elemImages[prod] != H.mult(genImages[gi], h.elemImages[e]))
                throw DomainError("BadHom", "generator images do not satisfy the source relations");
        }
    return h;
}

GroupHom make_group_hom_perms(const FinGroup& G, const FinGroup& H,
                              const std::vector<Perm>& genImages) {
    std::vector<int> idx;
    for (const auto& p : genImages) idx.push_back(H.index_of(p));
    return make_group_hom(G, H, idx);
}

FinCat b_group(const FinGroup& G, const std::string& objName) {
    FinCat C;
    C.objNames.push_back(objName);
    const int n = G.order();
    for (int e = 0; e < n; ++e) {
        C.morNames.push_back("g" + std::to_string(e));
        C.src.push_back(0);
        C.tgt.push_back(0);
    }
    C.idOf.push_back(0);
    C.comp.assign(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) C.comp[a][b] = G.mult(a, b);
    return C;
}

FinCat action_groupoid(const FinGroup& G) {
    FinCat C;
    const int n = G.degree();
    for (int x = 0; x < n; ++x) C.objNames.push_back("p" + std::to_string(x));
    std::map<std::pair<int, int>, int> morIdx; // (g, x)
    for (int g = 0; g < G.order(); ++g)
        for (int x = 0; x < n; ++x) {
            morIdx[{g, x}] = C.n_mor();
            C.morNames.push_back("(g" + std::to_string(g) + ",p" + std::to_string(x) + ")");
            C.src.push_back(x);
            C.tgt.push_back(G.element(g)[x]);
        }
    C.idOf.resize(n);
    for (int x = 0; x < n; ++x) C.idOf[x] = morIdx.at({0, x});
    const int nM = C.n_mor();
    C.comp.assign(nM, std::vector<int>(nM, -1));
    for (int b = 0; b < G.order(); ++b)
        for (int x = 0; x < n; ++x)
            for (int a = 0; a < G.order(); ++a) {
                int f = morIdx.at({b, x});
                int g = morIdx.at({a, G.element(b)[x]});
                C.comp[g][f] = morIdx.at({G.mult(a, b), x});
            }
    return C;
}

Functor action_to_b_group(const FinGroup& G) {
    Functor F;
    F.source = action_groupoid(G);
    F.target = b_group(G);
    F.objMap.assign(G.degree(), 0);
    for (int g = 0; g < G.order(); ++g)
        for (int x = 0; x < G.degree(); ++x) F.morMap.push_back(g);
    return F;
}

Functor b_group_functor(const GroupHom& h) {
    Functor F;
    F.source = b_group(h.source);
    F.target = b_group(h.target);
    F.objMap = {0};
    F.morMap = h.elemImages;
    return F;
}

FinGroup generated_subgroup(const FinGroup& G, const std::vector<int>& elements) {
    std::vector<Perm> gens;
    for (int e : elements) gens.push_back(G.element(e));
    return FinGroup(G.degree(), std::move(gens));
}

} // namespace stratcat
