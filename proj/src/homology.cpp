#include "stratcat/homology.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace stratcat {

IMat IMat::identity(int n) {
    IMat I(n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

IMat mat_mult(const IMat& A, const IMat& B) {
    if (A.cols != B.rows) throw DomainError("ShapeMismatch", "matrix product undefined");
    IMat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            if (A.at(i, k) == 0) continue;
            for (int j = 0; j < B.cols; ++j)
                if (B.at(k, j) != 0) C.at(i, j) += A.at(i, k) * B.at(k, j);
        }
    return C;
}

namespace {

BigInt big_abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// shared elimination; transforms are tracked when L/R are non-null
void smith_eliminate(IMat& D, IMat* L, IMat* R) {
    const int n = std::min(D.rows, D.cols);
    auto swapRows = [&](int a, int b) {
        if (a == b) return;
        for (int j = 0; j < D.cols; ++j) std::swap(D.at(a, j), D.at(b, j));
        if (L)
            for (int j = 0; j < L->cols; ++j) std::swap(L->at(a, j), L->at(b, j));
    };
    auto swapCols = [&](int a, int b) {
        if (a == b) return;
        for (int i = 0; i < D.rows; ++i) std::swap(D.at(i, a), D.at(i, b));
        if (R)
            for (int i = 0; i < R->rows; ++i) std::swap(R->at(i, a), R->at(i, b));
    };
    auto addRow = [&](int dst, int srcRow, const BigInt& k) { // row dst += k * row src
        for (int j = 0; j < D.cols; ++j) D.at(dst, j) += k * D.at(srcRow, j);
        if (L)
            for (int j = 0; j < L->cols; ++j) L->at(dst, j) += k * L->at(srcRow, j);
    };
    auto addCol = [&](int dst, int srcCol, const BigInt& k) {
        for (int i = 0; i < D.rows; ++i) D.at(i, dst) += k * D.at(i, srcCol);
        if (R)
            for (int i = 0; i < R->rows; ++i) R->at(i, dst) += k * R->at(i, srcCol);
    };
    for (int i = 0; i < n; ++i) {
        for (;;) {
            // pivot: minimal nonzero absolute value in the trailing block
            int pr = -1, pc = -1;
            BigInt best;
            for (int r = i; r < D.rows; ++r)
                for (int c = i; c < D.cols; ++c) {
                    if (D.at(r, c) == 0) continue;
                    BigInt v = big_abs(D.at(r, c));
                    if (pr == -1 || v < best) {
                        best = v;
                        pr = r;
                        pc = c;
                    }
                }
            if (pr == -1) return; // trailing block is zero
            swapRows(i, pr);
            swapCols(i, pc);
            bool clean = true;
            for (int r = i + 1; r < D.rows; ++r)
                if (D.at(r, i) != 0) {
                    addRow(r, i, -(D.at(r, i) / D.at(i, i)));
                    if (D.at(r, i) != 0) clean = false;
                }
            for (int c = i + 1; c < D.cols; ++c)
                if (D.at(i, c) != 0) {
                    addCol(c, i, -(D.at(i, c) / D.at(i, i)));
                    if (D.at(i, c) != 0) clean = false;
                }
            if (!clean) continue;
            // divisibility: the pivot must divide the trailing block
            int br = -1;
            for (int r = i + 1; r < D.rows && br == -1; ++r)
                for (int c = i + 1; c < D.cols && br == -1; ++c)
                    if (D.at(r, c) % D.at(i, i) != 0) br = r;
            if (br == -1) break;
            addRow(i, br, 1);
        }
        if (D.at(i, i) < 0) {
            for (int j = 0; j < D.cols; ++j) D.at(i, j) = -D.at(i, j);
            if (L)
                for (int j = 0; j < L->cols; ++j) L->at(i, j) = -L->at(i, j);
        }
    }
}

BigInt det(const IMat& M) {
    IMat A = M;
    BigInt prev = 1; // fraction-free Gaussian elimination (Bareiss)
    const int n = A.rows;
    if (n == 0) return 1;
    int sign = 1;
    for (int i = 0; i < n; ++i) {
        int p = -1;
        for (int r = i; r < n; ++r)
            if (A.at(r, i) != 0) {
                p = r;
                break;
            }
        if (p == -1) return 0;
        if (p != i) {
            for (int j = 0; j < n; ++j) std::swap(A.at(i, j), A.at(p, j));
            sign = -sign;
        }
        for (int r = i + 1; r < n; ++r)
            for (int c = i + 1; c < n; ++c)
                A.at(r, c) = (A.at(r, c) * A.at(i, i) - A.at(r, i) * A.at(i, c)) / prev;
        prev = A.at(i, i);
    }
    return sign > 0 ? A.at(n - 1, n - 1) : BigInt(-A.at(n - 1, n - 1));
}

} // namespace

SmithResult smith_normal_form(const IMat& M) {
    SmithResult S;
    S.diag = M;
    S.left = IMat::identity(M.rows);
    S.right = IMat::identity(M.cols);
    smith_eliminate(S.diag, &S.left, &S.right);
    for (int i = 0; i < std::min(M.rows, M.cols); ++i)
        if (S.diag.at(i, i) != 0) S.diagonal.push_back(S.diag.at(i, i));
    // verify the transforms: unimodular and reproducing the diagonal
    if (M.rows > 0 && big_abs(det(S.left)) != 1)
        throw DomainError("InternalError", "left transform not unimodular");
    if (M.cols > 0 && big_abs(det(S.right)) != 1)
        throw DomainError("InternalError", "right transform not unimodular");
    IMat check = mat_mult(mat_mult(S.left, M), S.right);
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j)
            if (check.at(i, j) != S.diag.at(i, j))
                throw DomainError("InternalError", "transforms do not reproduce the Smith form");
    return S;
}

std::vector<BigInt> smith_diagonal(IMat M) {
    smith_eliminate(M, nullptr, nullptr);
    std::vector<BigInt> d;
    for (int i = 0; i < std::min(M.rows, M.cols); ++i)
        if (M.at(i, i) != 0) d.push_back(M.at(i, i));
    return d;
}

std::vector<std::string> validate_complex(const ChainComplex& K) {
    std::vector<std::string> rep;
    if (static_cast<int>(K.ranks.size()) != K.maxDim + 1 ||
        static_cast<int>(K.boundary.size()) != K.maxDim + 1) {
        rep.push_back("complex tables have wrong shapes");
        return rep;
    }
    for (int n = 1; n <= K.maxDim; ++n) {
        if (K.boundary[n].rows != K.ranks[n - 1] || K.boundary[n].cols != K.ranks[n])
            rep.push_back("boundary " + std::to_string(n) + " has wrong shape");
    }
    if (!rep.empty()) return rep;
    for (int n = 2; n <= K.maxDim; ++n) {
        IMat dd = mat_mult(K.boundary[n - 1], K.boundary[n]);
        for (const auto& v : dd.a)
            if (v != 0) {
                rep.push_back("boundaries " + std::to_string(n - 1) + " and " + std::to_string(n) +
                              " do not compose to zero");
                break;
            }
    }
    return rep;
}

std::string HomologyResult::to_string() const {
    std::string s;
    if (betti > 0) s = betti == 1 ? "Z" : "Z^" + std::to_string(betti);
    for (const auto& t : torsion) {
        if (!s.empty()) s += " + ";
        s += "Z/" + t.str();
    }
    if (s.empty()) s = "0";
    return s;
}

HomologyResult homology_groups(const ChainComplex& K, int n) {
    if (n < 0 || n + 1 > K.maxDim)
        throw DomainError("DegreeOutOfRange",
                          "homology in degree " + std::to_string(n) + " needs boundary " +
                              std::to_string(n + 1));
    HomologyResult H;
    const long long rankN = K.ranks[n];
    long long rankDn = 0;
    if (n >= 1) rankDn = static_cast<long long>(smith_diagonal(K.boundary[n]).size());
    auto diag = smith_diagonal(K.boundary[n + 1]);
    const long long rankDn1 = static_cast<long long>(diag.size());
    H.betti = rankN - rankDn - rankDn1;
    for (const auto& d : diag)
        if (d > 1) H.torsion.push_back(d);
    std::sort(H.torsion.begin(), H.torsion.end());
    return H;
}

ChainComplex nerve_complex(const FinCat& C, int maxDim) {
    if (maxDim < 0 || maxDim > 3) throw DomainError("DegreeOutOfRange", "maxDim must be 0..3");
    ChainComplex K;
    K.maxDim = maxDim;
    K.ranks.assign(maxDim + 1, 0);
    K.boundary.assign(maxDim + 1, IMat());
    // bases: chains of composable non-identity morphisms
    std::vector<int> nonId;
    for (int m = 0; m < C.n_mor(); ++m)
        if (!C.is_identity(m)) nonId.push_back(m);
    std::vector<std::vector<std::vector<int>>> basis(maxDim + 1);
    basis[0].resize(C.n_obj());
    K.ranks[0] = C.n_obj();
    std::map<std::vector<int>, int> idx1, idx2, idx3;
    if (maxDim >= 1) {
        for (int m : nonId) {
            idx1[{m}] = static_cast<int>(basis[1].size());
            basis[1].push_back({m});
        }
        K.ranks[1] = static_cast<int>(basis[1].size());
        K.boundary[1] = IMat(K.ranks[0], K.ranks[1]);
        for (int j = 0; j < K.ranks[1]; ++j) {
            const int m = basis[1][j][0];
            K.boundary[1].at(C.tgt[m], j) += 1;
            K.boundary[1].at(C.src[m], j) -= 1;
        }
    }
    auto extend = [&](const std::vector<std::vector<int>>& prev) {
        std::vector<std::vector<int>> next;
        for (const auto& ch : prev)
            for (int m : nonId) {
                if (C.src[m] != C.tgt[ch.back()]) continue;
                auto c2 = ch;
                c2.push_back(m);
                next.push_back(std::move(c2));
            }
        return next;
    };
    if (maxDim >= 2) {
        basis[2] = extend(basis[1]);
        for (int j = 0; j < static_cast<int>(basis[2].size()); ++j) idx2[basis[2][j]] = j;
        K.ranks[2] = static_cast<int>(basis[2].size());
        K.boundary[2] = IMat(K.ranks[1], K.ranks[2]);
        for (int j = 0; j < K.ranks[2]; ++j) {
            const int f = basis[2][j][0], g = basis[2][j][1];
            K.boundary[2].at(idx1.at({g}), j) += 1; // drop first vertex
            const int gf = C.comp[g][f];
            if (!C.is_identity(gf)) K.boundary[2].at(idx1.at({gf}), j) -= 1;
            K.boundary[2].at(idx1.at({f}), j) += 1; // drop last vertex
        }
    }
    if (maxDim >= 3) {
        basis[3] = extend(basis[2]);
        for (int j = 0; j < static_cast<int>(basis[3].size()); ++j) idx3[basis[3][j]] = j;
        K.ranks[3] = static_cast<int>(basis[3].size());
        K.boundary[3] = IMat(K.ranks[2], K.ranks[3]);
        for (int j = 0; j < K.ranks[3]; ++j) {
            const int f = basis[3][j][0], g = basis[3][j][1], h = basis[3][j][2];
            K.boundary[3].at(idx2.at({g, h}), j) += 1;
            const int gf = C.comp[g][f];
            if (!C.is_identity(gf)) K.boundary[3].at(idx2.at({gf, h}), j) -= 1;
            const int hg = C.comp[h][g];
            if (!C.is_identity(hg)) K.boundary[3].at(idx2.at({f, hg}), j) += 1;
            K.boundary[3].at(idx2.at({f, g}), j) -= 1;
        }
    }
    return K;
}

std::vector<std::string> validate_presentation(const GroupPresentation& P) {
    std::vector<std::string> rep;
    const int g = static_cast<int>(P.generators.size());
    for (const auto& w : P.relators)
        for (int letter : w)
            if (letter == 0 || std::abs(letter) > g) {
                rep.push_back("relator letter out of range");
                return rep;
            }
    return rep;
}

HomologyResult presentation_h1(const GroupPresentation& P) {
    auto rep = validate_presentation(P);
    if (!rep.empty()) throw ValidationError("InvalidPresentation", rep);
    ChainComplex K;
    K.maxDim = 2;
    const int g = static_cast<int>(P.generators.size());
    const int r = static_cast<int>(P.relators.size());
    K.ranks = {1, g, r};
    K.boundary.assign(3, IMat());
    K.boundary[1] = IMat(1, g); // all generators are loops at the basepoint
    K.boundary[2] = IMat(g, r);
    for (int j = 0; j < r; ++j)
        for (int letter : P.relators[j]) {
            const int i = std::abs(letter) - 1;
            K.boundary[2].at(i, j) += letter > 0 ? 1 : -1;
        }
    return homology_groups(K, 1);
}

HomologyResult presentation_h1(const PresCat& P) {
    auto rep = validate_pres_cat(P);
    if (!rep.empty()) throw ValidationError("InvalidPresCat", rep);
    ChainComplex K;
    K.maxDim = 2;
    const int v = P.n_obj();
    const int g = P.n_gen();
    const int r = static_cast<int>(P.relations.size());
    K.ranks = {v, g, r};
    K.boundary.assign(3, IMat());
    K.boundary[1] = IMat(v, g);
    for (int j = 0; j < g; ++j) {
        K.boundary[1].at(P.genTgt[j], j) += 1;
        K.boundary[1].at(P.genSrc[j], j) -= 1;
    }
    K.boundary[2] = IMat(g, r);
    for (int j = 0; j < r; ++j) {
        for (int letter : P.relations[j].lhs) K.boundary[2].at(letter, j) += 1;
        for (int letter : P.relations[j].rhs) K.boundary[2].at(letter, j) -= 1;
    }
    return homology_groups(K, 1);
}

int pres_cat_pi0(const PresCat& P) {
    std::vector<int> parent(P.n_obj());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int gIdx = 0; gIdx < P.n_gen(); ++gIdx) {
        int a = find(P.genSrc[gIdx]), b = find(P.genTgt[gIdx]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    int c = 0;
    for (int x = 0; x < P.n_obj(); ++x)
        if (find(x) == x) c++;
    return c;
}

FinCat grothendieck_total(const Decollage& D) {
    FinCat C;
    const int nS = static_cast<int>(D.sd.strings.size());
    std::map<std::pair<int, int>, int> objIdx;
    for (int s = 0; s < nS; ++s)
        for (int x = 0; x < D.value[s].n_obj(); ++x) {
            objIdx[{s, x}] = C.n_obj();
            C.objNames.push_back(D.sd.poset.elements[s] + ":" + D.value[s].objNames[x]);
        }
    auto contained = [&](int small, int big) {
        return small == big || D.sd.poset.leq(small, big);
    };
    struct Mor {
        int from, to; // total objects
        int sFrom, sTo, u;
    };
    std::vector<Mor> mors;
    std::map<std::tuple<int, int, int>, int> morIdx; // (fromObj, toObj, u)
    for (const auto& [keyA, a] : objIdx)
        for (const auto& [keyB, b] : objIdx) {
            const auto [sA, xA] = keyA;
            const auto [sB, xB] = keyB;
            if (!contained(sB, sA)) continue; // morphisms go along reverse inclusion
            const int rx = D.restrict_obj(sA, sB, xA);
            const auto& V = D.value[sB];
            for (int u = 0; u < V.n_mor(); ++u) {
                if (V.src[u] != rx || V.tgt[u] != xB) continue;
                morIdx[{a, b, u}] = static_cast<int>(mors.size());
                mors.push_back({a, b, sA, sB, u});
            }
        }
    for (const auto& m : mors) {
        C.morNames.push_back(D.value[m.sTo].morNames[m.u] + "@" + std::to_string(m.from) + ">" +
                             std::to_string(m.to));
        C.src.push_back(m.from);
        C.tgt.push_back(m.to);
    }
    C.idOf.resize(C.n_obj());
    for (const auto& [key, a] : objIdx) {
        const auto [s, x] = key;
        C.idOf[a] = morIdx.at({a, a, D.value[s].idOf[x]});
    }
    const int nM = static_cast<int>(mors.size());
    C.comp.assign(nM, std::vector<int>(nM, -1));
    for (int g = 0; g < nM; ++g)
        for (int f = 0; f < nM; ++f) {
            if (mors[f].to != mors[g].from) continue;
            // f: (sA,x) -> (sB,y) via u1, g: (sB,y) -> (sC,z) via u2
            const int sB = mors[f].sTo, sC = mors[g].sTo;
            const int u = D.value[sC].comp[mors[g].u][D.restrict_mor(sB, sC, mors[f].u)];
            C.comp[g][f] = morIdx.at({mors[f].from, mors[g].to, u});
        }
    return C;
}

VanKampenResult van_kampen_check(const LayeredCat& L, int n) {
    if (n < 0 || n > 1) throw DomainError("DegreeOutOfRange", "van Kampen comparison for n <= 1");
    VanKampenResult R;
    ChainComplex A = nerve_complex(L.cat, n + 1);
    ChainComplex B = nerve_complex(grothendieck_total(nerve(L)), n + 1);
    R.ok = true;
    for (int d = 0; d <= n; ++d) {
        R.direct.push_back(homology_groups(A, d));
        R.decollage.push_back(homology_groups(B, d));
        if (!(R.direct.back() == R.decollage.back())) R.ok = false;
    }
    return R;
}

} // namespace stratcat
