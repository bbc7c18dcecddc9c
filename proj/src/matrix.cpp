// SPDX-License-Identifier: MIT
#include "autprod/matrix.hpp"

#include <algorithm>

namespace autprod {

MatZ MatZ::identity(int n) {
    MatZ m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

MatZ MatZ::from_rows(const std::vector<std::vector<long>>& rows) {
    require(!rows.empty(), "from_rows: empty input");
    MatZ m(int(rows.size()), int(rows[0].size()));
    for (int i = 0; i < m.nr; ++i) {
        require(int(rows[i].size()) == m.nc, "from_rows: ragged input");
        for (int j = 0; j < m.nc; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

bool MatZ::is_zero() const {
    for (const Int& v : a)
        if (v != 0) return false;
    return true;
}

bool MatZ::is_symmetric() const {
    if (nr != nc) return false;
    for (int i = 0; i < nr; ++i)
        for (int j = i + 1; j < nc; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

MatZ MatZ::transpose() const {
    MatZ t(nc, nr);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) t.at(j, i) = at(i, j);
    return t;
}

MatZ MatZ::operator*(const MatZ& o) const {
    require(nc == o.nr, "matrix product shape mismatch");
    MatZ r(nr, o.nc);
    for (int i = 0; i < nr; ++i)
        for (int k = 0; k < nc; ++k) {
            const Int& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.nc; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

MatZ MatZ::operator+(const MatZ& o) const {
    require(nr == o.nr && nc == o.nc, "matrix sum shape mismatch");
    MatZ r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
    return r;
}

MatZ MatZ::operator-(const MatZ& o) const {
    require(nr == o.nr && nc == o.nc, "matrix difference shape mismatch");
    MatZ r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
    return r;
}

std::vector<Int> MatZ::mul_vec(const std::vector<Int>& v) const {
    require(int(v.size()) == nc, "mul_vec shape mismatch");
    std::vector<Int> r(nr, Int(0));
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) r[i] += at(i, j) * v[j];
    return r;
}

MatQ::MatQ(const MatZ& m) : nr(m.nr), nc(m.nc), a(m.a.size()) {
    for (size_t i = 0; i < m.a.size(); ++i) a[i] = Rat(m.a[i]);
}

MatQ MatQ::identity(int n) {
    MatQ m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

MatQ MatQ::transpose() const {
    MatQ t(nc, nr);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) t.at(j, i) = at(i, j);
    return t;
}

MatQ MatQ::operator*(const MatQ& o) const {
    require(nc == o.nr, "matrix product shape mismatch");
    MatQ r(nr, o.nc);
    for (int i = 0; i < nr; ++i)
        for (int k = 0; k < nc; ++k) {
            const Rat& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.nc; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

std::vector<Rat> MatQ::mul_vec(const std::vector<Rat>& v) const {
    require(int(v.size()) == nc, "mul_vec shape mismatch");
    std::vector<Rat> r(nr, Rat(0));
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j)
            if (at(i, j) != 0) r[i] += at(i, j) * v[j];
    return r;
}

// Bareiss fraction-free elimination.
Int det(const MatZ& m) {
    require(m.nr == m.nc, "det expects a square matrix");
    int n = m.nr;
    if (n == 0) return 1;
    MatZ w = m;
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (w.at(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                mpz_divexact(w.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = w.at(k, k);
    }
    return sign > 0 ? w.at(n - 1, n - 1) : Int(-w.at(n - 1, n - 1));
}

namespace {

void swap_rows(MatZ& m, int i, int j) {
    for (int c = 0; c < m.nc; ++c) std::swap(m.at(i, c), m.at(j, c));
}
void swap_cols(MatZ& m, int i, int j) {
    for (int r = 0; r < m.nr; ++r) std::swap(m.at(r, i), m.at(r, j));
}
// row i -= q * row j
void row_axpy(MatZ& m, int i, int j, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < m.nc; ++c) m.at(i, c) -= q * m.at(j, c);
}
void col_axpy(MatZ& m, int i, int j, const Int& q) {
    if (q == 0) return;
    for (int r = 0; r < m.nr; ++r) m.at(r, i) -= q * m.at(r, j);
}
void negate_row(MatZ& m, int i) {
    for (int c = 0; c < m.nc; ++c) m.at(i, c) = -m.at(i, c);
}
void negate_col(MatZ& m, int j) {
    for (int r = 0; r < m.nr; ++r) m.at(r, j) = -m.at(r, j);
}

}  // namespace

SmithResult smith_normal_form(const MatZ& m) {
    SmithResult res{m, MatZ::identity(m.nr), MatZ::identity(m.nc)};
    MatZ& d = res.d;
    int n = std::min(m.nr, m.nc);
    for (int k = 0; k < n; ++k) {
        for (;;) {
            // Find the entry of least absolute value in the remaining block.
            int pi = -1, pj = -1;
            Int best(0);
            for (int i = k; i < d.nr; ++i)
                for (int j = k; j < d.nc; ++j) {
                    if (d.at(i, j) == 0) continue;
                    Int v = abs(d.at(i, j));
                    if (pi < 0 || v < best) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) break;  // block is zero
            if (pi != k) {
                swap_rows(d, k, pi);
                swap_rows(res.l, k, pi);
            }
            if (pj != k) {
                swap_cols(d, k, pj);
                swap_cols(res.r, k, pj);
            }
            bool clean = true;
            for (int i = k + 1; i < d.nr; ++i) {
                if (d.at(i, k) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), d.at(i, k).get_mpz_t(), d.at(k, k).get_mpz_t());
                row_axpy(d, i, k, q);
                row_axpy(res.l, i, k, q);
                if (d.at(i, k) != 0) clean = false;
            }
            for (int j = k + 1; j < d.nc; ++j) {
                if (d.at(k, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), d.at(k, j).get_mpz_t(), d.at(k, k).get_mpz_t());
                col_axpy(d, j, k, q);
                col_axpy(res.r, j, k, q);
                if (d.at(k, j) != 0) clean = false;
            }
            if (!clean) continue;
            // Pivot must divide every remaining entry; if not, fold the
            // offending row in and restart the reduction at this pivot.
            bool divides = true;
            for (int i = k + 1; i < d.nr && divides; ++i)
                for (int j = k + 1; j < d.nc; ++j)
                    if (d.at(i, j) % d.at(k, k) != 0) {
                        row_axpy(d, k, i, Int(-1));
                        row_axpy(res.l, k, i, Int(-1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (d.at(k, k) < 0) {
            negate_row(d, k);
            negate_row(res.l, k);
        }
    }
    return res;
}

MatZ hnf_row_basis(const MatZ& m) {
    MatZ w = m;
    int row = 0;
    for (int col = 0; col < w.nc && row < w.nr; ++col) {
        // Reduce column below `row` to a single nonzero entry by gcd steps.
        for (;;) {
            int p = -1;
            Int best(0);
            for (int i = row; i < w.nr; ++i) {
                if (w.at(i, col) == 0) continue;
                Int v = abs(w.at(i, col));
                if (p < 0 || v < best) {
                    best = v;
                    p = i;
                }
            }
            if (p < 0) break;
            if (p != row) swap_rows(w, row, p);
            bool done = true;
            for (int i = row + 1; i < w.nr; ++i) {
                if (w.at(i, col) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), w.at(i, col).get_mpz_t(), w.at(row, col).get_mpz_t());
                row_axpy(w, i, row, q);
                if (w.at(i, col) != 0) done = false;
            }
            if (done) break;
        }
        if (w.at(row, col) == 0) continue;
        if (w.at(row, col) < 0) negate_row(w, row);
        // Reduce the entries above the pivot into [0, pivot).
        for (int i = 0; i < row; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), w.at(i, col).get_mpz_t(), w.at(row, col).get_mpz_t());
            row_axpy(w, i, row, q);
        }
        ++row;
    }
    MatZ out(row, w.nc);
    for (int i = 0; i < row; ++i)
        for (int j = 0; j < w.nc; ++j) out.at(i, j) = w.at(i, j);
    return out;
}

MatZ kernel_basis(const MatZ& m) {
    SmithResult s = smith_normal_form(m);
    int n = std::min(m.nr, m.nc);
    std::vector<int> zero_cols;
    for (int j = 0; j < m.nc; ++j)
        if (j >= n || s.d.at(j, j) == 0) zero_cols.push_back(j);
    MatZ ker(m.nc, int(zero_cols.size()));
    for (int t = 0; t < int(zero_cols.size()); ++t)
        for (int i = 0; i < m.nc; ++i) ker.at(i, t) = s.r.at(i, zero_cols[t]);
    return ker;
}

MatQ inverse(const MatQ& m) {
    require(m.nr == m.nc, "inverse expects a square matrix");
    int n = m.nr;
    MatQ w = m, inv = MatQ::identity(n);
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (w.at(i, k) != 0) {
                p = i;
                break;
            }
        require(p >= 0, "inverse of a singular matrix");
        if (p != k)
            for (int j = 0; j < n; ++j) {
                std::swap(w.at(k, j), w.at(p, j));
                std::swap(inv.at(k, j), inv.at(p, j));
            }
        Rat piv = w.at(k, k);
        for (int j = 0; j < n; ++j) {
            w.at(k, j) /= piv;
            inv.at(k, j) /= piv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || w.at(i, k) == 0) continue;
            Rat f = w.at(i, k);
            for (int j = 0; j < n; ++j) {
                w.at(i, j) -= f * w.at(k, j);
                inv.at(i, j) -= f * inv.at(k, j);
            }
        }
    }
    return inv;
}

std::vector<Rat> solve(const MatQ& A, const std::vector<Rat>& b) {
    require(A.nr == A.nc && int(b.size()) == A.nr, "solve shape mismatch");
    return inverse(A).mul_vec(b);
}

std::pair<int, int> inertia(const MatZ& g) {
    require(g.is_symmetric(), "inertia expects a symmetric matrix");
    int n = g.nr;
    MatQ w(g);
    int pos = 0, neg = 0;
    std::vector<bool> used(n, false);
    for (;;) {
        // Pick a nonzero diagonal pivot if available.
        int p = -1;
        for (int i = 0; i < n; ++i)
            if (!used[i] && w.at(i, i) != 0) {
                p = i;
                break;
            }
        if (p >= 0) {
            (w.at(p, p) > 0 ? pos : neg)++;
            used[p] = true;
            for (int i = 0; i < n; ++i) {
                if (used[i] || w.at(i, p) == 0) continue;
                Rat f = w.at(i, p) / w.at(p, p);
                for (int j = 0; j < n; ++j)
                    if (!used[j]) w.at(i, j) -= f * w.at(p, j);
            }
            for (int i = 0; i < n; ++i)
                if (!used[i]) w.at(i, p) = w.at(p, i) = 0;
            continue;
        }
        // All remaining diagonal entries vanish: an off-diagonal nonzero
        // pair contributes a hyperbolic plane (+1, -1); add row j into row i
        // to expose a diagonal pivot otherwise.
        int bi = -1, bj = -1;
        for (int i = 0; i < n && bi < 0; ++i)
            for (int j = i + 1; j < n; ++j)
                if (!used[i] && !used[j] && w.at(i, j) != 0) {
                    bi = i;
                    bj = j;
                    break;
                }
        if (bi < 0) break;  // remaining block is zero
        for (int j = 0; j < n; ++j)
            if (!used[j]) w.at(bi, j) += w.at(bj, j);
        for (int i = 0; i < n; ++i)
            if (!used[i]) w.at(i, bi) += w.at(i, bj);
    }
    return {pos, neg};
}

MatZ adjugate(const MatZ& m) {
    require(m.nr == m.nc, "adjugate expects a square matrix");
    int n = m.nr;
    Int dm = det(m);
    if (dm != 0) {
        MatQ inv = inverse(MatQ(m));
        MatZ adj(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rat v = inv.at(i, j) * Rat(dm);
                check(is_integer(v), "adjugate entry not integral");
                adj.at(i, j) = v.get_num();
            }
        return adj;
    }
    // Singular case: fall back to cofactor expansion.
    MatZ adj(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            MatZ minor(n - 1, n - 1);
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor.at(rr, cc) = m.at(r, c);
                    ++cc;
                }
                ++rr;
            }
            Int co = det(minor);
            adj.at(i, j) = ((i + j) % 2 == 0) ? co : Int(-co);
        }
    return adj;
}

}  // namespace autprod
