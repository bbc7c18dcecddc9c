// SPDX-License-Identifier: MIT
#include "autprod/lattice.hpp"

#include <algorithm>

namespace autprod {

bool is_zero(const DualVec& v) {
    for (long x : v)
        if (x) return false;
    return true;
}

DualVec operator+(const DualVec& a, const DualVec& b) {
    require(a.size() == b.size(), "dual vector size mismatch");
    DualVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

DualVec operator-(const DualVec& a, const DualVec& b) {
    require(a.size() == b.size(), "dual vector size mismatch");
    DualVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

DualVec operator*(long s, const DualVec& a) {
    DualVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

DualVec sign_normalized(const DualVec& v) {
    for (long x : v) {
        if (x > 0) return v;
        if (x < 0) {
            DualVec r(v.size());
            for (size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
            return r;
        }
    }
    return v;
}

bool is_sign_positive(const DualVec& v) {
    for (long x : v) {
        if (x > 0) return true;
        if (x < 0) return false;
    }
    return true;
}

bool canonical_less(const DualVec& a, const DualVec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

size_t DualVecHash::operator()(const DualVec& v) const {
    size_t h = 1469598103934665603ull;
    for (long x : v) {
        h ^= size_t(x);
        h *= 1099511628211ull;
    }
    return h;
}

Lattice::Lattice(MatZ gram) : gram_(std::move(gram)) {
    require(gram_.nr == gram_.nc, "gram matrix must be square");
    require(gram_.is_symmetric(), "gram matrix must be symmetric");
    for (int i = 0; i < gram_.nr; ++i)
        require(gram_.at(i, i) % 2 == 0, "lattice must be even");
    det_ = autprod::det(gram_);
    require(gram_.nr == 0 || det_ != 0, "gram matrix must be nondegenerate");
    adj_ = gram_.nr == 0 ? MatZ(0, 0) : adjugate(gram_);
    auto [p, q] = inertia(gram_);
    sig_pos_ = p;
    sig_neg_ = q;
}

int Lattice::signature_mod8() const { return ((sig_pos_ - sig_neg_) % 8 + 8) % 8; }

Rat Lattice::pairing(const DualVec& a, const DualVec& b) const {
    require(int(a.size()) == rank() && int(b.size()) == rank(), "dual vector size mismatch");
    Int s(0);
    for (int i = 0; i < rank(); ++i) {
        if (a[i] == 0) continue;
        Int row(0);
        for (int j = 0; j < rank(); ++j)
            if (b[j] != 0) row += adj_.at(i, j) * b[j];
        s += a[i] * row;
    }
    return rat(s, det_);
}

Rat Lattice::norm2(const DualVec& a) const { return pairing(a, a); }

Rat Lattice::q_value(const DualVec& a) const { return pairing(a, a) / 2; }

bool Lattice::in_lattice(const DualVec& a) const {
    require(int(a.size()) == rank(), "dual vector size mismatch");
    for (int i = 0; i < rank(); ++i) {
        Int s(0);
        for (int j = 0; j < rank(); ++j)
            if (a[j] != 0) s += adj_.at(i, j) * a[j];
        if (s % det_ != 0) return false;
    }
    return true;
}

bool Lattice::divisible(const DualVec& a, long s) {
    require(s >= 1, "divisor must be positive");
    for (long x : a)
        if (x % s != 0) return false;
    return true;
}

DualVec Lattice::divided(const DualVec& a, long s) {
    require(divisible(a, s), "dual vector not divisible");
    DualVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] / s;
    return r;
}

DualVec Lattice::dual_from_primal(const std::vector<Rat>& x) const {
    require(int(x.size()) == rank(), "primal vector size mismatch");
    DualVec c(rank());
    for (int i = 0; i < rank(); ++i) {
        Rat s(0);
        for (int j = 0; j < rank(); ++j)
            if (x[j] != 0) s += Rat(gram_.at(i, j)) * x[j];
        require(is_integer(s), "vector does not lie in the dual lattice");
        c[i] = checked_long(s);
    }
    return c;
}

std::vector<Rat> Lattice::primal_from_dual(const DualVec& c) const {
    require(int(c.size()) == rank(), "dual vector size mismatch");
    std::vector<Rat> x(rank(), Rat(0));
    for (int i = 0; i < rank(); ++i) {
        Int s(0);
        for (int j = 0; j < rank(); ++j)
            if (c[j] != 0) s += adj_.at(i, j) * c[j];
        x[i] = rat(s, det_);
    }
    return x;
}

DualVec Lattice::dual_from_lattice_point(const std::vector<Int>& x) const {
    require(int(x.size()) == rank(), "lattice point size mismatch");
    DualVec c(rank());
    for (int i = 0; i < rank(); ++i) {
        Int s(0);
        for (int j = 0; j < rank(); ++j)
            if (x[j] != 0) s += gram_.at(i, j) * x[j];
        c[i] = checked_long(s);
    }
    return c;
}

const DiscriminantForm& Lattice::discriminant_form() const {
    if (disc_form_) return *disc_form_;
    DiscriminantForm d;
    int n = rank();
    SmithResult s = smith_normal_form(gram_);
    // L'/L in dual coordinates is Z^n / gram Z^n; with L gram R = D the
    // classes are generated by the columns of L^{-1}, the i-th of order d_i.
    MatZ linv = adjugate(s.l);
    if (autprod::det(s.l) == -1)
        for (auto& v : linv.a) v = -v;
    d.group_order = 1;
    std::vector<int> keep;
    for (int i = 0; i < n; ++i) {
        Int di = s.d.at(i, i);
        d.group_order *= di;
        if (di > 1) keep.push_back(i);
    }
    d.generators = MatZ(n, int(keep.size()));
    for (int t = 0; t < int(keep.size()); ++t) {
        d.orders.push_back(checked_long(s.d.at(keep[t], keep[t])));
        for (int i = 0; i < n; ++i) d.generators.at(i, t) = linv.at(i, keep[t]);
    }
    check(d.group_order == this->disc(), "discriminant group order mismatch");
    // Level: lcm of the denominators of Q on generators and of the pairings.
    long lev = 1;
    int k = int(keep.size());
    for (int i = 0; i < k; ++i) {
        DualVec gi(n), gj(n);
        for (int r = 0; r < n; ++r) gi[r] = checked_long(d.generators.at(r, i));
        lev = lcm_long(lev, checked_long(Int(q_value(gi).get_den())));
        for (int j = i + 1; j < k; ++j) {
            for (int r = 0; r < n; ++r) gj[r] = checked_long(d.generators.at(r, j));
            lev = lcm_long(lev, checked_long(Int(pairing(gi, gj).get_den())));
        }
    }
    d.level = lev;
    disc_form_ = std::move(d);
    smith_l_ = s.l;
    smith_diag_.clear();
    for (int i = 0; i < n; ++i) smith_diag_.push_back(checked_long(s.d.at(i, i)));
    return *disc_form_;
}

void Lattice::build_cosets() const {
    if (!cosets_.empty() || disc() == 1) {
        if (cosets_.empty()) cosets_.push_back(DualVec(rank(), 0));
        return;
    }
    const DiscriminantForm& d = discriminant_form();
    int k = int(d.orders.size());
    std::vector<long> a(k, 0);
    long total = checked_long(d.group_order);
    cosets_.reserve(total);
    for (long idx = 0; idx < total; ++idx) {
        DualVec c(rank(), 0);
        for (int t = 0; t < k; ++t)
            for (int r = 0; r < rank(); ++r) c[r] += a[t] * checked_long(d.generators.at(r, t));
        cosets_.push_back(std::move(c));
        for (int t = 0; t < k; ++t) {
            if (++a[t] < d.orders[t]) break;
            a[t] = 0;
        }
    }
}

std::vector<DualVec> Lattice::coset_representatives() const {
    build_cosets();
    return cosets_;
}

long Lattice::coset_index(const DualVec& v) const {
    require(int(v.size()) == rank(), "dual vector size mismatch");
    discriminant_form();
    // Map to Smith coordinates y = L v; class determined by y_i mod d_i.
    long idx = 0, stride = 1;
    for (int i = 0; i < rank(); ++i) {
        Int y(0);
        for (int j = 0; j < rank(); ++j)
            if (v[j] != 0) y += smith_l_.at(i, j) * v[j];
        long di = smith_diag_[i];
        if (di > 1) {
            long ai = checked_long(Int(((y % di) + di) % di));
            idx += ai * stride;
            stride *= di;
        }
    }
    return idx;
}

bool Lattice::is_even() const { return true; }

Lattice direct_sum(const Lattice& a, const Lattice& b) {
    int n = a.rank(), m = b.rank();
    MatZ g(n + m, n + m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(i, j) = a.gram().at(i, j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) g.at(n + i, n + j) = b.gram().at(i, j);
    return Lattice(g);
}

Lattice rescaled(const Lattice& l, long n) {
    require(n != 0, "rescale by zero");
    MatZ g = l.gram();
    for (auto& v : g.a) v *= n;
    return Lattice(g);
}

Lattice hyperbolic_plane(long n) {
    MatZ g(2, 2);
    g.at(0, 1) = n;
    g.at(1, 0) = n;
    return Lattice(g);
}

namespace {

// Enumeration state with all bounds cleared to a common integer scale, so
// the hot loop runs on mpz only (no rational normalization).  With the
// exact LDL^T gram = U^T diag(d) U the value splits as sum_i d_i v_i^2,
// v_i = x_i + shift_i + sum_{j>i} u_ij (x_j + shift_j).  Per level:
//   v_i = (K_i x_i + Snum_i + sum_{j>i} Un_ij x_j) / K_i
// with integer Un, Snum, and the contribution compared against the budget
// after scaling by T / (den(d_i) K_i^2).
struct Enumerator {
    int n;
    std::vector<std::vector<Int>> un;  // K_i * u_ij for j > i
    std::vector<Int> k;                // per-level denominator K_i
    std::vector<Int> snum;             // K_i * (shift_i + sum_{j>i} u_ij shift_j)
    std::vector<Int> dnum;             // numerator of d_i
    std::vector<Int> tfac;             // T / (den(d_i) K_i^2)
    Int t_scale;                       // common scale T
    const std::vector<Rat>* shift;
    const std::function<void(const std::vector<Rat>&, const Rat&)>* emit;
    std::vector<long> x;
    std::vector<Rat> y;
    // per-level scratch to avoid reallocation
    std::vector<Int> w_dot, w_vnum, w_t, w_x0, w_rem;

    Int spent_{0};

    void leaf() {
        for (int i = 0; i < n; ++i) y[i] = Rat(x[i]) + (*shift)[i];
        (*emit)(y, rat(spent_, t_scale));
    }

    void run(int i, const Int& remT) {
        if (i < 0) {
            leaf();
            return;
        }
        Int& dot = w_dot[i];
        dot = snum[i];
        const auto& row = un[i];
        for (int j = i + 1; j < n; ++j)
            if (x[j] != 0) dot += row[j] * x[j];
        // center at x = -dot / K_i; nearest integer via floor((2*(-dot)+K)/2K)
        Int& x0 = w_x0[i];
        {
            Int num = k[i] - 2 * dot;
            Int den2 = 2 * k[i];
            mpz_fdiv_q(x0.get_mpz_t(), num.get_mpz_t(), den2.get_mpz_t());
        }
        Int& vnum = w_vnum[i];
        Int& t = w_t[i];
        Int& rem = w_rem[i];
        long x0l = checked_long(x0);
        // ascending side
        vnum = x0 * k[i] + dot;
        for (long xi = x0l;; ++xi) {
            t = vnum * vnum;
            t *= dnum[i];
            t *= tfac[i];
            if (t > remT) break;
            x[i] = xi;
            rem = remT - t;
            spent_ += t;
            run(i - 1, rem);
            spent_ -= t;
            vnum += k[i];
        }
        // descending side
        vnum = (x0 - 1) * k[i] + dot;
        for (long xi = x0l - 1;; --xi) {
            t = vnum * vnum;
            t *= dnum[i];
            t *= tfac[i];
            if (t > remT) break;
            x[i] = xi;
            rem = remT - t;
            spent_ += t;
            run(i - 1, rem);
            spent_ -= t;
            vnum -= k[i];
        }
        x[i] = 0;
    }
};

}  // namespace

void enumerate_quadratic(const MatZ& gram, const Rat& bound, const std::vector<Rat>& shift,
                         const std::function<void(const std::vector<Rat>&, const Rat&)>& emit) {
    int n = gram.nr;
    require(gram.nc == n && int(shift.size()) == n, "enumerate_quadratic shape mismatch");
    if (bound < 0) return;
    if (n == 0) {
        emit({}, Rat(0));
        return;
    }
    // Exact LDL^T: gram = U^T diag(d) U with U unit upper-triangular.
    std::vector<std::vector<Rat>> u(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> d(n);
    MatQ w(gram);
    for (int i = 0; i < n; ++i) {
        d[i] = w.at(i, i);
        require(d[i] > 0, "enumerate_quadratic requires a positive definite form");
        u[i][i] = 1;
        for (int j = i + 1; j < n; ++j) u[i][j] = w.at(i, j) / d[i];
        for (int r = i + 1; r < n; ++r)
            for (int c = r; c < n; ++c) {
                w.at(r, c) -= u[i][r] * u[i][c] * d[i];
                w.at(c, r) = w.at(r, c);
            }
    }
    Enumerator e;
    e.n = n;
    e.shift = &shift;
    e.emit = &emit;
    e.un.assign(n, {});
    e.k.resize(n);
    e.snum.resize(n);
    e.dnum.resize(n);
    e.tfac.resize(n);
    e.x.assign(n, 0);
    e.y.assign(n, Rat(0));
    e.w_dot.resize(n);
    e.w_vnum.resize(n);
    e.w_t.resize(n);
    e.w_x0.resize(n);
    e.w_rem.resize(n);
    Int t_scale(den(bound));
    for (int i = 0; i < n; ++i) {
        Rat s = shift[i];
        for (int j = i + 1; j < n; ++j)
            if (u[i][j] != 0 && shift[j] != 0) s += u[i][j] * shift[j];
        Int ki(1);
        for (int j = i + 1; j < n; ++j) ki = lcm(ki, Int(den(u[i][j])));
        ki = lcm(ki, Int(den(s)));
        e.k[i] = ki;
        e.un[i].assign(n, Int(0));
        for (int j = i + 1; j < n; ++j) {
            Rat v = u[i][j] * Rat(ki);
            check(is_integer(v), "enumerator scaling failed");
            e.un[i][j] = num(v);
        }
        Rat sv = s * Rat(ki);
        check(is_integer(sv), "enumerator shift scaling failed");
        e.snum[i] = num(sv);
        e.dnum[i] = num(d[i]);
        t_scale = lcm(t_scale, Int(den(d[i]) * ki * ki));
    }
    for (int i = 0; i < n; ++i) {
        Int leveli = Int(den(d[i])) * e.k[i] * e.k[i];
        e.tfac[i] = t_scale / leveli;
    }
    e.t_scale = t_scale;
    Rat remT_rat = bound * Rat(t_scale);
    check(is_integer(remT_rat), "enumerator bound scaling failed");
    e.run(n - 1, Int(num(remT_rat)));
}

namespace {

struct NormedVec {
    Rat norm;
    DualVec v;
};

void canonical_sort(std::vector<NormedVec>& vs) {
    std::sort(vs.begin(), vs.end(), [](const NormedVec& a, const NormedVec& b) {
        if (a.norm != b.norm) return a.norm < b.norm;
        DualVec na = sign_normalized(a.v), nb = sign_normalized(b.v);
        if (na != nb) return canonical_less(na, nb);
        return is_sign_positive(a.v) && !is_sign_positive(b.v);
    });
}

std::vector<DualVec> strip(std::vector<NormedVec>&& vs) {
    std::vector<DualVec> out;
    out.reserve(vs.size());
    for (auto& nv : vs) out.push_back(std::move(nv.v));
    return out;
}

}  // namespace

std::vector<DualVec> short_vectors(const Lattice& l, const Rat& bound) {
    require(l.is_positive_definite(), "short_vectors requires a positive definite lattice");
    std::vector<NormedVec> found;
    std::vector<Rat> shift(l.rank(), Rat(0));
    enumerate_quadratic(l.gram(), bound, shift, [&](const std::vector<Rat>& x, const Rat& norm) {
        std::vector<Int> xi(x.size());
        for (size_t i = 0; i < x.size(); ++i) xi[i] = x[i].get_num();
        DualVec c = l.dual_from_lattice_point(xi);
        if (is_zero(c)) return;
        found.push_back({norm, std::move(c)});
    });
    canonical_sort(found);
    return strip(std::move(found));
}

std::vector<DualVec> short_coset_vectors(const Lattice& l, const DualVec& rep, const Rat& bound) {
    require(l.is_positive_definite(), "short_coset_vectors requires a positive definite lattice");
    std::vector<Rat> shift = l.primal_from_dual(rep);
    std::vector<NormedVec> found;
    enumerate_quadratic(l.gram(), bound, shift, [&](const std::vector<Rat>& x, const Rat& norm) {
        found.push_back({norm, l.dual_from_primal(x)});
    });
    canonical_sort(found);
    return strip(std::move(found));
}

std::vector<DualVec> short_dual_vectors(const Lattice& l, const Rat& bound) {
    require(l.is_positive_definite(), "short_dual_vectors requires a positive definite lattice");
    // In dual coordinates the norm is c^T adj c / det; enumerate with the
    // integer form adj and the scaled bound.
    std::vector<NormedVec> found;
    std::vector<Rat> shift(l.rank(), Rat(0));
    enumerate_quadratic(l.gram_adjugate(), bound * Rat(l.det()), shift,
                        [&](const std::vector<Rat>& x, const Rat& scaled) {
                            DualVec c(x.size());
                            for (size_t i = 0; i < x.size(); ++i) c[i] = checked_long(x[i]);
                            if (is_zero(c)) return;
                            found.push_back({scaled / Rat(l.det()), std::move(c)});
                        });
    canonical_sort(found);
    return strip(std::move(found));
}

bool is_rootless(const Lattice& l) {
    for (auto& v : short_vectors(l, rat(2)))
        if (l.norm2(v) == 2) return false;
    return true;
}

bool is_isometry(const Lattice& l, const MatZ& g) {
    if (g.nr != l.rank() || g.nc != l.rank()) return false;
    return g.transpose() * l.gram() * g == l.gram();
}

Sublattice fixed_point_sublattice(const Lattice& l, const MatZ& g) {
    require(is_isometry(l, g), "fixed_point_sublattice expects an isometry");
    MatZ k = kernel_basis(g - MatZ::identity(l.rank()));
    MatZ gram = k.transpose() * l.gram() * k;
    return Sublattice{Lattice(gram), k};
}

Sublattice orthogonal_complement(const Lattice& l, const MatZ& embedding) {
    require(embedding.nr == l.rank(), "embedding shape mismatch");
    MatZ k = kernel_basis(embedding.transpose() * l.gram());
    MatZ gram = k.transpose() * l.gram() * k;
    return Sublattice{Lattice(gram), k};
}

Lattice even_overlattice(const Lattice& l, const std::vector<DualVec>& glue, MatQ* basis_out) {
    int n = l.rank();
    // Stack the standard basis with the glue vectors (primal coordinates),
    // scale to a common denominator, and take the Hermite row basis.
    Int scale(1);
    std::vector<std::vector<Rat>> prim;
    for (auto& g : glue) {
        prim.push_back(l.primal_from_dual(g));
        for (auto& x : prim.back()) scale = lcm(scale, Int(x.get_den()));
    }
    MatZ stacked(n + int(prim.size()), n);
    for (int i = 0; i < n; ++i) stacked.at(i, i) = scale;
    for (int r = 0; r < int(prim.size()); ++r)
        for (int j = 0; j < n; ++j) {
            Rat v = prim[r][j] * Rat(scale);
            check(is_integer(v), "overlattice scaling failed");
            stacked.at(n + r, j) = v.get_num();
        }
    MatZ h = hnf_row_basis(stacked);
    require(h.nr == n, "overlattice basis has wrong rank");
    // New gram: (H/scale) G (H/scale)^T.
    MatZ hg = h * l.gram() * h.transpose();
    MatZ gram(n, n);
    Int s2 = scale * scale;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (hg.at(i, j) % s2 != 0)
                throw VerifyError("glue vectors do not span an integral lattice");
            gram.at(i, j) = hg.at(i, j) / s2;
        }
    for (int i = 0; i < n; ++i)
        if (gram.at(i, i) % 2 != 0) throw VerifyError("overlattice is not even");
    if (basis_out) {
        *basis_out = MatQ(h);
        for (auto& v : basis_out->a) v /= Rat(scale);
    }
    return Lattice(gram);
}

}  // namespace autprod
