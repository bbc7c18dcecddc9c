// SPDX-License-Identifier: MIT
#include "autprod/conway.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "autprod/catalog.hpp"
#include "autprod/golay.hpp"

namespace autprod {

long shape_trace_power(const FrameShape& s, long m) {
    long t = 0;
    for (auto& [k, b] : s.factors)
        if (m % k == 0) t += k * b;
    return t;
}

FrameShape frame_from_traces(const std::map<long, long>& traces, long order) {
    FrameShape s;
    for (long m : divisors(order)) {
        long acc = 0;
        for (long d : divisors(m)) {
            auto it = traces.find(d);
            require(it != traces.end(), "missing trace for divisor " + std::to_string(d));
            acc += moebius(m / d) * it->second;
        }
        require(acc % m == 0, "traces are not consistent with a frame shape");
        if (acc != 0) s.factors.emplace_back(m, acc / m);
    }
    return s;
}

FrameShape power_shape(const FrameShape& s, long m) {
    require(m >= 1, "power_shape expects m >= 1");
    std::map<long, long> acc;
    for (auto& [k, b] : s.factors) {
        long g = gcd_long(k, m);
        acc[k / g] += g * b;
    }
    FrameShape r;
    for (auto& [k, b] : acc)
        if (b != 0) r.factors.emplace_back(k, b);
    return r;
}

long shape_rank(const FrameShape& s) {
    long r = 0;
    for (auto& [k, b] : s.factors) {
        (void)k;
        r += b;
    }
    return r;
}

long shape_order(const FrameShape& s) {
    long n = 1;
    for (auto& [k, b] : s.factors)
        if (b != 0) n = lcm_long(n, k);
    return n;
}

long shape_level(const FrameShape& s) {
    // Smallest multiple N of the order with 24 | N * sum_k b_k / k.
    long n = shape_order(s);
    Rat sum(0);
    for (auto& [k, b] : s.factors) sum += rat(b, k);
    Rat target = sum * n / 24;  // need t * target integral
    long b = checked_long(Int(target.get_den()));
    return n * b;
}

long shape_nhat(const FrameShape& s) {
    long n = shape_order(s);
    if (n % 2) return n;
    FrameShape h = power_shape(s, n / 2);
    bool is_2_12 = h.factors.size() == 1 && h.factors[0] == std::pair<long, long>{2, 12};
    return is_2_12 ? 2 * n : n;
}

long matrix_order(const MatZ& g) {
    require(g.nr == g.nc, "matrix_order expects a square matrix");
    MatZ id = MatZ::identity(g.nr);
    MatZ p = g;
    for (long n = 1; n <= 240; ++n) {
        if (p == id) return n;
        p = p * g;
    }
    throw VerifyError("matrix order exceeds 240");
}

FrameShape frame_shape_of(const MatZ& g) {
    long n = matrix_order(g);
    std::map<long, long> traces;
    MatZ p = g;
    for (long m = 1; m <= n; ++m) {
        if (n % m == 0) {
            Int t(0);
            for (int i = 0; i < p.nr; ++i) t += p.at(i, i);
            traces[m] = checked_long(t);
        }
        if (m < n) p = p * g;
    }
    FrameShape s = frame_from_traces(traces, n);
    check(shape_order(s) == n, "frame shape order mismatch");
    return s;
}

namespace {

std::vector<ConwayClass> load_classes() {
    std::string path = data_dir() + "/conway_classes.txt";
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path + " (run gen-conway to produce it)");
    std::string tag;
    int version = 0;
    in >> tag >> version;
    if (tag != "conway-classes" || version != 1)
        throw DataError("bad header in " + path);
    size_t count = 0;
    in >> tag >> count;
    if (tag != "count") throw DataError("bad count line in " + path);
    const Lattice leech(leech_construction().gram);
    std::vector<ConwayClass> classes;
    classes.reserve(count);
    long degree_check = 0;
    for (size_t idx = 0; idx < count; ++idx) {
        std::string shape_str;
        in >> tag >> shape_str;
        if (tag != "class") throw DataError("bad class record in " + path);
        ConwayClass c;
        c.shape = FrameShape::parse(shape_str);
        c.matrix = MatZ(24, 24);
        for (int i = 0; i < 24; ++i)
            for (int j = 0; j < 24; ++j) {
                long v;
                if (!(in >> v)) throw DataError("truncated matrix in " + path);
                c.matrix.at(i, j) = v;
            }
        if (!is_isometry(leech, c.matrix))
            throw DataError("matrix for class " + shape_str + " is not a Leech isometry");
        FrameShape actual = frame_shape_of(c.matrix);
        if (actual.str() != c.shape.str())
            throw DataError("matrix for class " + shape_str + " has frame shape " + actual.str());
        if (c.shape.degree() != 24)
            throw DataError("class " + shape_str + " has degree != 24");
        degree_check += 24;
        c.order = shape_order(c.shape);
        c.nhat = shape_nhat(c.shape);
        c.level = shape_level(c.shape);
        classes.push_back(std::move(c));
    }
    (void)degree_check;
    std::sort(classes.begin(), classes.end(), [](const ConwayClass& a, const ConwayClass& b) {
        if (a.order != b.order) return a.order < b.order;
        return a.shape.str() < b.shape.str();
    });
    return classes;
}

}  // namespace

const std::vector<ConwayClass>& conway_classes() {
    static const std::vector<ConwayClass> classes = load_classes();
    return classes;
}

const ConwayClass& conway_class(const std::string& shape) {
    std::string want = FrameShape::parse(shape).str();
    for (const ConwayClass& c : conway_classes())
        if (c.shape.str() == want) return c;
    throw DataError("no shipped class with frame shape " + shape);
}

int xi_sign(const ConwayClass& g, long d, const std::vector<Int>& v) {
    require(d >= 1 && g.nhat % d == 0, "xi_sign: d must divide nhat");
    if (g.order % 2 == 1 || d % 2 == 1) return 1;
    // (-1)^{(v, g^{d/2} v)} with the Leech pairing.
    MatZ p = MatZ::identity(24);
    for (long i = 0; i < d / 2; ++i) p = p * g.matrix;
    const MatZ& gram = leech_construction().gram;
    std::vector<Int> pv(24, Int(0));
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 24; ++j) pv[i] += p.at(i, j) * v[j];
    Int s(0);
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 24; ++j) s += v[i] * gram.at(i, j) * pv[j];
    return s % 2 == 0 ? 1 : -1;
}

std::vector<long> xi_nontrivial_divisors(const ConwayClass& g) {
    std::vector<long> out;
    if (g.order % 2 == 1) return out;
    const Lattice leech(leech_construction().gram);
    for (long d : divisors(g.nhat)) {
        if (d % 2 == 1) continue;
        // Compute Lambda^{g^d} and test xi_d on its basis: xi is a homo-
        // morphism to {+-1}, so it is nontrivial iff it is -1 on some basis
        // vector of the fixed lattice of g^d.
        MatZ p = MatZ::identity(24);
        for (long i = 0; i < d; ++i) p = p * g.matrix;
        Sublattice fix = fixed_point_sublattice(leech, p);
        bool nontrivial = false;
        for (int c = 0; c < fix.embedding.nc && !nontrivial; ++c) {
            std::vector<Int> v(24);
            for (int i = 0; i < 24; ++i) v[i] = fix.embedding.at(i, c);
            if (xi_sign(g, d, v) == -1) nontrivial = true;
        }
        if (nontrivial) out.push_back(d);
    }
    return out;
}

}  // namespace autprod
