#include "surgerylab/snf.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace surgerylab {

namespace {

long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in SNF");
    return r;
}

long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in SNF");
    return r;
}

}  // namespace

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::mul(const IntMat& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("matrix shape mismatch");
    IntMat r(rows_, other.cols_);
    for (int i = 0; i < rows_; i++)
        for (int k = 0; k < cols_; k++) {
            long long aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < other.cols_; j++)
                r.at(i, j) = checked_add(r.at(i, j), checked_mul(aik, other.at(k, j)));
        }
    return r;
}

std::vector<long long> SmithResult::invariant_factors() const {
    std::vector<long long> f;
    int n = std::min(d.rows(), d.cols());
    for (int i = 0; i < n; i++)
        if (d.at(i, i) != 0) f.push_back(std::llabs(d.at(i, i)));
    return f;
}

namespace {

// Row/column operations mirrored into U (left) and V (right).
struct Worker {
    IntMat a, u, v;

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < a.cols(); k++) std::swap(a.at(i, k), a.at(j, k));
        for (int k = 0; k < u.cols(); k++) std::swap(u.at(i, k), u.at(j, k));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < a.rows(); k++) std::swap(a.at(k, i), a.at(k, j));
        for (int k = 0; k < v.rows(); k++) std::swap(v.at(k, i), v.at(k, j));
    }
    void add_row(int dst, int src, long long c) {  // row dst += c * row src
        for (int k = 0; k < a.cols(); k++)
            a.at(dst, k) = checked_add(a.at(dst, k), checked_mul(c, a.at(src, k)));
        for (int k = 0; k < u.cols(); k++)
            u.at(dst, k) = checked_add(u.at(dst, k), checked_mul(c, u.at(src, k)));
    }
    void add_col(int dst, int src, long long c) {
        for (int k = 0; k < a.rows(); k++)
            a.at(k, dst) = checked_add(a.at(k, dst), checked_mul(c, a.at(k, src)));
        for (int k = 0; k < v.rows(); k++)
            v.at(k, dst) = checked_add(v.at(k, dst), checked_mul(c, v.at(k, src)));
    }
    void negate_row(int i) {
        for (int k = 0; k < a.cols(); k++) a.at(i, k) = -a.at(i, k);
        for (int k = 0; k < u.cols(); k++) u.at(i, k) = -u.at(i, k);
    }
};

}  // namespace

SmithResult smith_normal_form(const IntMat& input) {
    Worker w{input, IntMat::identity(input.rows()), IntMat::identity(input.cols())};
    IntMat& a = w.a;
    int m = a.rows(), n = a.cols();
    int t = 0;

    while (t < std::min(m, n)) {
        // Pivot: smallest nonzero |entry| in the lower-right block.
        int pi = -1, pj = -1;
        long long best = 0;
        for (int i = t; i < m; i++)
            for (int j = t; j < n; j++) {
                long long v = std::llabs(a.at(i, j));
                if (v != 0 && (pi < 0 || v < best)) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;  // block is zero
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        bool clean = true;
        for (int i = t + 1; i < m; i++) {
            long long q = a.at(i, t) / a.at(t, t);
            if (q != 0) w.add_row(i, t, -q);
            if (a.at(i, t) != 0) clean = false;
        }
        for (int j = t + 1; j < n; j++) {
            long long q = a.at(t, j) / a.at(t, t);
            if (q != 0) w.add_col(j, t, -q);
            if (a.at(t, j) != 0) clean = false;
        }
        if (!clean) continue;  // smaller remainders appeared; repick pivot

        // Divisibility: a(t,t) must divide every later entry.
        bool redo = false;
        for (int i = t + 1; i < m && !redo; i++)
            for (int j = t + 1; j < n && !redo; j++)
                if (a.at(i, j) % a.at(t, t) != 0) {
                    w.add_row(t, i, 1);
                    redo = true;
                }
        if (redo) continue;

        if (a.at(t, t) < 0) w.negate_row(t);
        t++;
    }
    return SmithResult{a, w.u, w.v};
}

long long det_abs(const IntMat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("det of non-square matrix");
    SmithResult s = smith_normal_form(a);
    long long d = 1;
    for (int i = 0; i < a.rows(); i++) d = checked_mul(d, s.d.at(i, i));
    return std::llabs(d);
}

AbelianGroup cokernel(const IntMat& rel) {
    AbelianGroup g;
    if (rel.rows() == 0) {
        g.free_rank = rel.cols();
        return g;
    }
    SmithResult s = smith_normal_form(rel);
    auto factors = s.invariant_factors();
    g.free_rank = rel.cols() - int(factors.size());
    for (long long d : factors)
        if (d >= 2) g.torsion.push_back(d);
    return g;
}

std::string AbelianGroup::str() const {
    if (is_trivial()) return "0";
    std::string s;
    for (int i = 0; i < free_rank; i++) {
        if (!s.empty()) s += " + ";
        s += "Z";
    }
    for (long long d : torsion) {
        if (!s.empty()) s += " + ";
        s += "Z/" + std::to_string(d);
    }
    return s;
}

}  // namespace surgerylab
