#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace hlog {

// Maximum spatial dimension supported by the fixed-size point/matrix types.
inline constexpr int kMaxDim = 6;

// ---------------------------------------------------------------------------
// Error taxonomy
// ---------------------------------------------------------------------------

struct param_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct lookup_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct coverage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct unsupported_domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct dimension_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_kernel_error : std::runtime_error {
    double measured_mean;
    explicit invalid_kernel_error(const std::string& what, double mean)
        : std::runtime_error(what), measured_mean(mean) {}
};

// ---------------------------------------------------------------------------
// Small fixed-capacity vector / matrix
// ---------------------------------------------------------------------------

struct Vec {
    std::array<double, kMaxDim> c{};
    int n = 0;

    Vec() = default;
    Vec(std::initializer_list<double> xs) {
        if (static_cast<int>(xs.size()) > kMaxDim)
            throw dimension_error("Vec: dimension exceeds kMaxDim");
        n = static_cast<int>(xs.size());
        int i = 0;
        for (double v : xs) c[i++] = v;
    }
    static Vec zero(int dim) {
        if (dim < 1 || dim > kMaxDim) throw dimension_error("Vec: bad dimension");
        Vec v;
        v.n = dim;
        return v;
    }
    static Vec axis(int dim, int i, double scale = 1.0) {
        Vec v = zero(dim);
        v.c[static_cast<size_t>(i)] = scale;
        return v;
    }
    double& operator[](int i) { return c[static_cast<size_t>(i)]; }
    double operator[](int i) const { return c[static_cast<size_t>(i)]; }
};

inline Vec operator+(const Vec& a, const Vec& b) {
    Vec r = a;
    for (int i = 0; i < a.n; ++i) r.c[static_cast<size_t>(i)] += b[i];
    return r;
}
inline Vec operator-(const Vec& a, const Vec& b) {
    Vec r = a;
    for (int i = 0; i < a.n; ++i) r.c[static_cast<size_t>(i)] -= b[i];
    return r;
}
inline Vec operator*(double s, const Vec& a) {
    Vec r = a;
    for (int i = 0; i < a.n; ++i) r.c[static_cast<size_t>(i)] *= s;
    return r;
}
inline double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (int i = 0; i < a.n; ++i) s += a[i] * b[i];
    return s;
}
inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }
inline double dist(const Vec& a, const Vec& b) { return norm(a - b); }
inline Vec normalized(const Vec& a) {
    double s = norm(a);
    if (s == 0) throw param_error("normalized: zero vector");
    return (1.0 / s) * a;
}

struct Mat {
    std::array<double, kMaxDim * kMaxDim> c{};
    int n = 0;

    static Mat zero(int dim) {
        if (dim < 1 || dim > kMaxDim) throw dimension_error("Mat: bad dimension");
        Mat m;
        m.n = dim;
        return m;
    }
    static Mat identity(int dim) {
        Mat m = zero(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }
    double& operator()(int i, int j) { return c[static_cast<size_t>(i * kMaxDim + j)]; }
    double operator()(int i, int j) const { return c[static_cast<size_t>(i * kMaxDim + j)]; }
};

inline Vec matvec(const Mat& m, const Vec& v) {
    Vec r = Vec::zero(m.n);
    for (int i = 0; i < m.n; ++i) {
        double s = 0;
        for (int j = 0; j < m.n; ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

inline Mat matmul(const Mat& a, const Mat& b) {
    Mat r = Mat::zero(a.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) {
            double s = 0;
            for (int k = 0; k < a.n; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

// Determinant by LU with partial pivoting; dimensions here are tiny.
inline double determinant(Mat m) {
    double det = 1.0;
    for (int k = 0; k < m.n; ++k) {
        int piv = k;
        for (int i = k + 1; i < m.n; ++i)
            if (std::fabs(m(i, k)) > std::fabs(m(piv, k))) piv = i;
        if (m(piv, k) == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < m.n; ++j) std::swap(m(piv, j), m(k, j));
            det = -det;
        }
        det *= m(k, k);
        for (int i = k + 1; i < m.n; ++i) {
            double f = m(i, k) / m(k, k);
            for (int j = k; j < m.n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

// Cofactor matrix: cof(i,j) = (-1)^{i+j} * minor(i,j).
inline Mat cofactor_matrix(const Mat& m) {
    Mat cof = Mat::zero(m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) {
            Mat minor = Mat::zero(m.n - 1);
            for (int r = 0, rr = 0; r < m.n; ++r) {
                if (r == i) continue;
                for (int cidx = 0, cc = 0; cidx < m.n; ++cidx) {
                    if (cidx == j) continue;
                    minor(rr, cc) = m(r, cidx);
                    ++cc;
                }
                ++rr;
            }
            double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            cof(i, j) = sign * determinant(minor);
        }
    return cof;
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> symmetric_eigenvalues(Mat m, int sweeps = 64) {
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        double off = 0;
        for (int i = 0; i < m.n; ++i)
            for (int j = i + 1; j < m.n; ++j) off += m(i, j) * m(i, j);
        if (off < 1e-30) break;
        for (int p = 0; p < m.n; ++p)
            for (int q = p + 1; q < m.n; ++q) {
                if (std::fabs(m(p, q)) < 1e-300) continue;
                double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double cs = 1.0 / std::sqrt(t * t + 1.0);
                double sn = t * cs;
                for (int k = 0; k < m.n; ++k) {
                    double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = cs * mkp - sn * mkq;
                    m(k, q) = sn * mkp + cs * mkq;
                }
                for (int k = 0; k < m.n; ++k) {
                    double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = cs * mpk - sn * mqk;
                    m(q, k) = sn * mpk + cs * mqk;
                }
            }
    }
    std::vector<double> eig(static_cast<size_t>(m.n));
    for (int i = 0; i < m.n; ++i) eig[static_cast<size_t>(i)] = m(i, i);
    return eig;
}

// ---------------------------------------------------------------------------
// Deterministic sampling helpers
// ---------------------------------------------------------------------------

// splitmix64; used both as a stream generator and to derive independent
// per-(seed, shell, index) streams so that enlarging a sample budget keeps
// all previously drawn samples unchanged.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t s) : state(s) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    // standard normal via Box-Muller
    double normal() {
        double u1 = uniform(), u2 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }
};

inline uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t cc = 0) {
    SplitMix64 g(seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xc2b2ae3d27d4eb4fULL) ^
                 (cc * 0x165667b19e3779f9ULL));
    g.next();
    return g.next();
}

inline Vec random_unit_vector(SplitMix64& g, int dim) {
    for (;;) {
        Vec v = Vec::zero(dim);
        double s2 = 0;
        for (int i = 0; i < dim; ++i) {
            v[i] = g.normal();
            s2 += v[i] * v[i];
        }
        if (s2 > 1e-12) return (1.0 / std::sqrt(s2)) * v;
    }
}

// Halton low-discrepancy sequence in [0,1)^dim (1-based index).
inline Vec halton(uint64_t index, int dim) {
    static constexpr int primes[kMaxDim] = {2, 3, 5, 7, 11, 13};
    Vec v = Vec::zero(dim);
    for (int d = 0; d < dim; ++d) {
        double f = 1.0, x = 0.0;
        uint64_t i = index;
        int b = primes[d];
        while (i > 0) {
            f /= b;
            x += f * static_cast<double>(i % static_cast<uint64_t>(b));
            i /= static_cast<uint64_t>(b);
        }
        v[d] = x;
    }
    return v;
}

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

// Shortest round-trip-exact decimal rendering; used everywhere a report is
// written so that reruns with the same seed are byte-identical.
inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string fmt_g(double v, int prec = 6) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    return buf;
}

}  // namespace hlog
