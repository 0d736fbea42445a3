#include "botreg/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "botreg/errors.hpp"

namespace botreg {

namespace {

// Blocked right-looking Cholesky on the lower triangle of row-major A.
// The trailing (syrk) update runs as rank-B daxpy sweeps over a transposed
// panel copy — no floating-point reductions, so the inner loops vectorize.
void chol_lower(double* A, std::size_t n) {
    constexpr std::size_t B = 128;
    std::vector<double> Pt(B * n);
    for (std::size_t j0 = 0; j0 < n; j0 += B) {
        const std::size_t jb = std::min(B, n - j0);
        // Factor the diagonal block (small, dot-product form).
        for (std::size_t j = j0; j < j0 + jb; ++j) {
            double* Lj = A + j * n;
            double d = Lj[j];
            for (std::size_t k = j0; k < j; ++k) d -= Lj[k] * Lj[k];
            if (!(d > 0.0))
                throw NotPositiveDefiniteError(
                    "matrix not positive definite at pivot " +
                        std::to_string(j),
                    j);
            const double s = std::sqrt(d);
            const double inv = 1.0 / s;
            Lj[j] = s;
            for (std::size_t i = j + 1; i < j0 + jb; ++i) {
                double* Li = A + i * n;
                double acc = Li[j];
                for (std::size_t k = j0; k < j; ++k) acc -= Li[k] * Lj[k];
                Li[j] = acc * inv;
            }
        }
        const std::size_t m0 = j0 + jb;
        if (m0 >= n) break;
        // Panel solve: L21 = A21 · L11⁻ᵀ.
        for (std::size_t i = m0; i < n; ++i) {
            double* Li = A + i * n;
            for (std::size_t j = j0; j < j0 + jb; ++j) {
                const double* Lj = A + j * n;
                double acc = Li[j];
                for (std::size_t k = j0; k < j; ++k) acc -= Li[k] * Lj[k];
                Li[j] = acc / Lj[j];
            }
        }
        // Pt[k][·] = column j0+k of the panel.
        for (std::size_t k = 0; k < jb; ++k) {
            double* row = Pt.data() + k * n;
            for (std::size_t i = m0; i < n; ++i) row[i] = A[i * n + j0 + k];
        }
        // A22[i][j] -= Σ_k L21[i][k]·L21[j][k] for j ≤ i.
        for (std::size_t i = m0; i < n; ++i) {
            double* Ai = A + i * n;
            const double* pik = A + i * n + j0;
            std::size_t k = 0;
            for (; k + 4 <= jb; k += 4) {
                const double c0 = pik[k];
                const double c1 = pik[k + 1];
                const double c2 = pik[k + 2];
                const double c3 = pik[k + 3];
                const double* p0 = Pt.data() + k * n;
                const double* p1 = Pt.data() + (k + 1) * n;
                const double* p2 = Pt.data() + (k + 2) * n;
                const double* p3 = Pt.data() + (k + 3) * n;
                for (std::size_t j = m0; j <= i; ++j)
                    Ai[j] -= c0 * p0[j] + c1 * p1[j] + c2 * p2[j] + c3 * p3[j];
            }
            for (; k < jb; ++k) {
                const double c = pik[k];
                const double* p = Pt.data() + k * n;
                for (std::size_t j = m0; j <= i; ++j) Ai[j] -= c * p[j];
            }
        }
    }
}

}  // namespace

void cholesky_in_place(SquareMatrix& a) {
    if (a.entries.size() != a.n * a.n)
        throw DimensionError("matrix storage does not match its dimension");
    chol_lower(a.entries.data(), a.n);
}

SquareMatrix cholesky(const SquareMatrix& a) {
    SquareMatrix l = a;
    cholesky_in_place(l);
    for (std::size_t i = 0; i < l.n; ++i)
        for (std::size_t j = i + 1; j < l.n; ++j) l.at(i, j) = 0.0;
    return l;
}

std::vector<double> cholesky_solve(const SquareMatrix& l,
                                   const std::vector<double>& b) {
    const std::size_t n = l.n;
    if (b.size() != n)
        throw DimensionError("solve: vector length " +
                             std::to_string(b.size()) +
                             " does not match matrix dimension " +
                             std::to_string(n));
    std::vector<double> x(b);
    // Forward: L·y = b.
    for (std::size_t i = 0; i < n; ++i) {
        const double* Li = l.entries.data() + i * n;
        double acc = x[i];
        for (std::size_t k = 0; k < i; ++k) acc -= Li[k] * x[k];
        x[i] = acc / Li[i];
    }
    // Backward: Lᵀ·x = y.
    for (std::size_t i = n; i-- > 0;) {
        double acc = x[i];
        for (std::size_t k = i + 1; k < n; ++k)
            acc -= l.entries[k * n + i] * x[k];
        x[i] = acc / l.entries[i * n + i];
    }
    return x;
}

std::vector<double> solve_spd(const SquareMatrix& a,
                              const std::vector<double>& b) {
    SquareMatrix l = a;
    cholesky_in_place(l);
    return cholesky_solve(l, b);
}

double euclidean(const double* u, const double* v, std::size_t dim) {
    double acc = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double d = u[i] - v[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

double euclidean(const std::vector<double>& u, const std::vector<double>& v) {
    if (u.size() != v.size())
        throw DimensionError("euclidean: lengths " + std::to_string(u.size()) +
                             " and " + std::to_string(v.size()) + " differ");
    return euclidean(u.data(), v.data(), u.size());
}

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
    constexpr double eps = 1e-15;
    constexpr double fpmin = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) return h;
    }
    throw ConvergenceError("incomplete beta continued fraction stalled");
}

// Regularized incomplete beta I_x(a,b).
double inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double lfront = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
    const double front = std::exp(lfront);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

}  // namespace

double student_t_p_value(double t, double df) {
    if (!(df > 0.0))
        throw ValueError("degrees of freedom must be positive, got " +
                         std::to_string(df));
    if (!std::isfinite(t)) throw ValueError("non-finite t statistic");
    // P(|T| > t) = I_{df/(df+t²)}(df/2, 1/2).
    return inc_beta(0.5 * df, 0.5, df / (df + t * t));
}

double RandomSource::normal() {
    // u1 ∈ (0,1] so the log is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
}

std::size_t RandomSource::uniform_index(std::size_t n) {
    if (n == 0) throw ValueError("uniform_index over an empty range");
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    while (true) {
        const std::uint64_t draw = next_u64() & mask;
        if (draw < n) return static_cast<std::size_t>(draw);
    }
}

namespace {

// splitmix64 finalizer: avalanche a 64-bit value.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view name) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

RandomSource RandomSource::derive(std::uint64_t stream) const {
    return RandomSource(mix64(seed_ ^ mix64(stream)));
}

RandomSource RandomSource::derive(std::string_view name) const {
    return derive(fnv1a(name));
}

}  // namespace botreg
