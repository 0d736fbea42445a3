#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace botreg {

struct SquareMatrix {
    std::size_t n = 0;
    std::vector<double> entries;  // row-major, n*n

    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t dim) : n(dim), entries(dim * dim, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

// Lower-triangular L with L·Lᵀ = a; strict upper triangle of the result is
// zero. Throws NotPositiveDefiniteError (with the pivot index) when a pivot
// is not strictly positive.
SquareMatrix cholesky(const SquareMatrix& a);

// Same factorization without the copy: the lower triangle of a becomes L,
// the strict upper triangle is left untouched.
void cholesky_in_place(SquareMatrix& a);

// Solve L·Lᵀ·x = b given an already-factored L (lower triangle read only).
std::vector<double> cholesky_solve(const SquareMatrix& l,
                                   const std::vector<double>& b);

std::vector<double> solve_spd(const SquareMatrix& a,
                              const std::vector<double>& b);

double euclidean(const double* u, const double* v, std::size_t dim);
double euclidean(const std::vector<double>& u, const std::vector<double>& v);

// Two-sided p-value of Student's t with df degrees of freedom, via the
// regularized incomplete beta function.
double student_t_p_value(double t, double df);

// Deterministic seeded generator. Child streams are derived from the seed
// (not the state), so sibling consumers never perturb each other and the
// derivation order doesn't matter.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return gen_(); }

    // [0,1), 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal, Box-Muller cosine branch, stateless across calls.
    double normal();

    // Uniform over [0,n). Unbiased via power-of-two masking + rejection.
    std::size_t uniform_index(std::size_t n);

    RandomSource derive(std::uint64_t stream) const;
    RandomSource derive(std::string_view name) const;

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = uniform_index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace botreg
