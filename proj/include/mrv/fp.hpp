#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mrv/exactdims.hpp"

// Dense linear algebra over a prime field F_p.  The modulus is capped at
// 2^31 - 1 so that a*b for reduced residues stays below 2^62 and single
// uint64_t multiplication suffices; elimination never needs 128-bit help.

namespace mrv {

inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;  // 2^31 - 1
inline constexpr std::uint64_t kMinPrime = 65536ULL;           // 2^16

bool is_prime_u64(std::uint64_t m);

struct FieldSpec {
  std::uint64_t p = kDefaultPrime;

  // Throws std::invalid_argument unless kMinPrime <= p <= 2^31 - 1 and p prime.
  static FieldSpec validated(std::uint64_t p);

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p - b;
  }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;  // throws std::domain_error on 0
  std::uint64_t from_int(i64 v) const;       // reduces any signed value
};

class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(i64 rows, i64 cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  i64 rows() const { return rows_; }
  i64 cols() const { return cols_; }
  std::uint64_t& at(i64 i, i64 j) { return data_[i * cols_ + j]; }
  std::uint64_t at(i64 i, i64 j) const { return data_[i * cols_ + j]; }
  const std::vector<std::uint64_t>& data() const { return data_; }

  bool operator==(const FpMatrix&) const = default;

  FpMatrix mul(const FpMatrix& rhs, const FieldSpec& f) const;
  FpMatrix transpose() const;

 private:
  i64 rows_ = 0;
  i64 cols_ = 0;
  std::vector<std::uint64_t> data_;
};

// Rank by Gaussian elimination with first-nonzero pivoting; deterministic.
i64 rank(FpMatrix m, const FieldSpec& f);

// Basis of the right kernel {v : m v = 0}, one basis vector per row,
// (cols - rank) rows, ordered by ascending free column.  The basis is in
// reduced echelon form with respect to the free columns: basis.at(i, free_j)
// is 1 when i == j and 0 otherwise.
FpMatrix kernel_basis(FpMatrix m, const FieldSpec& f);

// Deterministic residue stream.  mt19937_64 output is fixed by the C++
// standard, so equal seeds give equal streams on any platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}
  // Uniform on [0, p) by rejection; no modulo bias.
  std::uint64_t uniform(std::uint64_t p);

 private:
  std::mt19937_64 gen_;
};

// Point of P^n as n+1 residues, normalized so the first nonzero entry is 1.
using ProjectivePoint = std::vector<std::uint64_t>;

ProjectivePoint normalize_point(ProjectivePoint v, const FieldSpec& f);

// Uniformly random normalized point (resamples the zero vector away).
ProjectivePoint random_point(int n, const FieldSpec& f, Sampler& s);

std::vector<ProjectivePoint> random_points(int n, i64 count, const FieldSpec& f, Sampler& s);

// Random full-rank to_dim x from_dim matrix; resamples until surjective.
// Requires 0 <= to_dim <= from_dim.
FpMatrix random_surjection(i64 from_dim, i64 to_dim, const FieldSpec& f, Sampler& s);

}  // namespace mrv
