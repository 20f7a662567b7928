#include "mrv/fp.hpp"

#include <limits>
#include <stdexcept>
#include <utility>

namespace mrv {

bool is_prime_u64(std::uint64_t m) {
  if (m < 2) return false;
  if (m % 2 == 0) return m == 2;
  for (std::uint64_t d = 3; d * d <= m; d += 2)
    if (m % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::validated(std::uint64_t p) {
  if (p < kMinPrime || p > kDefaultPrime)
    throw std::invalid_argument("prime must lie in [2^16, 2^31 - 1]");
  if (!is_prime_u64(p)) throw std::invalid_argument("modulus is not prime");
  return FieldSpec{p};
}

std::uint64_t FieldSpec::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1, b = a % p;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

std::uint64_t FieldSpec::inv(std::uint64_t a) const {
  a %= p;
  if (a == 0) throw std::domain_error("inverse of zero");
  return pow(a, p - 2);
}

std::uint64_t FieldSpec::from_int(i64 v) const {
  i64 m = v % static_cast<i64>(p);
  if (m < 0) m += static_cast<i64>(p);
  return static_cast<std::uint64_t>(m);
}

FpMatrix FpMatrix::mul(const FpMatrix& rhs, const FieldSpec& f) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
  FpMatrix out(rows_, rhs.cols_);
  for (i64 i = 0; i < rows_; ++i)
    for (i64 k = 0; k < cols_; ++k) {
      std::uint64_t v = at(i, k);
      if (v == 0) continue;
      for (i64 j = 0; j < rhs.cols_; ++j)
        out.at(i, j) = f.add(out.at(i, j), f.mul(v, rhs.at(k, j)));
    }
  return out;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix out(cols_, rows_);
  for (i64 i = 0; i < rows_; ++i)
    for (i64 j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

namespace {

// Reduced row echelon form in place; returns the pivot columns.
std::vector<i64> rref(FpMatrix& m, const FieldSpec& f) {
  std::vector<i64> pivots;
  i64 r = 0;
  for (i64 c = 0; c < m.cols() && r < m.rows(); ++c) {
    i64 pr = -1;
    for (i64 i = r; i < m.rows(); ++i)
      if (m.at(i, c) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      for (i64 j = c; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(pr, j));
    std::uint64_t iv = f.inv(m.at(r, c));
    for (i64 j = c; j < m.cols(); ++j) m.at(r, j) = f.mul(m.at(r, j), iv);
    for (i64 i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      std::uint64_t v = m.at(i, c);
      if (v == 0) continue;
      for (i64 j = c; j < m.cols(); ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(v, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

i64 rank(FpMatrix m, const FieldSpec& f) {
  // Forward elimination only; no back-substitution needed for the rank.
  i64 r = 0;
  for (i64 c = 0; c < m.cols() && r < m.rows(); ++c) {
    i64 pr = -1;
    for (i64 i = r; i < m.rows(); ++i)
      if (m.at(i, c) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      for (i64 j = c; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(pr, j));
    std::uint64_t iv = f.inv(m.at(r, c));
    for (i64 i = r + 1; i < m.rows(); ++i) {
      std::uint64_t v = m.at(i, c);
      if (v == 0) continue;
      std::uint64_t s = f.mul(v, iv);
      for (i64 j = c; j < m.cols(); ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(s, m.at(r, j)));
    }
    ++r;
  }
  return r;
}

FpMatrix kernel_basis(FpMatrix m, const FieldSpec& f) {
  std::vector<i64> pivots = rref(m, f);
  std::vector<bool> is_pivot(m.cols(), false);
  for (i64 c : pivots) is_pivot[c] = true;
  FpMatrix out(m.cols() - static_cast<i64>(pivots.size()), m.cols());
  i64 row = 0;
  for (i64 c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    out.at(row, c) = 1;
    for (i64 i = 0; i < static_cast<i64>(pivots.size()); ++i)
      out.at(row, pivots[i]) = f.neg(m.at(i, c));
    ++row;
  }
  return out;
}

std::uint64_t Sampler::uniform(std::uint64_t p) {
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % p);
  std::uint64_t u;
  do {
    u = gen_();
  } while (u >= limit);
  return u % p;
}

ProjectivePoint normalize_point(ProjectivePoint v, const FieldSpec& f) {
  for (std::uint64_t c : v)
    if (c != 0) {
      std::uint64_t iv = f.inv(c);
      for (std::uint64_t& x : v) x = f.mul(x, iv);
      return v;
    }
  throw std::invalid_argument("cannot normalize the zero vector");
}

ProjectivePoint random_point(int n, const FieldSpec& f, Sampler& s) {
  while (true) {
    ProjectivePoint v(n + 1);
    bool nonzero = false;
    for (auto& x : v) {
      x = s.uniform(f.p);
      nonzero |= (x != 0);
    }
    if (nonzero) return normalize_point(std::move(v), f);
  }
}

std::vector<ProjectivePoint> random_points(int n, i64 count, const FieldSpec& f, Sampler& s) {
  std::vector<ProjectivePoint> pts;
  pts.reserve(count);
  for (i64 i = 0; i < count; ++i) pts.push_back(random_point(n, f, s));
  return pts;
}

FpMatrix random_surjection(i64 from_dim, i64 to_dim, const FieldSpec& f, Sampler& s) {
  if (to_dim < 0 || to_dim > from_dim)
    throw std::invalid_argument("random_surjection: need 0 <= to_dim <= from_dim");
  while (true) {
    FpMatrix m(to_dim, from_dim);
    for (i64 i = 0; i < to_dim; ++i)
      for (i64 j = 0; j < from_dim; ++j) m.at(i, j) = s.uniform(f.p);
    if (rank(m, f) == to_dim) return m;
  }
}

}  // namespace mrv
