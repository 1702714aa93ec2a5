#pragma once

// Encode n equal-size jobs into n+m linear combinations over GF(2^8) or GF(2^16), and
// recover the originals from any n of them by Gaussian elimination.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "errors.hpp"
#include "galois.hpp"

namespace redundancy {

enum class CodingScheme {
  SystematicVandermonde,  // first n rows are the identity; every n x n submatrix invertible
  RandomLinear,           // uniform coefficients; MDS with high probability
  Explicit,               // caller-supplied rows, no guarantee
};

inline const char* to_string(CodingScheme s) {
  switch (s) {
    case CodingScheme::SystematicVandermonde: return "systematic-vandermonde";
    case CodingScheme::RandomLinear: return "random-linear";
    case CodingScheme::Explicit: return "explicit";
  }
  return "unknown";
}

// No n-subset of the supplied coded jobs has an invertible coefficient matrix.
class UnrecoverableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Field>
using FieldMatrix = std::vector<std::vector<typename Field::value_type>>;

// Gauss-Jordan inversion over the field; nullopt when singular.
template <typename Field>
std::optional<FieldMatrix<Field>> invert(FieldMatrix<Field> a) {
  using V = typename Field::value_type;
  const std::size_t size = a.size();
  FieldMatrix<Field> inv(size, std::vector<V>(size, 0));
  for (std::size_t i = 0; i < size; ++i) inv[i][i] = 1;

  for (std::size_t col = 0; col < size; ++col) {
    std::size_t pivot = col;
    while (pivot < size && a[pivot][col] == 0) ++pivot;
    if (pivot == size) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);

    const V scale = Field::inv(a[col][col]);
    for (std::size_t j = 0; j < size; ++j) {
      a[col][j] = Field::mul(a[col][j], scale);
      inv[col][j] = Field::mul(inv[col][j], scale);
    }
    for (std::size_t row = 0; row < size; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const V factor = a[row][col];
      for (std::size_t j = 0; j < size; ++j) {
        a[row][j] = Field::sub(a[row][j], Field::mul(factor, a[col][j]));
        inv[row][j] = Field::sub(inv[row][j], Field::mul(factor, inv[col][j]));
      }
    }
  }
  return inv;
}

template <typename Field>
FieldMatrix<Field> multiply(const FieldMatrix<Field>& a, const FieldMatrix<Field>& b) {
  using V = typename Field::value_type;
  const std::size_t inner = b.size();
  const std::size_t cols = inner == 0 ? 0 : b[0].size();
  FieldMatrix<Field> out(a.size(), std::vector<V>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t l = 0; l < inner; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] = Field::add(out[i][j], Field::mul(a[i][l], b[l][j]));
    }
  return out;
}

// The (n+m) x n generator whose row j holds the coefficients of coded job j.
template <typename Field>
class CodingMatrix {
 public:
  using value_type = typename Field::value_type;

  // Deterministic in (n, m, scheme, seed). For the Vandermonde scheme the seed picks the
  // distinct evaluation points.
  static CodingMatrix make(int n, int m, CodingScheme scheme, std::uint64_t seed) {
    if (n < 1) throw ValidationError("must be >= 1", "n");
    if (m < 0) throw ValidationError("must be >= 0", "m");
    if (static_cast<std::uint64_t>(n + m) > Field::order)
      throw ValidationError("n+m exceeds the field order " + std::to_string(Field::order), "m");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> symbol(0, Field::order - 1);
    CodingMatrix out;
    out.n_ = n;
    out.scheme_ = scheme;

    switch (scheme) {
      case CodingScheme::RandomLinear:
        out.rows_.assign(static_cast<std::size_t>(n + m), std::vector<value_type>(static_cast<std::size_t>(n)));
        for (auto& row : out.rows_)
          for (auto& c : row) c = static_cast<value_type>(symbol(rng));
        break;
      case CodingScheme::SystematicVandermonde: {
        std::vector<value_type> points;
        std::unordered_set<std::uint32_t> used;
        while (points.size() < static_cast<std::size_t>(n + m)) {
          const std::uint32_t x = symbol(rng);
          if (used.insert(x).second) points.push_back(static_cast<value_type>(x));
        }
        FieldMatrix<Field> vander(points.size(), std::vector<value_type>(static_cast<std::size_t>(n)));
        for (std::size_t i = 0; i < points.size(); ++i)
          for (int j = 0; j < n; ++j) vander[i][static_cast<std::size_t>(j)] = Field::pow(points[i], static_cast<unsigned>(j));
        FieldMatrix<Field> top(vander.begin(), vander.begin() + n);
        auto top_inv = invert<Field>(top);
        if (!top_inv) throw std::logic_error("Vandermonde block with distinct points is singular");
        out.rows_ = multiply<Field>(vander, *top_inv);
        break;
      }
      case CodingScheme::Explicit:
        throw ValidationError("explicit matrices are built with from_rows", "scheme");
    }
    return out;
  }

  static CodingMatrix from_rows(int n, FieldMatrix<Field> rows) {
    if (n < 1) throw ValidationError("must be >= 1", "n");
    for (const auto& row : rows)
      if (row.size() != static_cast<std::size_t>(n)) throw ValidationError("every row needs n coefficients", "rows");
    CodingMatrix out;
    out.n_ = n;
    out.scheme_ = CodingScheme::Explicit;
    out.rows_ = std::move(rows);
    return out;
  }

  int n() const { return n_; }
  int m() const { return static_cast<int>(rows_.size()) - n_; }
  CodingScheme scheme() const { return scheme_; }
  const FieldMatrix<Field>& rows() const { return rows_; }
  const std::vector<value_type>& row(std::size_t j) const { return rows_.at(j); }

  // Checks every n-row submatrix. Exponential in n+m; meant for small codes.
  bool is_mds() const {
    const std::size_t total = rows_.size();
    const auto n = static_cast<std::size_t>(n_);
    if (total < n) return false;
    std::vector<bool> pick(total, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n), true);
    do {
      FieldMatrix<Field> sub;
      for (std::size_t i = 0; i < total; ++i)
        if (pick[i]) sub.push_back(rows_[i]);
      if (!invert<Field>(sub)) return false;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return true;
  }

  bool operator==(const CodingMatrix&) const = default;

 private:
  int n_ = 0;
  CodingScheme scheme_ = CodingScheme::Explicit;
  FieldMatrix<Field> rows_;
};

template <typename Field>
struct CodedJob {
  std::uint64_t batch_id = 0;
  int index = 0;  // 1-based position j in 1..n+m
  CodingScheme scheme = CodingScheme::Explicit;
  std::vector<typename Field::value_type> coefficients;
  std::vector<std::uint8_t> payload;
};

template <typename Field>
struct DecodeResult {
  std::vector<std::vector<std::uint8_t>> payloads;
  std::vector<int> used_indices;  // coded-job indices whose rows were inverted
  int attempts = 0;               // n-subsets tried
};

namespace detail {

template <typename Field>
typename Field::value_type load_symbol(std::span<const std::uint8_t> bytes, std::size_t s) {
  if constexpr (Field::symbol_bytes == 1) {
    return bytes[s];
  } else {
    return static_cast<typename Field::value_type>(bytes[2 * s] | (bytes[2 * s + 1] << 8));
  }
}

template <typename Field>
void store_symbol(std::span<std::uint8_t> bytes, std::size_t s, typename Field::value_type v) {
  if constexpr (Field::symbol_bytes == 1) {
    bytes[s] = v;
  } else {
    bytes[2 * s] = static_cast<std::uint8_t>(v & 0xff);
    bytes[2 * s + 1] = static_cast<std::uint8_t>(v >> 8);
  }
}

// out += coeff * in, symbol-wise.
template <typename Field>
void axpy(typename Field::value_type coeff, std::span<const std::uint8_t> in, std::span<std::uint8_t> out) {
  if (coeff == 0) return;
  const std::size_t symbols = in.size() / Field::symbol_bytes;
  for (std::size_t s = 0; s < symbols; ++s) {
    const auto v = Field::add(load_symbol<Field>(out, s), Field::mul(coeff, load_symbol<Field>(in, s)));
    store_symbol<Field>(out, s, v);
  }
}

}  // namespace detail

// Coded payload j is sum_i A[j][i] * J_i.
template <typename Field>
std::vector<CodedJob<Field>> encode(std::span<const std::vector<std::uint8_t>> jobs, const CodingMatrix<Field>& matrix,
                                    std::uint64_t batch_id = 0) {
  if (jobs.size() != static_cast<std::size_t>(matrix.n()))
    throw ValidationError("expected " + std::to_string(matrix.n()) + " payloads", "jobs");
  const std::size_t length = jobs.front().size();
  for (const auto& job : jobs)
    if (job.size() != length) throw ValidationError("payloads must have equal length", "jobs");
  if (length % Field::symbol_bytes != 0)
    throw ValidationError("payload length must be a multiple of the symbol size", "jobs");

  std::vector<CodedJob<Field>> out;
  out.reserve(matrix.rows().size());
  for (std::size_t j = 0; j < matrix.rows().size(); ++j) {
    CodedJob<Field> coded;
    coded.batch_id = batch_id;
    coded.index = static_cast<int>(j) + 1;
    coded.scheme = matrix.scheme();
    coded.coefficients = matrix.row(j);
    coded.payload.assign(length, 0);
    for (std::size_t i = 0; i < jobs.size(); ++i)
      detail::axpy<Field>(coded.coefficients[i], jobs[i], coded.payload);
    out.push_back(std::move(coded));
  }
  return out;
}

template <typename Field>
std::vector<CodedJob<Field>> encode(std::span<const std::vector<std::uint8_t>> jobs, int m, CodingScheme scheme,
                                    std::uint64_t seed, std::uint64_t batch_id = 0) {
  if (jobs.empty()) throw ValidationError("at least one payload is required", "jobs");
  return encode<Field>(jobs, CodingMatrix<Field>::make(static_cast<int>(jobs.size()), m, scheme, seed), batch_id);
}

// Recovers the n originals from at least n coded jobs of one batch. Tries n-subsets in
// lexicographic order until one has an invertible coefficient matrix (at most max_attempts).
template <typename Field>
DecodeResult<Field> decode(std::span<const CodedJob<Field>> coded, int n, int max_attempts = 4096) {
  if (n < 1) throw ValidationError("must be >= 1", "n");
  if (coded.size() < static_cast<std::size_t>(n))
    throw UnrecoverableError("need at least " + std::to_string(n) + " coded jobs, got " + std::to_string(coded.size()));

  // Drop duplicate indices; they can never help.
  std::vector<const CodedJob<Field>*> pool;
  std::unordered_set<int> seen;
  const std::size_t length = coded.front().payload.size();
  for (const auto& job : coded) {
    if (job.batch_id != coded.front().batch_id) throw ValidationError("coded jobs span several batches", "coded");
    if (job.payload.size() != length) throw ValidationError("payloads must have equal length", "coded");
    if (job.coefficients.size() != static_cast<std::size_t>(n))
      throw ValidationError("coefficient row length differs from n", "coded");
    if (seen.insert(job.index).second) pool.push_back(&job);
  }
  if (pool.size() < static_cast<std::size_t>(n))
    throw UnrecoverableError("fewer than n distinct coded jobs");

  const auto want = static_cast<std::size_t>(n);
  std::vector<bool> pick(pool.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(want), true);
  DecodeResult<Field> result;
  do {
    ++result.attempts;
    std::vector<const CodedJob<Field>*> chosen;
    FieldMatrix<Field> sub;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (pick[i]) {
        chosen.push_back(pool[i]);
        sub.push_back(pool[i]->coefficients);
      }
    auto inv = invert<Field>(std::move(sub));
    if (!inv) {
      if (chosen.front()->scheme == CodingScheme::SystematicVandermonde)
        throw std::logic_error("singular submatrix in a systematic Vandermonde code");
      continue;
    }
    result.payloads.assign(want, std::vector<std::uint8_t>(length, 0));
    for (std::size_t i = 0; i < want; ++i)
      for (std::size_t j = 0; j < want; ++j)
        detail::axpy<Field>((*inv)[i][j], chosen[j]->payload, result.payloads[i]);
    for (const auto* job : chosen) result.used_indices.push_back(job->index);
    return result;
  } while (result.attempts < max_attempts && std::prev_permutation(pick.begin(), pick.end()));

  throw UnrecoverableError("no invertible n-subset among " + std::to_string(pool.size()) + " coded jobs after " +
                           std::to_string(result.attempts) + " attempts");
}

}  // namespace redundancy
