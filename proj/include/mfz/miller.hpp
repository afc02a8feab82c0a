#pragma once

// Miller basis forms g_{k,m} = q^m + O(q^{l+1}) and their Faber polynomials.

#include <gmpxx.h>

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mfz/poly.hpp"
#include "mfz/qseries.hpp"

namespace mfz {

// k = 12 l + k' with k' in {0, 4, 6, 8, 10, 14}.
struct WeightDecomposition {
  std::int64_t k = 0;
  std::int64_t ell = 0;
  int kprime = 0;
};

// Unique decomposition; odd k and k = 2 are rejected.
WeightDecomposition decompose_weight(std::int64_t k);

// Monic P of degree D = l - m with Delta^l E_{k'} P(j) = q^m + O(q^{l+1}).
// y[d] is the coefficient of x^{D-d}.
struct FaberPolynomial {
  std::int64_t k = 0;
  std::int64_t m = 0;
  long D = 0;
  std::vector<mpz_class> y;

  IntPoly poly() const { return IntPoly::from_descending(y); }
  bool operator==(const FaberPolynomial& o) const { return k == o.k && m == o.m && D == o.D && y == o.y; }
};

// Forward substitution on the unit lower-triangular system
//   sum_{r<=d} y_r c_{D-r,-(D-d)} = D_{l,d}.
// Rows of J^s come from `table` when it is large enough, otherwise they are
// streamed one at a time (memory O(D) rows of bigints, time O(D^3)).
FaberPolynomial faber_poly(std::int64_t k, std::int64_t m, const JPowerTable* table = nullptr);

// Independent oracle: greedy elimination of q^{m+1}..q^l in Delta^l E_{k'} j^s.
FaberPolynomial faber_via_reduction(std::int64_t k, std::int64_t m);

struct MillerForm {
  std::int64_t k = 0;
  std::int64_t m = 0;
  LaurentSeries expansion;  // lead m
};

// Exact q-expansion of g_{k,m} up to (excluding) q^order; order > l.
MillerForm miller_form(std::int64_t k, std::int64_t m, long order);
// Same, from an already computed Faber polynomial.
MillerForm miller_form(const FaberPolynomial& f, long order);

// max_d |y_d d! / (2|k|)^d - 1| over 0 <= d <= D.
double faber_ratio_deviation(const FaberPolynomial& f);

// One file per (k, m): header "k m D", then y_0..y_D one per line. Files are
// published by rename, so concurrent readers never see partial data.
class FaberCache {
 public:
  explicit FaberCache(std::string dir);
  std::string path(std::int64_t k, std::int64_t m) const;
  std::optional<FaberPolynomial> load(std::int64_t k, std::int64_t m) const;
  void store(const FaberPolynomial& f) const;
  // Load, or compute with faber_poly and store.
  FaberPolynomial get(std::int64_t k, std::int64_t m, const JPowerTable* table = nullptr) const;

 private:
  std::string dir_;
  mutable std::mutex write_mu_;
};

void write_faber_file(const std::string& path, const FaberPolynomial& f);
FaberPolynomial read_faber_file(const std::string& path);

}  // namespace mfz
