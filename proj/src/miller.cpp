#include "mfz/miller.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mfz {

WeightDecomposition decompose_weight(std::int64_t k) {
  if (k % 2 != 0) throw std::invalid_argument("weight must be even");
  if (k == 2) throw std::invalid_argument("weight 2 is not supported");
  // The residue mod 12 fixes k' uniquely; k = 2 (mod 12) needs k' = 14.
  std::int64_t r = ((k % 12) + 12) % 12;
  int kp = (r == 2) ? 14 : static_cast<int>(r);
  return {k, (k - kp) / 12, kp};
}

namespace {

void check_m(const WeightDecomposition& w, std::int64_t m) {
  if (m > w.ell) throw std::invalid_argument("m must not exceed l");
  if (w.ell - m > (1L << 30)) throw std::invalid_argument("Faber degree out of range");
}

// (q^{-1} Delta)^l E_{k'} as a power series with `n` known coefficients.
LaurentSeries base_series(const WeightDecomposition& w, long n) {
  LaurentSeries dq = delta_product(n + 1).shifted(-1);
  return pow(dq, w.ell) * eisenstein_kprime(w.kprime, n);
}

}  // namespace

FaberPolynomial faber_poly(std::int64_t k, std::int64_t m, const JPowerTable* table) {
  auto w = decompose_weight(k);
  check_m(w, m);
  const long D = static_cast<long>(w.ell - m);
  FaberPolynomial f{k, m, D, {}};
  // acc[d] starts at D_{l,d}; row r subtracts y_r c_{D-r, -(D-d)} from every d > r.
  std::vector<mpz_class> acc = d_coeffs(mpz_class(static_cast<long>(w.ell)), w.kprime, D);
  bool use_table = table && table->smax() >= D;
  std::vector<mpz_class> J;
  if (!use_table) J = J_series(D + 1).coeffs();
  f.y.resize(static_cast<size_t>(D) + 1);
  for (long r = 0; r <= D; ++r) {
    f.y[r] = acc[r];
    if (r == D || f.y[r] == 0) continue;
    const long s = D - r;
    if (use_table) {
      for (long d = r + 1; d <= D; ++d)
        mpz_submul(acc[d].get_mpz_t(), f.y[r].get_mpz_t(), table->c_neg(s, D - d).get_mpz_t());
    } else {
      // Entry d - r of the J^s row is c_{s, -(D-d)}.
      auto row = j_power_row(s, J);
      for (long d = r + 1; d <= D; ++d) mpz_submul(acc[d].get_mpz_t(), f.y[r].get_mpz_t(), row[d - r].get_mpz_t());
    }
  }
  return f;
}

FaberPolynomial faber_via_reduction(std::int64_t k, std::int64_t m) {
  auto w = decompose_weight(k);
  check_m(w, m);
  const long D = static_cast<long>(w.ell - m);
  // Work with q^{D} j^s Delta'^l E relative to q^m: index e - m for exponent e.
  const long n = D + 1;
  LaurentSeries base = base_series(w, n);
  LaurentSeries j = j_series(n);
  std::vector<LaurentSeries> terms(static_cast<size_t>(D) + 1);
  // terms[r] = q^{-m} Delta^l E j^{D-r}, a power series with lead r.
  LaurentSeries jp = LaurentSeries::constant(1, n);
  for (long s = 0; s <= D; ++s) {
    terms[static_cast<size_t>(D - s)] = (base * jp).shifted(D).truncated(n);
    if (s < D) jp = jp * j;  // j^s keeps n - s known terms
  }
  FaberPolynomial f{k, m, D, std::vector<mpz_class>(static_cast<size_t>(D) + 1)};
  std::vector<mpz_class> cur(static_cast<size_t>(n));
  for (long r = 0; r <= D; ++r) {
    const auto& t = terms[static_cast<size_t>(r)];
    if (t.lead() != r || t.coeffs().empty() || t.coeffs()[0] != 1)
      throw std::logic_error("faber_via_reduction: unexpected leading term");
    // y_0 = 1 makes q^m monic; later y_r cancel q^{m+r}.
    mpz_class y = (r == 0) ? mpz_class(1) : mpz_class(-cur[static_cast<size_t>(r)]);
    f.y[static_cast<size_t>(r)] = y;
    if (y == 0) continue;
    for (long e = r; e < n; ++e) mpz_addmul(cur[static_cast<size_t>(e)].get_mpz_t(), y.get_mpz_t(), t.at(e).get_mpz_t());
  }
  for (long e = 1; e < n; ++e)
    if (cur[static_cast<size_t>(e)] != 0) throw std::logic_error("faber_via_reduction: elimination failed");
  return f;
}

MillerForm miller_form(const FaberPolynomial& f, long order) {
  auto w = decompose_weight(f.k);
  if (order <= w.ell) throw std::invalid_argument("miller_form needs order > l");
  const long D = f.D;
  const long n = static_cast<long>(order - f.m);  // coefficients q^m .. q^{order-1}
  // q^D P(j) = sum y_r q^r J^{D-r}, by Horner in J.
  LaurentSeries J = J_series(n);
  LaurentSeries acc = LaurentSeries::constant(f.y[0], n);
  for (long r = 1; r <= D; ++r) {
    acc = acc * J;
    acc.at(r) += f.y[static_cast<size_t>(r)];
  }
  LaurentSeries g = (base_series(w, n) * acc).shifted(f.m);
  return {f.k, f.m, g};
}

MillerForm miller_form(std::int64_t k, std::int64_t m, long order) { return miller_form(faber_poly(k, m), order); }

double faber_ratio_deviation(const FaberPolynomial& f) {
  mpz_class twok = 2 * mpz_class(static_cast<long>(f.k < 0 ? -f.k : f.k));
  mpz_class pw = 1, fact = 1;
  double worst = 0.0;
  for (long d = 0; d <= f.D; ++d) {
    if (d > 0) {
      pw *= twok;
      fact *= d;
    }
    mpq_class ratio(f.y[static_cast<size_t>(d)] * fact, pw);
    ratio.canonicalize();
    worst = std::max(worst, std::fabs(mpq_class(ratio - 1).get_d()));
  }
  return worst;
}

void write_faber_file(const std::string& path, const FaberPolynomial& f) {
  std::ostringstream tag;
  tag << path << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id());
  std::string tmp = tag.str();
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << f.k << ' ' << f.m << ' ' << f.D << '\n';
    for (const auto& c : f.y) out << c.get_str() << '\n';
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

FaberPolynomial read_faber_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  FaberPolynomial f;
  if (!(in >> f.k >> f.m >> f.D) || f.D < 0) throw std::runtime_error("bad Faber header in " + path);
  f.y.resize(static_cast<size_t>(f.D) + 1);
  std::string tok;
  for (auto& c : f.y) {
    if (!(in >> tok)) throw std::runtime_error("truncated Faber file " + path);
    c = mpz_class(tok);
  }
  return f;
}

FaberCache::FaberCache(std::string dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

std::string FaberCache::path(std::int64_t k, std::int64_t m) const {
  return (std::filesystem::path(dir_) / ("faber_" + std::to_string(k) + "_" + std::to_string(m) + ".txt")).string();
}

std::optional<FaberPolynomial> FaberCache::load(std::int64_t k, std::int64_t m) const {
  auto p = path(k, m);
  if (!std::filesystem::exists(p)) return std::nullopt;
  auto f = read_faber_file(p);
  if (f.k != k || f.m != m) throw std::runtime_error("Faber cache entry mismatch in " + p);
  return f;
}

void FaberCache::store(const FaberPolynomial& f) const {
  std::lock_guard<std::mutex> lock(write_mu_);
  write_faber_file(path(f.k, f.m), f);
}

FaberPolynomial FaberCache::get(std::int64_t k, std::int64_t m, const JPowerTable* table) const {
  if (auto f = load(k, m)) return *f;
  auto f = faber_poly(k, m, table);
  store(f);
  return f;
}

}  // namespace mfz
