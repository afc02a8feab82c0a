#include "mfz/qseries.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace mfz {

namespace {

void require_order(long order, long lead) {
  if (order <= lead) throw std::invalid_argument("series order must exceed the leading exponent");
}

bool is_unit(const mpz_class& c) { return c == 1 || c == -1; }

}  // namespace

LaurentSeries LaurentSeries::constant(const mpz_class& c, long order) {
  require_order(order, 0);
  std::vector<mpz_class> v(static_cast<size_t>(order));
  v[0] = c;
  return LaurentSeries(0, std::move(v));
}

LaurentSeries LaurentSeries::monomial(long e, long order) {
  require_order(order, e);
  std::vector<mpz_class> v(static_cast<size_t>(order - e));
  v[0] = 1;
  return LaurentSeries(e, std::move(v));
}

const mpz_class& LaurentSeries::at(long n) const {
  static const mpz_class zero = 0;
  if (n < lead_) return zero;
  if (n >= order()) throw std::out_of_range("coefficient beyond truncation order");
  return coeffs_[static_cast<size_t>(n - lead_)];
}

mpz_class& LaurentSeries::at(long n) {
  if (n < lead_ || n >= order()) throw std::out_of_range("coefficient outside stored range");
  return coeffs_[static_cast<size_t>(n - lead_)];
}

LaurentSeries LaurentSeries::truncated(long order) const {
  if (order >= this->order()) return *this;
  if (order <= lead_) return LaurentSeries(order, {});
  return LaurentSeries(lead_, std::vector<mpz_class>(coeffs_.begin(), coeffs_.begin() + (order - lead_)));
}

LaurentSeries LaurentSeries::normalized() const {
  size_t i = 0;
  while (i < coeffs_.size() && coeffs_[i] == 0) ++i;
  if (i == coeffs_.size()) return *this;
  return LaurentSeries(lead_ + static_cast<long>(i), std::vector<mpz_class>(coeffs_.begin() + i, coeffs_.end()));
}

std::string LaurentSeries::to_string(int max_terms) const {
  std::ostringstream os;
  int shown = 0;
  for (size_t i = 0; i < coeffs_.size() && shown < max_terms; ++i) {
    const mpz_class& c = coeffs_[i];
    if (c == 0) continue;
    long e = lead_ + static_cast<long>(i);
    if (shown > 0) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    mpz_class a = abs(c);
    if (a != 1 || e == 0) os << a;
    if (e != 0) os << "q";
    if (e != 0 && e != 1) os << "^" << e;
    ++shown;
  }
  if (shown == 0) os << "0";
  os << " + O(q^" << order() << ")";
  return os.str();
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  long lead = std::min(a.lead(), b.lead());
  long order = std::min(a.order(), b.order());
  std::vector<mpz_class> v(static_cast<size_t>(std::max(0L, order - lead)));
  for (long n = lead; n < order; ++n) v[static_cast<size_t>(n - lead)] = a.at(n) + b.at(n);
  return LaurentSeries(lead, std::move(v));
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
  long lead = std::min(a.lead(), b.lead());
  long order = std::min(a.order(), b.order());
  std::vector<mpz_class> v(static_cast<size_t>(std::max(0L, order - lead)));
  for (long n = lead; n < order; ++n) v[static_cast<size_t>(n - lead)] = a.at(n) - b.at(n);
  return LaurentSeries(lead, std::move(v));
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  long lead = a.lead() + b.lead();
  size_t n = std::min(a.coeffs().size(), b.coeffs().size());
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<mpz_class> v(n);
  for (size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; i + j < n; ++j) mpz_addmul(v[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
  }
  return LaurentSeries(lead, std::move(v));
}

LaurentSeries operator*(const LaurentSeries& a, const mpz_class& s) {
  std::vector<mpz_class> v(a.coeffs());
  for (auto& c : v) c *= s;
  return LaurentSeries(a.lead(), std::move(v));
}

LaurentSeries inverse(const LaurentSeries& a0) {
  LaurentSeries a = a0.normalized();
  const auto& x = a.coeffs();
  if (x.empty() || !is_unit(x[0])) throw ExactnessViolation("inverse needs a +-1 leading coefficient");
  size_t n = x.size();
  std::vector<mpz_class> y(n);
  y[0] = x[0];
  mpz_class acc;
  for (size_t i = 1; i < n; ++i) {
    acc = 0;
    for (size_t j = 1; j <= i; ++j) mpz_addmul(acc.get_mpz_t(), x[j].get_mpz_t(), y[i - j].get_mpz_t());
    y[i] = (x[0] == 1) ? mpz_class(-acc) : acc;
  }
  return LaurentSeries(-a.lead(), std::move(y));
}

LaurentSeries divide(const LaurentSeries& a, const LaurentSeries& b0) {
  LaurentSeries b = b0.normalized();
  const auto& y = b.coeffs();
  if (y.empty() || y[0] == 0) throw ExactnessViolation("division by a series with no known nonzero term");
  if (is_unit(y[0])) return a * inverse(b);
  const auto& x = a.coeffs();
  size_t n = std::min(x.size(), y.size());
  std::vector<mpz_class> q(n);
  mpz_class acc;
  for (size_t i = 0; i < n; ++i) {
    acc = x[i];
    for (size_t j = 1; j <= i; ++j) mpz_submul(acc.get_mpz_t(), y[j].get_mpz_t(), q[i - j].get_mpz_t());
    if (!mpz_divisible_p(acc.get_mpz_t(), y[0].get_mpz_t())) throw ExactnessViolation("non-integral quotient");
    mpz_divexact(q[i].get_mpz_t(), acc.get_mpz_t(), y[0].get_mpz_t());
  }
  return LaurentSeries(a.lead() - b.lead(), std::move(q));
}

LaurentSeries divide_exact(const LaurentSeries& a, const mpz_class& s) {
  std::vector<mpz_class> v(a.coeffs());
  for (auto& c : v) {
    if (!mpz_divisible_p(c.get_mpz_t(), s.get_mpz_t())) throw ExactnessViolation("non-integral scalar quotient");
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
  }
  return LaurentSeries(a.lead(), std::move(v));
}

LaurentSeries pow(const LaurentSeries& a0, std::int64_t e) {
  LaurentSeries a = a0.normalized();
  long n = static_cast<long>(a.coeffs().size());
  if (e == 0) return LaurentSeries::constant(1, std::max(1L, n));
  if (e < 0) {
    a = inverse(a);
    e = -e;
  }
  LaurentSeries result;
  bool have = false;
  while (true) {
    if (e & 1) {
      result = have ? result * a : a;
      have = true;
    }
    e >>= 1;
    if (!e) break;
    a = a * a;
  }
  return result;
}

LaurentSeries pow_recurrence(const LaurentSeries& a0, const mpz_class& e) {
  LaurentSeries a = a0.normalized();
  const auto& f = a.coeffs();
  if (f.empty() || f[0] == 0) throw ExactnessViolation("power of a series with no known nonzero term");
  if (e < 0 && !is_unit(f[0])) throw ExactnessViolation("negative power of non-unit-leading series");
  if (!is_unit(f[0])) throw ExactnessViolation("recurrence power needs a +-1 leading coefficient");
  mpz_class lead_z = e * a.lead();
  if (!lead_z.fits_slong_p()) throw std::overflow_error("leading exponent overflow");
  size_t n = f.size();
  // Normalize to 1 + f_1 q + ...; a sign flip multiplies each f_i by f_0.
  std::vector<mpz_class> h(n);
  for (size_t i = 0; i < n; ++i) h[i] = f[i] * f[0];
  std::vector<mpz_class> g(n);
  g[0] = 1;
  mpz_class e1 = e + 1, w, acc;
  for (size_t m = 1; m < n; ++m) {
    acc = 0;
    for (size_t i = 1; i <= m; ++i) {
      if (h[i] == 0) continue;
      w = e1 * static_cast<unsigned long>(i);
      w -= static_cast<unsigned long>(m);
      w *= h[i];
      mpz_addmul(acc.get_mpz_t(), w.get_mpz_t(), g[m - i].get_mpz_t());
    }
    if (!mpz_divisible_ui_p(acc.get_mpz_t(), m)) throw ExactnessViolation("recurrence produced a non-integer");
    mpz_divexact_ui(g[m].get_mpz_t(), acc.get_mpz_t(), m);
  }
  if (f[0] == -1 && mpz_odd_p(e.get_mpz_t())) {
    for (auto& c : g) c = -c;
  }
  return LaurentSeries(lead_z.get_si(), std::move(g));
}

mpq_class bernoulli(int n) {
  if (n < 0) throw std::invalid_argument("bernoulli: negative index");
  // Akiyama-Tanigawa; yields B_1 = +1/2, irrelevant for the even indices used here.
  std::vector<mpq_class> a(static_cast<size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) {
    a[m] = mpq_class(1, m + 1);
    for (int j = m; j >= 1; --j) {
      a[j - 1] = j * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
  }
  return a[0];
}

std::vector<mpz_class> divisor_sums(int s, long nmax) {
  std::vector<mpz_class> sig(static_cast<size_t>(nmax) + 1);
  mpz_class p;
  for (long d = 1; d <= nmax; ++d) {
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(s));
    for (long m = d; m <= nmax; m += d) sig[m] += p;
  }
  return sig;
}

LaurentSeries eisenstein(int k, long order) {
  if (k != 4 && k != 6 && k != 8 && k != 10 && k != 14) throw std::invalid_argument("unsupported Eisenstein weight");
  require_order(order, 0);
  mpq_class pre = mpq_class(-2 * k) / bernoulli(k);
  pre.canonicalize();
  if (pre.get_den() != 1) throw ExactnessViolation("Eisenstein prefactor is not integral");
  mpz_class c = pre.get_num();
  auto sig = divisor_sums(k - 1, order - 1);
  std::vector<mpz_class> v(static_cast<size_t>(order));
  v[0] = 1;
  for (long n = 1; n < order; ++n) v[n] = c * sig[n];
  return LaurentSeries(0, std::move(v));
}

LaurentSeries eisenstein_kprime(int kprime, long order) {
  if (kprime == 0) return LaurentSeries::constant(1, order);
  return eisenstein(kprime, order);
}

LaurentSeries delta_product(long order) {
  require_order(order, 1);
  long m = order - 1;  // terms q^0..q^{m-1} of prod (1 - q^n)
  std::vector<mpz_class> p(static_cast<size_t>(m));
  p[0] = 1;
  for (long n = 1; n < m; ++n) {
    for (long i = m - 1; i >= n; --i) p[i] -= p[i - n];
  }
  LaurentSeries eta(0, std::move(p));
  return pow(eta, 24).shifted(1);
}

LaurentSeries delta_eisenstein(long order) {
  require_order(order, 1);
  LaurentSeries e4 = eisenstein(4, order);
  LaurentSeries e6 = eisenstein(6, order);
  LaurentSeries num = pow(e4, 3) - e6 * e6;
  return divide_exact(num, 1728).normalized();
}

LaurentSeries j_series(long order) {
  require_order(order, -1);
  LaurentSeries e4 = eisenstein(4, order + 1);
  LaurentSeries d = delta_product(order + 2);
  return pow(e4, 3) * inverse(d);
}

LaurentSeries J_series(long order) {
  require_order(order, 0);
  return j_series(order - 1).shifted(1);
}

LaurentSeries series_basic(SeriesName name, long order, int kprime) {
  switch (name) {
    case SeriesName::E4: return eisenstein(4, order);
    case SeriesName::E6: return eisenstein(6, order);
    case SeriesName::E8: return eisenstein(8, order);
    case SeriesName::E10: return eisenstein(10, order);
    case SeriesName::E14: return eisenstein(14, order);
    case SeriesName::Delta: return delta_product(order);
    case SeriesName::J: return j_series(order);
    case SeriesName::InvDelta:
      require_order(order, -1);
      return inverse(delta_product(order + 2));
    case SeriesName::InvE:
      if (kprime != 0 && kprime != 4 && kprime != 6 && kprime != 8 && kprime != 10 && kprime != 14) {
        throw std::invalid_argument("InvE needs k' in {0,4,6,8,10,14}");
      }
      return inverse(eisenstein_kprime(kprime, order));
  }
  throw std::invalid_argument("unsupported series name");
}

SeriesName parse_series_name(const std::string& s) {
  if (s == "E4") return SeriesName::E4;
  if (s == "E6") return SeriesName::E6;
  if (s == "E8") return SeriesName::E8;
  if (s == "E10") return SeriesName::E10;
  if (s == "E14") return SeriesName::E14;
  if (s == "Delta") return SeriesName::Delta;
  if (s == "j") return SeriesName::J;
  if (s == "InvDelta") return SeriesName::InvDelta;
  if (s == "InvE") return SeriesName::InvE;
  throw std::invalid_argument("unsupported series name: " + s);
}

std::string series_name_string(SeriesName name, int kprime) {
  switch (name) {
    case SeriesName::E4: return "E4";
    case SeriesName::E6: return "E6";
    case SeriesName::E8: return "E8";
    case SeriesName::E10: return "E10";
    case SeriesName::E14: return "E14";
    case SeriesName::Delta: return "Delta";
    case SeriesName::J: return "j";
    case SeriesName::InvDelta: return "InvDelta";
    case SeriesName::InvE: return "InvE" + std::to_string(kprime);
  }
  return "?";
}

std::vector<mpz_class> j_power_row(long s, const std::vector<mpz_class>& J) {
  if (static_cast<long>(J.size()) < s + 1) throw std::invalid_argument("j_power_row: J too short");
  std::vector<mpz_class> g(static_cast<size_t>(s) + 1);
  g[0] = 1;
  mpz_class acc, w;
  for (long n = 1; n <= s; ++n) {
    acc = 0;
    for (long i = 1; i <= n; ++i) {
      // n g_n = sum ((s+1) i - n) J_i g_{n-i}
      long f = (s + 1) * i - n;
      w = J[i] * f;
      mpz_addmul(acc.get_mpz_t(), w.get_mpz_t(), g[n - i].get_mpz_t());
    }
    mpz_divexact_ui(g[n].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
  }
  return g;
}

mpz_class c_coeff(long r, long n) {
  if (r < 0) throw std::invalid_argument("c_coeff: r must be nonnegative");
  if (n < -r) throw std::invalid_argument("c_coeff: n < -r");
  if (r == 0) return n == 0 ? 1 : 0;
  LaurentSeries J = J_series(n + r + 1);
  return pow(J, r).at(n + r);
}

std::vector<mpz_class> d_coeffs(const mpz_class& ell, int kprime, long dmax) {
  if (dmax < 0) throw std::invalid_argument("d_coeffs: negative degree");
  // (q^{-1} Delta)^{-l} = prod (1 - q^n)^{-24 l}; its log-derivative gives
  // n g_n = 24 l sum_{i=1}^n sigma(i) g_{n-i}.
  auto sig = divisor_sums(1, dmax);
  std::vector<mpz_class> g(static_cast<size_t>(dmax) + 1);
  g[0] = 1;
  mpz_class c = 24 * ell, acc;
  for (long n = 1; n <= dmax; ++n) {
    acc = 0;
    for (long i = 1; i <= n; ++i) mpz_addmul(acc.get_mpz_t(), sig[i].get_mpz_t(), g[n - i].get_mpz_t());
    acc *= c;
    mpz_divexact_ui(g[n].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
  }
  if (kprime == 0) return g;
  LaurentSeries inv = series_basic(SeriesName::InvE, dmax + 1, kprime);
  return (LaurentSeries(0, std::move(g)) * inv).coeffs();
}

mpz_class d_coeff(const mpz_class& ell, int kprime, long d) { return d_coeffs(ell, kprime, d)[static_cast<size_t>(d)]; }

JPowerTable::JPowerTable(long smax) {
  if (smax < 0) throw std::invalid_argument("JPowerTable: negative size");
  auto J = J_series(smax + 1).coeffs();
  rows_.reserve(static_cast<size_t>(smax) + 1);
  for (long s = 0; s <= smax; ++s) rows_.push_back(j_power_row(s, J));
}

void write_series_file(const std::string& path, const std::string& name, const LaurentSeries& s) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << name << ' ' << s.order() << ' ' << s.lead() << '\n';
    for (const auto& c : s.coeffs()) out << c.get_str() << '\n';
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw std::runtime_error("cannot publish " + path);
}

LaurentSeries read_series_file(const std::string& path, std::string* name) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string nm;
  long order = 0, lead = 0;
  if (!(in >> nm >> order >> lead)) throw std::runtime_error("bad series header in " + path);
  if (order < lead) throw std::runtime_error("bad series header in " + path);
  std::vector<mpz_class> v(static_cast<size_t>(order - lead));
  std::string tok;
  for (auto& c : v) {
    if (!(in >> tok)) throw std::runtime_error("truncated series file " + path);
    c = mpz_class(tok);
  }
  if (name) *name = nm;
  return LaurentSeries(lead, std::move(v));
}

}  // namespace mfz
