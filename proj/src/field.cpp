#include "p67/field.hpp"

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace p67 {

namespace {

mpz_class mod_floor(const mpz_class& v, const mpz_class& p) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return r;
}

mpz_class powm(const mpz_class& base, const mpz_class& exp, const mpz_class& mod) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

bool miller_rabin(const mpz_class& n, const mpz_class& a) {
  // n odd, 1 < a < n; returns false when a witnesses compositeness
  mpz_class d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  mpz_class x = powm(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = mod_floor(x * x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool is_prime_mpz(const mpz_class& n) {
  if (n < 2) return false;
  static const std::array<unsigned long, 12> kBases = {2,  3,  5,  7,  11, 13,
                                                       17, 19, 23, 29, 31, 37};
  for (unsigned long b : kBases) {
    if (n == b) return true;
    if (mpz_tdiv_ui(n.get_mpz_t(), b) == 0) return false;
  }
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
    // these twelve bases are a complete witness set below 2^64
    for (unsigned long b : kBases) {
      if (!miller_rabin(n, b)) return false;
    }
    return true;
  }
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

// ---- bounded factorization for squarefree cores ----

constexpr unsigned long kTrialLimit = 100000;
constexpr long kPollardBudget = 20000000;

mpz_class pollard_brent(const mpz_class& n, long& budget) {
  // Brent's cycle variant of Pollard rho with deterministic restarts.
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, d = 1, x, ys, q = 1;
    unsigned long r = 1;
    const unsigned long batch = 128;
    while (d == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = mod_floor(y * y + c, n);
      for (unsigned long k = 0; k < r && d == 1; k += batch) {
        ys = y;
        unsigned long steps = std::min(batch, r - k);
        if ((budget -= static_cast<long>(steps)) <= 0)
          throw FactorizationLimit("factor budget exhausted");
        for (unsigned long i = 0; i < steps; ++i) {
          y = mod_floor(y * y + c, n);
          q = mod_floor(q * (x - y), n);
        }
        d = gcd(q, n);
      }
      r *= 2;
    }
    if (d == n) {
      do {
        if (budget-- <= 0) throw FactorizationLimit("factor budget exhausted");
        ys = mod_floor(ys * ys + c, n);
        d = gcd(mpz_class(x - ys), n);
      } while (d == 1);
    }
    if (d != n) return d;
    // cycle collapsed for this increment; retry with the next one
  }
}

void factor_into(mpz_class n, std::map<mpz_class, unsigned long>& out, long& budget) {
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[p];
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
  }
  for (unsigned long p = 7, step = 4; p <= kTrialLimit; p += step, step = 6 - step) {
    if (n == 1) return;
    if (mpz_cmp_ui(n.get_mpz_t(), p * p) < 0) {
      ++out[n];
      return;
    }
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[p];
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
  }
  std::vector<mpz_class> stack;
  if (n > 1) stack.push_back(n);
  while (!stack.empty()) {
    mpz_class m = stack.back();
    stack.pop_back();
    if (is_prime_mpz(m)) {
      ++out[m];
      continue;
    }
    if (mpz_perfect_power_p(m.get_mpz_t())) {
      for (unsigned long k = 2;; ++k) {
        mpz_class root;
        if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k) != 0) {
          for (unsigned long i = 0; i < k; ++i) stack.push_back(root);
          break;
        }
      }
      continue;
    }
    mpz_class d = pollard_brent(m, budget);
    stack.push_back(d);
    stack.push_back(mpz_class(m / d));
  }
}

// ---- component arithmetic in a base field ----
// Components are stored as mpq_class: arbitrary canonical rationals in
// characteristic zero, residue-over-one in a prime field.

struct CompOps {
  bool modular;
  mpz_class p;

  mpq_class canon_int(const mpz_class& v) const {
    if (!modular) return mpq_class(v);
    return mpq_class(mod_floor(v, p));
  }
  mpq_class canon_rat(const mpq_class& v) const {
    if (!modular) {
      mpq_class c = v;
      c.canonicalize();
      return c;
    }
    mpz_class den = mod_floor(v.get_den(), p);
    if (den == 0) throw DivisionByZero("denominator divisible by p");
    mpz_class dinv;
    mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    return mpq_class(mod_floor(mod_floor(v.get_num(), p) * dinv, p));
  }
  mpq_class add(const mpq_class& x, const mpq_class& y) const {
    if (!modular) return x + y;
    return mpq_class(mod_floor(x.get_num() + y.get_num(), p));
  }
  mpq_class sub(const mpq_class& x, const mpq_class& y) const {
    if (!modular) return x - y;
    return mpq_class(mod_floor(x.get_num() - y.get_num(), p));
  }
  mpq_class mul(const mpq_class& x, const mpq_class& y) const {
    if (!modular) return x * y;
    return mpq_class(mod_floor(x.get_num() * y.get_num(), p));
  }
  mpq_class neg(const mpq_class& x) const {
    if (!modular) return mpq_class(-x);
    return mpq_class(mod_floor(mpz_class(-x.get_num()), p));
  }
  mpq_class inv(const mpq_class& x) const {
    if (x == 0) throw DivisionByZero("inverse of zero");
    if (!modular) return mpq_class(1 / x);
    mpz_class r;
    mpz_invert(r.get_mpz_t(), x.get_num().get_mpz_t(), p.get_mpz_t());
    return mpq_class(r);
  }
  mpq_class div(const mpq_class& x, const mpq_class& y) const { return mul(x, inv(y)); }

  mpz_class tonelli_shanks(const mpz_class& a) const {
    if (mod_floor(p, 4) == 3) return powm(a, (p + 1) / 4, p);
    mpz_class q = p - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);
    mpz_class z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
    mpz_class m(s), c = powm(z, q, p);
    mpz_class t = powm(a, q, p);
    mpz_class r = powm(a, (q + 1) / 2, p);
    while (t != 1) {
      mpz_class t2 = t, i = 0;
      while (t2 != 1) {
        t2 = mod_floor(t2 * t2, p);
        ++i;
      }
      mpz_class b = c;
      for (mpz_class j = 0; j < m - i - 1; ++j) b = mod_floor(b * b, p);
      m = i;
      c = mod_floor(b * b, p);
      t = mod_floor(t * c, p);
      r = mod_floor(r * b, p);
    }
    return r;
  }

  // square root inside the base field, or nullopt
  std::optional<mpq_class> sqrt_opt(const mpq_class& x) const {
    if (x == 0) return mpq_class(0);
    if (!modular) {
      if (x < 0) return std::nullopt;
      const mpz_class& num = x.get_num();
      const mpz_class& den = x.get_den();
      if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
      mpz_class rn, rd;
      mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
      mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
      return mpq_class(rn, rd);
    }
    const mpz_class& a = x.get_num();
    if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1) return std::nullopt;
    return mpq_class(tonelli_shanks(a));
  }

  // canonical positivity used to pick the principal square root
  bool is_canonical_positive(const mpq_class& x) const {
    if (!modular) return x > 0;
    return x.get_num() != 0 && x.get_num() * 2 < p;
  }

  std::string text(const mpq_class& x) const {
    if (!modular && x.get_den() != 1)
      return x.get_num().get_str() + "/" + x.get_den().get_str();
    return x.get_num().get_str();
  }
};

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  return is_prime_mpz(mpz_class(static_cast<unsigned long>(n)));
}

mpz_class squarefree_core(const mpz_class& n, mpz_class* sqrt_part) {
  if (n == 0) throw InvalidField("squarefree core of zero");
  std::map<mpz_class, unsigned long> fac;
  long budget = kPollardBudget;
  factor_into(abs(n), fac, budget);
  mpz_class core = n < 0 ? -1 : 1;
  mpz_class s = 1;
  for (const auto& [prime, e] : fac) {
    if (e % 2 == 1) core *= prime;
    for (unsigned long i = 0; i < e / 2; ++i) s *= prime;
  }
  if (sqrt_part) *sqrt_part = s;
  return core;
}

// ---- FieldDescriptor ----

struct FieldDescriptor::Data {
  Kind kind;
  Kind base_kind;
  mpz_class p;  // 0 in characteristic zero
  mpz_class d;  // 0 unless quadratic
  std::shared_ptr<const Data> base_data;
};

namespace {

CompOps comp_ops(const FieldDescriptor& f) {
  return CompOps{f.base_kind() == FieldDescriptor::Kind::prime, f.characteristic()};
}

}  // namespace

FieldDescriptor FieldDescriptor::rationals() {
  static const auto data = std::make_shared<const Data>(
      Data{Kind::rationals, Kind::rationals, mpz_class(0), mpz_class(0), nullptr});
  return FieldDescriptor(data);
}

FieldDescriptor FieldDescriptor::prime(std::uint64_t p) {
  if (p <= 3) throw InvalidField("prime modulus must exceed 3");
  if (!is_prime_u64(p)) throw InvalidField("modulus is not prime");
  mpz_class pz(static_cast<unsigned long>(p));
  return FieldDescriptor(std::make_shared<const Data>(
      Data{Kind::prime, Kind::prime, std::move(pz), mpz_class(0), nullptr}));
}

FieldDescriptor FieldDescriptor::quadratic(const FieldDescriptor& base, const Scalar& d) {
  if (base.is_extension())
    throw ExtensionDepthExceeded("only one quadratic layer is supported");
  if (d.field() != base) throw FieldMismatch("discriminant lies in a different field");
  if (d.is_zero()) throw InvalidField("discriminant must be nonzero");
  mpz_class core;
  if (base.kind() == Kind::rationals) {
    core = squarefree_core(mpz_class(d.comp_a().get_num() * d.comp_a().get_den()));
    if (core == 1) throw InvalidField("discriminant is a square");
  } else {
    core = d.comp_a().get_num();
    if (mpz_legendre(core.get_mpz_t(), base.characteristic().get_mpz_t()) != -1)
      throw InvalidField("discriminant is a square");
  }
  return FieldDescriptor(std::make_shared<const Data>(Data{
      Kind::quadratic, base.kind(), base.characteristic(), std::move(core), base.data_}));
}

FieldDescriptor::Kind FieldDescriptor::kind() const { return data_->kind; }
FieldDescriptor::Kind FieldDescriptor::base_kind() const { return data_->base_kind; }
const mpz_class& FieldDescriptor::characteristic() const { return data_->p; }
const mpz_class& FieldDescriptor::discriminant_raw() const { return data_->d; }

FieldDescriptor FieldDescriptor::base() const {
  if (!is_extension()) throw InvalidField("base() on a non-extension field");
  return FieldDescriptor(data_->base_data);
}

Scalar FieldDescriptor::discriminant() const {
  if (!is_extension()) throw InvalidField("discriminant() on a non-extension field");
  return Scalar(base(), mpq_class(data_->d), mpq_class(0));
}

bool FieldDescriptor::operator==(const FieldDescriptor& o) const {
  if (data_ == o.data_) return true;
  return data_->kind == o.data_->kind && data_->base_kind == o.data_->base_kind &&
         data_->p == o.data_->p && data_->d == o.data_->d;
}

std::string FieldDescriptor::to_string() const {
  switch (kind()) {
    case Kind::rationals:
      return "Q";
    case Kind::prime:
      return "F_" + data_->p.get_str();
    case Kind::quadratic: {
      std::string b = data_->base_kind == Kind::rationals ? "Q" : "F_" + data_->p.get_str();
      return b + "(sqrt(" + data_->d.get_str() + "))";
    }
  }
  return "?";
}

std::string FieldDescriptor::key_tag() const {
  switch (kind()) {
    case Kind::rationals:
      return "r";
    case Kind::prime:
      return "p" + data_->p.get_str();
    case Kind::quadratic: {
      std::string b = data_->base_kind == Kind::rationals ? "r" : "p" + data_->p.get_str();
      return "x[" + b + ";" + data_->d.get_str() + "]";
    }
  }
  return "?";
}

// ---- Scalar ----

Scalar Scalar::zero(const FieldDescriptor& f) { return Scalar(f, mpq_class(0), mpq_class(0)); }

Scalar Scalar::one(const FieldDescriptor& f) { return Scalar(f, mpq_class(1), mpq_class(0)); }

Scalar Scalar::of_int(const FieldDescriptor& f, long v) {
  return Scalar(f, comp_ops(f).canon_int(mpz_class(v)), mpq_class(0));
}

Scalar Scalar::of_rational(const FieldDescriptor& f, const mpq_class& v) {
  return Scalar(f, comp_ops(f).canon_rat(v), mpq_class(0));
}

Scalar Scalar::extension(const FieldDescriptor& f, const Scalar& a, const Scalar& b) {
  if (!f.is_extension()) throw InvalidField("extension() needs a quadratic field");
  if (a.field() != f.base() || b.field() != f.base())
    throw FieldMismatch("components must lie in the base field");
  return Scalar(f, a.a_, b.a_);
}

bool Scalar::is_zero() const { return a_ == 0 && b_ == 0; }
bool Scalar::is_one() const { return a_ == 1 && b_ == 0; }

void Scalar::require_same_field(const Scalar& o) const {
  if (field_ != o.field_)
    throw FieldMismatch(field_.to_string() + " vs " + o.field_.to_string());
}

Scalar Scalar::operator-() const {
  CompOps ops = comp_ops(field_);
  return Scalar(field_, ops.neg(a_), ops.neg(b_));
}

Scalar Scalar::operator+(const Scalar& o) const {
  require_same_field(o);
  CompOps ops = comp_ops(field_);
  return Scalar(field_, ops.add(a_, o.a_), ops.add(b_, o.b_));
}

Scalar Scalar::operator-(const Scalar& o) const {
  require_same_field(o);
  CompOps ops = comp_ops(field_);
  return Scalar(field_, ops.sub(a_, o.a_), ops.sub(b_, o.b_));
}

Scalar Scalar::operator*(const Scalar& o) const {
  require_same_field(o);
  CompOps ops = comp_ops(field_);
  if (!field_.is_extension()) return Scalar(field_, ops.mul(a_, o.a_), mpq_class(0));
  mpq_class d = ops.canon_int(field_.discriminant_raw());
  mpq_class ra = ops.add(ops.mul(a_, o.a_), ops.mul(d, ops.mul(b_, o.b_)));
  mpq_class rb = ops.add(ops.mul(a_, o.b_), ops.mul(b_, o.a_));
  return Scalar(field_, std::move(ra), std::move(rb));
}

Scalar Scalar::inv() const {
  CompOps ops = comp_ops(field_);
  if (!field_.is_extension()) return Scalar(field_, ops.inv(a_), mpq_class(0));
  mpq_class d = ops.canon_int(field_.discriminant_raw());
  mpq_class n = ops.sub(ops.mul(a_, a_), ops.mul(d, ops.mul(b_, b_)));
  if (n == 0) throw DivisionByZero("inverse of zero");
  return Scalar(field_, ops.div(a_, n), ops.neg(ops.div(b_, n)));
}

Scalar Scalar::operator/(const Scalar& o) const {
  require_same_field(o);
  return *this * o.inv();
}

bool Scalar::operator==(const Scalar& o) const {
  require_same_field(o);
  return a_ == o.a_ && b_ == o.b_;
}

Scalar Scalar::conjugate() const {
  if (!field_.is_extension()) return *this;
  return Scalar(field_, a_, comp_ops(field_).neg(b_));
}

Scalar Scalar::norm() const {
  if (!field_.is_extension()) return *this;
  CompOps ops = comp_ops(field_);
  mpq_class d = ops.canon_int(field_.discriminant_raw());
  return Scalar(field_.base(), ops.sub(ops.mul(a_, a_), ops.mul(d, ops.mul(b_, b_))),
                mpq_class(0));
}

namespace {

// In-field square root of a + b*sqrt(d), nullopt when none exists.
std::optional<std::pair<mpq_class, mpq_class>> sqrt_components(const FieldDescriptor& f,
                                                               const mpq_class& a,
                                                               const mpq_class& b) {
  CompOps ops = comp_ops(f);
  if (!f.is_extension()) {
    auto r = ops.sqrt_opt(a);
    if (!r) return std::nullopt;
    return std::make_pair(*r, mpq_class(0));
  }
  mpq_class d = ops.canon_int(f.discriminant_raw());
  if (b == 0) {
    if (auto r = ops.sqrt_opt(a)) return std::make_pair(*r, mpq_class(0));
    // a = (t*sqrt(d))^2 with t^2 = a/d
    if (auto t = ops.sqrt_opt(ops.div(a, d))) return std::make_pair(mpq_class(0), *t);
    return std::nullopt;
  }
  // Solve (u + v sqrt(d))^2 = a + b sqrt(d): u^2 + d v^2 = a, 2uv = b. With
  // n = sqrt(a^2 - d b^2) in the base field, u^2 = (a +- n)/2, and a sign
  // making u^2 a base square exists exactly when the root exists.
  mpq_class nn = ops.sub(ops.mul(a, a), ops.mul(d, ops.mul(b, b)));
  auto n = ops.sqrt_opt(nn);
  if (!n) return std::nullopt;
  mpq_class two = ops.canon_int(2);
  for (int sign = 0; sign < 2; ++sign) {
    mpq_class u2 = ops.div(sign == 0 ? ops.add(a, *n) : ops.sub(a, *n), two);
    auto u = ops.sqrt_opt(u2);
    if (!u || *u == 0) continue;
    mpq_class v = ops.div(b, ops.mul(two, *u));
    if (ops.add(ops.mul(*u, *u), ops.mul(d, ops.mul(v, v))) == a &&
        ops.mul(two, ops.mul(*u, v)) == b)
      return std::make_pair(*u, v);
  }
  return std::nullopt;
}

}  // namespace

bool Scalar::is_square() const { return sqrt_components(field_, a_, b_).has_value(); }

Scalar Scalar::sqrt(const Scalar& s) {
  const FieldDescriptor& f = s.field();
  CompOps ops = comp_ops(f);
  if (auto root = sqrt_components(f, s.a_, s.b_)) {
    Scalar y(f, std::move(root->first), std::move(root->second));
    const mpq_class& lead = y.a_ != 0 ? y.a_ : y.b_;
    if (lead != 0 && !ops.is_canonical_positive(lead)) return -y;
    return y;
  }
  if (f.is_extension())
    throw ExtensionDepthExceeded("sqrt would need a second quadratic layer");
  if (f.kind() == FieldDescriptor::Kind::rationals) {
    // num/den = (sq/den)^2 * core with core the squarefree part of num*den
    mpz_class sq;
    mpz_class core = squarefree_core(mpz_class(s.a_.get_num() * s.a_.get_den()), &sq);
    FieldDescriptor ext =
        FieldDescriptor::quadratic(f, Scalar::of_rational(f, mpq_class(core)));
    mpq_class coeff(sq, s.a_.get_den());
    coeff.canonicalize();
    return Scalar(ext, mpq_class(0), std::move(coeff));
  }
  // prime field, non-residue: adjoin the root of the value itself
  FieldDescriptor ext = FieldDescriptor::quadratic(f, s);
  return Scalar(ext, mpq_class(0), mpq_class(1));
}

Scalar Scalar::embedded_into(const FieldDescriptor& f) const {
  if (f == field_) return *this;
  if (f.is_extension() && f.base() == field_) return Scalar(f, a_, mpq_class(0));
  throw FieldMismatch("no embedding of " + field_.to_string() + " into " + f.to_string());
}

std::string Scalar::canonical_key() const {
  CompOps ops = comp_ops(field_);
  std::string k = field_.key_tag() + ":" + ops.text(a_);
  if (field_.is_extension()) k += "|" + ops.text(b_);
  return k;
}

std::string Scalar::to_text() const {
  CompOps ops = comp_ops(field_);
  if (!field_.is_extension()) return ops.text(a_);
  return ops.text(a_) + "+" + ops.text(b_) + "*sqrt(" + field_.discriminant_raw().get_str() +
         ")";
}

}  // namespace p67
