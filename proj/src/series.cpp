#include "veq/series.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "veq/error.hpp"

namespace veq {

TruncatedSeries::TruncatedSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) fail(ErrorKind::PrecisionExhausted, "a series needs precision at least 1");
}

TruncatedSeries TruncatedSeries::zero(std::size_t precision) {
  return TruncatedSeries(std::vector<Rational>(precision));
}

TruncatedSeries TruncatedSeries::polynomial(const std::vector<Rational>& p, std::size_t precision) {
  std::vector<Rational> c(precision);
  for (std::size_t k = 0; k < std::min(precision, p.size()); ++k) c[k] = p[k];
  return TruncatedSeries(std::move(c));
}

TruncatedSeries TruncatedSeries::truncate(std::size_t precision) const {
  if (precision > coeffs_.size())
    fail(ErrorKind::PrecisionExhausted, "cannot extend a series known to precision " + std::to_string(coeffs_.size()));
  return TruncatedSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + precision));
}

TruncatedSeries TruncatedSeries::shift(std::size_t j) const {
  std::vector<Rational> c(j);
  c.insert(c.end(), coeffs_.begin(), coeffs_.end());
  return TruncatedSeries(std::move(c));
}

bool TruncatedSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t n = std::min(a.precision(), b.precision());
  std::vector<Rational> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = a[k] + b[k];
  return TruncatedSeries(std::move(c));
}

TruncatedSeries operator-(const TruncatedSeries& a) {
  std::vector<Rational> c(a.coeffs());
  for (auto& x : c) x = -x;
  return TruncatedSeries(std::move(c));
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t n = std::min(a.precision(), b.precision());
  std::vector<Rational> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
  }
  return TruncatedSeries(std::move(c));
}

TruncatedSeries operator*(const Rational& s, const TruncatedSeries& a) {
  std::vector<Rational> c(a.coeffs());
  for (auto& x : c) x *= s;
  return TruncatedSeries(std::move(c));
}

TruncatedSeries derivative(const TruncatedSeries& f) {
  if (f.precision() < 2) fail(ErrorKind::PrecisionExhausted, "derivative needs precision at least 2");
  std::vector<Rational> c(f.precision() - 1);
  for (std::size_t n = 0; n < c.size(); ++n) c[n] = Rational(static_cast<unsigned long>(n + 1)) * f[n + 1];
  return TruncatedSeries(std::move(c));
}

ZeroStatus zero_status(const TruncatedSeries& f) {
  for (std::size_t k = 0; k < f.precision(); ++k)
    if (f[k] != 0) return {false, f.precision(), k};
  return {true, f.precision(), 0};
}

DiffOp DiffOp::constant(std::vector<Rational> poly) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->poly = std::move(poly);
  return DiffOp(n);
}

DiffOp DiffOp::identity() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Id;
  return DiffOp(n);
}

DiffOp DiffOp::d() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::D;
  return DiffOp(n);
}

DiffOp DiffOp::add(DiffOp a, DiffOp b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Add;
  n->left = std::make_shared<const DiffOp>(std::move(a));
  n->right = std::make_shared<const DiffOp>(std::move(b));
  return DiffOp(n);
}

DiffOp DiffOp::mul(DiffOp a, DiffOp b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Mul;
  n->left = std::make_shared<const DiffOp>(std::move(a));
  n->right = std::make_shared<const DiffOp>(std::move(b));
  return DiffOp(n);
}

DiffOp DiffOp::compose(DiffOp a, DiffOp b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Compose;
  n->left = std::make_shared<const DiffOp>(std::move(a));
  n->right = std::make_shared<const DiffOp>(std::move(b));
  return DiffOp(n);
}

TruncatedSeries apply_op(const DiffOp& t, const TruncatedSeries& f) {
  switch (t.kind()) {
    case DiffOp::Kind::Const:
      return TruncatedSeries::polynomial(t.poly(), f.precision());
    case DiffOp::Kind::Id:
      return f;
    case DiffOp::Kind::D:
      return derivative(f);
    case DiffOp::Kind::Add:
      return apply_op(t.left(), f) + apply_op(t.right(), f);
    case DiffOp::Kind::Mul:
      return apply_op(t.left(), f) * apply_op(t.right(), f);
    case DiffOp::Kind::Compose:
      return apply_op(t.left(), apply_op(t.right(), f));
  }
  fail(ErrorKind::InvariantError, "unknown operator node");
}

TruncatedSeries wronskian(const std::vector<TruncatedSeries>& fs) {
  if (fs.empty()) fail(ErrorKind::EmptyList, "Wronskian of an empty list");
  const std::size_t n = fs.size();
  if (n > 16) fail(ErrorKind::BoundsTooLarge, "Wronskian of more than 16 series");
  std::size_t prec = fs[0].precision();
  for (const auto& f : fs) prec = std::min(prec, f.precision());
  if (prec < n) fail(ErrorKind::PrecisionExhausted, "Wronskian of " + std::to_string(n) + " series needs precision " +
                                                        std::to_string(n) + ", have " + std::to_string(prec));
  const std::size_t out = prec - (n - 1);
  // m[i][j] = i-th derivative of fs[j], truncated to the output precision.
  std::vector<std::vector<TruncatedSeries>> m(n);
  for (std::size_t j = 0; j < n; ++j) {
    TruncatedSeries cur = fs[j].truncate(prec);
    for (std::size_t i = 0; i < n; ++i) {
      m[i].push_back(cur.truncate(out));
      if (i + 1 < n) cur = derivative(cur);
    }
  }
  // Laplace expansion along the last used row; minors indexed by column set.
  std::map<unsigned, TruncatedSeries> minor;
  minor.emplace(0u, TruncatedSeries::polynomial({Rational(1)}, out));
  for (std::size_t size = 1; size <= n; ++size) {
    for (unsigned set = 0; set < (1u << n); ++set) {
      if (static_cast<std::size_t>(__builtin_popcount(set)) != size) continue;
      TruncatedSeries acc = TruncatedSeries::zero(out);
      std::size_t pos = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!(set & (1u << j))) continue;
        const auto& rest = minor.at(set & ~(1u << j));
        TruncatedSeries term = m[size - 1][j] * rest;
        acc = ((pos + size - 1) % 2 == 0) ? acc + term : acc - term;
        ++pos;
      }
      minor.emplace(set, std::move(acc));
    }
  }
  return minor.at((1u << n) - 1);
}

RecurrenceTest is_linear_recurrence(const TruncatedSeries& f, std::size_t n) {
  if (f.precision() < 2 * n + 2)
    fail(ErrorKind::PrecisionExhausted, "order " + std::to_string(n) + " needs precision " + std::to_string(2 * n + 2) +
                                            ", have " + std::to_string(f.precision()));
  std::vector<TruncatedSeries> cols;
  for (std::size_t j = 0; j <= n; ++j) {
    TruncatedSeries g = f.shift(j);
    for (std::size_t k = 0; k < n; ++k) g = derivative(g);
    cols.push_back(std::move(g));
  }
  auto w = wronskian(cols);
  return {zero_status(w), w};
}

RecurrenceEquivalence recurrence_equivalence_check(const TruncatedSeries& f, const std::vector<Rational>& a) {
  if (a.empty() || std::all_of(a.begin(), a.end(), [](const Rational& c) { return c == 0; }))
    fail(ErrorKind::AllZeroCoefficients, "recurrence coefficients are all zero");
  const std::size_t n = a.size() - 1;
  if (f.precision() < n + 2)
    fail(ErrorKind::PrecisionExhausted, "order " + std::to_string(n) + " needs precision " + std::to_string(n + 2));
  const std::size_t window = f.precision() - n;
  // Left side: the recurrence on coefficients.
  std::vector<bool> direct(window);
  for (std::size_t k = 0; k < window; ++k) {
    Rational s = 0;
    for (std::size_t i = 0; i <= n; ++i) s += a[i] * f[k + i];
    direct[k] = s == 0;
  }
  // Right side: the n-th derivative of (a_0 x^n + ... + a_n) f.
  std::vector<Rational> poly(n + 1);
  for (std::size_t i = 0; i <= n; ++i) poly[n - i] = a[i];
  TruncatedSeries g = TruncatedSeries::polynomial(poly, f.precision()) * f;
  for (std::size_t k = 0; k < n; ++k) g = derivative(g);
  RecurrenceEquivalence out{true, window};
  for (std::size_t k = 0; k < window; ++k) {
    const bool via_series = g[k] == 0;
    if (via_series != direct[k])
      fail(ErrorKind::InternalEquivalenceViolation, "recurrence and derivative test disagree at index " +
                                                        std::to_string(k));
    out.holds = out.holds && direct[k];
  }
  return out;
}

MonotonicityReport wronskian_monotonicity_check(const std::vector<DiffOp>& ops, const TruncatedSeries& f) {
  if (ops.size() < 2) fail(ErrorKind::EmptyList, "monotonicity needs at least two operators");
  std::vector<TruncatedSeries> cols;
  for (const auto& t : ops) cols.push_back(apply_op(t, f));
  MonotonicityReport rep;
  rep.consequent = zero_status(wronskian(cols));
  cols.pop_back();
  rep.antecedent = zero_status(wronskian(cols));
  rep.counterexample_at_precision = rep.antecedent.zero && !rep.consequent.zero;
  return rep;
}

TruncatedSeries expand_rational(const std::vector<Rational>& p, const std::vector<Rational>& q, std::size_t precision) {
  if (q.empty() || q[0] == 0) fail(ErrorKind::InvalidArgument, "denominator must have a nonzero constant term");
  std::vector<Rational> c(precision);
  for (std::size_t k = 0; k < precision; ++k) {
    Rational s = k < p.size() ? p[k] : Rational(0);
    for (std::size_t i = 1; i <= k && i < q.size(); ++i) s -= q[i] * c[k - i];
    c[k] = s / q[0];
  }
  return TruncatedSeries(std::move(c));
}

TruncatedSeries expand_recurrence(const std::vector<Rational>& init, const std::vector<Rational>& coeffs,
                                  std::size_t precision) {
  if (init.size() < coeffs.size())
    fail(ErrorKind::InvalidArgument, "a recurrence of order " + std::to_string(coeffs.size()) + " needs " +
                                         std::to_string(coeffs.size()) + " initial terms");
  std::vector<Rational> c(precision);
  for (std::size_t k = 0; k < precision; ++k) {
    if (k < init.size()) {
      c[k] = init[k];
      continue;
    }
    for (std::size_t i = 1; i <= coeffs.size(); ++i) c[k] += coeffs[i - 1] * c[k - i];
  }
  return TruncatedSeries(std::move(c));
}

Rational parse_rational(const std::string& text) {
  std::string t = text;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  const auto slash = t.find('/');
  auto digits = [](const std::string& s, bool sign) {
    std::size_t i = (sign && !s.empty() && s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (!digits(t.substr(0, slash), true) || (slash != std::string::npos && !digits(t.substr(slash + 1), false)))
    fail(ErrorKind::ParseError, "'" + text + "' is not a rational number");
  Rational r;
  r.set_str(t, 10);
  if (r.get_den() == 0) fail(ErrorKind::ParseError, "'" + text + "' has a zero denominator");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_string(const TruncatedSeries& f) {
  std::string out = "[";
  for (std::size_t k = 0; k < f.precision(); ++k) out += (k ? ", " : "") + f[k].get_str();
  return out + "] + O(x^" + std::to_string(f.precision()) + ")";
}

std::string to_string(const DiffOp& t) {
  switch (t.kind()) {
    case DiffOp::Kind::Const: {
      std::string out = "const(";
      for (std::size_t k = 0; k < t.poly().size(); ++k) out += (k ? "," : "") + t.poly()[k].get_str();
      return out + ")";
    }
    case DiffOp::Kind::Id:
      return "id";
    case DiffOp::Kind::D:
      return "D";
    case DiffOp::Kind::Add:
      return "add(" + to_string(t.left()) + ", " + to_string(t.right()) + ")";
    case DiffOp::Kind::Mul:
      return "mul(" + to_string(t.left()) + ", " + to_string(t.right()) + ")";
    case DiffOp::Kind::Compose:
      return "comp(" + to_string(t.left()) + ", " + to_string(t.right()) + ")";
  }
  return "?";
}

namespace {

struct OpReader {
  const std::string& text;
  std::size_t pos = 0;

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  [[noreturn]] void bad(const std::string& what) const {
    fail(ErrorKind::ParseError, "operator '" + text + "' at column " + std::to_string(pos + 1) + ": " + what);
  }
  void expect(char c) {
    skip();
    if (pos >= text.size() || text[pos] != c) bad(std::string("expected '") + c + "'");
    ++pos;
  }
  std::string ident() {
    skip();
    const std::size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    return text.substr(start, pos - start);
  }
  DiffOp read() {
    const std::string head = ident();
    if (head == "id") return DiffOp::identity();
    if (head == "D") return DiffOp::d();
    if (head == "const") {
      expect('(');
      std::vector<Rational> poly;
      while (true) {
        skip();
        const std::size_t start = pos;
        while (pos < text.size() && text[pos] != ',' && text[pos] != ')' &&
               !std::isspace(static_cast<unsigned char>(text[pos])))
          ++pos;
        poly.push_back(parse_rational(text.substr(start, pos - start)));
        skip();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        expect(')');
        return DiffOp::constant(std::move(poly));
      }
    }
    if (head == "add" || head == "mul" || head == "comp") {
      expect('(');
      DiffOp a = read();
      expect(',');
      DiffOp b = read();
      expect(')');
      if (head == "add") return DiffOp::add(a, b);
      if (head == "mul") return DiffOp::mul(a, b);
      return DiffOp::compose(a, b);
    }
    bad("expected one of {id, D, const, add, mul, comp}");
  }
};

}  // namespace

DiffOp parse_diffop(const std::string& text) {
  OpReader r{text};
  DiffOp t = r.read();
  r.skip();
  if (r.pos != text.size()) r.bad("trailing input");
  return t;
}

}  // namespace veq
