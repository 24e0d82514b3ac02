#pragma once

// Truncated formal power series over exact rationals, differential-operator
// expressions, Wronskians and the linear-recurrence criterion.

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

namespace veq {

using Rational = mpq_class;

/// c_0 + c_1 x + ... + c_{N-1} x^{N-1} + O(x^N). Every coefficient below
/// the precision is known exactly; nothing is known past it.
class TruncatedSeries {
 public:
  /// Precision is coeffs.size(); throws PrecisionExhausted when empty.
  explicit TruncatedSeries(std::vector<Rational> coeffs);

  static TruncatedSeries zero(std::size_t precision);
  /// Polynomial p (coefficients from degree 0) known to the given precision.
  static TruncatedSeries polynomial(const std::vector<Rational>& p, std::size_t precision);

  std::size_t precision() const noexcept { return coeffs_.size(); }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  const Rational& operator[](std::size_t k) const { return coeffs_.at(k); }

  TruncatedSeries truncate(std::size_t precision) const;
  /// x^j f, known to precision N + j.
  TruncatedSeries shift(std::size_t j) const;
  bool is_zero() const;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<Rational> coeffs_;
};

/// Sums and products are truncated to the smaller precision.
TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(const Rational& c, const TruncatedSeries& a);

/// (Σ a_n x^n)' = Σ (n+1) a_{n+1} x^n, one coefficient shorter.
TruncatedSeries derivative(const TruncatedSeries& f);

/// Zero up to `precision`, or the index of the first nonzero coefficient.
struct ZeroStatus {
  bool zero = false;
  std::size_t precision = 0;
  std::size_t witness = 0;
};

ZeroStatus zero_status(const TruncatedSeries& f);

/// Expression over constant maps, the identity, D, sums, products and
/// composition. Constant leaves are polynomials in x with rational
/// coefficients, so multiplication by x^j is expressible.
class DiffOp {
 public:
  enum class Kind { Const, Id, D, Add, Mul, Compose };

  static DiffOp constant(std::vector<Rational> poly);
  static DiffOp identity();
  static DiffOp d();
  static DiffOp add(DiffOp a, DiffOp b);
  static DiffOp mul(DiffOp a, DiffOp b);
  /// a after b.
  static DiffOp compose(DiffOp a, DiffOp b);

  Kind kind() const noexcept { return node_->kind; }
  const std::vector<Rational>& poly() const noexcept { return node_->poly; }
  const DiffOp& left() const { return *node_->left; }
  const DiffOp& right() const { return *node_->right; }

 private:
  struct Node {
    Kind kind = Kind::Id;
    std::vector<Rational> poly;
    std::shared_ptr<const DiffOp> left, right;
  };
  explicit DiffOp(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Tree evaluation; constants are materialized at their argument's
/// precision and each D consumes one coefficient.
TruncatedSeries apply_op(const DiffOp& t, const TruncatedSeries& f);

/// det of the n×n matrix whose row i holds the i-th derivatives, at
/// precision (min input precision) - (n-1).
TruncatedSeries wronskian(const std::vector<TruncatedSeries>& fs);

struct RecurrenceTest {
  ZeroStatus status;
  TruncatedSeries wronskian;
};

/// W((f)^(n), (x f)^(n), ..., (x^n f)^(n)); needs precision >= 2n+2.
RecurrenceTest is_linear_recurrence(const TruncatedSeries& f, std::size_t n);

struct RecurrenceEquivalence {
  bool holds = false;        // both sides agree that the recurrence holds
  std::size_t window = 0;    // k = 0 .. window-1 were compared
};

/// a_0 f_k + ... + a_n f_{k+n} = 0 against ((a_0 x^n + ... + a_n) f)^(n) = 0,
/// index by index. Throws InternalEquivalenceViolation if they disagree.
RecurrenceEquivalence recurrence_equivalence_check(const TruncatedSeries& f, const std::vector<Rational>& a);

struct MonotonicityReport {
  ZeroStatus antecedent;  // W(T_1 f, ..., T_n f)
  ZeroStatus consequent;  // W(T_1 f, ..., T_{n+1} f)
  bool counterexample_at_precision = false;
};

/// ops holds T_1 .. T_{n+1}.
MonotonicityReport wronskian_monotonicity_check(const std::vector<DiffOp>& ops, const TruncatedSeries& f);

/// p(x)/q(x) to the given precision; q(0) must be nonzero.
TruncatedSeries expand_rational(const std::vector<Rational>& p, const std::vector<Rational>& q, std::size_t precision);
/// f_k = c_1 f_{k-1} + ... + c_m f_{k-m} from f_0 .. f_{m-1}.
TruncatedSeries expand_recurrence(const std::vector<Rational>& init, const std::vector<Rational>& coeffs,
                                  std::size_t precision);

/// Parses "3", "-1/2"; throws ParseError.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);
/// "[c0, c1, ...] + O(x^N)"
std::string to_string(const TruncatedSeries& f);
/// "comp(D, mul(const(0,1), id))"
std::string to_string(const DiffOp& t);
/// Inverse of to_string(DiffOp); throws ParseError.
DiffOp parse_diffop(const std::string& text);

}  // namespace veq
