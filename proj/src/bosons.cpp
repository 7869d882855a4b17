#include "suncs/bosons.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace suncs {

StateVector::StateVector(BasisPtr basis) : basis_(std::move(basis)), amplitudes_(basis_->size()) {}

StateVector::StateVector(BasisPtr basis, std::vector<Complex> amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != basis_->size()) throw BasisMismatchError("StateVector: amplitude count != basis size");
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return std::sqrt(s);
}

bool StateVector::is_zero() const {
  return std::all_of(amplitudes_.begin(), amplitudes_.end(), [](Complex a) { return a == Complex{}; });
}

StateVector& StateVector::operator+=(const StateVector& other) {
  require_same_space(*basis_, *other.basis_);
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) amplitudes_[i] += other.amplitudes_[i];
  return *this;
}

StateVector& StateVector::operator*=(Complex factor) {
  for (auto& a : amplitudes_) a *= factor;
  return *this;
}

StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
StateVector operator*(Complex factor, StateVector v) { return v *= factor; }

double max_abs_diff(const StateVector& a, const StateVector& b) {
  require_same_space(*a.basis(), *b.basis());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Complex inner(const StateVector& a, const StateVector& b) {
  require_same_space(*a.basis(), *b.basis());
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

StateVector normalize(const StateVector& v) {
  const double n = v.norm();
  if (n == 0.0) throw Error("normalize: zero vector");
  return Complex(1.0 / n) * v;
}

StateVector basis_vector(const BasisPtr& basis, std::size_t index) {
  StateVector v(basis);
  v[index] = 1.0;
  return v;
}

void require_same_space(const FockBasis& a, const FockBasis& b) {
  if (&a != &b && !a.same_space(b)) throw BasisMismatchError("operands live on different Fock bases");
}

// Row-by-row CSR assembly; each row's columns must be pushed in any order and
// are sorted and zero-filtered on close.
class CsrBuilder {
 public:
  explicit CsrBuilder(BasisPtr basis) : op_(std::move(basis)) {
    op_.row_ptr_.assign(1, 0);
    op_.row_ptr_.reserve(op_.dim() + 1);
  }
  void push(std::size_t col, Complex value) { row_.emplace_back(col, value); }
  void close_row() {
    std::sort(row_.begin(), row_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t k = 0; k < row_.size();) {
      std::size_t col = row_[k].first;
      Complex sum{};
      for (; k < row_.size() && row_[k].first == col; ++k) sum += row_[k].second;
      if (sum != Complex{}) {
        op_.cols_.push_back(col);
        op_.values_.push_back(sum);
      }
    }
    row_.clear();
    op_.row_ptr_.push_back(op_.cols_.size());
  }
  SparseOperator finish() {
    while (op_.row_ptr_.size() < op_.dim() + 1) close_row();
    return std::move(op_);
  }

 private:
  SparseOperator op_;
  std::vector<std::pair<std::size_t, Complex>> row_;
};

SparseOperator::SparseOperator(BasisPtr basis) : basis_(std::move(basis)), row_ptr_(basis_->size() + 1, 0) {}

SparseOperator SparseOperator::from_triplets(BasisPtr basis, std::vector<Triplet> triplets) {
  const std::size_t n = basis->size();
  for (const auto& t : triplets) {
    if (t.row >= n || t.col >= n) throw Error("SparseOperator: triplet index outside basis");
  }
  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  CsrBuilder builder(std::move(basis));
  std::size_t k = 0;
  for (std::size_t row = 0; row < n; ++row) {
    for (; k < triplets.size() && triplets[k].row == row; ++k) builder.push(triplets[k].col, triplets[k].value);
    builder.close_row();
  }
  return builder.finish();
}

SparseOperator SparseOperator::identity(BasisPtr basis) {
  CsrBuilder builder(basis);
  for (std::size_t i = 0; i < basis->size(); ++i) {
    builder.push(i, 1.0);
    builder.close_row();
  }
  return builder.finish();
}

Complex SparseOperator::at(std::size_t row, std::size_t col) const {
  const auto cols = row_cols(row);
  const auto it = std::lower_bound(cols.begin(), cols.end(), col);
  if (it == cols.end() || *it != col) return {};
  return row_values(row)[static_cast<std::size_t>(it - cols.begin())];
}

double SparseOperator::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<Triplet> SparseOperator::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t r = 0; r < dim(); ++r) {
    const auto cols = row_cols(r);
    const auto vals = row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) out.push_back({r, cols[k], vals[k]});
  }
  return out;
}

SparseOperator compose(const SparseOperator& a, const SparseOperator& b) {
  require_same_space(*a.basis(), *b.basis());
  const std::size_t n = a.dim();
  std::vector<Complex> acc(n);
  std::vector<std::size_t> marker(n, std::numeric_limits<std::size_t>::max());
  std::vector<std::size_t> touched;
  CsrBuilder builder(a.basis());
  for (std::size_t r = 0; r < n; ++r) {
    touched.clear();
    const auto acols = a.row_cols(r);
    const auto avals = a.row_values(r);
    for (std::size_t k = 0; k < acols.size(); ++k) {
      const auto bcols = b.row_cols(acols[k]);
      const auto bvals = b.row_values(acols[k]);
      for (std::size_t j = 0; j < bcols.size(); ++j) {
        const std::size_t c = bcols[j];
        if (marker[c] != r) {
          marker[c] = r;
          acc[c] = {};
          touched.push_back(c);
        }
        acc[c] += avals[k] * bvals[j];
      }
    }
    for (std::size_t c : touched) builder.push(c, acc[c]);
    builder.close_row();
  }
  return builder.finish();
}

SparseOperator add(const SparseOperator& a, const SparseOperator& b, Complex alpha, Complex beta) {
  require_same_space(*a.basis(), *b.basis());
  CsrBuilder builder(a.basis());
  for (std::size_t r = 0; r < a.dim(); ++r) {
    const auto ac = a.row_cols(r);
    const auto av = a.row_values(r);
    const auto bc = b.row_cols(r);
    const auto bv = b.row_values(r);
    for (std::size_t k = 0; k < ac.size(); ++k) builder.push(ac[k], alpha * av[k]);
    for (std::size_t k = 0; k < bc.size(); ++k) builder.push(bc[k], beta * bv[k]);
    builder.close_row();
  }
  return builder.finish();
}

SparseOperator adjoint(const SparseOperator& a) {
  std::vector<Triplet> t = a.triplets();
  for (auto& e : t) {
    std::swap(e.row, e.col);
    e.value = std::conj(e.value);
  }
  return SparseOperator::from_triplets(a.basis(), std::move(t));
}

SparseOperator scale(const SparseOperator& a, Complex factor) {
  return add(a, SparseOperator(a.basis()), factor, 0.0);
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
  return add(compose(a, b), compose(b, a), 1.0, -1.0);
}

StateVector apply(const SparseOperator& a, const StateVector& v) {
  require_same_space(*a.basis(), *v.basis());
  StateVector out(v.basis());
  for (std::size_t r = 0; r < a.dim(); ++r) {
    const auto cols = a.row_cols(r);
    const auto vals = a.row_values(r);
    Complex s{};
    for (std::size_t k = 0; k < cols.size(); ++k) s += vals[k] * v[cols[k]];
    out[r] = s;
  }
  return out;
}

double max_abs_diff(const SparseOperator& a, const SparseOperator& b) { return add(a, b, 1.0, -1.0).max_abs(); }

bool approx_equal(const SparseOperator& a, const SparseOperator& b, double rel_tol) {
  const double scale_ab = std::max({a.max_abs(), b.max_abs(), 1.0});
  return max_abs_diff(a, b) <= rel_tol * scale_ab;
}

namespace {

std::size_t flat_mode(const FockBasis& basis, int rep, std::size_t mode) {
  const auto& layout = basis.layout();
  const std::size_t pos = layout.rep_position(rep);
  if (mode >= layout.mode_count(pos)) {
    throw Error("invalid mode index " + std::to_string(mode) + " for rep F=" + std::to_string(rep) + " with " +
                std::to_string(layout.mode_count(pos)) + " modes");
  }
  return layout.offset(pos) + mode;
}

}  // namespace

SparseOperator ladder(const BasisPtr& basis, int rep, std::size_t mode, LadderKind kind) {
  return monomial(basis, {{rep, mode}}, kind);
}

SparseOperator number_operator(const BasisPtr& basis, int rep, std::size_t mode) {
  return hopping(basis, rep, mode, mode);
}

SparseOperator hopping(const BasisPtr& basis, int rep, std::size_t to_mode, std::size_t from_mode) {
  const std::size_t k = flat_mode(*basis, rep, to_mode);
  const std::size_t l = flat_mode(*basis, rep, from_mode);
  std::vector<Triplet> t;
  for (std::size_t col = 0; col < basis->size(); ++col) {
    const auto& s = basis->state(col);
    const int nl = s.quanta[l];
    if (nl == 0) continue;
    if (k == l) {
      t.push_back({col, col, static_cast<double>(nl)});
      continue;
    }
    OccupationState target = s;
    target.quanta[l] -= 1;
    target.quanta[k] += 1;
    const double amp = std::sqrt(static_cast<double>(nl) * static_cast<double>(s.quanta[k] + 1));
    t.push_back({basis->index_of(target), col, amp});
  }
  return SparseOperator::from_triplets(basis, std::move(t));
}

SparseOperator monomial(const BasisPtr& basis, const std::vector<ModeRef>& modes, LadderKind kind) {
  std::vector<std::size_t> flat;
  for (const auto& m : modes) flat.push_back(flat_mode(*basis, m.rep, m.mode));
  std::vector<Triplet> t;
  for (std::size_t col = 0; col < basis->size(); ++col) {
    OccupationState s = basis->state(col);
    double amp = 1.0;
    // Rightmost factor acts first.
    for (auto it = flat.rbegin(); it != flat.rend() && amp != 0.0; ++it) {
      int& n = s.quanta[*it];
      if (kind == LadderKind::raise) {
        n += 1;
        amp *= std::sqrt(static_cast<double>(n));
      } else {
        amp *= std::sqrt(static_cast<double>(n));
        n -= 1;
      }
    }
    if (amp == 0.0) continue;
    if (auto row = basis->find(s)) t.push_back({*row, col, amp});
  }
  return SparseOperator::from_triplets(basis, std::move(t));
}

double DiagonalFunction::operator()(std::span<const int> occupations) const {
  if (domain && !domain(occupations)) {
    std::ostringstream msg;
    msg << "diagonal function '" << name << "' evaluated outside its domain at occupation (";
    for (std::size_t i = 0; i < occupations.size(); ++i) msg << (i ? "," : "") << occupations[i];
    msg << ")";
    throw DomainError(msg.str());
  }
  return value(occupations);
}

DiagonalFunction constant_function(double c) {
  return {"constant", [c](std::span<const int>) { return c; }, {}};
}

SparseOperator diagonal_op(const BasisPtr& basis, const DiagonalFunction& fn,
                           const std::function<bool(std::size_t)>& restriction) {
  CsrBuilder builder(basis);
  for (std::size_t i = 0; i < basis->size(); ++i) {
    if (!restriction || restriction(i)) builder.push(i, fn(basis->state(i).quanta));
    builder.close_row();
  }
  return builder.finish();
}

StateVector apply_exponential(const SparseOperator& generator, const StateVector& v, std::size_t max_terms) {
  StateVector sum = v;
  StateVector term = v;
  for (std::size_t k = 1; k <= max_terms; ++k) {
    term = apply(generator, term);
    if (term.is_zero()) return sum;
    term *= Complex(1.0 / static_cast<double>(k));
    sum += term;
  }
  throw Error("apply_exponential: series did not terminate within " + std::to_string(max_terms) + " terms");
}

}  // namespace suncs
