#pragma once

// Sparse operators and state vectors over a truncated FockBasis.
//
// Raising past a cap annihilates the state instead of erroring, so ladder
// identities are exact only on truncation-interior states; number-conserving
// bilinears never leave the basis and close exactly everywhere.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "suncs/fock.hpp"

namespace suncs {

inline constexpr double kDefaultRelTol = 1e-10;

class StateVector {
 public:
  explicit StateVector(BasisPtr basis);
  StateVector(BasisPtr basis, std::vector<Complex> amplitudes);

  const BasisPtr& basis() const { return basis_; }
  std::size_t size() const { return amplitudes_.size(); }
  Complex operator[](std::size_t i) const { return amplitudes_[i]; }
  Complex& operator[](std::size_t i) { return amplitudes_[i]; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }

  double norm() const;
  bool is_zero() const;

  StateVector& operator+=(const StateVector& other);
  StateVector& operator*=(Complex factor);

 private:
  BasisPtr basis_;
  std::vector<Complex> amplitudes_;
};

StateVector operator+(StateVector a, const StateVector& b);
StateVector operator*(Complex factor, StateVector v);
double max_abs_diff(const StateVector& a, const StateVector& b);
Complex inner(const StateVector& a, const StateVector& b);  // <a|b>
StateVector normalize(const StateVector& v);
// Basis state |index> with unit amplitude.
StateVector basis_vector(const BasisPtr& basis, std::size_t index);

void require_same_space(const FockBasis& a, const FockBasis& b);

struct Triplet {
  std::size_t row;
  std::size_t col;
  Complex value;
};

// Complex CSR matrix; columns sorted per row, exact zeros dropped.
class SparseOperator {
 public:
  explicit SparseOperator(BasisPtr basis);  // zero operator
  static SparseOperator from_triplets(BasisPtr basis, std::vector<Triplet> triplets);
  static SparseOperator identity(BasisPtr basis);

  const BasisPtr& basis() const { return basis_; }
  std::size_t dim() const { return basis_->size(); }
  std::size_t nnz() const { return values_.size(); }

  std::span<const std::size_t> row_cols(std::size_t row) const {
    return {cols_.data() + row_ptr_[row], row_ptr_[row + 1] - row_ptr_[row]};
  }
  std::span<const Complex> row_values(std::size_t row) const {
    return {values_.data() + row_ptr_[row], row_ptr_[row + 1] - row_ptr_[row]};
  }
  Complex at(std::size_t row, std::size_t col) const;
  double max_abs() const;
  std::vector<Triplet> triplets() const;

 private:
  friend class CsrBuilder;
  BasisPtr basis_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> cols_;
  std::vector<Complex> values_;
};

SparseOperator compose(const SparseOperator& a, const SparseOperator& b);  // a * b
SparseOperator add(const SparseOperator& a, const SparseOperator& b, Complex alpha = 1.0, Complex beta = 1.0);
SparseOperator adjoint(const SparseOperator& a);
SparseOperator scale(const SparseOperator& a, Complex factor);
SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);
StateVector apply(const SparseOperator& a, const StateVector& v);

double max_abs_diff(const SparseOperator& a, const SparseOperator& b);
bool approx_equal(const SparseOperator& a, const SparseOperator& b, double rel_tol = kDefaultRelTol);

enum class LadderKind { raise, lower };

SparseOperator ladder(const BasisPtr& basis, int rep, std::size_t mode, LadderKind kind);
SparseOperator number_operator(const BasisPtr& basis, int rep, std::size_t mode);
// a^dagger_k a_l within one rep, built directly.
SparseOperator hopping(const BasisPtr& basis, int rep, std::size_t to_mode, std::size_t from_mode);

struct ModeRef {
  int rep;
  std::size_t mode;
};
// Ordered product of ladder operators of one kind on the listed modes.
SparseOperator monomial(const BasisPtr& basis, const std::vector<ModeRef>& modes, LadderKind kind);

// Scalar function of an occupation tuple with an explicit domain. When used by
// diagonal_op the tuple is the full flattened occupation state.
struct DiagonalFunction {
  std::string name;
  std::function<double(std::span<const int>)> value;
  std::function<bool(std::span<const int>)> domain;

  double operator()(std::span<const int> occupations) const;  // throws DomainError
};

DiagonalFunction constant_function(double c);

// Diagonal operator with fn(occupations) on every basis state for which
// `restriction` (if given) holds; other diagonal entries are zero and fn is
// not evaluated there.
SparseOperator diagonal_op(const BasisPtr& basis, const DiagonalFunction& fn,
                           const std::function<bool(std::size_t)>& restriction = {});

// exp(X) v as sum_k X^k v / k!, stopping when a term is exactly zero.
// Generators that strictly raise quanta terminate after at most cap steps.
StateVector apply_exponential(const SparseOperator& generator, const StateVector& v, std::size_t max_terms = 4096);

}  // namespace suncs
