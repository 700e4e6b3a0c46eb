#pragma once

// Algebra over finite superpositions of coherent states.
//
// Every state in this library is a DyadOperator: a finite weighted sum of
// coherent dyads |a><b| (one mode) or |a><b| (x) |m><n| (two modes). All the
// operations below (traces, moments, spectra) are exact in that representation
// up to floating point; nothing is truncated to a Fock basis.

#include <Eigen/Dense>

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "phasecorr/linalg.hpp"
#include "phasecorr/types.hpp"

namespace phasecorr {

/// <beta|alpha> = exp(-|alpha|^2/2 - |beta|^2/2 + conj(beta) alpha).
Complex overlap(Complex alpha, Complex beta);

/// log <beta|alpha>; used where the overlap underflows but a product does not.
inline Complex log_overlap(Complex alpha, Complex beta) {
  return -0.5 * std::norm(alpha) - 0.5 * std::norm(beta) + std::conj(beta) * alpha;
}

/// Single-mode ket sum_i c_i |alpha_i>.
struct ModeKet {
  struct Term {
    Complex coeff;
    Complex label;
  };
  std::vector<Term> terms;

  double norm_squared() const;
  ModeKet normalized() const;
};

/// <a|b> for two coherent superpositions.
Complex inner(const ModeKet& a, const ModeKet& b);

/// <b|alpha> with b a superposition and alpha a bare coherent label.
Complex inner(const ModeKet& a, Complex label);

/// Product-label ket sum_i c_i |a_i> (x) |b_i>.
struct TwoModeKet {
  struct Term {
    Complex coeff;
    Complex a;
    Complex b;
  };
  std::vector<Term> terms;

  double norm_squared() const;
};

TwoModeKet tensor(const ModeKet& a, const ModeKet& b);

/// Even and odd cat kets N_{e,o}(|g> +- |-g>) with N_{e,o} = 1/sqrt(2(1 +- Gamma)).
struct CatPair {
  ModeKet even;
  ModeKet odd;
};

/// Throws DegenerateCatError when 1 - Gamma < 1e-14.
CatPair cat_kets(Complex gamma);

/// Gamma = <gamma|-gamma> = exp(-2|gamma|^2).
inline double cat_overlap(Complex gamma) { return std::exp(-2.0 * std::norm(gamma)); }

struct DyadTerm {
  Complex coeff;
  std::array<Complex, 2> ket{};  // unused second slot for single-mode operators
  std::array<Complex, 2> bra{};
};

/// Operator sum_k c_k |ket_k><bra_k| on one or two modes. Terms with identical
/// labels are merged and |c| < 1e-15 is pruned on construction; the term list
/// is immutable afterwards.
class DyadOperator {
 public:
  static constexpr double kPruneTolerance = 1e-15;

  DyadOperator() = default;
  DyadOperator(int modes, std::vector<DyadTerm> terms);

  int modes() const { return modes_; }
  std::span<const DyadTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  Complex trace() const;
  /// Max deviation between each term and the conjugate of its swapped partner.
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

  DyadOperator scaled(Complex s) const;
  /// Relabel every label of one mode by label * phase (phase-space rotation).
  DyadOperator rotated(int mode, Complex phase) const;

 private:
  int modes_ = 0;
  std::vector<DyadTerm> terms_;
};

DyadOperator operator+(const DyadOperator& a, const DyadOperator& b);

/// Term-wise comparison after merging: every label pair must appear in both
/// with coefficients within tol (missing terms count as zero).
bool approx_equal(const DyadOperator& a, const DyadOperator& b, double tol);

/// Tr(rho sigma) for two operators on the same modes.
Complex trace_product(const DyadOperator& a, const DyadOperator& b);

/// sum_k p_k |psi_k><psi_k| with each ket normalized first.
/// Throws InvalidArgument for negative weights or weights not summing to 1.
DyadOperator mixture_to_dyads(std::span<const std::pair<double, TwoModeKet>> components);
DyadOperator mixture_to_dyads(std::span<const std::pair<double, ModeKet>> components);

/// Tensor product of two single-mode operators.
DyadOperator tensor(const DyadOperator& a, const DyadOperator& b);

/// Reduced state on mode `keep` (0 = A, 1 = B).
DyadOperator partial_trace(const DyadOperator& rho, int keep);

/// Descending eigenvalues of a density operator.
struct Spectrum {
  std::vector<double> eigenvalues;

  double sum() const;
};

/// Relative Gram-eigenvalue cutoff below which span directions are dropped.
inline constexpr double kGramRankCutoff = 1e-12;

/// Eigenvalues of rho restricted to the span of its labels (Gram-matrix method).
Spectrum spectrum(const DyadOperator& rho);

double von_neumann_entropy(const Spectrum& s, LogBase base);

/// Tr(rho a1^dag^m1 a1^n1 a2^dag^m2 a2^n2).
Complex normal_moment(const DyadOperator& rho, int m1, int n1, int m2 = 0, int n2 = 0);

}  // namespace phasecorr
