#pragma once

// Named states and the two maps that relate them.

#include <optional>
#include <string_view>

#include "phasecorr/coherent.hpp"
#include "phasecorr/qubit.hpp"

namespace phasecorr {

enum class StateId {
  rho_pp,            // 1/4 (|g,g> + |-g,-g> + |e,e> + |o,o>) mixture
  rho_pm,            // 1/4 (|g,-g> + |-g,g> + |e,o> + |o,e>) mixture
  sigma_q_pp,        // coherent half of rho_pp
  sigma_q_pm,
  sigma_c_pp,        // cat half of rho_pp
  sigma_c_pm,
  marginal,          // shared single-mode reduced state
  coherent_product,  // |g> (x) |g>
  even_cat,
  odd_cat,
};

inline constexpr std::array<StateId, 10> kAllStates{
    StateId::rho_pp,     StateId::rho_pm,   StateId::sigma_q_pp,       StateId::sigma_q_pm, StateId::sigma_c_pp,
    StateId::sigma_c_pm, StateId::marginal, StateId::coherent_product, StateId::even_cat,   StateId::odd_cat};

std::string_view state_name(StateId id);
std::optional<StateId> parse_state(std::string_view name);
int mode_count(StateId id);

/// Normalized dyad expansion. Throws DegenerateCatError for cat-containing
/// states at gamma -> 0.
DyadOperator build(StateId id, Complex gamma);

/// Embedding at gamma = 0, where the cats become |0> and |1> and the cat basis
/// of a finite gamma no longer exists. Two-mode states only.
QubitDensityMatrix fock_limit_qubit_matrix(StateId id);

/// (Phi (x) Phi)(rho) with Phi(X) = |g><e|X|e><g| + |-g><o|X|o><-g|.
DyadOperator channel_phi(const DyadOperator& rho, Complex gamma);

enum class Side { A, B };

/// Conjugation by S_x = |e><o| + |o><e| on one side.
DyadOperator apply_local_sx(const DyadOperator& rho, Side side, Complex gamma);

}  // namespace phasecorr
