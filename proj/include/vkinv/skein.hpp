#pragma once

// Bracket-type state sums: Kauffman bracket, arrow polynomial and their
// parity versions with graphical coefficients.

#include "vkinv/algebra.hpp"
#include "vkinv/graphical.hpp"
#include "vkinv/knotio.hpp"
#include "vkinv/state.hpp"

namespace vk {

enum class Engine { Serial, Parallel };

/// Sum over all states of A^(#0 - #1) d^(#loops); free loops count as loops.
Polynomial bracket(const PlanarDiagram& d, Engine e = Engine::Parallel);
/// (-A)^(-3w) times the bracket.
Polynomial normalized_bracket(const PlanarDiagram& d, Engine e = Engine::Parallel);
/// Normalized bracket with A^(2m) -> (-q)^(-m); the unknot gives q + q^-1.
Polynomial jones(const PlanarDiagram& d, Engine e = Engine::Parallel);

/// As the bracket, but a loop of arrow number p > 0 is worth K_p instead of d.
Polynomial arrow(const PlanarDiagram& d, Engine e = Engine::Parallel);
Polynomial normalized_arrow(const PlanarDiagram& d, Engine e = Engine::Parallel);

/// Normalized parity bracket: odd self-crossings and link crossings stay as
/// graphical nodes, reduced and canonicalized into D{...} factors.
Polynomial parity_bracket(const PlanarDiagram& d, Engine e = Engine::Parallel);
/// Normalized parity arrow polynomial, cusps tracked on and off the nodes.
Polynomial parity_arrow(const PlanarDiagram& d, Engine e = Engine::Parallel);

/// Comparison view for published parity arrow values: every coefficient
/// that collapses to one circle of arrow number p > 0 once cusps may slide
/// through bigons is replaced by K_p. Stored values never use this.
Polynomial collapse_cusped_coefficients(const Polynomial& p);

/// (-A)^(-3w) as a polynomial.
Polynomial writhe_factor(int writhe);

/// Bit mask of crossings that become nodes in the parity expansion.
std::uint64_t node_mask(const PlanarDiagram& d);

/// Flat node diagram left by one state of the parity expansion (before reduction).
FlatDiagram node_diagram(const PlanarDiagram& d, std::uint64_t choice, bool arrows);

}  // namespace vk
