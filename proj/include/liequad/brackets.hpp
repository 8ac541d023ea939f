#pragma once

#include "liequad/geometry.hpp"
#include "liequad/verdict.hpp"

namespace liequad {

/// Darboux-coordinate bracket: Poisson for symplectic/cosymplectic,
/// Jacobi (with the z terms) for contact/cocontact.
Expr bracket(const PhaseGeometry& g, const Expr& f, const Expr& h);
ScalarField bracket(const PhaseGeometry& g, const ScalarField& f, const ScalarField& h);

/// Independent definition: X_h f, plus f R h (contact) or f R_z h (cocontact).
Expr bracket_intrinsic(const PhaseGeometry& g, const Expr& f, const Expr& h);
ScalarField bracket_intrinsic(const PhaseGeometry& g, const ScalarField& f, const ScalarField& h);

/// Time derivative of f along the dynamics:
///   symplectic {f,H}; cosymplectic {f,H} + df/dt;
///   contact {f,H} - f RH; cocontact {f,H} - f R_z H + R_t f.
Expr evolution_derivative(const HamiltonianSystem& sys, const Expr& f);
ScalarField evolution_derivative(const HamiltonianSystem& sys, const ScalarField& f);

Answer is_constant_of_motion(const HamiltonianSystem& sys, const Expr& f);
Answer is_constant_of_motion(const HamiltonianSystem& sys, const ScalarField& f);

}  // namespace liequad
