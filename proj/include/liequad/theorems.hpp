#pragma once

#include "liequad/errors.hpp"
#include "liequad/geometry.hpp"
#include "liequad/liealg.hpp"
#include "liequad/verdict.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace liequad {

/// Integrability theorem selected by the geometry: T2 symplectic, T3 cosymplectic,
/// T4 contact, T5 cocontact.
enum class TheoremId { T2, T3, T4, T5 };

std::string_view to_string(TheoremId id);
TheoremId theorem_for(GeometryKind kind);

struct Hypothesis {
    std::string name;
    Verdict verdict = Verdict::Unknown;
    std::string detail;
    std::optional<std::pair<std::size_t, std::size_t>> counterexample;  // 1-based (i, j)
};

struct PackageField {
    std::string name;
    VectorField field;
};

struct TheoremReport {
    TheoremId theorem = TheoremId::T2;
    GeometryKind geometry = GeometryKind::Symplectic;
    std::size_t n = 0;
    bool liouville_mode = false;

    /// In evaluation order: good_hamiltonian and reeb_invariant_constants (contact types only),
    /// constants_of_motion, closure, abelian (Liouville mode only), solvable,
    /// functional_independence, structure_constraint, tangency.
    std::vector<Hypothesis> hypotheses;

    std::optional<std::size_t> dim_level_set;             // set when functional independence holds
    std::optional<StructureConstants> structure_constants;  // {f_i, f_j} = c^k_ij f_k
    std::optional<StructureConstants> field_constants;      // commutators of the package generators
    std::vector<std::size_t> derived_series;
    Verdict verdict = Verdict::Unknown;

    /// Symmetries in elimination order: Reeb field first (contact types), then X_{e_k}
    /// for the adapted basis of the solvable flag.
    std::vector<PackageField> certified_package;
    std::vector<Answer> package_symmetry;  // [field, dynamics] = 0 per package entry
    std::vector<std::string> notes;
    std::vector<std::vector<double>> level_set_points;

    const Hypothesis* find(std::string_view name) const;
};

/// Evaluates every hypothesis of the theorem for the geometry (no short-circuit).
/// `points` are optional witness points; those off the level set are ignored.
/// Throws ArityError unless |fs| = |alphas| = n >= 1.
TheoremReport check_integrability(const HamiltonianSystem& sys, const std::vector<ScalarField>& fs,
                                  const std::vector<double>& alphas, std::uint64_t seed = 0,
                                  const std::vector<std::vector<double>>& points = {});

/// Same pipeline, additionally requiring the constants to be in involution.
TheoremReport liouville_corollary(const HamiltonianSystem& sys, const std::vector<ScalarField>& fs,
                                  const std::vector<double>& alphas, std::uint64_t seed = 0,
                                  const std::vector<std::vector<double>>& points = {});

/// Theorem's level-set dimension: 2n - n, 2n+1 - n, 2n+1 - n, 2n+2 - n.
std::size_t expected_level_set_dim(GeometryKind kind, std::size_t n);

}  // namespace liequad
