#pragma once

#include "liequad/errors.hpp"
#include "liequad/geometry.hpp"
#include "liequad/verdict.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace liequad {

/// [u,v]^i = u^j dv^i/dx^j - v^j du^i/dx^j, simplified.
VectorField commutator(const VectorField& u, const VectorField& v);

/// Yes iff [u,v] vanishes identically.
Answer is_symmetry(const VectorField& u, const VectorField& v);

/// A precondition of an identity check is not met (e.g. a z-dependent input in a contact chart).
class InapplicableHypothesis : public Error {
public:
    using Error::Error;
};

struct AntihomomorphismCheck {
    VectorField residual;  // X_{{f,h}} + [X_f, X_h]
    Answer verdict;
};

/// Contact and cocontact geometries require df/dz = dh/dz = 0.
AntihomomorphismCheck check_antihomomorphism(const PhaseGeometry& g, const Expr& f, const Expr& h);

struct IdentityCheck {
    std::string identity;
    std::optional<Answer> verdict;  // empty when skipped
    std::string skip_reason;
};

/// The Reeb-field and evolution-field identities applicable to the geometry:
///   X_{Rf} + [X_f, R] = 0 (cosymplectic), X_{R_t f} + [X_f, R_t] = 0 (cocontact),
///   [E_H, X_f] = 0 for constants of motion, [R, X_H] = 0 (resp. [R_z, X_H]) for good H.
std::vector<IdentityCheck> check_reeb_identities(const HamiltonianSystem& sys, const Expr& f);

/// {x : f_i(x) = alpha_i}, with optional witness points.
struct LevelSet {
    GeometryPtr geometry;
    std::vector<Expr> functions;
    std::vector<double> values;
    std::vector<std::vector<double>> points;

    /// Throws Error on size mismatches or witness points off the level set (tolerance 1e-9).
    void validate() const;
};

class NoSamplePoints : public Error {
public:
    using Error::Error;
};

class NoPointFound : public Error {
public:
    using Error::Error;
};

/// Damped Gauss-Newton from seeds uniform in [-2,2]^dim (at most 50 seeds, 100
/// iterations each, converged when max |f_i - alpha_i| <= 1e-11). Returns up to
/// `count` distinct points; throws NoPointFound if none converges.
std::vector<std::vector<double>> find_level_set_points(const LevelSet& m, std::uint64_t seed, std::size_t count = 5);

struct TangencyDetail {
    std::string tier;  // "ideal", "constant", "sampled"
    std::size_t function_index = 0;
};

/// Yes iff u(f_i) vanishes on the level set for every i. Exact tier: u(f_i) equals a
/// constant-coefficient combination of (f_j - alpha_j). Otherwise sampled at the
/// witness points (|u(f_i)| <= 1e-8); throws NoSamplePoints without witnesses.
Answer tangent_to_level_set(const VectorField& u, const LevelSet& m, std::vector<TangencyDetail>* detail = nullptr);

struct RankReport {
    std::size_t rank = 0;  // minimum over the points
    Answer verdict = Answer::Unknown;
    std::size_t level_set_dim = 0;  // chart dim - k when verdict is Yes
    std::vector<std::vector<double>> points;
    std::vector<std::size_t> ranks;
};

/// Rank of [df_i/dx_j] at witness points (found by Newton from `seed` when absent);
/// singular values below 1e-8 after row normalization count as zero.
RankReport functional_independence_rank(const LevelSet& m, std::uint64_t seed = 0);

}  // namespace liequad
