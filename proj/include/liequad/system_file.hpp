#pragma once

#include "liequad/errors.hpp"
#include "liequad/geometry.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace liequad {

/// A malformed system file; line is 0 when unknown.
class SchemaError : public Error {
public:
    SchemaError(const std::string& source, std::size_t line, const std::string& field, const std::string& what);
    std::size_t line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

struct ConstantSpec {
    std::string f;
    double alpha = 0;
    bool operator==(const ConstantSpec&) const = default;
};

/// System definition file: a JSON object (comments allowed) with keys
///   geometry   "symplectic" | "cosymplectic" | "contact" | "cocontact"   (required)
///   n          degrees of freedom, >= 1                                   (required)
///   hamiltonian expression over the chart                                 (required)
///   constants  [{"f": expression, "alpha": number}, ...]                  (default [])
///   points     [[x1, ..., xd], ...] in chart order                        (default [])
///   seed       non-negative integer                                       (default 0)
///   t_max      positive number                                            (default 10)
///   h          positive number                                            (default 1e-3)
struct SystemFile {
    std::string geometry;
    std::size_t n = 0;
    std::string hamiltonian;
    std::vector<ConstantSpec> constants;
    std::vector<std::vector<double>> points;
    std::uint64_t seed = 0;
    double t_max = 10.0;
    double h = 1e-3;
    bool operator==(const SystemFile&) const = default;
};

/// Parses and validates the schema (expressions are parsed later by build_system).
SystemFile parse_system_file(std::string_view text, const std::string& source = "<input>");
SystemFile load_system_file(const std::filesystem::path& path);

/// Canonical JSON form with every key present.
std::string serialize(const SystemFile& file);

struct LoadedSystem {
    HamiltonianSystem system;
    std::vector<ScalarField> constants;
    std::vector<double> alphas;
};

/// Builds the geometry, Hamiltonian, and constants. Throws SyntaxError,
/// UnknownIdentifierError, or SchemaError.
LoadedSystem build_system(const SystemFile& file);

}  // namespace liequad
