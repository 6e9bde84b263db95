#ifndef MREES_SPEC_IO_HPP
#define MREES_SPEC_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "mrees/rees.hpp"

namespace mrees {

/// Spec file:
///   { "mode": "generic" | "concrete", "coefficients": "QQ" | "ZZ", "n": int,
///     "s": [values, concrete only], "x_vars": [names], "names": [s names,
///     generic only, optional], "ideals": [[1-based indices]], "a": [ints] }
ReesSpec spec_from_json(const nlohmann::json& j);
nlohmann::ordered_json spec_to_json(const ReesSpec& spec);
ReesSpec read_spec_file(const std::string& path);

enum class OutputFormat : std::uint8_t { TEXT, JSON, CAS };
OutputFormat parse_format(std::string_view s);

nlohmann::ordered_json poly_to_json(const Poly& p);
nlohmann::ordered_json quasi_matrix_to_json(const QuasiMatrix& a,
                                            const std::vector<std::string>& row_labels);

// Identifier-safe name for CAS output: T[1;1,0] -> T_1_1_0.
std::string cas_name(const std::string& name);
// "R = QQ[...]; I = ideal(...);" with concrete s-values substituted.
std::string cas_ideal(const std::vector<Poly>& gens, const ReesPresentation& pres);

/// One polynomial per nonempty line; '#' starts a comment line.
std::vector<Poly> parse_generator_list(std::istream& in, const UniversePtr& u);

}  // namespace mrees

#endif  // MREES_SPEC_IO_HPP
