#pragma once

// JSON documents for algebroids, connections, metrics and Dirac frames (schema version "format": 1),
// plus the text forms of sections and cochains used on the command line.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "courant/cochain.hpp"
#include "courant/connection.hpp"

namespace courant {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Reads and parses a JSON file; syntax errors become ParseError with line and column in the message.
Json read_json_file(const std::string& path);
Json parse_json(std::string_view text);

/// `{"format": 1, "preset": "standard(2)"}` or raw tables `{n, r, coords, pairing, anchor, c}`.
StructurePtr structure_from_json(const Json& doc);
/// Raw-table form; the name is kept.
Json structure_to_json(const CourantStructure& E);
/// Preset expressions: standard(n), standard_twisted(n, c), quadratic_lie(name), silent(n, r),
/// abelian(d), aff1_action(). `H` (n x n x n poly strings) replaces c in standard_twisted(n).
StructurePtr structure_from_preset(const std::string& expr, const Json* H = nullptr);

/// `{"format": 1, "m": m, "gamma": [[[poly]]], "fiber_pairing": [[rat]]}` with gamma[a][mu][nu].
Connection connection_from_json(const StructurePtr& E, const Json& doc);
Json connection_to_json(const Connection& nabla);

/// `{"format": 1, "L": [[[poly]]]}` with L[i][a][c], n x r x r.
LinearConnection linear_connection_from_json(const CourantStructure& E, const Json& doc);
/// `{"format": 1, "metric": [[rat]]}`.
RatMatrix metric_from_json(const Json& doc, int r);
/// `{"format": 1, "sections": [[poly]]}`.
std::vector<Section> frame_from_json(const CourantStructure& E, const Json& doc);
Json frame_to_json(const std::vector<Section>& frame);

/// Comma-separated components "x1, 0, 1/2*x2, 0" of a section in the frame.
Section parse_section(const CourantStructure& E, std::string_view text);
Cochain parse_cochain(const StructurePtr& E, std::string_view text, int degree);

Json to_json(const Rat& q);
Json to_json(const Poly& p);
Json to_json(const PolyVec& v);
Json to_json(const Cochain& w);
Json to_json(const RatMatrix& a);
Json to_json(const PolyMatrix& a);
/// Values w(e_a1, .., e_ak) on increasing frame tuples, nonzero entries only.
Json evaluation_table(const Cochain& w);

}  // namespace courant
