#pragma once

#include "pentile/geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pentile {

struct SpecParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One entry of a pentagon spec file: angles in degrees, scale-free edges.
struct PentagonSpec {
    std::string name;
    AngleVector angles;
    EdgeVector edges;
    std::optional<std::string> expected_type;
};

// Format: blocks of
//   pentagon <name>
//   angles <A> <B> <C> <D> <E>
//   edges  <a> <b> <c> <d> <e>
//   expect-type <name>        (optional)
// '#' starts a comment. Errors carry line numbers.
std::vector<PentagonSpec> parse_pentagons(const std::string& text,
                                          const std::string& origin = "<string>");
std::vector<PentagonSpec> load_pentagons(const std::string& path);

}  // namespace pentile
