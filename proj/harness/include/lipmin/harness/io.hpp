#pragma once

#include <iosfwd>
#include <string>

#include "lipmin/minorant.hpp"
#include "lipmin/paths.hpp"

namespace lipmin::io {

/// Grid paths: {"t0", "dt", "values"}. Event paths: {"segments": [{"t", "left", "right"}], "slope"}.
void write_path_json(const Path& path, std::ostream& out);
/// Throws std::runtime_error on malformed input.
Path read_path_json(std::istream& in);

/// Header "t,x", one row per grid point (event paths: one row per breakpoint, right value).
void write_path_csv(const Path& path, std::ostream& out);

/// {"alpha", "minorant", "contacts"}.
void write_minorant_json(const MinorantResult& m, std::ostream& out);

}  // namespace lipmin::io
