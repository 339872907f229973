#include "lipmin/harness/io.hpp"

#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace lipmin::io {

using nlohmann::ordered_json;

void write_path_json(const Path& path, std::ostream& out) {
  ordered_json j;
  if (const auto* g = std::get_if<GridPath>(&path)) {
    j["t0"] = g->t0();
    j["dt"] = g->dt();
    j["values"] = std::vector<double>(g->values().begin(), g->values().end());
  } else {
    const auto& e = std::get<EventPath>(path);
    auto& seg = j["segments"] = ordered_json::array();
    for (const auto& b : e.segments()) seg.push_back({{"t", b.t}, {"left", b.left}, {"right", b.right}});
    j["slope"] = e.slope();
  }
  out << j.dump() << "\n";
}

Path read_path_json(std::istream& in) {
  ordered_json j;
  try {
    in >> j;
    if (j.contains("segments")) {
      std::vector<Breakpoint> seg;
      for (const auto& s : j.at("segments"))
        seg.push_back({s.at("t").get<double>(), s.at("left").get<double>(), s.at("right").get<double>()});
      return EventPath(std::move(seg), j.at("slope").get<double>());
    }
    return GridPath(j.at("t0").get<double>(), j.at("dt").get<double>(), j.at("values").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed path JSON: ") + e.what());
  }
}

void write_path_csv(const Path& path, std::ostream& out) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10) << "t,x\n";
  if (const auto* g = std::get_if<GridPath>(&path)) {
    for (std::size_t k = 0; k < g->size(); ++k) out << g->time(k) << "," << (*g)[k] << "\n";
  } else {
    for (const auto& b : std::get<EventPath>(path).segments()) out << b.t << "," << b.right << "\n";
  }
}

void write_minorant_json(const MinorantResult& m, std::ostream& out) {
  ordered_json j;
  j["alpha"] = m.alpha;
  j["minorant"] = m.minorant;
  j["contacts"] = m.contacts;
  out << j.dump() << "\n";
}

}  // namespace lipmin::io
